// Copyright 2026 The pobs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eigen_clusters.hpp"

#include <cmath>

namespace pobs::detail {

std::vector<EigenCluster> cluster_eigenpairs(const Matrix& h, double gap) {
    const Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    const Eigen::VectorXd& values = solver.eigenvalues();
    const Matrix& vectors = solver.eigenvectors();

    std::vector<EigenCluster> clusters;
    const Eigen::Index n = values.size();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && values(end) - values(end - 1) <= gap) ++end;
        const Eigen::Index count = end - start;
        clusters.push_back({values.segment(start, count).mean(), vectors.middleCols(start, count)});
        start = end;
    }
    return clusters;
}

double spectral_radius(const Matrix& h) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(h);
    return ev.cwiseAbs().maxCoeff();
}

}  // namespace pobs::detail
