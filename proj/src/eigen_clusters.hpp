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

#pragma once

#include <vector>

#include "pobs/core.hpp"

namespace pobs::detail {

/// One group of numerically coincident eigenvalues of a Hermitian matrix.
struct EigenCluster {
    double value;    ///< mean of the grouped eigenvalues
    Matrix vectors;  ///< orthonormal columns spanning the eigenspace
};

/// Eigen-decomposes the Hermitian part of `h` and groups eigenvalues by
/// single-linkage chaining: consecutive sorted eigenvalues closer than
/// `gap` fall in the same cluster. Clusters come out in ascending order.
std::vector<EigenCluster> cluster_eigenpairs(const Matrix& h, double gap);

/// Spectral radius of the Hermitian part of `h`.
double spectral_radius(const Matrix& h);

}  // namespace pobs::detail
