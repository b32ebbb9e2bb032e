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

#include "pobs/projectors.hpp"

#include <cmath>
#include <string>

#include "pobs/compatibility.hpp"

namespace pobs {

Projector Projector::make(PseudoObservable p, const Tolerances& tol) {
    if (!is_projector(p, tol)) {
        throw Error(ErrorKind::NotAProjector,
                    "matrix" + (p.label().empty() ? std::string{} : " '" + p.label() + "'") +
                        " is not a projector");
    }
    return Projector(Observable::make(std::move(p), tol));
}

Projector Projector::make(Matrix m, const Tolerances& tol) {
    return make(PseudoObservable(std::move(m)), tol);
}

ProjectorBasis ProjectorBasis::make(std::vector<Projector> elements, const Tolerances& tol) {
    if (elements.empty()) {
        throw Error(ErrorKind::InvalidBasis, "projector basis must have at least one element");
    }
    const std::size_t dim = elements.front().dim();
    for (const auto& e : elements) {
        if (e.dim() != dim) {
            throw Error(ErrorKind::DimensionMismatch, "projector basis elements differ in dimension");
        }
        if (max_abs(e.matrix()) <= tol.zero) {
            throw Error(ErrorKind::InvalidBasis, "projector basis contains the null projector");
        }
    }
    ProjectorBasis basis(dim, std::move(elements));
    const double excl = basis.exclusivity_residual();
    if (excl > tol.zero) {
        throw Error(ErrorKind::InvalidBasis,
                    "projector basis elements are not mutually exclusive (residual " +
                        std::to_string(excl) + ")");
    }
    const double closure = basis.closure_residual();
    if (closure > tol.idempotent) {
        throw Error(ErrorKind::InvalidBasis,
                    "projector basis violates closure (residual " + std::to_string(closure) + ")");
    }
    return basis;
}

bool ProjectorBasis::all_elementary(const Tolerances& tol) const {
    for (const auto& e : elements_) {
        if (std::abs(e.trace() - 1.0) > tol.cluster) return false;
    }
    return true;
}

double ProjectorBasis::exclusivity_residual() const {
    double worst = 0.0;
    for (std::size_t j = 0; j < elements_.size(); ++j) {
        for (std::size_t k = 0; k < elements_.size(); ++k) {
            if (j == k) continue;
            worst = std::max(worst, max_abs(elements_[j].matrix() * elements_[k].matrix()));
        }
    }
    return worst;
}

double ProjectorBasis::closure_residual() const {
    const auto d = static_cast<Eigen::Index>(dim_);
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& e : elements_) sum += e.matrix();
    return max_abs(sum - Matrix::Identity(d, d));
}

ProjectorBasis standard_basis(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    std::vector<Projector> elements;
    elements.reserve(dim);
    for (Eigen::Index j = 0; j < d; ++j) {
        Matrix m = Matrix::Zero(d, d);
        m(j, j) = 1.0;
        elements.push_back(Projector::make(std::move(m)));
    }
    return ProjectorBasis::make(std::move(elements));
}

bool is_projector(const PseudoObservable& p, const Tolerances& tol) {
    const Matrix& m = p.matrix();
    return max_abs(m * m.adjoint() - m) <= tol.idempotent;
}

bool spectrum_in_zero_one(const PseudoObservable& p, const Tolerances& tol) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(p.matrix());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double v = ev(i);
        if (std::abs(v) > tol.cluster && std::abs(v - 1.0) > tol.cluster) return false;
    }
    return true;
}

Projector complement(const Projector& i, const Tolerances& tol) {
    const auto d = static_cast<Eigen::Index>(i.dim());
    return Projector::make(Matrix(Matrix::Identity(d, d) - i.matrix()), tol);
}

Projector complement(const PseudoObservable& p, const Tolerances& tol) {
    return complement(Projector::make(p, tol), tol);
}

bool are_mutually_exclusive(const Projector& a, const Projector& b, const Tolerances& tol) {
    require_same_dim(a, b);
    return max_abs(a.matrix() * b.matrix()) <= tol.zero;
}

bool are_mutually_exclusive(const PseudoObservable& a, const PseudoObservable& b,
                            const Tolerances& tol) {
    return are_mutually_exclusive(Projector::make(a, tol), Projector::make(b, tol), tol);
}

bool leq(const Observable& a, const Observable& b, const Tolerances& tol) {
    require_same_dim(a, b);
    if (!are_compatible(a, b, tol)) {
        throw Error(ErrorKind::IncompatibleObservables, "leq requires compatible observables");
    }
    const std::vector<Observable> pair{a, b};
    const ProjectorBasis joint = joint_refine(pair, tol);
    for (const auto& e : joint.elements()) {
        const double t = e.trace();
        const double ca = (a.matrix() * e.matrix()).trace().real() / t;
        const double cb = (b.matrix() * e.matrix()).trace().real() / t;
        if (ca > cb + tol.cluster) return false;
    }
    return true;
}

bool is_elementary(const Projector& i, const Tolerances& tol) {
    if (max_abs(i.matrix()) <= tol.zero) {
        throw Error(ErrorKind::ZeroProjector, "the null projector is neither elementary nor composite");
    }
    return std::abs(i.trace() - 1.0) <= tol.cluster;
}

bool is_elementary(const PseudoObservable& p, const Tolerances& tol) {
    return is_elementary(Projector::make(p, tol), tol);
}

Projector event_union(const Projector& a, const Projector& b, const Tolerances& tol) {
    if (!are_mutually_exclusive(a, b, tol)) {
        throw Error(ErrorKind::NotMutuallyExclusive, "union requires mutually exclusive events");
    }
    return Projector::make(Matrix(a.matrix() + b.matrix()), tol);
}

Projector event_intersection(const Projector& a, const Projector& b, const Tolerances& tol) {
    require_same_dim(a, b);
    if (!are_compatible(a, b, tol)) {
        throw Error(ErrorKind::IncompatibleObservables, "intersection requires commuting projectors");
    }
    const Matrix prod = a.matrix() * b.matrix();
    return Projector::make(Matrix(0.5 * (prod + prod.adjoint())), tol);
}

Projector rank_one_projector(const Vector& v) {
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "rank-one projector needs a non-zero vector");
    }
    return Projector::make(Matrix(v * v.adjoint() / n2));
}

}  // namespace pobs
