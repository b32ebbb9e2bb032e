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

#include "pobs/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pobs {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DimensionLimit: return "DimensionLimit";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotAProjector: return "NotAProjector";
        case ErrorKind::ZeroProjector: return "ZeroProjector";
        case ErrorKind::NotMutuallyExclusive: return "NotMutuallyExclusive";
        case ErrorKind::IncompatibleObservables: return "IncompatibleObservables";
        case ErrorKind::FunctionDomainError: return "FunctionDomainError";
        case ErrorKind::NotElementary: return "NotElementary";
        case ErrorKind::NotElementaryBasis: return "NotElementaryBasis";
        case ErrorKind::InvalidBasis: return "InvalidBasis";
        case ErrorKind::DegenerateCore: return "DegenerateCore";
        case ErrorKind::BasisMismatch: return "BasisMismatch";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
        case ErrorKind::IndexError: return "IndexError";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

void Tolerances::validate() const {
    const std::pair<const char*, double> fields[] = {
        {"hermitian", hermitian}, {"cluster", cluster}, {"idempotent", idempotent},
        {"unitary", unitary},     {"zero", zero},
    };
    for (const auto& [name, value] : fields) {
        if (!std::isfinite(value) || value <= 0.0) {
            throw Error(ErrorKind::InvalidArgument,
                        std::string("tolerance '") + name + "' must be finite and positive");
        }
    }
}

double max_abs(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

PseudoObservable::PseudoObservable(Matrix entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
    if (entries_.rows() != entries_.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "pseudo-observable must be square, got " +
                                                      std::to_string(entries_.rows()) + "x" +
                                                      std::to_string(entries_.cols()));
    }
    if (entries_.rows() < 1) throw Error(ErrorKind::InvalidArgument, "pseudo-observable must be non-empty");
    if (!entries_.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "pseudo-observable entries must be finite");
    }
}

PseudoObservable PseudoObservable::identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return PseudoObservable(Matrix::Identity(d, d), "1");
}

PseudoObservable PseudoObservable::zero(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return PseudoObservable(Matrix::Zero(d, d), "0");
}

PseudoObservable PseudoObservable::constant(std::size_t dim, Complex value) {
    const auto d = static_cast<Eigen::Index>(dim);
    return PseudoObservable(value * Matrix::Identity(d, d));
}

PseudoObservable PseudoObservable::with_label(std::string label) const {
    return PseudoObservable(entries_, std::move(label));
}

Observable Observable::make(PseudoObservable p, const Tolerances& tol) {
    const double dev = hermitian_deviation(p);
    if (dev > tol.hermitian) {
        throw Error(ErrorKind::NotHermitian,
                    "matrix" + (p.label().empty() ? std::string{} : " '" + p.label() + "'") +
                        " is not Hermitian (deviation " + std::to_string(dev) + ")");
    }
    return Observable(std::move(p));
}

Observable Observable::make(Matrix m, const Tolerances& tol, std::string label) {
    return make(PseudoObservable(std::move(m), std::move(label)), tol);
}

void require_same_dim(const PseudoObservable& a, const PseudoObservable& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "dimension mismatch: " + std::to_string(a.dim()) +
                                                      " vs " + std::to_string(b.dim()));
    }
}

PseudoObservable transpose(const PseudoObservable& p) {
    return PseudoObservable(p.matrix().adjoint(), p.label().empty() ? std::string{} : p.label() + "†");
}

PseudoObservable add(const PseudoObservable& p, const PseudoObservable& q) {
    require_same_dim(p, q);
    return PseudoObservable(p.matrix() + q.matrix());
}

PseudoObservable subtract(const PseudoObservable& p, const PseudoObservable& q) {
    require_same_dim(p, q);
    return PseudoObservable(p.matrix() - q.matrix());
}

PseudoObservable mul(const PseudoObservable& p, const PseudoObservable& q) {
    require_same_dim(p, q);
    return PseudoObservable(p.matrix() * q.matrix());
}

PseudoObservable scale(Complex gamma, const PseudoObservable& p) {
    return PseudoObservable(gamma * p.matrix());
}

Observable real_part(const PseudoObservable& p) {
    Matrix s = 0.5 * (p.matrix() + p.matrix().adjoint());
    return Observable::make(PseudoObservable(std::move(s)));
}

PseudoObservable antisymmetric_part(const PseudoObservable& p) {
    return PseudoObservable(0.5 * (p.matrix() - p.matrix().adjoint()));
}

Observable imag_part(const PseudoObservable& p) {
    Matrix a = -kI * 0.5 * (p.matrix() - p.matrix().adjoint());
    return Observable::make(PseudoObservable(std::move(a)));
}

double hermitian_deviation(const PseudoObservable& p) {
    return max_abs(p.matrix() - p.matrix().adjoint());
}

bool is_observable(const PseudoObservable& p, const Tolerances& tol) {
    return hermitian_deviation(p) <= tol.hermitian;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

TranspositionReport check_transposition_axioms(const PseudoObservable& p, const PseudoObservable& q,
                                               const Tolerances& tol) {
    require_same_dim(p, q);
    TranspositionReport r;
    const Matrix& P = p.matrix();
    const Matrix& Q = q.matrix();

    // 1. (P†)† = P
    r.involution_residual = std::max(max_abs(Matrix(P.adjoint()).adjoint() - P),
                                     max_abs(Matrix(Q.adjoint()).adjoint() - Q));
    r.involution = r.involution_residual <= tol.hermitian;

    // 2. P is an observable iff P† = P. The symmetric part must be a fixed
    // point, and i times a non-null symmetric part must not be.
    {
        const Matrix sym = 0.5 * (P + P.adjoint());
        const bool sym_fixed = max_abs(sym - sym.adjoint()) <= tol.hermitian;
        const PseudoObservable rotated(kI * sym);
        const bool rotated_ok = max_abs(sym) <= tol.hermitian || !is_observable(rotated, tol);
        const bool p_consistent =
            is_observable(p, tol) == (max_abs(P.adjoint() - P) <= tol.hermitian);
        r.observable_iff_fixed = sym_fixed && rotated_ok && p_consistent;
    }

    // 3. (P + Q)† = P† + Q†
    r.additivity_residual = max_abs(Matrix((P + Q).adjoint()) - (P.adjoint() + Q.adjoint()));
    r.additivity = r.additivity_residual <= tol.hermitian;

    // 4. (PQ)† = Q†P†
    const double scale_pq = 1.0 + max_abs(P) * max_abs(Q) * static_cast<double>(p.dim());
    r.antimultiplicativity_residual = max_abs(Matrix((P * Q).adjoint()) - Q.adjoint() * P.adjoint());
    r.antimultiplicativity = r.antimultiplicativity_residual <= tol.hermitian * scale_pq;

    // 5. PP† >= 0
    const Matrix ppd = P * P.adjoint();
    r.positivity_floor = hermitian_eigenvalues(ppd).minCoeff();
    r.positivity = r.positivity_floor >= -tol.zero;

    // 6. PP† = 0 implies P = 0
    r.product_norm = max_abs(ppd);
    r.norm = max_abs(P);
    const bool product_null = r.product_norm <= tol.zero;
    const bool p_null = r.norm <= std::sqrt(tol.zero) * static_cast<double>(p.dim());
    const bool exact_zero_consistent = !(r.norm == 0.0) || r.product_norm == 0.0;
    r.definiteness = (!product_null || p_null) && exact_zero_consistent;
    return r;
}

}  // namespace pobs
