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

#include "pobs/basis_change.hpp"

#include <cmath>
#include <string>

namespace pobs {

namespace {

Complex pairing(const Matrix& a, const Matrix& b) {
    return a.conjugate().cwiseProduct(b).sum();
}

void require_index(const DyadBasis& db, std::size_t j) {
    if (j >= db.dim()) {
        throw Error(ErrorKind::IndexError,
                    "index " + std::to_string(j) + " out of range for dimension " + std::to_string(db.dim()));
    }
}

}  // namespace

double unitarity_residual(const PseudoObservable& omega) {
    const Matrix& w = omega.matrix();
    const auto d = w.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Eigen::VectorXd left = hermitian_eigenvalues(w * w.adjoint() - id);
    const Eigen::VectorXd right = hermitian_eigenvalues(w.adjoint() * w - id);
    return std::max(left.cwiseAbs().maxCoeff(), right.cwiseAbs().maxCoeff());
}

ChangeOfBasis change_of_basis(const DyadBasis& from, const DyadBasis& to, const Tolerances& tol) {
    if (from.dim() != to.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "dyad bases differ in dimension");
    }
    const std::size_t d = from.dim();
    const auto n = static_cast<Eigen::Index>(d);
    const std::size_t k0 = 0;
    const Matrix& ik0 = from.projectors()[k0].matrix();

    std::size_t k0t = d;
    double best = tol.zero;
    for (std::size_t k = 0; k < d; ++k) {
        const double overlap = (ik0 * to.projectors()[k].matrix()).trace().real();
        if (overlap > best) {
            best = overlap;
            k0t = k;
        }
    }
    if (k0t == d) {
        throw Error(ErrorKind::NumericalDegeneracy, "no index of the target basis overlaps I_0");
    }
    const Matrix& ik0t = to.projectors()[k0t].matrix();

    // I_k0·Ĩ_k0' = Σ_l α_l·Γ_k0l, and Σ_l |α_l|² = 1/g².
    const Matrix overlap = ik0 * ik0t;
    double alpha_norm2 = 0.0;
    for (std::size_t l = 0; l < d; ++l) alpha_norm2 += std::norm(pairing(from(k0, l).matrix(), overlap));
    const double g = 1.0 / std::sqrt(alpha_norm2);

    // Γ_jk0·Ĩ_k0' = Σ_l β_lj·Γ̃_lk0', and ω_lj = g·β_lj.
    Matrix w(n, n);
    for (std::size_t j = 0; j < d; ++j) {
        const Matrix lhs = from(j, k0).matrix() * ik0t;
        for (std::size_t l = 0; l < d; ++l) {
            w(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) =
                g * pairing(to(l, k0t).matrix(), lhs);
        }
    }

    Matrix omega = Matrix::Zero(n, n);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t m = 0; m < d; ++m) {
            omega += w(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) * to(l, m).matrix();
        }
    }
    return {PseudoObservable(std::move(omega), "Omega"), std::move(w), from.ref(), to.ref(), k0, k0t};
}

double action_residual(const ChangeOfBasis& cb, const DyadBasis& from, const DyadBasis& to) {
    double worst = 0.0;
    const Matrix& w = cb.omega.matrix();
    for (std::size_t j = 0; j < from.dim(); ++j) {
        for (std::size_t k = 0; k < from.dim(); ++k) {
            worst = std::max(worst, max_abs(from(j, k).matrix() - w * to(j, k).matrix() * w.adjoint()));
        }
    }
    return worst;
}

PseudoObservable conjugate(const PseudoObservable& p, const PseudoObservable& omega) {
    require_same_dim(p, omega);
    return PseudoObservable(omega.matrix() * p.matrix() * omega.matrix().adjoint());
}

PseudoObservable conjugate(const PseudoObservable& p, const ChangeOfBasis& cb) {
    return conjugate(p, cb.omega);
}

PseudoObservable swap_unitary(const DyadBasis& db, std::size_t j0, std::size_t j1) {
    require_index(db, j0);
    require_index(db, j1);
    if (j0 == j1) throw Error(ErrorKind::IndexError, "swap needs two distinct indices");
    const auto d = static_cast<Eigen::Index>(db.dim());
    const auto& basis = db.projectors();
    Matrix s = Matrix::Identity(d, d) - basis[j0].matrix() - basis[j1].matrix() +
               db(j0, j1).matrix() + db(j1, j0).matrix();
    return PseudoObservable(std::move(s), "S");
}

PseudoObservable phase_unitary(const DyadBasis& db, std::span<const double> phases) {
    if (phases.size() != db.dim()) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(db.dim()) + " phases, got " +
                                                   std::to_string(phases.size()));
    }
    const auto d = static_cast<Eigen::Index>(db.dim());
    Matrix w = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < db.dim(); ++j) w += std::polar(1.0, phases[j]) * db.projectors()[j].matrix();
    return PseudoObservable(std::move(w), "Omega~");
}

DerivedChange swap_change(const DyadBasis& db, std::size_t j0, std::size_t j1, const Tolerances& tol) {
    const PseudoObservable s = swap_unitary(db, j0, j1);
    const std::size_t d = db.dim();
    std::vector<Projector> projectors;
    projectors.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        projectors.push_back(Projector::make(conjugate(db.projectors()[j], s).matrix(), tol));
    }
    std::vector<PseudoObservable> dyads;
    dyads.reserve(d * d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) dyads.push_back(conjugate(db(j, k), s));
    }
    DyadBasis target = DyadBasis::make(ProjectorBasis::make(std::move(projectors), tol), std::move(dyads), tol);
    const std::size_t matched = j0 == 0 ? j1 : (j1 == 0 ? j0 : 0);
    ChangeOfBasis change{s, decompose_po(s, target).entries, db.ref(), target.ref(), 0, matched};
    return {std::move(change), std::move(target)};
}

DerivedChange phase_change(const DyadBasis& db, std::span<const double> phases, const Tolerances& tol) {
    DyadBasis target = equivalent_basis(db, phases, tol);
    PseudoObservable omega = transpose(phase_unitary(db, phases)).with_label("Omega");
    ChangeOfBasis change{omega, decompose_po(omega, target).entries, db.ref(), target.ref(), 0, 0};
    return {std::move(change), std::move(target)};
}

}  // namespace pobs
