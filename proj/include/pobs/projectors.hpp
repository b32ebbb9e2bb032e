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

#include <cstddef>
#include <span>
#include <vector>

#include "pobs/core.hpp"

namespace pobs {

/// An observable whose only possible outcomes are 0 and 1, i.e. P·P† = P.
class Projector {
public:
    /// Throws NotAProjector when ‖P·P† − P‖_max exceeds tol.idempotent.
    static Projector make(PseudoObservable p, const Tolerances& tol = {});
    static Projector make(Matrix m, const Tolerances& tol = {});

    const Observable& observable() const noexcept { return inner_; }
    const PseudoObservable& pseudo() const noexcept { return inner_.pseudo(); }
    const Matrix& matrix() const noexcept { return inner_.matrix(); }
    std::size_t dim() const noexcept { return inner_.dim(); }

    /// Real trace; equals the rank for a projector.
    double trace() const { return matrix().trace().real(); }

    operator const Observable&() const noexcept { return inner_; }
    operator const PseudoObservable&() const noexcept { return inner_.pseudo(); }

private:
    explicit Projector(Observable o) : inner_(std::move(o)) {}
    Observable inner_;
};

/// Ordered, mutually exclusive, non-null projectors summing to the identity.
class ProjectorBasis {
public:
    /// Throws InvalidBasis when exclusivity, closure or non-nullity fail,
    /// DimensionMismatch when element dimensions disagree.
    static ProjectorBasis make(std::vector<Projector> elements, const Tolerances& tol = {});

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<Projector>& elements() const noexcept { return elements_; }
    const Projector& operator[](std::size_t j) const { return elements_.at(j); }

    /// True when every element has trace 1 within tol.cluster.
    bool all_elementary(const Tolerances& tol = {}) const;

    /// Largest ‖I_j·I_k‖_max over j ≠ k.
    double exclusivity_residual() const;
    /// ‖Σ I_j − 1‖_max.
    double closure_residual() const;

private:
    ProjectorBasis(std::size_t dim, std::vector<Projector> elements)
        : dim_(dim), elements_(std::move(elements)) {}
    std::size_t dim_;
    std::vector<Projector> elements_;
};

/// The standard diagonal basis diag(1,0,…), diag(0,1,…), …
ProjectorBasis standard_basis(std::size_t dim);

/// ‖P·P† − P‖_max ≤ tol.idempotent. The single condition implies both
/// hermiticity and idempotency.
bool is_projector(const PseudoObservable& p, const Tolerances& tol = {});

/// Eigenvalues of the Hermitian part all lie within tol.cluster of 0 or 1.
bool spectrum_in_zero_one(const PseudoObservable& p, const Tolerances& tol = {});

/// 1 − I.
Projector complement(const Projector& i, const Tolerances& tol = {});
/// Throws NotAProjector if `p` is not a projector.
Projector complement(const PseudoObservable& p, const Tolerances& tol = {});

/// ‖I1·I2‖_max ≤ tol.zero.
bool are_mutually_exclusive(const Projector& a, const Projector& b, const Tolerances& tol = {});
bool are_mutually_exclusive(const PseudoObservable& a, const PseudoObservable& b,
                            const Tolerances& tol = {});

/// Partial order between compatible observables: every component of `a` on
/// the joint refinement basis is ≤ the matching component of `b` (up to
/// tol.cluster). Throws IncompatibleObservables for non-commuting input.
bool leq(const Observable& a, const Observable& b, const Tolerances& tol = {});

/// A non-null projector is elementary iff it has rank one, i.e. trace 1.
/// Throws ZeroProjector for the null projector.
bool is_elementary(const Projector& i, const Tolerances& tol = {});
bool is_elementary(const PseudoObservable& p, const Tolerances& tol = {});

/// Union of two mutually exclusive events: I1 + I2.
/// Throws NotMutuallyExclusive otherwise.
Projector event_union(const Projector& a, const Projector& b, const Tolerances& tol = {});

/// Intersection of two compatible events: I1·I2.
/// Throws IncompatibleObservables when the projectors do not commute.
Projector event_intersection(const Projector& a, const Projector& b, const Tolerances& tol = {});

/// Rank-one projector v·v†/‖v‖².
Projector rank_one_projector(const Vector& v);

}  // namespace pobs
