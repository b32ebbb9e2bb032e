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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pobs/core.hpp"
#include "pobs/projectors.hpp"

namespace pobs {

/// c_j with I_j·C·I_j = c_j·I_j, computed as trace(I_j·C·I_j)/trace(I_j).
/// Throws NotElementary, NotHermitian (via Observable) or DimensionMismatch.
double projection_component(const Observable& c, const Projector& elementary,
                            const Tolerances& tol = {});

/// Φ_jk = I_j·C·I_k, the block of C between two elementary projectors.
struct DyadicForm {
    std::size_t left = 0;
    std::size_t right = 0;
    PseudoObservable value;
    std::string core_label;
};

/// Throws NotElementary when either projector has rank ≠ 1.
DyadicForm dyadic_form(const Projector& left, const PseudoObservable& core, const Projector& right,
                       std::size_t left_index = 0, std::size_t right_index = 0,
                       const Tolerances& tol = {});

/// Residuals of the three defining conditions of a dyad basis.
struct DyadConditionReport {
    double diagonal = 0.0;     ///< max ‖Γ_jj − I_j‖
    double transpose = 0.0;    ///< max ‖Γ_kj − Γ_jk†‖
    double composition = 0.0;  ///< max ‖Γ_jl·Γ_l'k − δ_ll'·Γ_jk‖

    double worst() const noexcept { return std::max({diagonal, transpose, composition}); }
};

/// Normalized dyadic forms Γ_jk over an elementary projector basis.
class DyadBasis {
public:
    /// Validates the three dyad conditions against tol.zero scaled by d.
    /// Throws InvalidBasis, NotElementaryBasis or LengthMismatch.
    static DyadBasis make(ProjectorBasis basis, std::vector<PseudoObservable> dyads,
                          const Tolerances& tol = {});

    std::size_t dim() const noexcept { return basis_.dim(); }
    const ProjectorBasis& projectors() const noexcept { return basis_; }
    const PseudoObservable& operator()(std::size_t j, std::size_t k) const {
        return dyads_.at(j * dim() + k);
    }
    const std::vector<PseudoObservable>& dyads() const noexcept { return dyads_; }

    /// Content hash of the dyad array.
    const std::string& ref() const noexcept { return ref_; }

    DyadConditionReport conditions() const;

private:
    DyadBasis(ProjectorBasis basis, std::vector<PseudoObservable> dyads);
    ProjectorBasis basis_;
    std::vector<PseudoObservable> dyads_;
    std::string ref_;
};

/// Deterministic hash of a sequence of matrices ("fnv1a64:<hex>").
std::string content_hash(std::span<const PseudoObservable> matrices);

/// Unit vector spanning a rank-one projector, phased so that its first
/// entry with modulus above 1e-8 is real and positive.
Vector range_vector(const Projector& elementary);

/// Builds a dyad basis with reference index 0. For each j ≠ 0 the first
/// seed core giving a non-null I_j·A·I_0 is used; with no seeds the default
/// core u_j·u_0† applies. Throws NotElementaryBasis or DegenerateCore.
DyadBasis build_dyad_basis(const ProjectorBasis& basis,
                           std::span<const PseudoObservable> seed_cores = {},
                           const Tolerances& tol = {});

/// Components ϖ_jk of a pseudo-observable on a dyad basis.
struct ComponentMatrix {
    Matrix entries;
    std::string basis_ref;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries.rows()); }
    /// Σ ϖ_jk Γ_jk. Throws BasisMismatch if `db` is a different basis.
    PseudoObservable reconstruct(const DyadBasis& db) const;
};

/// ϖ_jk = trace(Γ_jk†·P). Throws DimensionMismatch.
ComponentMatrix decompose_po(const PseudoObservable& p, const DyadBasis& db);

/// Throws BasisMismatch when the components belong to different bases.
ComponentMatrix component_add(const ComponentMatrix& a, const ComponentMatrix& b);
ComponentMatrix component_mul(const ComponentMatrix& a, const ComponentMatrix& b);

/// Γ̃_jk = e^{i(ϑ_j − ϑ_k)}·Γ_jk over the same projectors.
/// Throws LengthMismatch when phases.size() ≠ d.
DyadBasis equivalent_basis(const DyadBasis& db, std::span<const double> phases,
                           const Tolerances& tol = {});

/// Relation between two dyad bases over the same projector basis: the
/// ratios Γ̃_jk/Γ_jk should be unit-modulus phases e^{iϑ_jk} with
/// ϑ_jk = ϑ_j − ϑ_k.
struct EquivalenceReport {
    Eigen::MatrixXd phases;              ///< ϑ_jk wrapped into (−π, π]
    std::vector<double> node_phases;     ///< ϑ_j relative to ϑ_0
    double proportionality_residual = 0; ///< max ‖Γ̃_jk − r_jk·Γ_jk‖
    double modulus_residual = 0;         ///< max | |r_jk| − 1 |
    double antisymmetry_residual = 0;    ///< max |ϑ_kj + ϑ_jk| (mod 2π)
    double additivity_residual = 0;      ///< max |ϑ_jk − (ϑ_j − ϑ_k)| (mod 2π)

    bool equivalent(double tolerance) const noexcept {
        return proportionality_residual <= tolerance && modulus_residual <= tolerance &&
               antisymmetry_residual <= tolerance && additivity_residual <= tolerance;
    }
};

/// Throws BasisMismatch when the projector bases differ.
EquivalenceReport compare_dyad_bases(const DyadBasis& a, const DyadBasis& b,
                                     const Tolerances& tol = {});

/// Wraps an angle into (−π, π].
double wrap_angle(double theta);

}  // namespace pobs
