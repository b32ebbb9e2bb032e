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
#include <string>

#include "pobs/core.hpp"
#include "pobs/dyads.hpp"

namespace pobs {

/// The unitary Ω relating two dyad bases: Γ_jk = Ω·Γ̃_jk·Ω†, where Γ is the
/// `from` basis and Γ̃ the `to` basis. `components` holds ω_lm with
/// Ω = Σ ω_lm·Γ̃_lm.
///
/// Ω is only determined up to the phases of an equivalent basis, so callers
/// should compare conjugation actions rather than Ω entrywise.
struct ChangeOfBasis {
    PseudoObservable omega;
    Matrix components;
    std::string from_ref;
    std::string to_ref;
    std::size_t k0 = 0;        ///< reference index in the `from` basis
    std::size_t k0_tilde = 0;  ///< matched index in the `to` basis
};

/// max |λ| over the eigenvalues of Ω·Ω† − 1 and Ω†·Ω − 1.
double unitarity_residual(const PseudoObservable& omega);

/// Builds Ω from reference index k0 = 0 and the `to` index k0' with the
/// largest overlap trace(I_k0·Ĩ_k0'). Throws DimensionMismatch, or
/// NumericalDegeneracy if every overlap is below tol.zero.
ChangeOfBasis change_of_basis(const DyadBasis& from, const DyadBasis& to, const Tolerances& tol = {});

/// max_jk ‖Γ_jk − Ω·Γ̃_jk·Ω†‖_max.
double action_residual(const ChangeOfBasis& cb, const DyadBasis& from, const DyadBasis& to);

/// Ω·P·Ω†. Throws DimensionMismatch.
PseudoObservable conjugate(const PseudoObservable& p, const PseudoObservable& omega);
PseudoObservable conjugate(const PseudoObservable& p, const ChangeOfBasis& cb);

/// S = 1 − I_j0 − I_j1 + Γ_j0j1 + Γ_j1j0. Throws IndexError.
PseudoObservable swap_unitary(const DyadBasis& db, std::size_t j0, std::size_t j1);

/// Ω̃ = Σ_j e^{iϑ_j}·I_j. Throws LengthMismatch.
PseudoObservable phase_unitary(const DyadBasis& db, std::span<const double> phases);

/// A change of basis together with the target basis it produces.
struct DerivedChange {
    ChangeOfBasis change;
    DyadBasis target;
};

/// Target Γ̃ = S·Γ·S, which exchanges I_j0 and I_j1; Ω = S.
DerivedChange swap_change(const DyadBasis& db, std::size_t j0, std::size_t j1,
                          const Tolerances& tol = {});

/// Target is the equivalent basis with the given phases; Ω = Ω̃†.
DerivedChange phase_change(const DyadBasis& db, std::span<const double> phases,
                           const Tolerances& tol = {});

}  // namespace pobs
