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
#include <variant>
#include <vector>

#include "pobs/core.hpp"
#include "pobs/projectors.hpp"

namespace pobs {

/// [A, B] = AB − BA. Throws DimensionMismatch.
PseudoObservable commutator(const PseudoObservable& a, const PseudoObservable& b);

/// ‖[A, B]‖_max.
double commutator_norm(const PseudoObservable& a, const PseudoObservable& b);

/// Compatibility test: ‖[A,B]‖_max ≤ tol.zero·(1 + ‖A‖_max·‖B‖_max).
/// Throws DimensionMismatch.
bool are_compatible(const Observable& a, const Observable& b, const Tolerances& tol = {});

/// Imaginary part of the product AB in two forms. `definitional` follows
/// Im(P) = −i(P − P†)/2, which gives (AB − BA)/(2i). `literal` is [A,B]/i,
/// which is twice as large. Both are returned so reports can show the
/// factor-two gap.
struct IncompatibilityMeasure {
    Observable definitional;
    Observable literal;
};

IncompatibilityMeasure incompatibility_measure(const Observable& a, const Observable& b);

/// Joint refinement of pairwise-compatible observables: the coarsest basis
/// on which every input is a linear combination of the projectors. Built by
/// refining invariant blocks observable by observable. Output order is
/// lexicographic in the ascending coefficient tuples.
/// Throws IncompatibleObservables naming the first offending pair.
ProjectorBasis joint_refine(std::span<const Observable> os, const Tolerances& tol = {});

/// Compatible observables whose joint refinement is all-elementary, with
/// the coefficient tuple o_j of every basis element.
struct CompleteSet {
    std::vector<Observable> observables;
    ProjectorBasis basis;
    std::vector<std::vector<double>> labels;
};

/// Returned instead of a CompleteSet when some refined projectors have
/// rank > 1; the set may still be completed by adding observables.
struct IncompleteReport {
    ProjectorBasis basis;
    std::vector<std::size_t> non_elementary;
    std::vector<double> traces;
};

using CompleteSetResult = std::variant<CompleteSet, IncompleteReport>;

CompleteSetResult build_complete_set(std::span<const Observable> os, const Tolerances& tol = {});

/// A table o_j ↦ a_j expressing an observable as a function of a complete set.
struct FunctionTable {
    struct Entry {
        std::vector<double> key;
        double value;
    };
    std::vector<Entry> entries;

    /// Σ_j a_j·I_j over the set's basis.
    Matrix reconstruct(const ProjectorBasis& basis) const;
};

/// a_j = trace(A·I_j)/trace(I_j) for each element of the set's basis.
/// Throws IncompatibleObservables if A fails to commute with any element.
FunctionTable express_as_function(const Observable& a, const CompleteSet& cs,
                                  const Tolerances& tol = {});

/// Greedy one-to-one assignment of the elements of `a` to those of `b` by
/// maximum trace overlap (ties to the lower index).
struct BasisMatch {
    std::vector<std::size_t> assignment;  ///< a[j] ↔ b[assignment[j]]
    double max_difference = 0.0;           ///< max ‖a_j − b_assigned‖_max
    bool one_to_one = false;
};

BasisMatch match_bases(const ProjectorBasis& a, const ProjectorBasis& b);

}  // namespace pobs
