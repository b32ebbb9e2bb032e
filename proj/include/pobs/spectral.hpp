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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pobs/core.hpp"
#include "pobs/projectors.hpp"

namespace pobs {

/// An observable written as Σ_j o_j·I_j over its associated projector basis.
/// Coefficients are strictly increasing; projectors are the matching
/// eigenprojectors.
struct SpectralDecomposition {
    Observable source;
    std::vector<double> coefficients;
    std::vector<Projector> projectors;

    /// Σ_j o_j·I_j.
    Matrix reconstruct() const;
    ProjectorBasis basis(const Tolerances& tol = {}) const;
    /// ‖Σ_j o_j·I_j − O‖_max.
    double reconstruction_error() const;
    /// max_j ‖O·I_j − o_j·I_j‖_max.
    double eigen_relation_residual() const;
};

/// Clusters eigenvalues whose consecutive gaps are ≤ tol.cluster·(1 + ρ(O))
/// and sums eigenprojectors within each cluster. Throws NotHermitian.
SpectralDecomposition decompose(const Observable& o, const Tolerances& tol = {});
SpectralDecomposition decompose(const PseudoObservable& p, const Tolerances& tol = {});

/// A real function of one real argument, with a name for reports.
struct RealFunction {
    std::string name;
    std::function<double(double)> fn;
};

/// A real function of several real arguments.
struct JointFunction {
    std::string name;
    std::function<double(std::span<const double>)> fn;
};

/// Kronecker indicator δ(x − value): 1 when |x − value| ≤ width, else 0.
RealFunction indicator(double value, double width = 1e-8);

/// Built-ins available by name: identity, square, sqrt, abs, indicator:<v>.
/// Throws InvalidArgument for unknown names.
RealFunction builtin_function(const std::string& name);

/// Σ_j f(o_j)·I_{O=o_j}. Throws FunctionDomainError when f yields a
/// non-finite value on any coefficient.
Observable apply_function(const Observable& o, const RealFunction& f, const Tolerances& tol = {});

/// Refines the inputs to a joint basis {I_j} with coefficient tuples o_j and
/// returns Σ_j f(o_j)·I_j. Throws IncompatibleObservables.
Observable apply_joint_function(std::span<const Observable> os, const JointFunction& f,
                                const Tolerances& tol = {});

/// Number of basis elements on which O's component equals `value` within
/// tol.cluster. Throws NotElementaryBasis or IncompatibleObservables.
std::size_t multiplicity(const Observable& o, double value, const ProjectorBasis& basis,
                         const Tolerances& tol = {});

/// trace(O·I)/trace(I): the coefficient of O on a projector that O commutes with.
double component_on(const Matrix& o, const Matrix& projector);

}  // namespace pobs
