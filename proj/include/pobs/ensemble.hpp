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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pobs/core.hpp"
#include "pobs/projectors.hpp"

namespace pobs {

/// Identifier of the random source written into every report.
inline constexpr const char* kRngAlgorithm = "splitmix64-counter/u53";

/// Counter-based SplitMix64: draw `index` of stream `seed` is a pure
/// function of both, so any chunking of the draws reproduces the same
/// sequence.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) from the top 53 bits of splitmix64(seed, index).
double uniform01(std::uint64_t seed, std::uint64_t index) noexcept;

/// A fixture assigning weights to the elementary events of a basis.
/// The weights are a test device, not a physical state.
class EnsembleModel {
public:
    /// Throws NotElementaryBasis, LengthMismatch, or InvalidArgument for
    /// negative weights or a sum differing from 1 by more than 1e-12.
    static EnsembleModel make(ProjectorBasis basis, std::vector<double> weights, std::uint64_t seed,
                              const Tolerances& tol = {});

    const ProjectorBasis& basis() const noexcept { return basis_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Index of elementary event for draw number `draw`.
    std::size_t event(std::uint64_t draw) const noexcept;

    /// Model with uniform weights over `basis`.
    static EnsembleModel uniform(ProjectorBasis basis, std::uint64_t seed, const Tolerances& tol = {});

private:
    EnsembleModel(ProjectorBasis basis, std::vector<double> weights, std::uint64_t seed);
    ProjectorBasis basis_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
    std::uint64_t seed_;
};

/// One row per draw: the event index and each observable's outcome on it.
struct OutcomeTable {
    std::vector<std::string> labels;
    std::vector<std::size_t> events;
    std::vector<std::vector<double>> rows;
    std::string rng = kRngAlgorithm;

    std::vector<double> column_means() const;
    void write_csv(std::ostream& out) const;
};

/// Outcome of O on elementary event j: its component trace(O·I_j).
/// Throws IncompatibleObservables if O does not commute with some I_j.
std::vector<double> outcome_values(const Observable& o, const ProjectorBasis& basis,
                                   const Tolerances& tol = {});

/// Draws [first, first + count). Observables must commute with every basis
/// element. Throws IncompatibleObservables.
OutcomeTable sample_range(const EnsembleModel& model, std::span<const Observable> os,
                          std::uint64_t first, std::size_t count, const Tolerances& tol = {});

OutcomeTable sample(const EnsembleModel& model, std::span<const Observable> os, std::size_t n = 10000,
                    const Tolerances& tol = {});

/// Outcome-wise check that the outcome of A+B (A·B) equals the sum
/// (product) of the outcomes of A and B on every sampled event.
struct PointwiseReport {
    std::size_t draws = 0;
    std::size_t sum_violations = 0;
    std::size_t product_violations = 0;
    double max_sum_residual = 0.0;
    double max_product_residual = 0.0;

    double empirical_mean_a = 0.0;
    double empirical_mean_b = 0.0;
    double spectral_mean_a = 0.0;  ///< Σ_j w_j·a_j
    double spectral_mean_b = 0.0;
    double sigma_a = 0.0;          ///< standard error √(Var/n)
    double sigma_b = 0.0;
    bool means_within_3sigma = false;
    std::string rng = kRngAlgorithm;

    std::size_t violations() const noexcept { return sum_violations + product_violations; }
};

/// Outcomes match when |lhs − rhs| ≤ tol.cluster·(1 + |lhs| + |rhs|).
/// Throws IncompatibleObservables for non-commuting A, B or a basis they
/// do not commute with.
PointwiseReport verify_pointwise_algebra(const EnsembleModel& model, const Observable& a,
                                         const Observable& b, std::size_t n = 10000,
                                         const Tolerances& tol = {});

}  // namespace pobs
