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

#include "pobs/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pobs/compatibility.hpp"
#include "pobs/spectral.hpp"

namespace pobs {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) noexcept {
    return static_cast<double>(splitmix64(seed, index) >> 11) * 0x1.0p-53;
}

EnsembleModel::EnsembleModel(ProjectorBasis basis, std::vector<double> weights, std::uint64_t seed)
    : basis_(std::move(basis)), weights_(std::move(weights)), seed_(seed) {
    cumulative_.reserve(weights_.size());
    double acc = 0.0;
    for (double w : weights_) {
        acc += w;
        cumulative_.push_back(acc);
    }
}

EnsembleModel EnsembleModel::make(ProjectorBasis basis, std::vector<double> weights, std::uint64_t seed,
                                  const Tolerances& tol) {
    if (!basis.all_elementary(tol)) {
        throw Error(ErrorKind::NotElementaryBasis, "ensemble models need an elementary basis");
    }
    if (weights.size() != basis.size()) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(basis.size()) + " weights, got " +
                                                   std::to_string(weights.size()));
    }
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "weights must be finite and non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "weights must sum to 1");
    }
    return EnsembleModel(std::move(basis), std::move(weights), seed);
}

EnsembleModel EnsembleModel::uniform(ProjectorBasis basis, std::uint64_t seed, const Tolerances& tol) {
    const std::size_t n = basis.size();
    return make(std::move(basis), std::vector<double>(n, 1.0 / static_cast<double>(n)), seed, tol);
}

std::size_t EnsembleModel::event(std::uint64_t draw) const noexcept {
    // Scale by the realized total so rounding in the prefix sums never lets
    // u fall past the last bucket.
    const double u = uniform01(seed_, draw) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t j = static_cast<std::size_t>(it - cumulative_.begin());
    if (j >= weights_.size()) j = weights_.size() - 1;
    // Zero-weight events are never drawn.
    while (weights_[j] == 0.0 && j > 0) --j;
    return j;
}

std::vector<double> OutcomeTable::column_means() const {
    std::vector<double> means(labels.size(), 0.0);
    if (rows.empty()) return means;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) means[c] += row[c];
    }
    for (double& m : means) m /= static_cast<double>(rows.size());
    return means;
}

void OutcomeTable::write_csv(std::ostream& out) const {
    out << "draw,event";
    for (const auto& l : labels) out << ',' << l;
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << i << ',' << events[i];
        for (double v : rows[i]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
}

std::vector<double> outcome_values(const Observable& o, const ProjectorBasis& basis, const Tolerances& tol) {
    if (o.dim() != basis.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "observable and model basis differ in dimension");
    }
    std::vector<double> values;
    values.reserve(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (!are_compatible(o, basis[j].observable(), tol)) {
            throw Error(ErrorKind::IncompatibleObservables,
                        "observable" + (o.label().empty() ? std::string{} : " '" + o.label() + "'") +
                            " does not commute with model event " + std::to_string(j));
        }
        values.push_back(component_on(o.matrix(), basis[j].matrix()));
    }
    return values;
}

OutcomeTable sample_range(const EnsembleModel& model, std::span<const Observable> os, std::uint64_t first,
                          std::size_t count, const Tolerances& tol) {
    std::vector<std::vector<double>> per_event;
    OutcomeTable table;
    for (std::size_t r = 0; r < os.size(); ++r) {
        per_event.push_back(outcome_values(os[r], model.basis(), tol));
        table.labels.push_back(os[r].label().empty() ? "O" + std::to_string(r) : os[r].label());
    }
    table.events.reserve(count);
    table.rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = model.event(first + i);
        std::vector<double> row;
        row.reserve(os.size());
        for (const auto& values : per_event) row.push_back(values[j]);
        table.events.push_back(j);
        table.rows.push_back(std::move(row));
    }
    return table;
}

OutcomeTable sample(const EnsembleModel& model, std::span<const Observable> os, std::size_t n,
                    const Tolerances& tol) {
    return sample_range(model, os, 0, n, tol);
}

namespace {

// The additive floor covers summation rounding when the variance vanishes.
bool within_3sigma(double empirical, double expected, double sigma) {
    return std::abs(empirical - expected) <= 3.0 * sigma + 1e-12 * (1.0 + std::abs(expected));
}

}  // namespace

PointwiseReport verify_pointwise_algebra(const EnsembleModel& model, const Observable& a, const Observable& b,
                                         std::size_t n, const Tolerances& tol) {
    if (!are_compatible(a, b, tol)) {
        throw Error(ErrorKind::IncompatibleObservables, "pointwise algebra needs compatible observables");
    }
    const ProjectorBasis& basis = model.basis();
    const Observable sum = Observable::make(add(a, b), tol);
    const Matrix prod = a.matrix() * b.matrix();
    const Observable product = Observable::make(Matrix(0.5 * (prod + prod.adjoint())), tol);

    const std::vector<double> va = outcome_values(a, basis, tol);
    const std::vector<double> vb = outcome_values(b, basis, tol);
    const std::vector<double> vsum = outcome_values(sum, basis, tol);
    const std::vector<double> vprod = outcome_values(product, basis, tol);

    PointwiseReport r;
    r.draws = n;
    double acc_a = 0.0;
    double acc_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = model.event(i);
        const double x = va[j];
        const double y = vb[j];
        const double ds = std::abs(vsum[j] - (x + y));
        const double dp = std::abs(vprod[j] - x * y);
        r.max_sum_residual = std::max(r.max_sum_residual, ds);
        r.max_product_residual = std::max(r.max_product_residual, dp);
        if (ds > tol.cluster * (1.0 + std::abs(vsum[j]) + std::abs(x + y))) ++r.sum_violations;
        if (dp > tol.cluster * (1.0 + std::abs(vprod[j]) + std::abs(x * y))) ++r.product_violations;
        acc_a += x;
        acc_b += y;
    }
    const double dn = static_cast<double>(std::max<std::size_t>(n, 1));
    r.empirical_mean_a = acc_a / dn;
    r.empirical_mean_b = acc_b / dn;

    const auto& w = model.weights();
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        r.spectral_mean_a += w[j] * va[j];
        r.spectral_mean_b += w[j] * vb[j];
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
        var_a += w[j] * (va[j] - r.spectral_mean_a) * (va[j] - r.spectral_mean_a);
        var_b += w[j] * (vb[j] - r.spectral_mean_b) * (vb[j] - r.spectral_mean_b);
    }
    r.sigma_a = std::sqrt(var_a / dn);
    r.sigma_b = std::sqrt(var_b / dn);
    r.means_within_3sigma = within_3sigma(r.empirical_mean_a, r.spectral_mean_a, r.sigma_a) &&
                            within_3sigma(r.empirical_mean_b, r.spectral_mean_b, r.sigma_b);
    return r;
}

}  // namespace pobs
