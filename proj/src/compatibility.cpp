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

#include "pobs/compatibility.hpp"

#include <limits>
#include <string>

#include "eigen_clusters.hpp"
#include "pobs/spectral.hpp"

namespace pobs {

namespace {

std::string describe(const Observable& o, std::size_t index) {
    std::string s = std::to_string(index);
    if (!o.label().empty()) s += " ('" + o.label() + "')";
    return s;
}

}  // namespace

PseudoObservable commutator(const PseudoObservable& a, const PseudoObservable& b) {
    require_same_dim(a, b);
    return PseudoObservable(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

double commutator_norm(const PseudoObservable& a, const PseudoObservable& b) {
    return max_abs(commutator(a, b).matrix());
}

bool are_compatible(const Observable& a, const Observable& b, const Tolerances& tol) {
    const double bound = tol.zero * (1.0 + max_abs(a.matrix()) * max_abs(b.matrix()));
    return commutator_norm(a, b) <= bound;
}

IncompatibilityMeasure incompatibility_measure(const Observable& a, const Observable& b) {
    const PseudoObservable c = commutator(a, b);
    // Hermitian by construction; symmetrize away rounding before validating.
    const Matrix definitional = c.matrix() / (2.0 * kI);
    const Matrix literal = c.matrix() / kI;
    return {Observable::make(Matrix(0.5 * (definitional + definitional.adjoint()))),
            Observable::make(Matrix(0.5 * (literal + literal.adjoint())))};
}

ProjectorBasis joint_refine(std::span<const Observable> os, const Tolerances& tol) {
    if (os.empty()) {
        throw Error(ErrorKind::InvalidArgument, "joint refinement needs at least one observable");
    }
    const std::size_t dim = os.front().dim();
    for (std::size_t i = 0; i < os.size(); ++i) {
        if (os[i].dim() != dim) {
            throw Error(ErrorKind::DimensionMismatch, "observable " + describe(os[i], i) +
                                                          " has a different dimension");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!are_compatible(os[j], os[i], tol)) {
                throw Error(ErrorKind::IncompatibleObservables, "observables " + describe(os[j], j) +
                                                                    " and " + describe(os[i], i) +
                                                                    " do not commute");
            }
        }
    }

    const auto d = static_cast<Eigen::Index>(dim);
    std::vector<Matrix> blocks{Matrix::Identity(d, d)};
    for (const auto& o : os) {
        const double gap = tol.cluster * (1.0 + detail::spectral_radius(o.matrix()));
        std::vector<Matrix> refined;
        for (const auto& v : blocks) {
            const Matrix restricted = v.adjoint() * o.matrix() * v;
            for (auto& cluster : detail::cluster_eigenpairs(restricted, gap)) {
                refined.push_back(v * cluster.vectors);
            }
        }
        blocks = std::move(refined);
    }

    std::vector<Projector> elements;
    elements.reserve(blocks.size());
    for (const auto& v : blocks) {
        elements.push_back(Projector::make(Matrix(v * v.adjoint()), tol));
    }
    return ProjectorBasis::make(std::move(elements), tol);
}

CompleteSetResult build_complete_set(std::span<const Observable> os, const Tolerances& tol) {
    ProjectorBasis basis = joint_refine(os, tol);
    std::vector<std::size_t> bad;
    std::vector<double> traces;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (!is_elementary(basis[j], tol)) {
            bad.push_back(j);
            traces.push_back(basis[j].trace());
        }
    }
    if (!bad.empty()) return IncompleteReport{std::move(basis), std::move(bad), std::move(traces)};

    std::vector<std::vector<double>> labels;
    labels.reserve(basis.size());
    for (const auto& e : basis.elements()) {
        std::vector<double> tuple;
        tuple.reserve(os.size());
        for (const auto& o : os) tuple.push_back(component_on(o.matrix(), e.matrix()));
        labels.push_back(std::move(tuple));
    }
    return CompleteSet{std::vector<Observable>(os.begin(), os.end()), std::move(basis), std::move(labels)};
}

Matrix FunctionTable::reconstruct(const ProjectorBasis& basis) const {
    if (basis.size() != entries.size()) {
        throw Error(ErrorKind::LengthMismatch, "function table and basis differ in length");
    }
    const auto d = static_cast<Eigen::Index>(basis.dim());
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < entries.size(); ++j) sum += entries[j].value * basis[j].matrix();
    return sum;
}

FunctionTable express_as_function(const Observable& a, const CompleteSet& cs, const Tolerances& tol) {
    if (a.dim() != cs.basis.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "observable and complete set differ in dimension");
    }
    FunctionTable table;
    for (std::size_t j = 0; j < cs.basis.size(); ++j) {
        const Projector& e = cs.basis[j];
        if (!are_compatible(a, e.observable(), tol)) {
            throw Error(ErrorKind::IncompatibleObservables,
                        "observable does not commute with basis element " + std::to_string(j));
        }
        table.entries.push_back({cs.labels[j], component_on(a.matrix(), e.matrix())});
    }
    return table;
}

BasisMatch match_bases(const ProjectorBasis& a, const ProjectorBasis& b) {
    BasisMatch match;
    match.one_to_one = a.size() == b.size() && a.dim() == b.dim();
    if (!match.one_to_one) {
        match.max_difference = std::numeric_limits<double>::infinity();
        return match;
    }
    std::vector<bool> used(b.size(), false);
    for (std::size_t j = 0; j < a.size(); ++j) {
        std::size_t best = b.size();
        double best_overlap = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (used[k]) continue;
            const double overlap = (a[j].matrix() * b[k].matrix()).trace().real();
            if (overlap > best_overlap) {
                best_overlap = overlap;
                best = k;
            }
        }
        used[best] = true;
        match.assignment.push_back(best);
        match.max_difference =
            std::max(match.max_difference, max_abs(a[j].matrix() - b[best].matrix()));
    }
    return match;
}

}  // namespace pobs
