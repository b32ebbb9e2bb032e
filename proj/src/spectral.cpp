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

#include "pobs/spectral.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "eigen_clusters.hpp"
#include "pobs/compatibility.hpp"

namespace pobs {

Matrix SpectralDecomposition::reconstruct() const {
    const auto d = static_cast<Eigen::Index>(source.dim());
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        sum += coefficients[j] * projectors[j].matrix();
    }
    return sum;
}

ProjectorBasis SpectralDecomposition::basis(const Tolerances& tol) const {
    return ProjectorBasis::make(projectors, tol);
}

double SpectralDecomposition::reconstruction_error() const {
    return max_abs(reconstruct() - source.matrix());
}

double SpectralDecomposition::eigen_relation_residual() const {
    double worst = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        const Matrix& i = projectors[j].matrix();
        worst = std::max(worst, max_abs(source.matrix() * i - coefficients[j] * i));
    }
    return worst;
}

SpectralDecomposition decompose(const Observable& o, const Tolerances& tol) {
    const double gap = tol.cluster * (1.0 + detail::spectral_radius(o.matrix()));
    SpectralDecomposition out{o, {}, {}};
    for (auto& cluster : detail::cluster_eigenpairs(o.matrix(), gap)) {
        out.coefficients.push_back(cluster.value);
        out.projectors.push_back(
            Projector::make(Matrix(cluster.vectors * cluster.vectors.adjoint()), tol));
    }
    return out;
}

SpectralDecomposition decompose(const PseudoObservable& p, const Tolerances& tol) {
    return decompose(Observable::make(p, tol), tol);
}

RealFunction indicator(double value, double width) {
    return {"indicator:" + std::to_string(value),
            [value, width](double x) { return std::abs(x - value) <= width ? 1.0 : 0.0; }};
}

RealFunction builtin_function(const std::string& name) {
    if (name == "identity") return {name, [](double x) { return x; }};
    if (name == "square") return {name, [](double x) { return x * x; }};
    if (name == "sqrt") return {name, [](double x) { return std::sqrt(x); }};
    if (name == "abs") return {name, [](double x) { return std::abs(x); }};
    const std::string prefix = "indicator:";
    if (name.rfind(prefix, 0) == 0) {
        const std::string arg = name.substr(prefix.size());
        char* end = nullptr;
        const double v = std::strtod(arg.c_str(), &end);
        if (arg.empty() || end == nullptr || *end != '\0' || !std::isfinite(v)) {
            throw Error(ErrorKind::InvalidArgument, "bad indicator value in '" + name + "'");
        }
        RealFunction f = indicator(v);
        f.name = name;
        return f;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown function '" + name + "'");
}

Observable apply_function(const Observable& o, const RealFunction& f, const Tolerances& tol) {
    const SpectralDecomposition sd = decompose(o, tol);
    const auto d = static_cast<Eigen::Index>(o.dim());
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < sd.coefficients.size(); ++j) {
        const double y = f.fn(sd.coefficients[j]);
        if (!std::isfinite(y)) {
            throw Error(ErrorKind::FunctionDomainError,
                        "function '" + f.name + "' is undefined at " + std::to_string(sd.coefficients[j]));
        }
        sum += y * sd.projectors[j].matrix();
    }
    return Observable::make(PseudoObservable(Matrix(0.5 * (sum + sum.adjoint())), f.name), tol);
}

Observable apply_joint_function(std::span<const Observable> os, const JointFunction& f,
                                const Tolerances& tol) {
    if (os.empty()) {
        throw Error(ErrorKind::InvalidArgument, "joint function needs at least one observable");
    }
    const ProjectorBasis joint = joint_refine(os, tol);
    const auto d = static_cast<Eigen::Index>(joint.dim());
    Matrix sum = Matrix::Zero(d, d);
    std::vector<double> args(os.size());
    for (const auto& e : joint.elements()) {
        for (std::size_t r = 0; r < os.size(); ++r) args[r] = component_on(os[r].matrix(), e.matrix());
        const double y = f.fn(args);
        if (!std::isfinite(y)) {
            throw Error(ErrorKind::FunctionDomainError, "function '" + f.name + "' is undefined on a label");
        }
        sum += y * e.matrix();
    }
    return Observable::make(PseudoObservable(Matrix(0.5 * (sum + sum.adjoint())), f.name), tol);
}

std::size_t multiplicity(const Observable& o, double value, const ProjectorBasis& basis,
                         const Tolerances& tol) {
    if (basis.dim() != o.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "basis and observable differ in dimension");
    }
    if (!basis.all_elementary(tol)) {
        throw Error(ErrorKind::NotElementaryBasis, "multiplicity needs a basis of elementary projectors");
    }
    std::size_t count = 0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (!are_compatible(o, basis[j].observable(), tol)) {
            throw Error(ErrorKind::IncompatibleObservables,
                        "observable does not commute with basis element " + std::to_string(j));
        }
        if (std::abs(component_on(o.matrix(), basis[j].matrix()) - value) <= tol.cluster) ++count;
    }
    return count;
}

double component_on(const Matrix& o, const Matrix& projector) {
    return (o * projector).trace().real() / projector.trace().real();
}

}  // namespace pobs
