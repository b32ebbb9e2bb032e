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

#include "doctest.h"

#include <cmath>

#include "pobs/compatibility.hpp"
#include "pobs/spectral.hpp"
#include "support/random_matrices.hpp"

using namespace pobs;
using namespace pobs::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

double rel_error(const Matrix& got, const Matrix& want) { return max_abs(got - want) / (1.0 + max_abs(want)); }

}  // namespace

TEST_CASE("decompose examples") {
    SUBCASE("diagonal with a degenerate block") {
        const SpectralDecomposition sd = decompose(Observable::make(diag({3, 3, 5})));
        REQUIRE(sd.coefficients.size() == 2);
        CHECK(sd.coefficients[0] == doctest::Approx(3));
        CHECK(sd.coefficients[1] == doctest::Approx(5));
        CHECK(max_abs(sd.projectors[0].matrix() - diag({1, 1, 0})) <= 1e-12);
        CHECK(max_abs(sd.projectors[1].matrix() - diag({0, 0, 1})) <= 1e-12);
    }
    SUBCASE("constant observable") {
        const SpectralDecomposition sd = decompose(Observable::make(Matrix(2.5 * identity(4))));
        REQUIRE(sd.coefficients.size() == 1);
        CHECK(sd.coefficients[0] == doctest::Approx(2.5));
        CHECK(max_abs(sd.projectors[0].matrix() - identity(4)) <= 1e-12);
    }
    SUBCASE("pauli X") {
        const SpectralDecomposition sd = decompose(Observable::make(pauli_x()));
        REQUIRE(sd.coefficients.size() == 2);
        CHECK(sd.coefficients[0] == doctest::Approx(-1));
        CHECK(sd.coefficients[1] == doctest::Approx(1));
        Matrix minus(2, 2), plus(2, 2);
        minus << 0.5, -0.5, -0.5, 0.5;
        plus << 0.5, 0.5, 0.5, 0.5;
        CHECK(max_abs(sd.projectors[0].matrix() - minus) <= 1e-12);
        CHECK(max_abs(sd.projectors[1].matrix() - plus) <= 1e-12);
    }
    SUBCASE("non-Hermitian input") {
        CHECK(kind_of([] { decompose(PseudoObservable(Matrix(kI * identity(2)))); }) == ErrorKind::NotHermitian);
    }
}

TEST_CASE("decompose recovers a planted spectrum") {
    Gen g(31);
    for (int t = 0; t < 200; ++t) {
        const std::size_t d = g.dim();
        std::vector<double> values;
        for (std::size_t i = 0; i < d; ++i) values.push_back(static_cast<double>(g.integer(-3, 3)));
        const Matrix u = g.unitary(d);
        Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = values[i];
        Matrix m = u * v.asDiagonal() * u.adjoint();
        m = 0.5 * (m + m.adjoint());
        const SpectralDecomposition sd = decompose(Observable::make(m));

        std::vector<double> distinct = values;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        REQUIRE(sd.coefficients.size() == distinct.size());
        for (std::size_t j = 0; j < distinct.size(); ++j) {
            CHECK(std::abs(sd.coefficients[j] - distinct[j]) <= 1e-9);
            Matrix oracle = Matrix::Zero(m.rows(), m.cols());
            for (std::size_t i = 0; i < d; ++i) {
                if (values[i] == distinct[j]) {
                    oracle += u.col(static_cast<Eigen::Index>(i)) * u.col(static_cast<Eigen::Index>(i)).adjoint();
                }
            }
            CHECK(max_abs(sd.projectors[j].matrix() - oracle) <= 1e-9);
        }
        CHECK(rel_error(sd.reconstruct(), m) <= 1e-9);
        CHECK(sd.eigen_relation_residual() <= 1e-9 * (1.0 + max_abs(m)));
        const ProjectorBasis b = sd.basis();
        CHECK(b.exclusivity_residual() <= 1e-12);
        CHECK(b.closure_residual() <= 1e-10);
    }
}

TEST_CASE("clustering merges numerically split eigenvalues") {
    Matrix m = diag({1.0, 1.0 + 1e-11, 2.0});
    const SpectralDecomposition sd = decompose(Observable::make(m));
    CHECK(sd.coefficients.size() == 2);
    CHECK(sd.projectors[0].trace() == doctest::Approx(2.0));
}

TEST_CASE("apply_function examples") {
    Gen g(32);
    const Observable o = Observable::make(g.hermitian(4));
    CHECK(rel_error(apply_function(o, builtin_function("identity")).matrix(), o.matrix()) <= 1e-12);
    CHECK(max_abs(apply_function(Observable::make(diag({1, 4})), builtin_function("sqrt")).matrix() - diag({1, 2})) <=
          1e-12);
    const SpectralDecomposition sd = decompose(o);
    for (std::size_t j = 0; j < sd.coefficients.size(); ++j) {
        const Observable ind = apply_function(o, indicator(sd.coefficients[j]));
        CHECK(max_abs(ind.matrix() - sd.projectors[j].matrix()) <= 1e-9);
    }
    CHECK(kind_of([] { apply_function(Observable::make(diag({-1, 4})), builtin_function("sqrt")); }) ==
          ErrorKind::FunctionDomainError);
    CHECK(kind_of([] { builtin_function("no-such-function"); }) == ErrorKind::InvalidArgument);
    const RealFunction ind = builtin_function("indicator:2");
    CHECK(max_abs(apply_function(Observable::make(diag({2, 3, 2})), ind).matrix() - diag({1, 0, 1})) <= 1e-12);
}

TEST_CASE("function properties on random observables") {
    Gen g(33);
    const RealFunction square = builtin_function("square");
    const RealFunction absolute = builtin_function("abs");
    const RealFunction square_abs{"square_abs", [](double x) { return std::abs(x) * std::abs(x); }};
    const RealFunction expf{"exp", [](double x) { return std::exp(x); }};
    for (int t = 0; t < 200; ++t) {
        const Matrix m = g.hermitian(g.dim());
        const Observable o = Observable::make(m);
        const double rho = hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
        const Observable fg = apply_function(apply_function(o, absolute), square);
        CHECK(max_abs(fg.matrix() - apply_function(o, square_abs).matrix()) <= 1e-9 * (1.0 + rho * rho));
        // Oracle: the square of O is O·O.
        CHECK(max_abs(apply_function(o, square).matrix() - m * m) <= 1e-9 * (1.0 + rho * rho));
        const Observable e = apply_function(o, expf);
        const Observable a = apply_function(o, absolute);
        CHECK(commutator_norm(e, a) <= 1e-10 * (1.0 + max_abs(e.matrix()) * max_abs(a.matrix())));
        CHECK(are_compatible(o, e));
        const SpectralDecomposition sd = decompose(o);
        for (std::size_t j = 0; j < sd.coefficients.size(); ++j) {
            const Observable ind = apply_function(o, indicator(sd.coefficients[j], 1e-8 * (1.0 + rho)));
            CHECK(max_abs(ind.matrix() - sd.projectors[j].matrix()) <= 1e-9);
            CHECK(max_abs(m * sd.projectors[j].matrix() - sd.coefficients[j] * sd.projectors[j].matrix()) <=
                  1e-9 * (1.0 + rho));
        }
    }
}

TEST_CASE("apply_joint_function examples") {
    const JointFunction first{"first", [](std::span<const double> v) { return v[0]; }};
    const JointFunction sum{"sum", [](std::span<const double> v) { return v[0] + v[1]; }};
    const JointFunction product{"product", [](std::span<const double> v) { return v[0] * v[1]; }};
    Gen g(34);
    const Observable o = Observable::make(g.hermitian(3));
    const Observable o2 = apply_function(o, builtin_function("square"));
    const std::vector<Observable> pair{o, o2};
    CHECK(rel_error(apply_joint_function(pair, first).matrix(), o.matrix()) <= 1e-12);
    const std::vector<Observable> diag_pair{Observable::make(diag({1, 2})), Observable::make(diag({10, 20}))};
    CHECK(max_abs(apply_joint_function(diag_pair, sum).matrix() - diag({11, 22})) <= 1e-12);
    const std::vector<Observable> xx{Observable::make(pauli_x()), Observable::make(pauli_x())};
    CHECK(max_abs(apply_joint_function(xx, product).matrix() - identity(2)) <= 1e-12);
    const std::vector<Observable> xz{Observable::make(pauli_x()), Observable::make(pauli_z())};
    CHECK(kind_of([&] { apply_joint_function(xz, sum); }) == ErrorKind::IncompatibleObservables);
}

TEST_CASE("multiplicity") {
    const Observable o = Observable::make(diag({3, 3, 5}));
    CHECK(multiplicity(o, 3, standard_basis(3)) == 2);
    CHECK(multiplicity(o, 4, standard_basis(3)) == 0);
    Gen g(35);
    const Matrix u = g.unitary(4);
    std::vector<Projector> elements;
    for (Eigen::Index c = 0; c < 4; ++c) elements.push_back(Projector::make(Matrix(u.col(c) * u.col(c).adjoint())));
    const ProjectorBasis rotated = ProjectorBasis::make(elements);
    CHECK(multiplicity(Observable::make(identity(4)), 1, rotated) == 4);
    const ProjectorBasis coarse = ProjectorBasis::make({Projector::make(diag({1, 1, 0})), Projector::make(diag({0, 0, 1}))});
    CHECK(kind_of([&] { multiplicity(o, 3, coarse); }) == ErrorKind::NotElementaryBasis);
    CHECK(kind_of([&] { multiplicity(Observable::make(g.hermitian(4)), 3, standard_basis(4)); }) ==
          ErrorKind::IncompatibleObservables);
}
