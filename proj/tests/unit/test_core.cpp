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

#include "pobs/core.hpp"
#include "support/random_matrices.hpp"

using namespace pobs;
using namespace pobs::testing;

namespace {

// Entrywise conjugate transpose written out by hand.
Matrix naive_adjoint(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
    }
    return out;
}

}  // namespace

TEST_CASE("constructing a pseudo-observable validates its shape") {
    CHECK_NOTHROW(PseudoObservable(Matrix::Identity(3, 3)));
    CHECK_THROWS_AS((void)PseudoObservable(Matrix(0, 0)), Error);
    try {
        (void)PseudoObservable(Matrix::Zero(2, 3));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)PseudoObservable(bad), Error);
}

TEST_CASE("identity, zero and constant") {
    CHECK(PseudoObservable::identity(3).matrix() == identity(3));
    CHECK(max_abs(PseudoObservable::zero(4).matrix()) == 0.0);
    CHECK(PseudoObservable::constant(2, Complex(0, 2))(1, 1) == Complex(0, 2));
    CHECK(PseudoObservable::constant(2, 5.0)(0, 1) == Complex(0, 0));
}

TEST_CASE("Observable::make rejects non-Hermitian input") {
    CHECK_NOTHROW(Observable::make(pauli_x()));
    try {
        Observable::make(Matrix(kI * identity(2)));
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotHermitian);
    }
}

TEST_CASE("transpose examples") {
    SUBCASE("i·1 maps to −i·1") {
        const PseudoObservable i1 = PseudoObservable::constant(3, kI);
        CHECK(transpose(i1).matrix() == Matrix(-kI * identity(3)));
    }
    SUBCASE("upper entry i moves to lower entry −i") {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 1) = kI;
        Matrix expected = Matrix::Zero(2, 2);
        expected(1, 0) = -kI;
        CHECK(transpose(PseudoObservable(m)).matrix() == expected);
    }
    SUBCASE("involution is exact") {
        Gen g(11);
        for (int t = 0; t < 50; ++t) {
            const PseudoObservable p(g.complex_matrix(g.dim()));
            CHECK(transpose(transpose(p)).matrix() == p.matrix());
        }
    }
}

TEST_CASE("multiplication examples") {
    Gen g(12);
    const PseudoObservable p(g.complex_matrix(4));
    CHECK(max_abs((PseudoObservable::identity(4) * p).matrix() - p.matrix()) == 0.0);
    const PseudoObservable i1 = PseudoObservable::constant(2, kI);
    CHECK((i1 * i1).matrix() == Matrix(-identity(2)));
    const PseudoObservable x(pauli_x());
    const PseudoObservable z(pauli_z());
    CHECK(max_abs((x * z).matrix() - (z * x).matrix()) == 2.0);
    CHECK(max_abs((x * z).matrix() + (z * x).matrix()) == 0.0);
    CHECK_THROWS_AS(mul(PseudoObservable::identity(2), PseudoObservable::identity(3)), Error);
    CHECK_THROWS_AS(add(PseudoObservable::identity(2), PseudoObservable::identity(3)), Error);
}

TEST_CASE("real and imaginary parts") {
    SUBCASE("real part of an observable is itself") {
        const Observable a = Observable::make(pauli_x());
        CHECK(real_part(a).matrix() == a.matrix());
    }
    SUBCASE("imag_part(i·1) is the unit observable") {
        CHECK(max_abs(imag_part(PseudoObservable::constant(2, kI)).matrix() - identity(2)) == 0.0);
    }
    SUBCASE("XZ = −iY so imag_part(XZ) = −Y") {
        const PseudoObservable xz = PseudoObservable(pauli_x()) * PseudoObservable(pauli_z());
        CHECK(max_abs(xz.matrix() - Matrix(-kI * pauli_y())) == 0.0);
        CHECK(max_abs(imag_part(xz).matrix() + pauli_y()) == 0.0);
    }
    SUBCASE("complex form reconstructs the input") {
        Gen g(13);
        for (int t = 0; t < 200; ++t) {
            const PseudoObservable p(g.complex_matrix(g.dim()));
            const Observable re = real_part(p);
            const Observable im = imag_part(p);
            CHECK(max_abs(p.matrix() - (re.matrix() + kI * im.matrix())) <= 1e-13);
            CHECK(is_observable(re));
            CHECK(is_observable(im));
            CHECK(max_abs(antisymmetric_part(p).matrix() - kI * im.matrix()) <= 1e-15);
        }
    }
}

TEST_CASE("is_observable examples") {
    CHECK(is_observable(PseudoObservable(pauli_x())));
    CHECK_FALSE(is_observable(PseudoObservable::constant(2, kI)));
    CHECK_FALSE(is_observable(PseudoObservable(pauli_x()) * PseudoObservable(pauli_z())));
    CHECK(hermitian_deviation(PseudoObservable(pauli_y())) == 0.0);
}

TEST_CASE("transposition axioms") {
    SUBCASE("unit pair") {
        const auto r = check_transposition_axioms(PseudoObservable::identity(3), PseudoObservable::identity(3));
        CHECK(r.all());
    }
    SUBCASE("null pseudo-observable") {
        const auto r = check_transposition_axioms(PseudoObservable::zero(3), PseudoObservable::identity(3));
        CHECK(r.all());
        CHECK(r.product_norm == 0.0);
        CHECK(r.norm == 0.0);
    }
    SUBCASE("random pairs, antilinearity against a hand adjoint") {
        Gen g(14);
        for (int t = 0; t < 200; ++t) {
            const std::size_t d = g.dim();
            const PseudoObservable p(g.complex_matrix(d));
            const PseudoObservable q(g.complex_matrix(d));
            const auto r = check_transposition_axioms(p, q);
            CHECK(r.all());
            CHECK(r.positivity_floor >= -1e-12);
            const Complex g1 = g.complex();
            const Complex g2 = g.complex();
            const Matrix lhs = transpose(g1 * p + g2 * q).matrix();
            const Matrix rhs = std::conj(g1) * naive_adjoint(p.matrix()) + std::conj(g2) * naive_adjoint(q.matrix());
            CHECK(max_abs(lhs - rhs) <= 1e-12);
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(check_transposition_axioms(PseudoObservable::identity(2), PseudoObservable::identity(3)),
                        Error);
    }
}

TEST_CASE("tolerances must be strictly positive") {
    Tolerances t;
    CHECK_NOTHROW(t.validate());
    t.zero = 0.0;
    CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("hermitian eigenvalues are ascending") {
    const Eigen::VectorXd ev = hermitian_eigenvalues(diag({3, -1, 2}));
    CHECK(ev(0) == doctest::Approx(-1));
    CHECK(ev(1) == doctest::Approx(2));
    CHECK(ev(2) == doctest::Approx(3));
}
