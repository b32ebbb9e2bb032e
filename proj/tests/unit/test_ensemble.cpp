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
#include <sstream>

#include "pobs/ensemble.hpp"
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

ProjectorBasis random_elementary_basis(const Matrix& u) {
    std::vector<Projector> elements;
    for (Eigen::Index c = 0; c < u.cols(); ++c) elements.push_back(Projector::make(Matrix(u.col(c) * u.col(c).adjoint())));
    return ProjectorBasis::make(elements);
}

// Projector onto a subset of the columns of u.
Matrix event_on(const Matrix& u, const std::vector<int>& mask) {
    Matrix p = Matrix::Zero(u.rows(), u.rows());
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        if (mask[static_cast<std::size_t>(c)]) p += u.col(c) * u.col(c).adjoint();
    }
    return p;
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
    // First outputs of the reference SplitMix64 stream seeded with 0.
    CHECK(splitmix64(0, 0) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(0, 1) == 0x6e789e6aa1b965f4ULL);
    CHECK(splitmix64(0, 2) == 0x06c45d188009454fULL);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = uniform01(42, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("model validation") {
    CHECK_NOTHROW(EnsembleModel::make(standard_basis(2), {0.5, 0.5}, 1));
    CHECK(kind_of([] { EnsembleModel::make(standard_basis(2), {1.0}, 1); }) == ErrorKind::LengthMismatch);
    CHECK(kind_of([] { EnsembleModel::make(standard_basis(2), {0.6, 0.6}, 1); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { EnsembleModel::make(standard_basis(2), {-0.5, 1.5}, 1); }) == ErrorKind::InvalidArgument);
    const ProjectorBasis coarse = ProjectorBasis::make({Projector::make(diag({1, 1, 0})), Projector::make(diag({0, 0, 1}))});
    CHECK(kind_of([&] { EnsembleModel::make(coarse, {0.5, 0.5}, 1); }) == ErrorKind::NotElementaryBasis);
}

TEST_CASE("sample examples") {
    SUBCASE("constant observable") {
        const EnsembleModel m = EnsembleModel::uniform(standard_basis(3), 5);
        const std::vector<Observable> os{Observable::make(Matrix(2.5 * identity(3)))};
        const OutcomeTable t = sample(m, os, 500);
        for (const auto& row : t.rows) CHECK(row[0] == doctest::Approx(2.5));
    }
    SUBCASE("point mass on a projector") {
        const EnsembleModel m = EnsembleModel::make(standard_basis(3), {0.0, 1.0, 0.0}, 9);
        const std::vector<Observable> os{Observable::make(diag({0, 1, 0}))};
        const OutcomeTable t = sample(m, os, 500);
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            CHECK(t.events[i] == 1);
            CHECK(t.rows[i][0] == doctest::Approx(1.0));
        }
    }
    SUBCASE("binomial mean") {
        const EnsembleModel m = EnsembleModel::make(standard_basis(2), {0.5, 0.5}, 2024);
        const std::vector<Observable> os{Observable::make(diag({1, 2}))};
        const OutcomeTable t = sample(m, os, 10000);
        CHECK(std::abs(t.column_means()[0] - 1.5) <= 3.0 * 0.5 / 100.0);
        CHECK(t.rng == std::string(kRngAlgorithm));
    }
    SUBCASE("incompatible observable") {
        const EnsembleModel m = EnsembleModel::uniform(standard_basis(2), 1);
        const std::vector<Observable> os{Observable::make(pauli_x())};
        CHECK(kind_of([&] { sample(m, os, 10); }) == ErrorKind::IncompatibleObservables);
    }
}

TEST_CASE("sampling is reproducible and independent of chunking") {
    const EnsembleModel m = EnsembleModel::make(standard_basis(4), {0.1, 0.2, 0.3, 0.4}, 77);
    const std::vector<Observable> os{Observable::make(diag({1, 2, 3, 4}))};
    const OutcomeTable whole = sample(m, os, 1000);
    CHECK(sample(m, os, 1000).events == whole.events);
    std::vector<std::size_t> chunked;
    for (std::uint64_t first = 0; first < 1000; first += 137) {
        const OutcomeTable part = sample_range(m, os, first, std::min<std::size_t>(137, 1000 - first));
        chunked.insert(chunked.end(), part.events.begin(), part.events.end());
    }
    CHECK(chunked == whole.events);
    std::vector<std::size_t> counts(4, 0);
    for (std::size_t e : sample(m, os, 20000).events) ++counts[e];
    for (std::size_t j = 0; j < 4; ++j) {
        const double p = m.weights()[j];
        CHECK(std::abs(counts[j] / 20000.0 - p) <= 4.0 * std::sqrt(p * (1 - p) / 20000.0));
    }
}

TEST_CASE("CSV output") {
    const EnsembleModel m = EnsembleModel::make(standard_basis(2), {0.0, 1.0}, 3);
    const std::vector<Observable> os{Observable::make(diag({1, 2}), {}, "A"), Observable::make(diag({3, 0.5}), {}, "B")};
    std::ostringstream out;
    sample(m, os, 2).write_csv(out);
    CHECK(out.str() == "draw,event,A,B\n0,1,2,0.5\n1,1,2,0.5\n");
}

TEST_CASE("pointwise algebra") {
    SUBCASE("unit pair") {
        const EnsembleModel m = EnsembleModel::uniform(standard_basis(3), 1);
        const Observable one = Observable::make(identity(3));
        const PointwiseReport r = verify_pointwise_algebra(m, one, one, 1000);
        CHECK(r.violations() == 0);
        CHECK(r.means_within_3sigma);
    }
    SUBCASE("diagonal pair under any model") {
        const EnsembleModel m = EnsembleModel::make(standard_basis(2), {0.3, 0.7}, 8);
        const PointwiseReport r =
            verify_pointwise_algebra(m, Observable::make(diag({1, 2})), Observable::make(diag({10, 20})), 10000);
        CHECK(r.violations() == 0);
        CHECK(r.means_within_3sigma);
        CHECK(r.spectral_mean_a == doctest::Approx(1.7));
        CHECK(r.spectral_mean_b == doctest::Approx(17.0));
    }
    SUBCASE("incompatible pair") {
        const EnsembleModel m = EnsembleModel::uniform(standard_basis(2), 1);
        CHECK(kind_of([&] { verify_pointwise_algebra(m, Observable::make(pauli_x()), Observable::make(pauli_z()), 10); }) ==
              ErrorKind::IncompatibleObservables);
    }
}

TEST_CASE("zero-product and event semantics at outcome level") {
    Gen g(71);
    for (int t = 0; t < 50; ++t) {
        const std::size_t d = g.dim(2, 8);
        const Matrix u = g.unitary(d);
        const EnsembleModel m = EnsembleModel::uniform(random_elementary_basis(u), static_cast<std::uint64_t>(t));
        std::vector<int> ma(d), mb(d);
        for (std::size_t i = 0; i < d; ++i) {
            ma[i] = g.integer(0, 1);
            mb[i] = g.integer(0, 1);
        }
        ma[0] = 1;
        ma[1] = 0;
        const Projector a = Projector::make(event_on(u, ma));
        const Projector b = Projector::make(event_on(u, mb));
        const Projector na = complement(a);
        const Projector both = event_intersection(a, b);
        std::vector<int> mab(d);
        for (std::size_t i = 0; i < d; ++i) mab[i] = ma[i] && !mb[i];
        const Projector a_only = Projector::make(event_on(u, mab));
        const Projector either = event_union(a_only, b);
        const Observable zero_product = Observable::make(Matrix(0.5 * (a.matrix() * na.matrix() + na.matrix() * a.matrix())));

        const std::vector<Observable> os{a, b, na, both, either, zero_product};
        const OutcomeTable table = sample(m, os, 400);
        bool a_nonzero = false, na_nonzero = false;
        for (const auto& row : table.rows) {
            const bool x = row[0] > 0.5, y = row[1] > 0.5;
            CHECK(std::abs(row[5]) <= 1e-10);
            CHECK((row[2] > 0.5) == !x);
            CHECK((row[3] > 0.5) == (x && y));
            CHECK((row[4] > 0.5) == (x || y));
            a_nonzero = a_nonzero || x;
            na_nonzero = na_nonzero || !x;
        }
        CHECK(a_nonzero);
        CHECK(na_nonzero);
    }
}
