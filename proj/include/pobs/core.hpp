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

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "pobs/error.hpp"

namespace pobs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Numeric thresholds shared by every module. Each operation documents
/// which norm it compares against which field.
struct Tolerances {
    double hermitian = 1e-10;
    double cluster = 1e-8;
    double idempotent = 1e-10;
    double unitary = 1e-10;
    double zero = 1e-12;

    /// Throws InvalidArgument unless every field is finite and > 0.
    void validate() const;
};

/// Largest absolute entry; the default norm for tolerance checks.
double max_abs(const Matrix& m);

/// An element of the pseudo-observable ring: a square, finite complex
/// matrix with an optional label. Immutable once constructed.
class PseudoObservable {
public:
    /// Throws InvalidArgument on a non-square, empty, or non-finite matrix.
    explicit PseudoObservable(Matrix entries, std::string label = {});

    static PseudoObservable identity(std::size_t dim);
    static PseudoObservable zero(std::size_t dim);
    static PseudoObservable constant(std::size_t dim, Complex value);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& matrix() const noexcept { return entries_; }
    const std::string& label() const noexcept { return label_; }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    PseudoObservable with_label(std::string label) const;

private:
    Matrix entries_;
    std::string label_;
};

/// A pseudo-observable that coincides with its Hermitian transposition
/// within `Tolerances::hermitian` (max-entry norm).
class Observable {
public:
    /// Throws NotHermitian when the deviation exceeds the tolerance.
    static Observable make(PseudoObservable p, const Tolerances& tol = {});
    static Observable make(Matrix m, const Tolerances& tol = {}, std::string label = {});

    const PseudoObservable& pseudo() const noexcept { return inner_; }
    const Matrix& matrix() const noexcept { return inner_.matrix(); }
    std::size_t dim() const noexcept { return inner_.dim(); }
    const std::string& label() const noexcept { return inner_.label(); }

    operator const PseudoObservable&() const noexcept { return inner_; }

private:
    explicit Observable(PseudoObservable p) : inner_(std::move(p)) {}
    PseudoObservable inner_;
};

void require_same_dim(const PseudoObservable& a, const PseudoObservable& b);

/// Hermitian transposition (conjugate transpose).
PseudoObservable transpose(const PseudoObservable& p);

PseudoObservable add(const PseudoObservable& p, const PseudoObservable& q);
PseudoObservable subtract(const PseudoObservable& p, const PseudoObservable& q);
PseudoObservable mul(const PseudoObservable& p, const PseudoObservable& q);
PseudoObservable scale(Complex gamma, const PseudoObservable& p);

inline PseudoObservable operator+(const PseudoObservable& p, const PseudoObservable& q) { return add(p, q); }
inline PseudoObservable operator-(const PseudoObservable& p, const PseudoObservable& q) { return subtract(p, q); }
inline PseudoObservable operator*(const PseudoObservable& p, const PseudoObservable& q) { return mul(p, q); }
inline PseudoObservable operator*(Complex gamma, const PseudoObservable& p) { return scale(gamma, p); }

/// Symmetric part (P + P†)/2.
Observable real_part(const PseudoObservable& p);
/// -i times the antisymmetric part (P - P†)/2.
Observable imag_part(const PseudoObservable& p);
/// Antisymmetric part (P - P†)/2; satisfies A† = -A.
PseudoObservable antisymmetric_part(const PseudoObservable& p);

/// max-entry ‖P − P†‖.
double hermitian_deviation(const PseudoObservable& p);
bool is_observable(const PseudoObservable& p, const Tolerances& tol = {});

/// Eigenvalues (ascending) of the Hermitian part of `m`.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Outcome of checking the six transposition axioms on a pair (P, Q).
struct TranspositionReport {
    bool involution = false;
    bool observable_iff_fixed = false;
    bool additivity = false;
    bool antimultiplicativity = false;
    bool positivity = false;
    bool definiteness = false;

    double involution_residual = 0.0;
    double additivity_residual = 0.0;
    double antimultiplicativity_residual = 0.0;
    /// Smallest eigenvalue of P·P†.
    double positivity_floor = 0.0;
    double product_norm = 0.0;  ///< ‖P·P†‖_max
    double norm = 0.0;          ///< ‖P‖_max

    bool all() const noexcept {
        return involution && observable_iff_fixed && additivity && antimultiplicativity &&
               positivity && definiteness;
    }
};

TranspositionReport check_transposition_axioms(const PseudoObservable& p, const PseudoObservable& q,
                                               const Tolerances& tol = {});

}  // namespace pobs
