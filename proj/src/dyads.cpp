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

#include "pobs/dyads.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numbers>

namespace pobs {

namespace {

void require_elementary(const Projector& p, const Tolerances& tol) {
    if (!is_elementary(p, tol)) {
        throw Error(ErrorKind::NotElementary, "projector has rank " + std::to_string(p.trace()) +
                                                  ", expected an elementary projector");
    }
}

void require_elementary_basis(const ProjectorBasis& basis, const Tolerances& tol) {
    if (basis.size() != basis.dim() || !basis.all_elementary(tol)) {
        throw Error(ErrorKind::NotElementaryBasis,
                    "dyad bases need a basis of " + std::to_string(basis.dim()) + " elementary projectors");
    }
}

// trace(A†·B), the Hilbert–Schmidt pairing.
Complex pairing(const Matrix& a, const Matrix& b) {
    return a.conjugate().cwiseProduct(b).sum();
}

}  // namespace

double projection_component(const Observable& c, const Projector& elementary, const Tolerances& tol) {
    require_same_dim(c, elementary);
    require_elementary(elementary, tol);
    const Matrix& i = elementary.matrix();
    const Matrix block = i * c.matrix() * i;
    const Complex t = block.trace() / elementary.trace();
    const double scale = 1.0 + max_abs(c.matrix());
    if (std::abs(t.imag()) > tol.zero * scale) {
        throw Error(ErrorKind::NotHermitian, "projection has a non-real component");
    }
    return t.real();
}

DyadicForm dyadic_form(const Projector& left, const PseudoObservable& core, const Projector& right,
                       std::size_t left_index, std::size_t right_index, const Tolerances& tol) {
    require_same_dim(left, core);
    require_same_dim(core, right);
    require_elementary(left, tol);
    require_elementary(right, tol);
    return {left_index, right_index,
            PseudoObservable(left.matrix() * core.matrix() * right.matrix()), core.label()};
}

DyadBasis::DyadBasis(ProjectorBasis basis, std::vector<PseudoObservable> dyads)
    : basis_(std::move(basis)), dyads_(std::move(dyads)), ref_(content_hash(dyads_)) {}

DyadBasis DyadBasis::make(ProjectorBasis basis, std::vector<PseudoObservable> dyads,
                          const Tolerances& tol) {
    require_elementary_basis(basis, tol);
    const std::size_t d = basis.dim();
    if (dyads.size() != d * d) {
        throw Error(ErrorKind::LengthMismatch, "dyad basis needs d*d = " + std::to_string(d * d) +
                                                   " dyads, got " + std::to_string(dyads.size()));
    }
    for (const auto& g : dyads) require_same_dim(g, basis[0]);
    DyadBasis db(std::move(basis), std::move(dyads));
    const DyadConditionReport r = db.conditions();
    const double bound = tol.zero * static_cast<double>(d);
    if (r.worst() > bound) {
        throw Error(ErrorKind::InvalidBasis,
                    "dyad conditions violated (diagonal " + std::to_string(r.diagonal) + ", transpose " +
                        std::to_string(r.transpose) + ", composition " + std::to_string(r.composition) + ")");
    }
    return db;
}

DyadConditionReport DyadBasis::conditions() const {
    DyadConditionReport r;
    const std::size_t d = dim();
    for (std::size_t j = 0; j < d; ++j) {
        r.diagonal = std::max(r.diagonal, max_abs((*this)(j, j).matrix() - basis_[j].matrix()));
        for (std::size_t k = 0; k < d; ++k) {
            const Matrix& g = (*this)(j, k).matrix();
            r.transpose = std::max(r.transpose, max_abs((*this)(k, j).matrix() - g.adjoint()));
            // Block support I_j·Γ_jk·I_k = Γ_jk makes every product with l ≠ l'
            // vanish up to the exclusivity residual of the projectors.
            r.composition = std::max(r.composition,
                                     max_abs(basis_[j].matrix() * g * basis_[k].matrix() - g));
        }
    }
    r.composition = std::max(r.composition, basis_.exclusivity_residual());
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t l = 0; l < d; ++l) {
            const Matrix& left = (*this)(j, l).matrix();
            for (std::size_t k = 0; k < d; ++k) {
                r.composition = std::max(
                    r.composition, max_abs(left * (*this)(l, k).matrix() - (*this)(j, k).matrix()));
            }
        }
    }
    return r;
}

std::string content_hash(std::span<const PseudoObservable> matrices) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    const std::uint64_t count = matrices.size();
    mix(&count, sizeof count);
    for (const auto& m : matrices) {
        const std::uint64_t dim = m.dim();
        mix(&dim, sizeof dim);
        for (Eigen::Index c = 0; c < m.matrix().cols(); ++c) {
            for (Eigen::Index r = 0; r < m.matrix().rows(); ++r) {
                // +0.0 and -0.0 hash alike.
                double parts[2] = {m.matrix()(r, c).real() + 0.0, m.matrix()(r, c).imag() + 0.0};
                mix(parts, sizeof parts);
            }
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Vector range_vector(const Projector& elementary) {
    const Matrix& m = elementary.matrix();
    Eigen::Index best = 0;
    m.colwise().norm().maxCoeff(&best);
    Vector u = m.col(best);
    u.normalize();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (std::abs(u(i)) > 1e-8) {
            u *= std::conj(u(i)) / std::abs(u(i));
            u(i) = std::abs(u(i));
            break;
        }
    }
    return u;
}

DyadBasis build_dyad_basis(const ProjectorBasis& basis, std::span<const PseudoObservable> seed_cores,
                           const Tolerances& tol) {
    require_elementary_basis(basis, tol);
    const std::size_t d = basis.dim();
    for (const auto& core : seed_cores) require_same_dim(core, basis[0]);

    const Matrix& ref = basis[0].matrix();
    std::vector<Matrix> column(d);  // Γ_j0
    column[0] = ref;
    const Vector u0 = range_vector(basis[0]);
    for (std::size_t j = 1; j < d; ++j) {
        const Matrix& ij = basis[j].matrix();
        std::vector<Matrix> candidates;
        if (seed_cores.empty()) {
            candidates.push_back(range_vector(basis[j]) * u0.adjoint());
        } else {
            for (const auto& core : seed_cores) candidates.push_back(core.matrix());
        }
        bool found = false;
        for (const auto& a : candidates) {
            const Matrix phi = ij * a * ref;
            // Φ·Φ† = a_j²·I_j and trace(I_j) = 1.
            const double norm = std::sqrt((phi * phi.adjoint()).trace().real());
            if (norm > std::sqrt(tol.zero) * (1.0 + max_abs(a))) {
                column[j] = phi / norm;
                found = true;
                break;
            }
        }
        if (!found) {
            throw Error(ErrorKind::DegenerateCore,
                        "no core gives a non-null dyadic form for index " + std::to_string(j));
        }
    }

    std::vector<PseudoObservable> dyads;
    dyads.reserve(d * d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            if (j == k) {
                dyads.emplace_back(basis[j].matrix());
            } else {
                // Γ_jk = Γ_j0·Γ_0k with Γ_0k = Γ_k0†.
                dyads.emplace_back(Matrix(column[j] * column[k].adjoint()));
            }
        }
    }
    return DyadBasis::make(basis, std::move(dyads), tol);
}

PseudoObservable ComponentMatrix::reconstruct(const DyadBasis& db) const {
    if (db.ref() != basis_ref) {
        throw Error(ErrorKind::BasisMismatch, "components belong to basis " + basis_ref + ", not " + db.ref());
    }
    const auto d = static_cast<Eigen::Index>(db.dim());
    Matrix sum = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            sum += entries(j, k) * db(static_cast<std::size_t>(j), static_cast<std::size_t>(k)).matrix();
        }
    }
    return PseudoObservable(std::move(sum));
}

ComponentMatrix decompose_po(const PseudoObservable& p, const DyadBasis& db) {
    require_same_dim(p, db.projectors()[0]);
    const auto d = static_cast<Eigen::Index>(db.dim());
    Matrix w(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            w(j, k) = pairing(db(static_cast<std::size_t>(j), static_cast<std::size_t>(k)).matrix(), p.matrix());
        }
    }
    return {std::move(w), db.ref()};
}

namespace {

void require_same_basis(const ComponentMatrix& a, const ComponentMatrix& b) {
    if (a.basis_ref != b.basis_ref) {
        throw Error(ErrorKind::BasisMismatch, "component matrices refer to different dyad bases");
    }
}

}  // namespace

ComponentMatrix component_add(const ComponentMatrix& a, const ComponentMatrix& b) {
    require_same_basis(a, b);
    return {a.entries + b.entries, a.basis_ref};
}

ComponentMatrix component_mul(const ComponentMatrix& a, const ComponentMatrix& b) {
    require_same_basis(a, b);
    return {a.entries * b.entries, a.basis_ref};
}

DyadBasis equivalent_basis(const DyadBasis& db, std::span<const double> phases, const Tolerances& tol) {
    const std::size_t d = db.dim();
    if (phases.size() != d) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(d) + " phases, got " +
                                                   std::to_string(phases.size()));
    }
    std::vector<PseudoObservable> dyads;
    dyads.reserve(d * d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            if (j == k) {
                dyads.push_back(db(j, k));
            } else {
                dyads.emplace_back(Matrix(std::polar(1.0, phases[j] - phases[k]) * db(j, k).matrix()));
            }
        }
    }
    return DyadBasis::make(db.projectors(), std::move(dyads), tol);
}

double wrap_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t <= -std::numbers::pi) t += two_pi;
    if (t > std::numbers::pi) t -= two_pi;
    return t;
}

EquivalenceReport compare_dyad_bases(const DyadBasis& a, const DyadBasis& b, const Tolerances& tol) {
    const std::size_t d = a.dim();
    if (b.dim() != d) throw Error(ErrorKind::DimensionMismatch, "dyad bases differ in dimension");
    for (std::size_t j = 0; j < d; ++j) {
        if (max_abs(a.projectors()[j].matrix() - b.projectors()[j].matrix()) > tol.idempotent) {
            throw Error(ErrorKind::BasisMismatch, "dyad bases are built over different projector bases");
        }
    }
    EquivalenceReport r;
    r.phases = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            const Complex ratio = pairing(a(j, k).matrix(), b(j, k).matrix());
            r.proportionality_residual = std::max(
                r.proportionality_residual, max_abs(b(j, k).matrix() - ratio * a(j, k).matrix()));
            r.modulus_residual = std::max(r.modulus_residual, std::abs(std::abs(ratio) - 1.0));
            r.phases(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = wrap_angle(std::arg(ratio));
        }
    }
    r.node_phases.resize(d);
    for (std::size_t j = 0; j < d; ++j) r.node_phases[j] = r.phases(static_cast<Eigen::Index>(j), 0);
    for (Eigen::Index j = 0; j < r.phases.rows(); ++j) {
        for (Eigen::Index k = 0; k < r.phases.cols(); ++k) {
            r.antisymmetry_residual =
                std::max(r.antisymmetry_residual, std::abs(wrap_angle(r.phases(k, j) + r.phases(j, k))));
            const double expected = r.node_phases[static_cast<std::size_t>(j)] -
                                    r.node_phases[static_cast<std::size_t>(k)];
            r.additivity_residual =
                std::max(r.additivity_residual, std::abs(wrap_angle(r.phases(j, k) - expected)));
        }
    }
    return r;
}

}  // namespace pobs
