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

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "pobs/basis_change.hpp"
#include "pobs/compatibility.hpp"
#include "pobs/dyads.hpp"
#include "pobs/ensemble.hpp"
#include "pobs/io.hpp"
#include "pobs/projectors.hpp"
#include "pobs/spectral.hpp"

namespace pobs::cli {

namespace {

using io::Json;

struct Options {
    Tolerances tol;
    std::string output = "json";
    std::size_t max_dim = 64;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void input(const std::string& path) { inputs_.push_back(path); }
    Json& results() { return results_; }

    void check(const std::string& name, bool pass, double residual) {
        Json c;
        c["name"] = name;
        c["pass"] = pass;
        c["residual"] = residual;
        checks_.push_back(std::move(c));
        ok_ = ok_ && pass;
    }

    /// Passes when residual ≤ bound.
    void bound(const std::string& name, double residual, double limit) {
        check(name, residual <= limit, residual);
    }

    bool ok() const noexcept { return ok_; }

    Json to_json(const Tolerances& tol) const {
        Json j;
        j["schema"] = 1;
        j["command"] = command_;
        j["inputs"] = inputs_;
        j["results"] = results_;
        j["checks"] = checks_;
        j["tolerances"] = io::to_json(tol);
        return j;
    }

    void write_checks_csv(std::ostream& out) const {
        out << "name,pass,residual\n";
        for (const auto& c : checks_) {
            out << c["name"].get<std::string>() << ',' << (c["pass"].get<bool>() ? "true" : "false") << ','
                << io::format_double(c["residual"].get<double>()) << '\n';
        }
    }

private:
    std::string command_;
    Json inputs_ = Json::array();
    Json results_ = Json::object();
    Json checks_ = Json::array();
    bool ok_ = true;
};

// Accepts either a bare document or a report written by a previous command.
Json read_document(const std::string& path) {
    Json j = io::read_json_file(path);
    if (j.is_object() && j.contains("schema") && j.contains("results")) return j.at("results");
    return j;
}

void require_dim(std::size_t dim, const Options& o, const std::string& path) {
    if (dim > o.max_dim) {
        throw Error(ErrorKind::DimensionLimit, "'" + path + "' has dimension " + std::to_string(dim) +
                                                   ", above --max-dim " + std::to_string(o.max_dim));
    }
}

PseudoObservable load_matrix(const std::string& path, const Options& o) {
    PseudoObservable p = io::matrix_from_json(io::read_json_file(path));
    require_dim(p.dim(), o, path);
    if (p.label().empty()) return p.with_label(std::filesystem::path(path).stem().string());
    return p;
}

Observable load_observable(const std::string& path, const Options& o) {
    return Observable::make(load_matrix(path, o), o.tol);
}

std::vector<Observable> load_observables(const std::vector<std::string>& paths, const Options& o, Report& r) {
    std::vector<Observable> os;
    for (const auto& p : paths) {
        r.input(p);
        os.push_back(load_observable(p, o));
    }
    return os;
}

ProjectorBasis load_basis(const std::string& path, const Options& o) {
    ProjectorBasis b = io::basis_from_json(read_document(path), o.tol);
    require_dim(b.dim(), o, path);
    return b;
}

DyadBasis load_dyads(const std::string& path, const Options& o) {
    DyadBasis db = io::dyad_basis_from_json(read_document(path), o.tol);
    require_dim(db.dim(), o, path);
    return db;
}

Matrix random_matrix(std::size_t dim, std::uint64_t seed, std::uint64_t stream) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix m(d, d);
    std::uint64_t k = 0;
    const std::uint64_t s = splitmix64(seed, stream);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = Complex(2.0 * uniform01(s, k) - 1.0, 2.0 * uniform01(s, k + 1) - 1.0);
            k += 2;
        }
    }
    return m;
}

double spectral_scale(const Matrix& m) { return 1.0 + max_abs(m) * static_cast<double>(m.rows()); }

// --- subcommands ---------------------------------------------------------

void cmd_decompose(Report& r, const Options& o, const std::string& path, const std::string& function) {
    r.input(path);
    const Observable obs = load_observable(path, o);
    const SpectralDecomposition sd = decompose(obs, o.tol);
    r.results() = io::to_json(sd);
    double max_coeff = 0.0;
    for (double c : sd.coefficients) max_coeff = std::max(max_coeff, std::abs(c));
    r.bound("reconstruction", sd.reconstruction_error(), 1e-10 * (1.0 + max_coeff));
    r.bound("eigen_relation", sd.eigen_relation_residual(), 1e-9 * (1.0 + max_coeff));
    const ProjectorBasis basis = sd.basis(o.tol);
    r.bound("exclusivity", basis.exclusivity_residual(), o.tol.zero);
    r.bound("closure", basis.closure_residual(), o.tol.idempotent);
    if (!function.empty()) {
        const RealFunction f = builtin_function(function);
        r.results()["function"] = f.name;
        r.results()["function_value"] = io::to_json(apply_function(obs, f, o.tol).pseudo());
    }
}

void cmd_commutator(Report& r, const Options& o, const std::string& a, const std::string& b) {
    r.input(a);
    r.input(b);
    const PseudoObservable pa = load_matrix(a, o);
    const PseudoObservable pb = load_matrix(b, o);
    const PseudoObservable c = commutator(pa, pb);
    r.results()["commutator"] = io::to_json(c.with_label("[" + pa.label() + "," + pb.label() + "]"));
    r.results()["commutator_norm"] = max_abs(c.matrix());
    r.bound("anticommutativity", max_abs(c.matrix() + commutator(pb, pa).matrix()), o.tol.zero);
}

void cmd_compat(Report& r, const Options& o, const std::string& a, const std::string& b) {
    r.input(a);
    r.input(b);
    const Observable oa = load_observable(a, o);
    const Observable ob = load_observable(b, o);
    const bool compatible = are_compatible(oa, ob, o.tol);
    r.results()["compatible"] = compatible;
    r.results()["commutator_norm"] = commutator_norm(oa, ob);
    const IncompatibilityMeasure m = incompatibility_measure(oa, ob);
    r.results()["incompatibility"] = io::to_json(m.definitional.pseudo().with_label("Im(AB)"));
    r.results()["incompatibility_literal"] = io::to_json(m.literal.pseudo().with_label("[A,B]/i"));
}

void cmd_refine(Report& r, const Options& o, const std::vector<std::string>& paths) {
    const std::vector<Observable> os = load_observables(paths, o, r);
    const ProjectorBasis basis = joint_refine(os, o.tol);
    r.results() = io::to_json(basis);
    r.bound("exclusivity", basis.exclusivity_residual(), o.tol.zero);
    r.bound("closure", basis.closure_residual(), o.tol.idempotent);
    for (std::size_t i = 0; i < os.size(); ++i) {
        Matrix sum = Matrix::Zero(os[i].matrix().rows(), os[i].matrix().cols());
        for (const auto& e : basis.elements()) sum += component_on(os[i].matrix(), e.matrix()) * e.matrix();
        r.bound("reconstruct[" + std::to_string(i) + "]", max_abs(sum - os[i].matrix()),
                1e-9 * (1.0 + max_abs(os[i].matrix())));
    }
}

void cmd_complete_set(Report& r, const Options& o, const std::vector<std::string>& paths) {
    const std::vector<Observable> os = load_observables(paths, o, r);
    const CompleteSetResult result = build_complete_set(os, o.tol);
    if (const auto* cs = std::get_if<CompleteSet>(&result)) {
        r.results()["complete"] = true;
        r.results()["set"] = io::to_json(*cs);
        for (std::size_t i = 0; i < os.size(); ++i) {
            Matrix sum = Matrix::Zero(os[i].matrix().rows(), os[i].matrix().cols());
            for (std::size_t j = 0; j < cs->basis.size(); ++j) sum += cs->labels[j][i] * cs->basis[j].matrix();
            r.bound("reconstruct[" + std::to_string(i) + "]", max_abs(sum - os[i].matrix()),
                    1e-9 * (1.0 + max_abs(os[i].matrix())));
        }
    } else {
        r.results()["complete"] = false;
        r.results()["report"] = io::to_json(std::get<IncompleteReport>(result));
    }
}

void cmd_express(Report& r, const Options& o, const std::string& a, const std::vector<std::string>& set) {
    r.input(a);
    const Observable target = load_observable(a, o);
    const std::vector<Observable> os = load_observables(set, o, r);
    const CompleteSetResult result = build_complete_set(os, o.tol);
    const auto* cs = std::get_if<CompleteSet>(&result);
    r.check("complete_set", cs != nullptr, cs ? 0.0 : static_cast<double>(std::get<IncompleteReport>(result).non_elementary.size()));
    if (!cs) {
        r.results()["report"] = io::to_json(std::get<IncompleteReport>(result));
        return;
    }
    const FunctionTable table = express_as_function(target, *cs, o.tol);
    r.results()["table"] = io::to_json(table);
    r.bound("reconstruction", max_abs(table.reconstruct(cs->basis) - target.matrix()),
            1e-9 * (1.0 + max_abs(target.matrix())));
}

void dyad_checks(Report& r, const DyadBasis& db, const std::string& prefix) {
    const DyadConditionReport c = db.conditions();
    r.bound(prefix + "condition_diagonal", c.diagonal, 1e-10);
    r.bound(prefix + "condition_transpose", c.transpose, 1e-10);
    r.bound(prefix + "condition_composition", c.composition, 1e-10);
}

void cmd_dyads_build(Report& r, const Options& o, const std::string& basis_path,
                     const std::vector<std::string>& core_paths) {
    r.input(basis_path);
    const ProjectorBasis basis = load_basis(basis_path, o);
    std::vector<PseudoObservable> cores;
    for (const auto& p : core_paths) {
        r.input(p);
        cores.push_back(load_matrix(p, o));
    }
    const DyadBasis db = build_dyad_basis(basis, cores, o.tol);
    r.results() = io::to_json(db);
    dyad_checks(r, db, "");
    double g = 0.0;
    for (std::size_t j = 0; j < db.dim(); ++j) {
        g = std::max(g, max_abs(db(0, j).matrix() * db(j, 0).matrix() - basis[0].matrix()));
    }
    r.bound("reference_normalization", g, 1e-10);
}

void cmd_dyads_components(Report& r, const Options& o, const std::string& p_path, const std::string& db_path) {
    r.input(p_path);
    r.input(db_path);
    const PseudoObservable p = load_matrix(p_path, o);
    const DyadBasis db = load_dyads(db_path, o);
    const ComponentMatrix cm = decompose_po(p, db);
    r.results() = io::to_json(cm);
    r.bound("reconstruction", max_abs(cm.reconstruct(db).matrix() - p.matrix()), 1e-9 * (1.0 + max_abs(p.matrix())));
    const bool herm_components = max_abs(cm.entries - cm.entries.adjoint()) <= 1e-10 * (1.0 + max_abs(cm.entries));
    r.check("hermiticity_correspondence", herm_components == is_observable(p, o.tol),
            max_abs(cm.entries - cm.entries.adjoint()));
}

void change_checks(Report& r, const Options& o, const ChangeOfBasis& cb, const DyadBasis& from,
                   const DyadBasis& to) {
    r.bound("change.unitarity", unitarity_residual(cb.omega), o.tol.unitary);
    const Matrix& w = cb.components;
    const auto d = w.rows();
    r.bound("change.component_unitarity",
            std::max(max_abs(w.adjoint() * w - Matrix::Identity(d, d)), max_abs(w * w.adjoint() - Matrix::Identity(d, d))),
            1e-10);
    r.bound("change.action", action_residual(cb, from, to), 1e-9);
}

void cmd_change_basis(Report& r, const Options& o, const std::string& from_path, const std::string& to_path) {
    r.input(from_path);
    r.input(to_path);
    const DyadBasis from = load_dyads(from_path, o);
    const DyadBasis to = load_dyads(to_path, o);
    const ChangeOfBasis cb = change_of_basis(from, to, o.tol);
    r.results() = io::to_json(cb);
    change_checks(r, o, cb, from, to);
}

void cmd_swap(Report& r, const Options& o, const std::string& db_path, std::size_t j0, std::size_t j1) {
    r.input(db_path);
    const DyadBasis db = load_dyads(db_path, o);
    const DerivedChange dc = swap_change(db, j0, j1, o.tol);
    const PseudoObservable& s = dc.change.omega;
    r.results()["swap"] = io::to_json(s);
    r.results()["change"] = io::to_json(dc.change);
    const auto d = static_cast<Eigen::Index>(db.dim());
    r.bound("hermitian", hermitian_deviation(s), o.tol.hermitian);
    r.bound("unitarity", unitarity_residual(s), o.tol.unitary);
    r.bound("involution", max_abs(s.matrix() * s.matrix() - Matrix::Identity(d, d)), 1e-10);
    double exchange = 0.0;
    for (std::size_t j = 0; j < db.dim(); ++j) {
        const std::size_t image = j == j0 ? j1 : (j == j1 ? j0 : j);
        exchange = std::max(exchange, max_abs(conjugate(db.projectors()[j], s).matrix() - db.projectors()[image].matrix()));
    }
    r.bound("exchange", exchange, 1e-10);
    change_checks(r, o, dc.change, db, dc.target);
}

void cmd_phase(Report& r, const Options& o, const std::string& db_path, const std::vector<double>& phases) {
    r.input(db_path);
    const DyadBasis db = load_dyads(db_path, o);
    const PseudoObservable w = phase_unitary(db, phases);
    r.results()["phase_unitary"] = io::to_json(w);
    const DerivedChange dc = phase_change(db, phases, o.tol);
    r.results()["target"] = io::to_json(dc.target);
    r.results()["change"] = io::to_json(dc.change);
    r.bound("unitarity", unitarity_residual(w), o.tol.unitary);
    double action = 0.0;
    for (std::size_t j = 0; j < db.dim(); ++j) {
        for (std::size_t k = 0; k < db.dim(); ++k) {
            action = std::max(action, max_abs(conjugate(db(j, k), w).matrix() - dc.target(j, k).matrix()));
        }
    }
    r.bound("equivalent_action", action, 1e-10);
    change_checks(r, o, dc.change, db, dc.target);
}

EnsembleModel load_model(const std::string& path, const Options& o) {
    const Json j = io::read_json_file(path);
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "model must be a JSON object");
    std::optional<ProjectorBasis> basis;
    if (j.contains("basis")) {
        basis = io::basis_from_json(j.at("basis"), o.tol);
    } else if (j.contains("dim") && j.at("dim").is_number_integer() && j.at("dim").get<long long>() > 0) {
        basis = standard_basis(j.at("dim").get<std::size_t>());
    } else {
        throw Error(ErrorKind::ParseError, "model needs a 'basis' or a positive 'dim'");
    }
    require_dim(basis->dim(), o, path);
    std::vector<double> weights;
    if (j.contains("weights")) {
        if (!j.at("weights").is_array()) throw Error(ErrorKind::ParseError, "'weights' must be an array");
        for (const auto& w : j.at("weights")) {
            if (!w.is_number()) throw Error(ErrorKind::ParseError, "weights must be numbers");
            weights.push_back(w.get<double>());
        }
    } else {
        weights.assign(basis->size(), 1.0 / static_cast<double>(basis->size()));
    }
    std::uint64_t seed = 0;
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw Error(ErrorKind::ParseError, "'seed' must be a non-negative integer");
        seed = j.at("seed").get<std::uint64_t>();
    }
    if (o.seed_given) seed = o.seed;
    return EnsembleModel::make(std::move(*basis), std::move(weights), seed, o.tol);
}

// Returns true when the caller should print the JSON report; CSV output is
// written directly.
bool cmd_simulate(Report& r, const Options& o, const std::string& model_path, const std::vector<std::string>& paths,
                  std::size_t n, std::ostream& out) {
    r.input(model_path);
    const EnsembleModel model = load_model(model_path, o);
    const std::vector<Observable> os = load_observables(paths, o, r);
    const OutcomeTable table = sample(model, os, n, o.tol);
    if (o.output == "csv") {
        table.write_csv(out);
        return false;
    }
    r.results()["rng"] = table.rng;
    r.results()["seed"] = model.seed();
    r.results()["draws"] = n;
    r.results()["labels"] = table.labels;
    const std::vector<double> means = table.column_means();
    r.results()["means"] = means;
    std::vector<std::size_t> counts(model.basis().size(), 0);
    for (std::size_t e : table.events) ++counts[e];
    r.results()["event_counts"] = counts;
    Json spectral = Json::array();
    for (std::size_t i = 0; i < os.size(); ++i) {
        const std::vector<double> values = outcome_values(os[i], model.basis(), o.tol);
        double mean = 0.0;
        double second = 0.0;
        for (std::size_t j = 0; j < values.size(); ++j) {
            mean += model.weights()[j] * values[j];
            second += model.weights()[j] * values[j] * values[j];
        }
        spectral.push_back(mean);
        const double sigma = std::sqrt(std::max(0.0, second - mean * mean) / static_cast<double>(std::max<std::size_t>(n, 1)));
        r.bound("mean_within_3sigma[" + table.labels[i] + "]", std::abs(means[i] - mean),
                3.0 * sigma + 1e-12 * (1.0 + std::abs(mean)));
    }
    r.results()["spectral_means"] = spectral;
    return true;
}

void verify_single(Report& r, const Options& o, const PseudoObservable& p, std::size_t idx) {
    const std::string pre = "input[" + std::to_string(idx) + "].";
    const Tolerances& tol = o.tol;
    const std::size_t d = p.dim();
    const Matrix& P = p.matrix();
    const PseudoObservable q(random_matrix(d, o.seed, 3 * idx));
    const Matrix& Q = q.matrix();

    const TranspositionReport ax = check_transposition_axioms(p, q, tol);
    r.check(pre + "transpose.involution", ax.involution, ax.involution_residual);
    r.check(pre + "transpose.observable_iff_fixed", ax.observable_iff_fixed, hermitian_deviation(p));
    r.check(pre + "transpose.additivity", ax.additivity, ax.additivity_residual);
    r.check(pre + "transpose.antimultiplicativity", ax.antimultiplicativity, ax.antimultiplicativity_residual);
    r.check(pre + "transpose.positivity", ax.positivity, ax.positivity_floor);
    r.check(pre + "transpose.definiteness", ax.definiteness, ax.product_norm);

    const Complex g1(uniform01(o.seed, 3 * idx + 1) - 0.5, uniform01(o.seed, 3 * idx + 2) - 0.5);
    const Complex g2(0.3, -0.7);
    const double scale = 1.0 + max_abs(P) + max_abs(Q);
    r.bound(pre + "transpose.antilinearity",
            max_abs(Matrix((g1 * P + g2 * Q).adjoint()) - (std::conj(g1) * P.adjoint() + std::conj(g2) * Q.adjoint())),
            1e-12 * scale);

    const Observable re = real_part(p);
    const Observable im = imag_part(p);
    r.bound(pre + "complex_form", max_abs(P - (re.matrix() + kI * im.matrix())), 1e-13 * (1.0 + max_abs(P)));
    r.check(pre + "hermitian_closure", is_observable(re, tol) && is_observable(im, tol),
            std::max(hermitian_deviation(re), hermitian_deviation(im)));

    ProjectorBasis dyad_projectors = standard_basis(d);
    if (is_observable(p, tol)) {
        const Observable obs = Observable::make(p, tol);
        const SpectralDecomposition sd = decompose(obs, tol);
        double rho = 0.0;
        for (double c : sd.coefficients) rho = std::max(rho, std::abs(c));
        r.bound(pre + "spectral.reconstruction", sd.reconstruction_error(), 1e-10 * (1.0 + rho));
        r.bound(pre + "spectral.eigen_relation", sd.eigen_relation_residual(), 1e-9 * (1.0 + rho));
        const ProjectorBasis sb = sd.basis(tol);
        r.bound(pre + "spectral.exclusivity", sb.exclusivity_residual(), tol.zero);
        r.bound(pre + "spectral.closure", sb.closure_residual(), tol.idempotent);
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j < sd.coefficients.size(); ++j) {
            min_gap = std::min(min_gap, sd.coefficients[j] - sd.coefficients[j - 1]);
        }
        r.check(pre + "spectral.distinct_coefficients", sd.coefficients.size() < 2 || min_gap >= tol.cluster,
                std::isfinite(min_gap) ? min_gap : 0.0);

        const RealFunction sq = builtin_function("square");
        const RealFunction ab = builtin_function("abs");
        const RealFunction sq_ab{"square∘abs", [](double x) { return x * x; }};
        const Observable f_g = apply_function(apply_function(obs, ab, tol), sq, tol);
        const Observable fg = apply_function(obs, sq_ab, tol);
        r.bound(pre + "functions.composition", max_abs(f_g.matrix() - fg.matrix()), 1e-9 * (1.0 + rho * rho));
        const Observable absolute = apply_function(obs, ab, tol);
        const Observable cube = apply_function(obs, {"cube", [](double x) { return x * x * x; }}, tol);
        r.bound(pre + "functions.commute", commutator_norm(absolute, cube),
                1e-10 * (1.0 + rho * rho * rho * rho * static_cast<double>(d)));
        double ind = 0.0;
        const double width = tol.cluster * (1.0 + rho);
        for (std::size_t j = 0; j < sd.coefficients.size(); ++j) {
            const Observable delta = apply_function(obs, indicator(sd.coefficients[j], width), tol);
            ind = std::max(ind, max_abs(delta.matrix() - sd.projectors[j].matrix()));
        }
        r.bound(pre + "functions.indicator", ind, 1e-9);

        if (is_projector(p, tol) != spectrum_in_zero_one(p, tol)) {
            r.check(pre + "projector.characterization", false, 1.0);
        } else {
            r.check(pre + "projector.characterization", true, 0.0);
        }
        if (is_projector(p, tol)) {
            const Projector ip = Projector::make(p, tol);
            r.bound(pre + "projector.complement_exclusive", max_abs(ip.matrix() * complement(ip, tol).matrix()), tol.zero);
        }
        if (sb.size() == d && sb.all_elementary(tol)) dyad_projectors = sb;
    }

    const DyadBasis db = build_dyad_basis(dyad_projectors, {}, tol);
    dyad_checks(r, db, pre + "dyads.");
    const ComponentMatrix cm = decompose_po(p, db);
    r.bound(pre + "dyads.reconstruction", max_abs(cm.reconstruct(db).matrix() - P), 1e-9 * (1.0 + max_abs(P)));
    const bool herm_components = max_abs(cm.entries - cm.entries.adjoint()) <= 1e-10 * (1.0 + max_abs(cm.entries));
    r.check(pre + "dyads.hermiticity_correspondence", herm_components == is_observable(p, tol),
            max_abs(cm.entries - cm.entries.adjoint()));
    const ComponentMatrix cq = decompose_po(q, db);
    r.bound(pre + "dyads.product_homomorphism",
            max_abs(component_mul(cm, cq).entries - decompose_po(p * q, db).entries),
            1e-9 * spectral_scale(P) * spectral_scale(Q));

    const DyadBasis standard = build_dyad_basis(standard_basis(d), {}, tol);
    const ChangeOfBasis cb = change_of_basis(standard, db, tol);
    r.bound(pre + "change.unitarity", unitarity_residual(cb.omega), tol.unitary);
    r.bound(pre + "change.action", action_residual(cb, standard, db), 1e-9);
}

void verify_pair(Report& r, const Options& o, const Observable& a, const Observable& b, std::size_t i, std::size_t j) {
    const std::string pre = "pair[" + std::to_string(i) + "," + std::to_string(j) + "].";
    const Tolerances& tol = o.tol;
    r.bound(pre + "commutator.anticommutativity",
            max_abs(commutator(a, b).matrix() + commutator(b, a).matrix()), tol.zero);
    const bool compatible = are_compatible(a, b, tol);
    bool refined = false;
    const std::vector<Observable> pair{a, b};
    try {
        const ProjectorBasis basis = joint_refine(pair, tol);
        refined = true;
        double worst = 0.0;
        for (const auto& obs : pair) {
            Matrix sum = Matrix::Zero(obs.matrix().rows(), obs.matrix().cols());
            for (const auto& e : basis.elements()) sum += component_on(obs.matrix(), e.matrix()) * e.matrix();
            worst = std::max(worst, max_abs(sum - obs.matrix()) / (1.0 + max_abs(obs.matrix())));
        }
        r.bound(pre + "refine.reconstruction", worst, 1e-9);
        const Matrix& A = a.matrix();
        const Matrix& B = b.matrix();
        const Matrix pa = A * A + 2.0 * A;
        const Matrix qb = B * B * B - B;
        r.bound(pre + "refine.polynomial_commutation", max_abs(pa * qb - qb * pa),
                1e-9 * spectral_scale(pa) * spectral_scale(qb));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::IncompatibleObservables) throw;
    }
    r.check(pre + "compatibility_theorem", compatible == refined, commutator_norm(a, b));
    if (!compatible) {
        const IncompatibilityMeasure m = incompatibility_measure(a, b);
        r.bound(pre + "incompatibility.hermitian", hermitian_deviation(m.definitional), tol.hermitian);
    }
}

void cmd_verify(Report& r, const Options& o, const std::vector<std::string>& paths) {
    std::vector<PseudoObservable> ps;
    for (const auto& p : paths) {
        r.input(p);
        ps.push_back(load_matrix(p, o));
    }
    for (std::size_t i = 1; i < ps.size(); ++i) require_same_dim(ps[0], ps[i]);
    for (std::size_t i = 0; i < ps.size(); ++i) verify_single(r, o, ps[i], i);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (is_observable(ps[i], o.tol) && is_observable(ps[j], o.tol)) {
                verify_pair(r, o, Observable::make(ps[i], o.tol), Observable::make(ps[j], o.tol), i, j);
            }
        }
    }
    r.results()["inputs"] = ps.size();
    r.results()["seed"] = o.seed;
}

Json error_payload(const std::string& command, std::string_view kind, const std::string& message) {
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    Json e;
    e["kind"] = kind;
    e["message"] = message;
    j["error"] = std::move(e);
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"pobs: pseudo-observable algebra toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol-hermitian", o.tol.hermitian, "Hermiticity threshold (max-entry)");
    app.add_option("--tol-cluster", o.tol.cluster, "Eigenvalue clustering threshold");
    app.add_option("--tol-idempotent", o.tol.idempotent, "Idempotency/closure threshold");
    app.add_option("--tol-unitary", o.tol.unitary, "Unitarity threshold");
    app.add_option("--tol-zero", o.tol.zero, "Null-product threshold");
    app.add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--max-dim", o.max_dim, "Largest accepted matrix dimension");
    auto* seed_opt = app.add_option("--seed", o.seed, "Seed for randomized checks and sampling");

    std::string a, b, function, dyads_path;
    std::vector<std::string> files, set_files, cores;
    std::vector<double> phases;
    std::size_t j0 = 0, j1 = 0, draws = 10000;

    auto* decompose_cmd = app.add_subcommand("decompose", "Spectral decomposition of an observable");
    decompose_cmd->add_option("file", a)->required();
    decompose_cmd->add_option("--function", function, "identity|square|sqrt|abs|indicator:<v>");

    auto* commutator_cmd = app.add_subcommand("commutator", "Commutator [A,B]");
    commutator_cmd->add_option("a", a)->required();
    commutator_cmd->add_option("b", b)->required();

    auto* compat_cmd = app.add_subcommand("compat", "Compatibility test of two observables");
    compat_cmd->add_option("a", a)->required();
    compat_cmd->add_option("b", b)->required();

    auto* refine_cmd = app.add_subcommand("refine", "Joint refinement of compatible observables");
    refine_cmd->add_option("files", files)->required();

    auto* complete_cmd = app.add_subcommand("complete-set", "Build a complete set of compatible observables");
    complete_cmd->add_option("files", files)->required();

    auto* express_cmd = app.add_subcommand("express", "Express an observable as a function of a complete set");
    express_cmd->add_option("a", a)->required();
    express_cmd->add_option("--set", set_files)->required();

    auto* dyads_cmd = app.add_subcommand("dyads", "Dyad bases");
    dyads_cmd->require_subcommand(1);
    auto* dyads_build = dyads_cmd->add_subcommand("build", "Build a dyad basis over a projector basis");
    dyads_build->add_option("basis", a)->required();
    dyads_build->add_option("--cores", cores, "Seed core matrices");
    auto* dyads_components = dyads_cmd->add_subcommand("components", "Dyadic components of a pseudo-observable");
    dyads_components->add_option("p", a)->required();
    dyads_components->add_option("--dyads", dyads_path)->required();

    auto* change_cmd = app.add_subcommand("change-basis", "Unitary change between two dyad bases");
    change_cmd->add_option("from", a)->required();
    change_cmd->add_option("to", b)->required();

    auto* swap_cmd = app.add_subcommand("swap", "Swap unitary for two basis indices");
    swap_cmd->add_option("dyads", a)->required();
    swap_cmd->add_option("j0", j0)->required();
    swap_cmd->add_option("j1", j1)->required();

    auto* phase_cmd = app.add_subcommand("phase", "Phase unitary to an equivalent dyad basis");
    phase_cmd->add_option("dyads", a)->required();
    phase_cmd->add_option("--phases", phases)->required()->expected(1, -1);

    auto* simulate_cmd = app.add_subcommand("simulate", "Sample outcomes from an ensemble model");
    simulate_cmd->add_option("model", a)->required();
    simulate_cmd->add_option("files", files)->required();
    simulate_cmd->add_option("-n", draws, "Number of draws");

    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on the inputs");
    verify_cmd->add_option("files", files)->required();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::Success&) {
        err << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        out << io::dump(error_payload("", "UsageError", e.what()));
        return kExitUsage;
    }
    o.seed_given = seed_opt->count() > 0;

    std::string command;
    for (auto* sub : app.get_subcommands()) {
        command = sub->get_name();
        for (auto* nested : sub->get_subcommands()) command += " " + nested->get_name();
    }

    try {
        o.tol.validate();
        Report r(command);
        bool print = true;
        if (decompose_cmd->parsed()) cmd_decompose(r, o, a, function);
        else if (commutator_cmd->parsed()) cmd_commutator(r, o, a, b);
        else if (compat_cmd->parsed()) cmd_compat(r, o, a, b);
        else if (refine_cmd->parsed()) cmd_refine(r, o, files);
        else if (complete_cmd->parsed()) cmd_complete_set(r, o, files);
        else if (express_cmd->parsed()) cmd_express(r, o, a, set_files);
        else if (dyads_build->parsed()) cmd_dyads_build(r, o, a, cores);
        else if (dyads_components->parsed()) cmd_dyads_components(r, o, a, dyads_path);
        else if (change_cmd->parsed()) cmd_change_basis(r, o, a, b);
        else if (swap_cmd->parsed()) cmd_swap(r, o, a, j0, j1);
        else if (phase_cmd->parsed()) cmd_phase(r, o, a, phases);
        else if (simulate_cmd->parsed()) print = cmd_simulate(r, o, a, files, draws, out);
        else if (verify_cmd->parsed()) cmd_verify(r, o, files);

        if (print) {
            if (o.output == "csv") r.write_checks_csv(out);
            else out << io::dump(r.to_json(o.tol));
        }
        return r.ok() ? kExitOk : kExitCheckFailed;
    } catch (const Error& e) {
        out << io::dump(error_payload(command, to_string(e.kind()), e.what()));
        return kExitUsage;
    }
}

}  // namespace pobs::cli
