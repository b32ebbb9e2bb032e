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

#include "pobs/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pobs::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
    throw Error(ErrorKind::ParseError, what);
}

Eigen::MatrixXd read_real_array(const Json& rows, const char* field) {
    if (!rows.is_array() || rows.empty()) parse_error(std::string("'") + field + "' must be a non-empty array of rows");
    const std::size_t n = rows.size();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const Json& row = rows[r];
        if (!row.is_array()) parse_error(std::string("'") + field + "' row " + std::to_string(r) + " is not an array");
        if (row.size() != n) {
            parse_error(std::string("'") + field + "' is not square: row " + std::to_string(r) + " has " +
                        std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (!row[c].is_number()) {
                parse_error(std::string("'") + field + "' entry (" + std::to_string(r) + "," + std::to_string(c) +
                            ") is not a number");
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
        }
    }
    return out;
}

Json matrix_rows(const Matrix& m, bool imaginary) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            // +0.0 normalizes negative zeros for byte-stable output.
            row.push_back((imaginary ? m(r, c).imag() : m(r, c).real()) + 0.0);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void dump_into(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += inner;
                out += Json(key).dump();
                out += ": ";
                dump_into(value, out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line so matrix rows read naturally.
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            if (flat) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump_into(j[i], out, indent + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                dump_into(j[i], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

PseudoObservable matrix_from_json(const Json& j) {
    if (!j.is_object()) parse_error("matrix must be a JSON object");
    if (!j.contains("re")) parse_error("matrix is missing 're'");
    const Eigen::MatrixXd re = read_real_array(j.at("re"), "re");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
    if (j.contains("im") && !j.at("im").is_null()) {
        im = read_real_array(j.at("im"), "im");
        if (im.rows() != re.rows()) parse_error("'im' and 're' differ in size");
    }
    if (j.contains("dim")) {
        const Json& d = j.at("dim");
        if (!d.is_number_integer() || d.get<long long>() != re.rows()) {
            parse_error("'dim' does not match the matrix size " + std::to_string(re.rows()));
        }
    }
    std::string label;
    if (j.contains("label") && !j.at("label").is_null()) {
        if (!j.at("label").is_string()) parse_error("'label' must be a string");
        label = j.at("label").get<std::string>();
    }
    Matrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    if (!m.allFinite()) parse_error("matrix entries must be finite");
    return PseudoObservable(std::move(m), std::move(label));
}

Json to_json(const Matrix& m, const std::string& label) {
    Json j;
    j["dim"] = m.rows();
    j["label"] = label;
    j["re"] = matrix_rows(m, false);
    j["im"] = matrix_rows(m, true);
    return j;
}

Json to_json(const PseudoObservable& p) {
    return to_json(p.matrix(), p.label());
}

ProjectorBasis basis_from_json(const Json& j, const Tolerances& tol) {
    if (!j.is_object() || !j.contains("elements") || !j.at("elements").is_array()) {
        parse_error("projector basis needs an 'elements' array");
    }
    std::vector<Projector> elements;
    for (const auto& e : j.at("elements")) elements.push_back(Projector::make(matrix_from_json(e), tol));
    ProjectorBasis basis = ProjectorBasis::make(std::move(elements), tol);
    if (j.contains("dim") && j.at("dim") != Json(basis.dim())) {
        parse_error("'dim' does not match the basis elements");
    }
    return basis;
}

Json to_json(const ProjectorBasis& basis) {
    Json j;
    j["dim"] = basis.dim();
    Json elements = Json::array();
    for (const auto& e : basis.elements()) elements.push_back(to_json(e.pseudo()));
    j["elements"] = std::move(elements);
    return j;
}

Json to_json(const SpectralDecomposition& sd) {
    Json j;
    j["coefficients"] = sd.coefficients;
    Json projectors = Json::array();
    for (const auto& p : sd.projectors) projectors.push_back(to_json(p.pseudo()));
    j["projectors"] = std::move(projectors);
    return j;
}

Json to_json(const CompleteSet& cs) {
    Json j;
    Json basis = Json::array();
    for (const auto& e : cs.basis.elements()) basis.push_back(to_json(e.pseudo()));
    j["basis"] = std::move(basis);
    j["labels"] = cs.labels;
    return j;
}

Json to_json(const IncompleteReport& report) {
    Json j;
    Json basis = Json::array();
    for (const auto& e : report.basis.elements()) basis.push_back(to_json(e.pseudo()));
    j["basis"] = std::move(basis);
    j["non_elementary"] = report.non_elementary;
    j["traces"] = report.traces;
    return j;
}

Json to_json(const FunctionTable& table) {
    Json j = Json::array();
    for (const auto& e : table.entries) {
        Json entry;
        entry["key"] = e.key;
        entry["value"] = e.value;
        j.push_back(std::move(entry));
    }
    return j;
}

DyadBasis dyad_basis_from_json(const Json& j, const Tolerances& tol) {
    if (!j.is_object() || !j.contains("projectors") || !j.contains("dyads")) {
        parse_error("dyad basis needs 'projectors' and 'dyads'");
    }
    const Json& ps = j.at("projectors");
    const Json& ds = j.at("dyads");
    if (!ps.is_array() || !ds.is_array()) parse_error("'projectors' and 'dyads' must be arrays");
    std::vector<Projector> elements;
    for (const auto& e : ps) elements.push_back(Projector::make(matrix_from_json(e), tol));
    ProjectorBasis basis = ProjectorBasis::make(std::move(elements), tol);
    const std::size_t d = basis.size();
    if (ds.size() != d) parse_error("'dyads' must have one row per projector");
    std::vector<PseudoObservable> dyads;
    for (const auto& row : ds) {
        if (!row.is_array() || row.size() != d) parse_error("'dyads' must be a square array of matrices");
        for (const auto& m : row) dyads.push_back(matrix_from_json(m));
    }
    return DyadBasis::make(std::move(basis), std::move(dyads), tol);
}

Json to_json(const DyadBasis& db) {
    Json j;
    Json projectors = Json::array();
    for (const auto& e : db.projectors().elements()) projectors.push_back(to_json(e.pseudo()));
    j["projectors"] = std::move(projectors);
    Json dyads = Json::array();
    for (std::size_t r = 0; r < db.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < db.dim(); ++c) row.push_back(to_json(db(r, c)));
        dyads.push_back(std::move(row));
    }
    j["dyads"] = std::move(dyads);
    j["ref"] = db.ref();
    return j;
}

Json to_json(const ComponentMatrix& cm) {
    Json j = to_json(cm.entries, "components");
    j["basis_ref"] = cm.basis_ref;
    return j;
}

Json to_json(const ChangeOfBasis& cb) {
    Json j;
    j["omega"] = to_json(cb.omega);
    j["from_ref"] = cb.from_ref;
    j["to_ref"] = cb.to_ref;
    j["components"] = to_json(cb.components, "omega_components");
    j["k0"] = cb.k0;
    j["k0_tilde"] = cb.k0_tilde;
    return j;
}

Json to_json(const Tolerances& tol) {
    Json j;
    j["hermitian"] = tol.hermitian;
    j["cluster"] = tol.cluster;
    j["idempotent"] = tol.idempotent;
    j["unitary"] = tol.unitary;
    j["zero"] = tol.zero;
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        parse_error("'" + path.string() + "': " + e.what());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string dump(const Json& j) {
    std::string out;
    dump_into(j, out, 0);
    out += "\n";
    return out;
}

}  // namespace pobs::io
