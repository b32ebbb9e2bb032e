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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "pobs/io.hpp"

using pobs::io::Json;

namespace {

const std::string kData = POBS_TEST_DATA;

struct Run {
    int code;
    std::string out;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = pobs::cli::run(args, out, err);
    return {code, out.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "pobs_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

bool all_pass(const Json& j) {
    for (const auto& c : j["checks"]) {
        if (!c["pass"].get<bool>()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("decompose") {
    const Run r = run({"decompose", data("pauli_x.json")});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "decompose");
    CHECK(j["inputs"][0] == data("pauli_x.json"));
    CHECK(j["results"]["coefficients"][0].get<double>() == doctest::Approx(-1.0));
    CHECK(j["results"]["coefficients"][1].get<double>() == doctest::Approx(1.0));
    CHECK(all_pass(j));
    CHECK(j["tolerances"]["cluster"].get<double>() == 1e-8);

    const Run f = run({"decompose", data("diag3.json"), "--function", "square"});
    REQUIRE(f.code == 0);
    CHECK(f.json()["results"]["function_value"]["re"][2][2].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("commutator and compat") {
    const Run c = run({"commutator", data("pauli_x.json"), data("pauli_z.json")});
    REQUIRE(c.code == 0);
    CHECK(c.json()["results"]["commutator"]["re"][0][1].get<double>() == -2.0);
    CHECK(c.json()["results"]["commutator"]["re"][1][0].get<double>() == 2.0);

    const Run r = run({"compat", data("pauli_x.json"), data("pauli_z.json")});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    CHECK(j["results"]["compatible"] == false);
    CHECK(j["results"]["commutator_norm"].get<double>() == 2.0);
    CHECK(r.out.find("\"commutator_norm\": 2.0") != std::string::npos);
    CHECK(run({"compat", data("diag3.json"), data("diag3b.json")}).json()["results"]["compatible"] == true);
}

TEST_CASE("refine, complete-set and express") {
    const Run r = run({"refine", data("diag3.json"), data("diag3b.json")});
    REQUIRE(r.code == 0);
    CHECK(r.json()["results"]["elements"].size() == 3);

    const Run cs = run({"complete-set", data("diag3.json"), data("diag3b.json")});
    REQUIRE(cs.code == 0);
    CHECK(cs.json()["results"]["complete"] == true);
    const Run inc = run({"complete-set", data("diag3.json")});
    REQUIRE(inc.code == 0);
    CHECK(inc.json()["results"]["complete"] == false);

    const Run e = run({"express", data("diag789.json"), "--set", data("diag3.json"), data("diag3b.json")});
    REQUIRE(e.code == 0);
    CHECK(e.json()["results"]["table"].size() == 3);
    CHECK(run({"express", data("diag789.json"), "--set", data("diag3.json")}).code == 1);
    const Run bad = run({"refine", data("pauli_x.json"), data("pauli_z.json")});
    CHECK(bad.code == 2);
    CHECK(bad.json()["error"]["kind"] == "IncompatibleObservables");
}

TEST_CASE("dyads, change-basis, swap and phase") {
    const Run b = run({"dyads", "build", data("standard_basis2.json")});
    REQUIRE(b.code == 0);
    CHECK(b.json()["command"] == "dyads build");
    const auto std_path = scratch("standard_dyads.json");
    write(std_path, b.out);
    const Run x = run({"dyads", "build", data("x_eigenbasis.json")});
    REQUIRE(x.code == 0);
    const auto x_path = scratch("x_dyads.json");
    write(x_path, x.out);

    const Run comp = run({"dyads", "components", data("pauli_x.json"), "--dyads", x_path.string()});
    REQUIRE(comp.code == 0);
    CHECK(comp.json()["results"]["re"][0][0].get<double>() == doctest::Approx(-1.0));
    CHECK(comp.json()["results"]["re"][1][1].get<double>() == doctest::Approx(1.0));

    const Run cb = run({"change-basis", std_path.string(), x_path.string()});
    REQUIRE(cb.code == 0);
    CHECK(all_pass(cb.json()));

    const Run sw = run({"swap", std_path.string(), "0", "1"});
    REQUIRE(sw.code == 0);
    CHECK(all_pass(sw.json()));
    CHECK(run({"swap", std_path.string(), "1", "1"}).json()["error"]["kind"] == "IndexError");

    const Run ph = run({"phase", std_path.string(), "--phases", "0", "1.5"});
    REQUIRE(ph.code == 0);
    CHECK(all_pass(ph.json()));
    CHECK(run({"phase", std_path.string(), "--phases", "0"}).json()["error"]["kind"] == "LengthMismatch");
}

TEST_CASE("simulate") {
    const Run j = run({"simulate", data("model2.json"), data("pauli_z.json"), "-n", "4000"});
    REQUIRE(j.code == 0);
    const Json r = j.json()["results"];
    CHECK(r["rng"] == "splitmix64-counter/u53");
    CHECK(r["spectral_means"][0].get<double>() == doctest::Approx(-0.5));
    const Run csv = run({"--output", "csv", "simulate", data("model2.json"), data("pauli_z.json"), "-n", "3"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("draw,event,sigma_z\n", 0) == 0);
    const Run other_seed = run({"--seed", "5", "--output", "csv", "simulate", data("model2.json"), data("pauli_z.json"), "-n", "3"});
    CHECK(other_seed.code == 0);
    CHECK(run({"simulate", data("model2.json"), data("pauli_x.json")}).json()["error"]["kind"] == "IncompatibleObservables");
}

TEST_CASE("verify") {
    const Run id = run({"verify", data("identity.json")});
    CHECK(id.code == 0);
    CHECK(all_pass(id.json()));
    const Run many = run({"verify", data("pauli_x.json"), data("pauli_z.json"), data("pauli_y.json"), data("nonhermitian.json")});
    CHECK(many.code == 0);
    CHECK(many.json()["checks"].size() > 50);
    for (const auto& c : many.json()["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("residual"));
    }
    const Run looser = run({"--tol-zero", "1e-9", "verify", data("diag3.json"), data("diag3b.json")});
    CHECK(looser.code == 0);
    CHECK(looser.json()["tolerances"]["zero"].get<double>() == 1e-9);
    // A cluster threshold wider than the spectrum merges distinct eigenvalues,
    // so the reconstruction check fails.
    const Run merged = run({"--tol-cluster", "10", "decompose", data("diag3.json")});
    CHECK(merged.code == 1);
    CHECK_FALSE(all_pass(merged.json()));
}

TEST_CASE("identical invocations are byte-identical") {
    const std::vector<std::string> args{"verify", data("pauli_x.json"), data("pauli_z.json")};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> sim{"simulate", data("model2.json"), data("pauli_z.json"), "-n", "100"};
    CHECK(run(sim).out == run(sim).out);
}

TEST_CASE("input and usage errors exit with 2") {
    const Run missing = run({"decompose", data("missing.json")});
    CHECK(missing.code == 2);
    CHECK(missing.json()["error"]["kind"] == "ParseError");
    CHECK(run({"decompose", data("not_square.json")}).json()["error"]["kind"] == "ParseError");
    CHECK(run({"decompose", data("nonhermitian.json")}).json()["error"]["kind"] == "NotHermitian");
    const Run limit = run({"--max-dim", "2", "decompose", data("diag3.json")});
    CHECK(limit.code == 2);
    CHECK(limit.json()["error"]["kind"] == "DimensionLimit");
    CHECK(run({"compat", data("pauli_x.json"), data("diag3.json")}).json()["error"]["kind"] == "DimensionMismatch");
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--output", "xml", "decompose", data("pauli_x.json")}).code == 2);
    CHECK(run({"--tol-zero", "-1", "decompose", data("pauli_x.json")}).code == 2);
}
