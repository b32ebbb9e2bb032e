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

#include <filesystem>
#include <string>

#include "json.hpp"

#include "pobs/basis_change.hpp"
#include "pobs/compatibility.hpp"
#include "pobs/core.hpp"
#include "pobs/dyads.hpp"
#include "pobs/projectors.hpp"
#include "pobs/spectral.hpp"

namespace pobs::io {

/// Insertion-ordered JSON keeps serialized key order fixed.
using Json = nlohmann::ordered_json;

/// {"dim": d, "label": "...", "re": [[...]], "im": [[...]]}, row-major.
/// "im" is optional on input and defaults to zeros; "label" is optional.
/// Throws ParseError on missing fields, non-numeric entries, jagged or
/// non-square arrays, or a "dim" that disagrees with the arrays.
PseudoObservable matrix_from_json(const Json& j);
Json to_json(const PseudoObservable& p);
Json to_json(const Matrix& m, const std::string& label = {});

/// {"dim": d, "elements": [matrix, ...]}
ProjectorBasis basis_from_json(const Json& j, const Tolerances& tol = {});
Json to_json(const ProjectorBasis& basis);

/// {"coefficients": [...], "projectors": [matrix, ...]}
Json to_json(const SpectralDecomposition& sd);

/// {"basis": [...], "labels": [[...], ...]}
Json to_json(const CompleteSet& cs);
Json to_json(const IncompleteReport& report);

/// [{"key": [...], "value": v}, ...]
Json to_json(const FunctionTable& table);

/// {"projectors": [...], "dyads": [[matrix, ...], ...]}
DyadBasis dyad_basis_from_json(const Json& j, const Tolerances& tol = {});
Json to_json(const DyadBasis& db);

/// Core matrix format plus "basis_ref".
Json to_json(const ComponentMatrix& cm);

/// {"omega": matrix, "from_ref": h1, "to_ref": h2}
Json to_json(const ChangeOfBasis& cb);

Json to_json(const Tolerances& tol);

/// Reads and parses a JSON file. Throws ParseError.
Json read_json_file(const std::filesystem::path& path);

/// Deterministic text form: two-space indent, fixed key order, and every
/// floating-point value printed with 17 significant digits.
std::string dump(const Json& j);

/// %.17g with a trailing ".0" when the result would read as an integer.
std::string format_double(double v);

}  // namespace pobs::io
