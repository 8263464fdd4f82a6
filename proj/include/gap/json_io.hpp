// Copyright 2026 The gapmeasure Authors
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

// JSON and file plumbing shared by every module.
//
// Matrix files: { "dim": d, "entries": [[re, im], ...] } row-major, length d².
// All floating-point values are written with 17 significant digits so that
// reading a file back reproduces the doubles bit for bit.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gap/spectral.hpp"
#include "json.hpp"

namespace gap {

using Json = nlohmann::json;

/// "%.17g" formatting; throws NonFinite for NaN/inf.
std::string format_double(double x);

/// Serializes `value` with every float printed through format_double.
/// indent < 0 gives compact output.
void write_json(std::ostream& out, const Json& value, int indent = 2);
std::string dump_json(const Json& value, int indent = 2);

Json matrix_to_json(const ComplexMatrix& m);
/// Throws FormatError for a missing dim or a wrong-length entry array.
ComplexMatrix matrix_from_json(const Json& j);

Json vector_to_json(const StateVector& v);
StateVector vector_from_json(const Json& j);

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

/// Reads a matrix file and turns it into a density operator.
DensityOperator read_density_file(const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace gap
