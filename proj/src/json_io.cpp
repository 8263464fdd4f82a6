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

#include "gap/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gap/errors.hpp"

namespace gap {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw NonFinite();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep floats recognisable as floats when read back.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write_string(std::ostream& out, const std::string& s) {
  // nlohmann's own escaping for strings.
  out << Json(s).dump();
}

void write_value(std::ostream& out, const Json& v, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (pretty) out << '\n' << std::string(static_cast<size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        write_string(out, it.key());
        out << (pretty ? ": " : ":");
        write_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) {
        return e.is_primitive();
      });
      out << '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out << (flat && pretty ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        write_value(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case Json::value_t::number_float:
      out << format_double(v.get<double>());
      return;
    default:
      out << v.dump();
      return;
  }
}

}  // namespace

void write_json(std::ostream& out, const Json& value, int indent) {
  write_value(out, value, indent, 0);
}

std::string dump_json(const Json& value, int indent) {
  std::ostringstream out;
  write_json(out, value, indent);
  return out.str();
}

Json matrix_to_json(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimMismatch(m.rows(), m.cols());
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

namespace {

Complex complex_from_json(const Json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw FormatError("complex entry must be [re, im]");
  return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    throw FormatError("matrix JSON needs \"dim\" and \"entries\"");
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1)
    throw FormatError("\"dim\" must be a positive integer");
  const long d = j["dim"].get<long>();
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<long>(entries.size()) != d * d)
    throw FormatError("\"entries\" must hold dim*dim = " + std::to_string(d * d) +
                      " values, got " + std::to_string(entries.size()));
  ComplexMatrix m(d, d);
  for (long i = 0; i < d; ++i)
    for (long k = 0; k < d; ++k) m(i, k) = complex_from_json(entries[i * d + k]);
  return m;
}

Json vector_to_json(const StateVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

StateVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("vector must be a nonempty array");
  StateVector v(static_cast<Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  atomic_write(path, dump_json(matrix_to_json(m)) + "\n");
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  return matrix_from_json(read_json_file(path));
}

DensityOperator read_density_file(const std::filesystem::path& path) {
  return DensityOperator::from_matrix(read_matrix_file(path));
}

}  // namespace gap
