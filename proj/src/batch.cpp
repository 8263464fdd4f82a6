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

#include "gap/batch.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gap/errors.hpp"
#include "gap/gap_sampler.hpp"
#include "gap/json_io.hpp"

namespace gap {

std::string_view measure_label(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::G: return "G";
    case MeasureKind::GapMixture: return "GAP";
    case MeasureKind::GapReweight: return "GA-weighted";
  }
  return "G";
}

MeasureKind parse_measure(std::string_view text) {
  if (text == "G") return MeasureKind::G;
  if (text == "GAP" || text == "GAP-mixture") return MeasureKind::GapMixture;
  if (text == "GA-weighted" || text == "GAP-reweight") return MeasureKind::GapReweight;
  throw FormatError("unknown measure '" + std::string(text) + "'");
}

SampleBatch sample_G_batch(const GaussianMeasureSpec& spec, Index n, std::uint64_t seed,
                           unsigned threads) {
  if (n < 1) throw Error("batch size must be >= 1");
  spec.validate();
  SampleBatch batch;
  batch.kind = MeasureKind::G;
  batch.seed = seed;
  batch.samples.resize(spec.dim(), n);
  parallel_for_index(n, threads, [&](Index i) {
    RandomStream stream(seed, static_cast<std::uint64_t>(i));
    batch.samples.col(i) = sample_G(spec, stream);
  });
  return batch;
}

SampleBatch sample_batch(const DensityOperator& rho, MeasureKind kind, Index n,
                         std::uint64_t seed, unsigned threads) {
  if (n < 1) throw Error("batch size must be >= 1");
  const GaussianMeasureSpec spec = GaussianMeasureSpec::centered(rho);
  switch (kind) {
    case MeasureKind::G:
      return sample_G_batch(spec, n, seed, threads);
    case MeasureKind::GapMixture: {
      SampleBatch batch;
      batch.kind = kind;
      batch.seed = seed;
      batch.samples.resize(rho.dim(), n);
      const GapMixtureSampler sampler(rho);
      parallel_for_index(n, threads, [&](Index i) {
        RandomStream stream(seed, static_cast<std::uint64_t>(i));
        batch.samples.col(i) = sampler(stream);
      });
      return batch;
    }
    case MeasureKind::GapReweight: {
      SampleBatch batch;
      batch.kind = kind;
      batch.seed = seed;
      batch.samples.resize(rho.dim(), n);
      batch.weights.resize(n);
      parallel_for_index(n, threads, [&](Index i) {
        RandomStream stream(seed, static_cast<std::uint64_t>(i));
        WeightedSample s = sample_GAP_weighted(spec, stream);
        batch.samples.col(i) = s.vector;
        batch.weights(i) = s.weight;
      });
      return batch;
    }
  }
  throw Error("unknown measure kind");
}

std::string batch_to_text(const SampleBatch& batch) {
  Json header{{"dim", batch.dim()},
              {"n", batch.size()},
              {"measure", std::string(measure_label(batch.kind))},
              {"seed", batch.seed},
              {"rho_file", batch.rho_file}};
  std::string out = dump_json(header, -1);
  out += '\n';
  for (Index i = 0; i < batch.size(); ++i) {
    for (Index k = 0; k < batch.dim(); ++k) {
      if (k > 0) out += ',';
      out += format_double(batch.samples(k, i).real());
      out += ',';
      out += format_double(batch.samples(k, i).imag());
    }
    if (batch.weighted()) {
      out += ',';
      out += format_double(batch.weights(i));
    }
    out += '\n';
  }
  return out;
}

namespace {

double parse_double(std::string_view field, Index row) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw FormatError("row " + std::to_string(row) + ": bad number '" + std::string(field) + "'");
  return value;
}

}  // namespace

SampleBatch batch_from_text(std::string_view text) {
  const size_t eol = text.find('\n');
  if (eol == std::string_view::npos) throw FormatError("batch file has no header line");
  Json header;
  try {
    header = Json::parse(text.substr(0, eol));
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("batch header: ") + e.what());
  }
  for (const char* key : {"dim", "n", "measure", "seed"})
    if (!header.contains(key)) throw FormatError(std::string("batch header lacks \"") + key + "\"");

  SampleBatch batch;
  batch.kind = parse_measure(header["measure"].get<std::string>());
  batch.seed = header["seed"].get<std::uint64_t>();
  if (header.contains("rho_file") && header["rho_file"].is_string())
    batch.rho_file = header["rho_file"].get<std::string>();
  const Index dim = header["dim"].get<Index>();
  const Index n = header["n"].get<Index>();
  if (dim < 1 || n < 0) throw FormatError("batch header has invalid dim or n");
  const Index columns = 2 * dim + (batch.kind == MeasureKind::GapReweight ? 1 : 0);
  batch.samples.resize(dim, n);
  if (batch.kind == MeasureKind::GapReweight) batch.weights.resize(n);

  std::vector<double> values(static_cast<size_t>(columns));
  size_t pos = eol + 1;
  Index row = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (row >= n) throw FormatError("batch has more rows than the header's n");
    Index col = 0;
    size_t start = 0;
    while (true) {
      const size_t comma = line.find(',', start);
      const std::string_view field =
          line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start);
      if (col >= columns)
        throw FormatError("row " + std::to_string(row) + ": too many columns");
      values[static_cast<size_t>(col++)] = parse_double(field, row);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (col != columns)
      throw FormatError("row " + std::to_string(row) + ": expected " + std::to_string(columns) +
                        " columns, got " + std::to_string(col));
    for (Index k = 0; k < dim; ++k)
      batch.samples(k, row) = Complex(values[static_cast<size_t>(2 * k)],
                                      values[static_cast<size_t>(2 * k + 1)]);
    if (batch.weighted()) batch.weights(row) = values.back();
    ++row;
  }
  if (row != n)
    throw FormatError("batch has " + std::to_string(row) + " rows, header says " + std::to_string(n));
  return batch;
}

void write_batch_file(const std::filesystem::path& path, const SampleBatch& batch) {
  atomic_write(path, batch_to_text(batch));
}

SampleBatch read_batch_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return batch_from_text(buffer.str());
}

}  // namespace gap
