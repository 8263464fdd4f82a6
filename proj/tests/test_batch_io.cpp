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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "gap/batch.hpp"
#include "gap/errors.hpp"
#include "test_util.hpp"

using namespace gap;

TEST_CASE("measure labels") {
  CHECK(measure_label(MeasureKind::G) == "G");
  CHECK(measure_label(MeasureKind::GapMixture) == "GAP");
  CHECK(measure_label(MeasureKind::GapReweight) == "GA-weighted");
  CHECK(parse_measure("GAP-mixture") == MeasureKind::GapMixture);
  CHECK(parse_measure("GAP-reweight") == MeasureKind::GapReweight);
  CHECK(parse_measure("GA-weighted") == MeasureKind::GapReweight);
  CHECK_THROWS_AS(parse_measure("GA"), FormatError);
}

TEST_CASE("batch text round-trips exactly") {
  const auto rho = gap::test::random_density(3, 6);
  for (auto kind : {MeasureKind::G, MeasureKind::GapMixture, MeasureKind::GapReweight}) {
    SampleBatch b = sample_batch(rho, kind, 50, 17, 1);
    b.rho_file = "rho.json";
    const std::string text = batch_to_text(b);
    const SampleBatch back = batch_from_text(text);
    CHECK(back.kind == kind);
    CHECK(back.seed == 17);
    CHECK(back.rho_file == "rho.json");
    CHECK(back.samples == b.samples);
    CHECK(back.weights == b.weights);
    CHECK(batch_to_text(back) == text);
  }
}

TEST_CASE("batch files") {
  const auto path = std::filesystem::temp_directory_path() / "gap_batch_io.csv";
  const SampleBatch b = sample_batch(maximally_mixed(2), MeasureKind::GapReweight, 20, 1, 1);
  write_batch_file(path, b);
  CHECK(read_batch_file(path).weights == b.weights);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_batch_file(path), Error);
}

TEST_CASE("malformed batches are rejected") {
  const std::string header = R"({"dim": 1, "measure": "G", "n": 2, "rho_file": "", "seed": 0})";
  CHECK_NOTHROW(batch_from_text(header + "\n1,0\n0,1\n"));
  CHECK_THROWS_AS(batch_from_text("not json\n1,0\n"), FormatError);
  CHECK_THROWS_AS(batch_from_text(header + "\n1,0\n"), FormatError);
  CHECK_THROWS_AS(batch_from_text(header + "\n1,0\n0,1,2\n"), FormatError);
  CHECK_THROWS_AS(batch_from_text(header + "\n1,0\n0,x\n"), FormatError);
  CHECK_THROWS_AS(batch_from_text(header + "\n1,0\n0,1\n1,1\n"), FormatError);
}
