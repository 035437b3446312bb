// Copyright 2026 The qgrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qgrad/pqc_io.h"

#include <gtest/gtest.h>

#include "dense_oracle.h"
#include "qgrad/bench.h"

namespace qgrad {
namespace {

using nlohmann::json;

TEST(PauliSumJson, RoundTrip) {
  const PauliSum s = PauliSum::from_strings({{1.0, "ZZ"}, {-0.5, "XI"}});
  const PauliSum back = pauli_sum_from_json(to_json(s));
  EXPECT_EQ(back.to_string(), s.to_string());
  EXPECT_THROW(pauli_sum_from_json(json::parse(R"([[1.0, "XQ"]])")), std::invalid_argument);
  EXPECT_THROW(pauli_sum_from_json(json::parse(R"([[1.0, "X"], [1.0, "XX"]])")),
               std::invalid_argument);
  EXPECT_THROW(pauli_sum_from_json(json::parse(R"({"a": 1})")), std::invalid_argument);
}

TEST(Ops, ParseEveryKind) {
  const json j = json::parse(R"([
    {"op": "rotation", "word": "XY", "angle": 0.3},
    {"op": "generator", "generator": [[1.0, "ZZ"], [0.5, "XI"]], "angle": -0.2},
    {"op": "controlled", "control": 0, "value": 1, "word": "IX"},
    {"op": "ancilla", "qubit": 1, "phase": "+i"},
    {"op": "inverse", "ops": [{"op": "rotation", "word": "ZI", "angle": 1.0}]}
  ])");
  const GateRun run = ops_from_json(j, 2);
  ASSERT_EQ(run.size(), 5u);
  EXPECT_TRUE(std::holds_alternative<Segment>(run[4].kind));
  EXPECT_EQ(std::get<AncillaPrep>(run[3].kind).phase_sign, 1);
  // Serialization preserves the action on a state.
  StateVector a(2), b(2);
  a.apply(run);
  b.apply(ops_from_json(to_json(run), 2));
  EXPECT_LT((a.amplitudes() - b.amplitudes()).norm(), 1e-14);
  EXPECT_THROW(ops_from_json(json::parse(R"([{"op": "teleport"}])"), 2), std::invalid_argument);
  EXPECT_THROW(ops_from_json(json::parse(R"([{"op": "rotation", "word": "XYZ", "angle": 1}])"),
                             2),
               std::invalid_argument);
}

TEST(Pqc, LoadFixtures) {
  const Pqc rx = load_pqc(QGRAD_TEST_DATA_DIR "/rx.json");
  EXPECT_EQ(rx.qubit_count(), 1);
  EXPECT_NEAR(eval_cost(rx, {0.0}), 1.0, 1e-15);
  const Pqc mixed = load_pqc(QGRAD_TEST_DATA_DIR "/mixed_generator.json");
  EXPECT_EQ(mixed.gate_count(), 2u);
  EXPECT_EQ(mixed.input_prep().size(), 1u);
  EXPECT_EQ(mixed.gate(0).param, "a");
  EXPECT_THROW(load_pqc(QGRAD_TEST_DATA_DIR "/bad_width.json"), std::invalid_argument);
  EXPECT_THROW(load_pqc("/nonexistent.json"), std::invalid_argument);
}

TEST(Pqc, QnnFixtureMatchesBuilder) {
  const Pqc a = load_pqc(QGRAD_TEST_DATA_DIR "/qnn.json");
  const Pqc b = build_qnn();
  const std::vector<double> theta{0.3, -0.2, 0.7};
  EXPECT_NEAR(eval_cost(a, theta), eval_cost(b, theta), 1e-12);
}

TEST(Pqc, JsonRoundTripKeepsCounting) {
  const QaqcProblem q = build_qaqc(QaqcTarget::kIsing, 2, 1, Topology::kRing);
  const Pqc back = pqc_from_json(to_json(q.pqc));
  EXPECT_EQ(back.counting(), ObservableCounting::kSingleUnit);
  const std::vector<double> theta{0.4, 0.1};
  EXPECT_NEAR(eval_cost(back, theta), eval_cost(q.pqc, theta), 1e-12);
  const Pqc r = oracle::random_pqc(3, 3, 4);
  EXPECT_NEAR(eval_cost(pqc_from_json(to_json(r)), {0.1, 0.2, 0.3, 0.4}),
              eval_cost(r, {0.1, 0.2, 0.3, 0.4}), 1e-12);
}

TEST(Pqc, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_pqc("{"), std::invalid_argument);
  EXPECT_THROW(parse_pqc(R"({"qubits": 1, "observable": [[1, "Z"]]})"), std::invalid_argument);
  EXPECT_THROW(parse_pqc(R"({"qubits": 1, "gates": [], "observable": [[1, "Z"]],
                            "observable_counting": "some"})"),
               std::invalid_argument);
}

TEST(Csv, RealsAndIndices) {
  EXPECT_EQ(parse_reals("0.1,-0.4,1"), (std::vector<double>{0.1, -0.4, 1}));
  EXPECT_EQ(parse_indices("0,2,1"), (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_THROW(parse_reals("0.1,x"), std::invalid_argument);
  EXPECT_THROW(parse_indices("-1"), std::invalid_argument);
  EXPECT_THROW(parse_indices("1.5"), std::invalid_argument);
}

}  // namespace
}  // namespace qgrad
