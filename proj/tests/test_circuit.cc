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

#include "qgrad/circuit.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "dense_oracle.h"
#include "qgrad/grouping.h"

namespace qgrad {
namespace {

constexpr double kPi = std::numbers::pi;

PauliWord W(const char* s) { return PauliWord::from_string(s); }
PauliSum S(std::vector<std::pair<double, std::string>> t) {
  return PauliSum::from_strings(t);
}

Pqc rx_pqc() { return Pqc(1, {{S({{1.0, "X"}}), "t"}}, S({{1.0, "Z"}})); }

StateVector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto& a : v) a = Complex(g(rng), g(rng));
  return StateVector(n, v / v.norm());
}

TEST(Apply, RotationXByPi) {
  StateVector s(1);
  s.apply(PauliRotation{W("X"), kPi});
  EXPECT_NEAR(std::abs(s.amplitudes()(0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitudes()(1) - Complex(0, -1)), 0, 1e-15);
}

TEST(Apply, ZeroAngleGeneratorIsIdentity) {
  StateVector s = random_state(2, 4);
  const Eigen::VectorXcd before = s.amplitudes();
  s.apply(GeneratorRotation{S({{1.0, "ZZ"}, {1.0, "XX"}}), 0.0});
  EXPECT_LT((s.amplitudes() - before).norm(), 1e-15);
}

TEST(Apply, NonCommutingGeneratorMatchesDenseExpm) {
  const PauliSum g = S({{0.7, "ZX"}, {-0.4, "XI"}});
  ASSERT_FALSE(g.all_commute());
  StateVector s = random_state(2, 8);
  const Eigen::VectorXcd psi = s.amplitudes();
  s.apply(GeneratorRotation{g, 1.3});
  const Eigen::VectorXcd want = oracle::expm(oracle::matrix(g), 1.3 / 2) * psi;
  EXPECT_LT((s.amplitudes() - want).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Apply, CommutingGeneratorMatchesDenseExpm) {
  const PauliSum g = S({{0.7, "ZZI"}, {-0.4, "IZZ"}, {0.2, "XXX"}});
  StateVector s = random_state(3, 9);
  const Eigen::VectorXcd psi = s.amplitudes();
  s.apply(GeneratorRotation{g, -0.8});
  const Eigen::VectorXcd want = oracle::expm(oracle::matrix(g), -0.4) * psi;
  EXPECT_LT((s.amplitudes() - want).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Apply, ControlledPauliAndAncillaPrep) {
  StateVector s(2);
  s.apply(AncillaPrep{1});
  // (|0> - i|1>)/sqrt2 on qubit 1.
  EXPECT_NEAR(std::abs(s.amplitudes()(0) - 1 / std::sqrt(2.0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitudes()(2) - Complex(0, -1 / std::sqrt(2.0))), 0, 1e-15);
  s.apply(ControlledPauli{1, 1, W("XI")});
  EXPECT_NEAR(std::abs(s.amplitudes()(3) - Complex(0, -1 / std::sqrt(2.0))), 0, 1e-15);
  EXPECT_THROW(s.apply(ControlledPauli{1, 1, W("XX")}), std::invalid_argument);
}

TEST(Apply, WidthMismatchThrows) {
  StateVector s(2);
  EXPECT_THROW(s.apply(PauliRotation{W("XXX"), 0.1}), std::invalid_argument);
  EXPECT_THROW(s.apply(PauliRotation{W("XX"), std::nan("")}), std::invalid_argument);
}

TEST(Apply, DaggerUndoesEveryOpKind) {
  const GateRun run{
      PauliRotation{W("XYZ"), 0.3},
      GeneratorRotation{S({{0.5, "ZXI"}, {0.2, "IYY"}}), 0.9},
      ControlledPauli{0, 0, W("IXY")},
      AncillaPrep{2, 1},
      make_segment({PauliRotation{W("ZZI"), -0.4}}),
  };
  StateVector s = random_state(3, 12);
  const Eigen::VectorXcd psi = s.amplitudes();
  s.apply(run);
  s.apply(dagger(run));
  EXPECT_LT((s.amplitudes() - psi).norm(), 1e-10);
  s.apply(make_segment(run));
  s.apply(make_segment(run, /*adjoint=*/true));
  EXPECT_LT((s.amplitudes() - psi).norm(), 1e-10);
}

TEST(Apply, NormPreservedOverManyOps) {
  std::uint64_t ws = 1;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(-3, 3);
  StateVector s(4);
  for (int i = 0; i < 100; ++i) {
    s.apply(PauliRotation{W(oracle::random_word(ws, 4).c_str()), ang(rng)});
    if (i % 10 == 0) {
      s.apply(GeneratorRotation{
          S({{0.3, oracle::random_word(ws, 4)}, {0.8, oracle::random_word(ws, 4)}}),
          ang(rng)});
    }
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-10);
}

TEST(Expectation, Examples) {
  StateVector zero(1);
  EXPECT_DOUBLE_EQ(expectation(zero, S({{1.0, "Z"}})), 1.0);
  StateVector plus(1);
  plus.apply(PauliRotation{W("Y"), kPi / 2});
  EXPECT_NEAR(expectation(plus, S({{1.0, "X"}})), 1.0, 1e-15);
  StateVector rx(1);
  rx.apply(PauliRotation{W("X"), kPi / 3});
  EXPECT_NEAR(expectation(rx, S({{1.0, "Z"}})), 0.5, 1e-15);
  EXPECT_THROW(expectation(rx, S({{1.0, "ZZ"}})), std::invalid_argument);
}

TEST(EvalCost, RxExamples) {
  const Pqc p = rx_pqc();
  EXPECT_NEAR(eval_cost(p, {0.0}), 1.0, 1e-15);
  EXPECT_NEAR(eval_cost(p, {kPi}), -1.0, 1e-15);
  EXPECT_NEAR(eval_cost(p, {kPi / 3}), 0.5, 1e-15);
  EXPECT_NEAR(eval_cost(p, {kPi / 3}), oracle::cost(p, {kPi / 3}), 1e-15);
  EXPECT_THROW(eval_cost(p, {0.1, 0.2}), std::invalid_argument);
}

TEST(EvalCost, MatchesDenseOracleOnRandomPqcs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const int gates = 1 + static_cast<int>(seed % 6);
    const Pqc p = oracle::random_pqc(seed, n, gates);
    const auto theta = oracle::random_theta(seed, p.gate_count());
    EXPECT_NEAR(eval_cost(p, theta), oracle::cost(p, theta), 1e-10) << seed;
  }
}

TEST(Pqc, ValidatesConstruction) {
  EXPECT_THROW(Pqc(2, {{S({{1.0, "X"}}), "t"}}, S({{1.0, "ZZ"}})), std::invalid_argument);
  EXPECT_THROW(Pqc(1, {{S({{1.0, "X"}}), "t"}, {S({{1.0, "Z"}}), "t"}}, S({{1.0, "Z"}})),
               std::invalid_argument);
  EXPECT_THROW(Pqc(1, {{S({{1.0, "I"}}), "t"}}, S({{1.0, "Z"}})), std::invalid_argument);
}

TEST(SampleExpectation, DeterministicOutcome) {
  const PauliSum z = S({{1.0, "Z"}});
  const Grouping g = partition(z, GroupingCriterion::kQubitWise);
  const SampledValue v = sample_expectation(StateVector(1), z, g, 1000, 1);
  EXPECT_DOUBLE_EQ(v.estimate, 1.0);
  EXPECT_DOUBLE_EQ(v.std_error, 0.0);
}

TEST(SampleExpectation, PlusStateIsUnbiasedAndSeeded) {
  StateVector plus(1);
  plus.apply(PauliRotation{W("Y"), kPi / 2});
  const PauliSum z = S({{1.0, "Z"}});
  const Grouping g = partition(z, GroupingCriterion::kQubitWise);
  const SampledValue a = sample_expectation(plus, z, g, 100000, 42);
  EXPECT_LT(std::abs(a.estimate), 3 * a.std_error);
  EXPECT_NEAR(a.std_error, 1 / std::sqrt(100000.0), 1e-4);
  const SampledValue b = sample_expectation(plus, z, g, 100000, 42);
  EXPECT_EQ(a.estimate, b.estimate);
}

TEST(SampleExpectation, RejectsFullCommutativityGroups) {
  const PauliSum o = S({{1.0, "XX"}, {1.0, "ZZ"}});
  const Grouping full = partition(o, GroupingCriterion::kFullCommutativity);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_THROW(sample_expectation(StateVector(2), o, full, 10, 0), std::invalid_argument);
}

}  // namespace
}  // namespace qgrad
