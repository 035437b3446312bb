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

#include "qgrad/grad_high.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dense_oracle.h"

namespace qgrad {
namespace {

constexpr double kPi = std::numbers::pi;

PauliSum S(std::vector<std::pair<double, std::string>> t) {
  return PauliSum::from_strings(t);
}

Pqc rx_pqc() { return Pqc(1, {{S({{1.0, "X"}}), "t"}}, S({{1.0, "Z"}})); }

TEST(DerivativeIndex, SortsIndices) {
  EXPECT_EQ(DerivativeIndex({2, 0, 1}).indices(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(DerivativeIndex({1, 1}).order(), 2u);
  EXPECT_THROW(DerivativeIndex({}), std::invalid_argument);
}

TEST(Oracle, RxSecondDerivative) {
  EXPECT_NEAR(nested_commutator_oracle(rx_pqc(), {0.0}, DerivativeIndex({0, 0})), -1.0, 1e-12);
  EXPECT_NEAR(nested_commutator_oracle(rx_pqc(), {kPi / 3}, DerivativeIndex({0})),
              -std::sin(kPi / 3), 1e-12);
}

TEST(Oracle, AgreesWithIndependentDenseCode) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Pqc p = oracle::random_pqc(seed, 2, 3);
    const auto theta = oracle::random_theta(seed, 3);
    for (const std::vector<std::size_t> idx :
         {std::vector<std::size_t>{1}, {0, 2}, {1, 1}, {0, 1, 2}}) {
      EXPECT_NEAR(nested_commutator_oracle(p, theta, DerivativeIndex(idx)),
                  oracle::commutator_derivative(p, theta, idx), 1e-10);
    }
  }
}

TEST(KFold, RxExamples) {
  const GradResult first = kfold_ht(rx_pqc(), {0.4}, DerivativeIndex({0}));
  EXPECT_NEAR(first.value, ht_gradient(rx_pqc(), {0.4}, 0).value, 1e-12);
  const GradResult second = kfold_ht(rx_pqc(), {kPi / 3}, DerivativeIndex({0, 0}));
  EXPECT_NEAR(second.value, -0.5, 1e-12);
  EXPECT_EQ(second.plan.distinct_circuit_count, 1u);
  EXPECT_EQ(second.plan.qubits, 3);
}

TEST(DhtK, RxExamples) {
  EXPECT_NEAR(dht_korder(rx_pqc(), {0.0}, DerivativeIndex({0, 0})).value, -1.0, 1e-12);
  const GradResult one = dht_korder(rx_pqc(), {0.8}, DerivativeIndex({0}));
  EXPECT_NEAR(one.value, dht_gradient(rx_pqc(), {0.8}, 0).value, 1e-12);
  EXPECT_EQ(one.plan.distinct_circuit_count, 2u);
}

TEST(HigherOrder, MatchesOracleOnRandomPqcs) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const Pqc p = oracle::random_pqc(seed + 50, n, 3, 2);
    const auto theta = oracle::random_theta(seed, 3);
    for (const std::vector<std::size_t> idx :
         {std::vector<std::size_t>{0, 2}, {1, 1}, {2, 0, 1}, {2, 2, 2}}) {
      const DerivativeIndex di(idx);
      const double want = oracle::commutator_derivative(p, theta, di.indices());
      const double kf = kfold_ht(p, theta, di).value;
      EXPECT_NEAR(kf, want, 1e-10) << seed;
      EXPECT_NEAR(dht_korder(p, theta, di).value, kf, 1e-10) << seed;
      EXPECT_NEAR(oracle::nested_fd(p, theta, di.indices()), want, 1e-4) << seed;
    }
  }
}

TEST(HigherOrder, PermutationInvariant) {
  const Pqc p = oracle::random_pqc(77, 3, 4);
  const auto theta = oracle::random_theta(77, 4);
  std::vector<std::size_t> idx{0, 2, 3};
  const double ref = kfold_ht(p, theta, DerivativeIndex(idx)).value;
  while (std::next_permutation(idx.begin(), idx.end())) {
    EXPECT_EQ(kfold_ht(p, theta, DerivativeIndex(idx)).value, ref);
  }
}

TEST(HigherOrder, SingleWordCounts) {
  // Single-word generators and a one-group observable.
  const Pqc p(2, {{S({{1.0, "XY"}}), "a"}, {S({{1.0, "ZX"}}), "b"}, {S({{1.0, "YI"}}), "c"}},
              S({{1.0, "ZZ"}}));
  const std::vector<double> theta{0.1, 0.2, 0.3};
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t t = 0; t < k; ++t) idx[t] = t;
    const DerivativeIndex di(idx);
    EXPECT_EQ(kfold_ht_plan(p, theta, di).distinct_circuit_count, 1u);
    EXPECT_EQ(dht_korder_plan(p, theta, di).distinct_circuit_count, 1u << k);
    EXPECT_EQ(korder_count(Method::kKFoldHT, static_cast<int>(k)), 1u);
    EXPECT_EQ(korder_count(Method::kDHT, static_cast<int>(k)), 1u << k);
    EXPECT_EQ(korder_count(Method::kPSR, static_cast<int>(k)), 1u << k);
    EXPECT_EQ(korder_count(Method::kHT, static_cast<int>(k)), 1u << (k - 1));
  }
}

TEST(HigherOrder, MultiTermCountsMultiply) {
  const Pqc p(2, {{S({{1.0, "XY"}, {0.5, "ZI"}}), "a"}, {S({{1.0, "ZX"}}), "b"}},
              S({{1.0, "ZZ"}, {1.0, "XX"}, {0.3, "XZ"}}));
  const std::vector<double> theta{0.4, -0.2};
  const DerivativeIndex di({0, 1});
  const std::size_t ncm_o = group_count(p.observable(), GroupingCriterion::kFullCommutativity);
  EXPECT_EQ(kfold_ht_plan(p, theta, di).distinct_circuit_count, 2 * ncm_o);
  EXPECT_EQ(dht_korder_plan(p, theta, di).distinct_circuit_count, 4 * 2 * ncm_o);
}

TEST(Shape, KOrderTable) {
  Shape s = korder_qubits_depth(Method::kKFoldHT, 2, 4, 3);
  EXPECT_EQ(s.qubits, 6);
  EXPECT_EQ(s.depth, 5);
  s = korder_qubits_depth(Method::kPSR, 3, 5, 6);
  EXPECT_EQ(s.qubits, 5);
  EXPECT_EQ(s.depth, 6);
  s = korder_qubits_depth(Method::kHT, 2, 4, 3);
  EXPECT_EQ(s.qubits, 5);
  EXPECT_EQ(s.depth, 5);
  EXPECT_THROW(korder_qubits_depth(Method::kRHT, 2, 4, 3), std::invalid_argument);
}

TEST(Shots, KFoldEstimateIsWithinErrorBars) {
  const GradPlan plan = kfold_ht_plan(rx_pqc(), {kPi / 3}, DerivativeIndex({0, 0}));
  const SampledValue v = evaluate_plan_shots(plan, 100000, 3);
  EXPECT_LT(std::abs(v.estimate + 0.5), 4 * v.std_error);
}

}  // namespace
}  // namespace qgrad
