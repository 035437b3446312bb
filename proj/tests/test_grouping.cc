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

#include "qgrad/grouping.h"

#include <random>

#include <gtest/gtest.h>

#include "dense_oracle.h"
#include "json.hpp"

namespace qgrad {
namespace {

PauliSum S(std::vector<std::pair<double, std::string>> t) {
  return PauliSum::from_strings(t);
}

PauliSum random_sum(std::uint64_t seed, int n, int terms) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c(-1, 1);
  std::uint64_t ws = seed * 31 + 1;
  std::vector<std::pair<double, std::string>> t;
  for (int k = 0; k < terms; ++k) t.emplace_back(c(rng), oracle::random_word(ws, n));
  return S(t);
}

StateVector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto& a : v) a = Complex(g(rng), g(rng));
  return StateVector(n, v / v.norm());
}

TEST(Partition, MixedGeneratorExample) {
  const PauliSum h = S({{1.0, "ZZ"}, {1.0, "XX"}, {1.0, "ZX"}});
  const Grouping g = partition(h, GroupingCriterion::kFullCommutativity);
  ASSERT_EQ(g.size(), 2u);
  // Equal coefficients: lexicographic order puts XX first, then ZX, ZZ.
  EXPECT_EQ(g.groups[0], (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(g.groups[1], (std::vector<std::size_t>{2}));
  EXPECT_EQ(group_count(h, GroupingCriterion::kFullCommutativity), 2u);
  EXPECT_EQ(h.size(), 3u);
}

TEST(Partition, RingObservableIsOneGroup) {
  const PauliSum o = S({{1.0, "ZZII"}, {1.0, "IZZI"}, {1.0, "IIZZ"}, {1.0, "ZIIZ"}});
  EXPECT_EQ(group_count(o, GroupingCriterion::kFullCommutativity), 1u);
  EXPECT_EQ(group_count(o, GroupingCriterion::kQubitWise), 1u);
}

TEST(Partition, SmallCases) {
  EXPECT_EQ(group_count(S({{1.0, "XY"}}), GroupingCriterion::kFullCommutativity), 1u);
  EXPECT_EQ(group_count(S({{1.0, "XY"}}), GroupingCriterion::kQubitWise), 1u);
  EXPECT_EQ(group_count(S({{1.0, "X"}, {1.0, "Y"}, {1.0, "Z"}}),
                        GroupingCriterion::kFullCommutativity),
            3u);
}

TEST(Partition, OrderIsByMagnitudeThenWord) {
  const PauliSum o = S({{0.1, "XI"}, {-0.9, "ZI"}, {0.5, "IZ"}});
  const Grouping g = partition(o, GroupingCriterion::kQubitWise);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.groups[0], (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(g.groups[1], (std::vector<std::size_t>{0}));
}

TEST(Partition, PropertiesOnRandomSums) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const PauliSum o = random_sum(seed, n, 1 + static_cast<int>(seed % 9));
    const Grouping full = partition(o, GroupingCriterion::kFullCommutativity);
    const Grouping qw = partition(o, GroupingCriterion::kQubitWise);
    EXPECT_TRUE(is_valid(full, o));
    EXPECT_TRUE(is_valid(qw, o));
    // Qubit-wise groups are also valid under full commutativity.
    Grouping relabeled = qw;
    relabeled.criterion = GroupingCriterion::kFullCommutativity;
    EXPECT_TRUE(is_valid(relabeled, o));
    EXPECT_LE(qw.size(), o.size());
    // Deterministic.
    EXPECT_EQ(partition(o, GroupingCriterion::kFullCommutativity).groups, full.groups);
  }
}

TEST(MeasureGroups, Examples) {
  const PauliSum o = S({{1.0, "ZZ"}, {1.0, "XX"}});
  const Grouping g = partition(o, GroupingCriterion::kFullCommutativity);
  EXPECT_NEAR(measure_groups(StateVector(2), o, g), 1.0, 1e-15);
  const PauliSum empty(2);
  EXPECT_DOUBLE_EQ(measure_groups(random_state(2, 1), empty, Grouping{}), 0.0);
}

TEST(MeasureGroups, GroupingInvariant) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const PauliSum o = random_sum(seed + 100, n, 6);
    const StateVector s = random_state(n, seed);
    const double exact = expectation(s, o);
    for (auto c : {GroupingCriterion::kFullCommutativity, GroupingCriterion::kQubitWise}) {
      EXPECT_NEAR(measure_groups(s, o, partition(o, c)), exact, 1e-10);
    }
    Grouping singletons{GroupingCriterion::kQubitWise, {}};
    for (std::size_t k = 0; k < o.size(); ++k) singletons.groups.push_back({k});
    EXPECT_NEAR(measure_groups(s, o, singletons), exact, 1e-10);
  }
}

TEST(Report, JsonFields) {
  const PauliSum h = S({{1.0, "ZZ"}, {1.0, "XX"}, {1.0, "ZX"}});
  const auto j = nlohmann::json::parse(
      grouping_report_json(h, partition(h, GroupingCriterion::kFullCommutativity)));
  EXPECT_EQ(j.at("terms"), 3);
  EXPECT_EQ(j.at("groups_count"), 2);
  EXPECT_EQ(j.at("groups").size(), 2u);
}

}  // namespace
}  // namespace qgrad
