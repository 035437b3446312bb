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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "qgrad/random.h"

namespace qgrad {
namespace {

bool compatible(const PauliWord& a, const PauliWord& b, GroupingCriterion c) {
  return c == GroupingCriterion::kQubitWise ? qubitwise_commutes(a, b)
                                            : commutes(a, b);
}

// Rotates qubit q so that measuring Z reads out `letter`.
void rotate_to_z(StateVector& state, int q, char letter) {
  const double r = 1.0 / std::sqrt(2.0);
  DenseMatrix m(2, 2);
  if (letter == 'X') {
    m << r, r, r, -r;  // H
  } else if (letter == 'Y') {
    const Complex mi(0.0, -1.0);
    m << r, r * mi, r, -r * mi;  // H S^dagger
  } else {
    return;
  }
  state.apply_matrix(m, {q});
}

}  // namespace

std::string to_string(GroupingCriterion c) {
  return c == GroupingCriterion::kQubitWise ? "qubitwise" : "full";
}

Grouping partition(const PauliSum& obs, GroupingCriterion criterion) {
  std::vector<std::size_t> order(obs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ca = std::abs(obs[a].coefficient);
    const double cb = std::abs(obs[b].coefficient);
    if (ca != cb) return ca > cb;
    return lex_less(obs[a].word, obs[b].word);
  });
  Grouping g{criterion, {}};
  for (std::size_t idx : order) {
    bool placed = false;
    for (auto& group : g.groups) {
      const bool fits = std::all_of(group.begin(), group.end(), [&](std::size_t m) {
        return compatible(obs[m].word, obs[idx].word, criterion);
      });
      if (fits) {
        group.push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) g.groups.push_back({idx});
  }
  return g;
}

std::size_t group_count(const PauliSum& obs, GroupingCriterion criterion) {
  return partition(obs, criterion).size();
}

bool is_valid(const Grouping& grouping, const PauliSum& obs) {
  std::vector<int> seen(obs.size(), 0);
  for (const auto& group : grouping.groups) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      if (group[a] >= obs.size() || seen[group[a]]++) return false;
      for (std::size_t b = 0; b < a; ++b) {
        if (!compatible(obs[group[a]].word, obs[group[b]].word,
                        grouping.criterion)) {
          return false;
        }
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

double measure_groups(const StateVector& state, const PauliSum& obs,
                      const Grouping& grouping) {
  double total = 0.0;
  for (const auto& group : grouping.groups) {
    std::vector<PauliTerm> terms;
    for (std::size_t i : group) terms.push_back(obs.terms().at(i));
    total += expectation(state, PauliSum(obs.width(), std::move(terms)));
  }
  return total;
}

std::string grouping_report_json(const PauliSum& obs, const Grouping& grouping) {
  nlohmann::json j;
  j["criterion"] = to_string(grouping.criterion);
  j["terms"] = obs.size();
  j["groups_count"] = grouping.size();
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& group : grouping.groups) {
    nlohmann::json g = nlohmann::json::array();
    for (std::size_t i : group) {
      g.push_back({obs[i].coefficient, obs[i].word.to_string()});
    }
    groups.push_back(g);
  }
  j["groups"] = groups;
  return j.dump(2);
}

SampledValue sample_expectation(const StateVector& state, const PauliSum& obs,
                                const Grouping& grouping, std::uint64_t shots,
                                std::uint64_t seed) {
  if (grouping.criterion != GroupingCriterion::kQubitWise) {
    throw std::invalid_argument(
        "shot sampling needs a qubit-wise grouping");
  }
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  if (!is_valid(grouping, obs)) {
    throw std::invalid_argument("grouping does not match observable");
  }
  SampledValue out;
  double variance = 0.0;
  for (std::size_t gi = 0; gi < grouping.size(); ++gi) {
    const auto& group = grouping.groups[gi];
    // Shared measurement basis of the group.
    StateVector rotated = state;
    std::uint64_t support = 0;
    for (std::size_t i : group) support |= obs[i].word.support();
    for (int q = 0; q < obs.width(); ++q) {
      if (!((support >> q) & 1)) continue;
      for (std::size_t i : group) {
        const char l = obs[i].word.letter(q);
        if (l != 'I') {
          rotate_to_z(rotated, q, l);
          break;
        }
      }
    }
    std::vector<double> cdf(rotated.dimension());
    double acc = 0.0;
    for (std::size_t b = 0; b < cdf.size(); ++b) {
      acc += std::norm(rotated.amplitudes()(b));
      cdf[b] = acc;
    }
    SplitMix64 rng(derive_seed(seed, gi));
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t s = 0; s < shots; ++s) {
      const double u = rng.uniform() * acc;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::uint64_t b =
          std::min<std::uint64_t>(it - cdf.begin(), cdf.size() - 1);
      double value = 0.0;
      for (std::size_t i : group) {
        const int parity = std::popcount(b & obs[i].word.support()) & 1;
        value += obs[i].coefficient * (parity ? -1.0 : 1.0);
      }
      sum += value;
      sum_sq += value * value;
    }
    const double n = static_cast<double>(shots);
    const double mean = sum / n;
    const double var =
        shots > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
    out.estimate += mean;
    variance += var / n;
  }
  out.std_error = std::sqrt(variance);
  return out;
}

}  // namespace qgrad
