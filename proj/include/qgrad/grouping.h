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

#pragma once

#include <string>
#include <vector>

#include "qgrad/circuit.h"
#include "qgrad/pauli.h"

namespace qgrad {

enum class GroupingCriterion { kFullCommutativity, kQubitWise };

std::string to_string(GroupingCriterion c);

/// Partition of a PauliSum's term indices into simultaneously measurable
/// groups.
struct Grouping {
  GroupingCriterion criterion = GroupingCriterion::kFullCommutativity;
  std::vector<std::vector<std::size_t>> groups;

  std::size_t size() const { return groups.size(); }
};

/// Greedy first-fit: terms are visited by descending |coefficient|, ties by
/// lexicographic word, and each joins the first group whose members all
/// satisfy `criterion` with it.
Grouping partition(const PauliSum& obs, GroupingCriterion criterion);

/// Number of groups (N_cm).
std::size_t group_count(const PauliSum& obs, GroupingCriterion criterion);

/// True iff `grouping` partitions obs' terms and each group is valid.
bool is_valid(const Grouping& grouping, const PauliSum& obs);

/// Sum over groups of the group's exact expectation; equals
/// expectation(state, obs).
double measure_groups(const StateVector& state, const PauliSum& obs,
                      const Grouping& grouping);

/// JSON object with criterion, group membership, N and N_cm.
std::string grouping_report_json(const PauliSum& obs,
                                 const Grouping& grouping);

struct SampledValue {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Shot estimate of <obs>: each qubit-wise group is measured `shots` times
/// in its rotated basis. Throws std::invalid_argument for a non-qubit-wise
/// grouping or zero shots.
SampledValue sample_expectation(const StateVector& state, const PauliSum& obs,
                                const Grouping& grouping, std::uint64_t shots,
                                std::uint64_t seed);

}  // namespace qgrad
