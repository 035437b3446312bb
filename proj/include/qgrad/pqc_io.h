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

#include "json.hpp"
#include "qgrad/circuit.h"

namespace qgrad {

/// JSON forms.
///
///   PauliSum: [[coeff, "XZI"], ...]
///   op list:  [{"op": "rotation", "word": "XI", "angle": a},
///              {"op": "generator", "generator": <PauliSum>, "angle": a},
///              {"op": "controlled", "control": q, "value": 1, "word": "IX"},
///              {"op": "ancilla", "qubit": q, "phase": "-i" | "+i"},
///              {"op": "inverse", "ops": <op list>}]
///   PQC:      {"qubits": N,
///              "gates": [{"param": "t0", "generator": <PauliSum>}, ...],
///              "observable": <PauliSum>,
///              "input_prep": <op list>,                 (optional)
///              "observable_counting": "terms" | "single"} (optional)
///
/// All parsers throw std::invalid_argument with a message naming the
/// offending field.
PauliSum pauli_sum_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PauliSum& sum);

GateRun ops_from_json(const nlohmann::json& j, int width);
nlohmann::json to_json(const GateRun& run);

Pqc pqc_from_json(const nlohmann::json& j);
Pqc parse_pqc(const std::string& text);
Pqc load_pqc(const std::string& path);
nlohmann::json to_json(const Pqc& pqc);

/// Comma-separated reals, e.g. "0.1,-0.4,1".
std::vector<double> parse_reals(const std::string& csv);
/// Comma-separated non-negative integers.
std::vector<std::size_t> parse_indices(const std::string& csv);

}  // namespace qgrad
