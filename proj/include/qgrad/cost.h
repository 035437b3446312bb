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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgrad/circuit.h"
#include "qgrad/counts.h"
#include "qgrad/grad_first.h"

namespace qgrad {

/// Gate tallies after lowering to CNOT + single-qubit gates + readout.
///
/// Lowering rules (a declared heuristic, not a transpiler):
///   PauliRotation, weight w >= 1: 2(w-1) CNOT, 1 + 2 #{X,Y} one-qubit gates;
///   GeneratorRotation: the sum over its non-identity terms;
///   ControlledPauli, weight w: w CNOT, 2 #{Y,Z} one-qubit basis changes;
///   AncillaPrep: 2 one-qubit gates;
///   readout: one measurement per qubit.
struct LoweredCounts {
  std::size_t cnot = 0;
  std::size_t one_qubit = 0;
  std::size_t measure = 0;
};

LoweredCounts lower(const Circuit& circuit);
std::size_t lower_and_count_cnots(const Circuit& circuit);

/// Error probability per lowered gate kind: "cnot", "1q", "measure".
class ErrorTable {
 public:
  ErrorTable() = default;
  explicit ErrorTable(std::map<std::string, double> rates);

  /// Parses {"cnot": p, "1q": p, "measure": p}.
  static ErrorTable from_json(const std::string& text);
  static ErrorTable load(const std::string& path);

  /// Throws std::invalid_argument naming the kind when it is absent.
  double rate(const std::string& kind) const;
  bool has(const std::string& kind) const { return rates_.count(kind) > 0; }
  ErrorTable scaled(double factor) const;

 private:
  std::map<std::string, double> rates_;
};

/// 1 - prod_i (1 - p_i).
double efr_from_probabilities(const std::vector<double>& p);
/// Estimated failure rate of a circuit's lowered gate list.
double efr(const Circuit& circuit, const ErrorTable& errors);

struct CostReport {
  Method method = Method::kHT;
  PsrMode psr_mode = PsrMode::kSpectral;
  std::size_t distinct_circuits = 0;
  int qubits = 0;
  int depth = 0;
  std::size_t cnot_count = 0;  // rounded mean over the plan's circuits
  std::optional<double> efr;   // mean over the plan's circuits
};

/// Report for one plan; efr is filled when `errors` is given.
CostReport cost_report(const GradPlan& plan, const ErrorTable* errors,
                       PsrMode psr_mode = PsrMode::kSpectral);
/// Builds the method's plan for gate j at theta = 0 and reports it.
CostReport cost_report(const Pqc& pqc, std::size_t j, Method method,
                       const ErrorTable* errors,
                       PsrMode psr_mode = PsrMode::kSpectral);

std::string to_json(const CostReport& r);
std::string csv_header();
std::string to_csv(const CostReport& r);

}  // namespace qgrad
