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

#include "qgrad/cost.h"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qgrad {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void add_rotation(const PauliWord& w, LoweredCounts& c) {
  if (w.is_identity()) return;
  c.cnot += 2 * static_cast<std::size_t>(w.weight() - 1);
  c.one_qubit += 1 + 2 * static_cast<std::size_t>(std::popcount(w.x_mask()));
}

void add_ops(const GateRun& run, LoweredCounts& c) {
  for (const auto& op : run) {
    std::visit(
        Overloaded{
            [&](const PauliRotation& r) { add_rotation(r.word, c); },
            [&](const GeneratorRotation& r) {
              for (const auto& t : r.generator.terms()) add_rotation(t.word, c);
            },
            [&](const ControlledPauli& p) {
              c.cnot += static_cast<std::size_t>(p.word.weight());
              c.one_qubit += 2 * static_cast<std::size_t>(
                                     std::popcount(p.word.z_mask()));
            },
            [&](const AncillaPrep&) { c.one_qubit += 2; },
            [&](const Segment& s) { add_ops(*s.run, c); },
        },
        op.kind);
  }
}

}  // namespace

LoweredCounts lower(const Circuit& circuit) {
  LoweredCounts c;
  add_ops(circuit.ops, c);
  c.measure = static_cast<std::size_t>(circuit.qubit_count);
  return c;
}

std::size_t lower_and_count_cnots(const Circuit& circuit) {
  return lower(circuit).cnot;
}

ErrorTable::ErrorTable(std::map<std::string, double> rates)
    : rates_(std::move(rates)) {
  for (const auto& [kind, p] : rates_) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw std::invalid_argument("error rate for " + kind +
                                  " must lie in [0, 1)");
    }
  }
}

ErrorTable ErrorTable::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("error table must be an object");
  std::map<std::string, double> rates;
  for (const auto& [kind, value] : j.items()) {
    if (!value.is_number()) {
      throw std::invalid_argument("error rate for " + kind + " is not a number");
    }
    rates[kind] = value.get<double>();
  }
  return ErrorTable(std::move(rates));
}

ErrorTable ErrorTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open error table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

double ErrorTable::rate(const std::string& kind) const {
  const auto it = rates_.find(kind);
  if (it == rates_.end()) {
    throw std::invalid_argument("error table has no rate for gate kind \"" +
                                kind + "\"");
  }
  return it->second;
}

ErrorTable ErrorTable::scaled(double factor) const {
  std::map<std::string, double> r = rates_;
  for (auto& [kind, p] : r) p *= factor;
  return ErrorTable(std::move(r));
}

double efr_from_probabilities(const std::vector<double>& p) {
  double survive = 1.0;
  for (double pi : p) survive *= 1.0 - pi;
  return 1.0 - survive;
}

double efr(const Circuit& circuit, const ErrorTable& errors) {
  const LoweredCounts c = lower(circuit);
  double log_survive = 0.0;
  auto add = [&](std::size_t count, const char* kind) {
    if (count == 0) return;
    log_survive += static_cast<double>(count) * std::log1p(-errors.rate(kind));
  };
  add(c.cnot, "cnot");
  add(c.one_qubit, "1q");
  add(c.measure, "measure");
  return -std::expm1(log_survive);
}

CostReport cost_report(const GradPlan& plan, const ErrorTable* errors,
                       PsrMode psr_mode) {
  CostReport r;
  r.method = plan.method;
  r.psr_mode = psr_mode;
  r.distinct_circuits = plan.distinct_circuit_count;
  r.qubits = plan.qubits;
  r.depth = plan.depth;
  if (plan.tasks.empty()) return r;
  double cnots = 0.0, failure = 0.0;
  for (const auto& t : plan.tasks) {
    cnots += static_cast<double>(lower_and_count_cnots(t.circuit));
    if (errors) failure += efr(t.circuit, *errors);
  }
  const auto n = static_cast<double>(plan.tasks.size());
  r.cnot_count = static_cast<std::size_t>(std::llround(cnots / n));
  if (errors) r.efr = failure / n;
  return r;
}

CostReport cost_report(const Pqc& pqc, std::size_t j, Method method,
                       const ErrorTable* errors, PsrMode psr_mode) {
  const std::vector<double> theta(pqc.gate_count(), 0.0);
  return cost_report(build_plan(method, pqc, theta, j, psr_mode), errors,
                     psr_mode);
}

std::string to_json(const CostReport& r) {
  nlohmann::json j;
  j["method"] = to_string(r.method);
  if (r.method == Method::kPSR) {
    j["psr_mode"] = r.psr_mode == PsrMode::kSpectral ? "spectral" : "decomposed";
  }
  j["distinct_circuits"] = r.distinct_circuits;
  j["qubits"] = r.qubits;
  j["depth"] = r.depth;
  j["cnot_count"] = r.cnot_count;
  if (r.efr) j["efr"] = *r.efr;
  return j.dump();
}

std::string csv_header() {
  return "method,distinct_circuits,qubits,depth,cnot_count,efr";
}

std::string to_csv(const CostReport& r) {
  std::ostringstream os;
  os << to_string(r.method) << ',' << r.distinct_circuits << ',' << r.qubits
     << ',' << r.depth << ',' << r.cnot_count << ',';
  if (r.efr) os << *r.efr;
  return os.str();
}

}  // namespace qgrad
