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

#include "qgrad/qad.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qgrad/random.h"

namespace qgrad {
namespace {

// Relative tolerance under which two EFR scores count as a tie.
constexpr double kTieTolerance = 1e-12;

PsrMode psr_mode_for(const PauliSum& generator) {
  return psr_spectral_feasible(generator) ? PsrMode::kSpectral
                                          : PsrMode::kDecomposed;
}

void check_assignment(const Pqc& pqc, const MethodAssignment& a) {
  if (a.choices.size() != pqc.gate_count()) {
    throw std::invalid_argument("assignment covers " +
                                std::to_string(a.choices.size()) + " of " +
                                std::to_string(pqc.gate_count()) +
                                " parameters");
  }
}

}  // namespace

std::string to_string(Metric m) {
  return m == Metric::kEfr ? "efr" : "count";
}

Metric parse_metric(const std::string& name) {
  if (name == "count") return Metric::kCircuitCount;
  if (name == "efr") return Metric::kEfr;
  throw std::invalid_argument("unknown metric: " + name);
}

std::vector<Method> MethodAssignment::methods() const {
  std::vector<Method> out;
  for (const auto& c : choices) out.push_back(c.method);
  return out;
}

std::vector<Method> feasible_methods(const Pqc& pqc, std::size_t j,
                                     PsrPolicy policy) {
  const PauliSum& h = pqc.gate(j).generator;
  std::vector<Method> out;
  if (psr_spectral_feasible(h) ||
      (policy == PsrPolicy::kAllowDecomposition && psr_decomposable(h))) {
    out.push_back(Method::kPSR);
  }
  for (Method m : {Method::kHT, Method::kDHT, Method::kRHT, Method::kRDHT}) {
    out.push_back(m);
  }
  return out;
}

MethodAssignment select(const Pqc& pqc, Metric metric, const ErrorTable* errors,
                        PsrPolicy policy) {
  if (metric == Metric::kEfr && errors == nullptr) {
    throw std::invalid_argument("the EFR metric needs an error table");
  }
  MethodAssignment a;
  a.metric = metric;
  for (std::size_t j = 0; j < pqc.gate_count(); ++j) {
    MethodChoice best;
    bool have = false;
    for (Method m : feasible_methods(pqc, j, policy)) {
      const PsrMode mode = psr_mode_for(pqc.gate(j).generator);
      CostReport r = cost_report(pqc, j, m, errors, mode);
      const double score = metric == Metric::kEfr
                               ? *r.efr
                               : static_cast<double>(r.distinct_circuits);
      const bool better =
          !have || score < best.score - kTieTolerance * std::abs(best.score);
      if (better) {
        best.method = m;
        best.psr_mode = mode;
        best.score = score;
        have = true;
      }
      best.candidates.push_back(std::move(r));
    }
    a.choices.push_back(std::move(best));
  }
  return a;
}

MethodAssignment uniform_assignment(const Pqc& pqc, Method method,
                                    PsrMode psr_mode) {
  MethodAssignment a;
  for (std::size_t j = 0; j < pqc.gate_count(); ++j) {
    MethodChoice c;
    c.method = method;
    if (method == Method::kPSR) {
      const PauliSum& h = pqc.gate(j).generator;
      const bool spectral = psr_spectral_feasible(h);
      const bool decomposed = psr_decomposable(h);
      if (!spectral && !decomposed) {
        throw NotPSRCompatible("gate " + pqc.gate(j).param +
                               " admits no shift rule");
      }
      c.psr_mode = psr_mode;
      if (psr_mode == PsrMode::kSpectral && !spectral) {
        c.psr_mode = PsrMode::kDecomposed;
      }
      if (psr_mode == PsrMode::kDecomposed && !decomposed) {
        c.psr_mode = PsrMode::kSpectral;
      }
    } else if (method == Method::kFD || method == Method::kKFoldHT ||
               method == Method::kDHTK) {
      throw std::invalid_argument("not a first-order circuit method: " +
                                  to_string(method));
    }
    a.choices.push_back(c);
  }
  return a;
}

std::vector<double> assigned_gradient(const Pqc& pqc,
                                      const MethodAssignment& assignment,
                                      const std::vector<double>& theta) {
  check_assignment(pqc, assignment);
  std::vector<double> g(pqc.gate_count());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto& c = assignment.choices[j];
    g[j] = evaluate_plan(build_plan(c.method, pqc, theta, j, c.psr_mode));
  }
  return g;
}

std::size_t circuits_per_iteration(const Pqc& pqc,
                                   const MethodAssignment& assignment) {
  check_assignment(pqc, assignment);
  const std::vector<double> zero(pqc.gate_count(), 0.0);
  std::size_t total = 0;
  for (std::size_t j = 0; j < pqc.gate_count(); ++j) {
    const auto& c = assignment.choices[j];
    total += build_plan(c.method, pqc, zero, j, c.psr_mode).distinct_circuit_count;
  }
  return total;
}

GradientEvaluator::GradientEvaluator(Pqc pqc, MethodAssignment assignment)
    : pqc_(std::move(pqc)), assignment_(std::move(assignment)) {
  circuits_ = qgrad::circuits_per_iteration(pqc_, assignment_);
}

std::vector<double> GradientEvaluator::gradient(
    const std::vector<double>& theta) const {
  return assigned_gradient(pqc_, assignment_, theta);
}

std::vector<SampledValue> GradientEvaluator::gradient_shots(
    const std::vector<double>& theta, std::uint64_t shots,
    std::uint64_t seed) const {
  std::vector<SampledValue> out;
  for (std::size_t j = 0; j < pqc_.gate_count(); ++j) {
    const auto& c = assignment_.choices[j];
    out.push_back(evaluate_plan_shots(
        build_plan(c.method, pqc_, theta, j, c.psr_mode), shots,
        derive_seed(seed, j)));
  }
  return out;
}

GradientEvaluator build_gradient(const Pqc& pqc,
                                 const MethodAssignment& assignment) {
  return GradientEvaluator(pqc, assignment);
}

std::string assignment_json(const MethodAssignment& a, const Pqc& pqc) {
  nlohmann::json j;
  j["metric"] = to_string(a.metric);
  nlohmann::json params = nlohmann::json::array();
  for (std::size_t p = 0; p < a.choices.size(); ++p) {
    const auto& c = a.choices[p];
    nlohmann::json e;
    e["param"] = pqc.gate(p).param;
    e["method"] = to_string(c.method);
    e["score"] = c.score;
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& r : c.candidates) cands.push_back(nlohmann::json::parse(to_json(r)));
    e["candidates"] = cands;
    params.push_back(e);
  }
  j["parameters"] = params;
  j["circuits_per_iteration"] = circuits_per_iteration(pqc, a);
  return j.dump(2);
}

std::string assignment_csv(const MethodAssignment& a, const Pqc& pqc) {
  std::ostringstream os;
  os << "param,chosen," << csv_header() << '\n';
  for (std::size_t p = 0; p < a.choices.size(); ++p) {
    for (const auto& r : a.choices[p].candidates) {
      os << pqc.gate(p).param << ','
         << (r.method == a.choices[p].method ? 1 : 0) << ',' << to_csv(r)
         << '\n';
    }
  }
  return os.str();
}

}  // namespace qgrad
