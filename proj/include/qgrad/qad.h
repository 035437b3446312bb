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

#include <cstdint>
#include <string>
#include <vector>

#include "qgrad/cost.h"
#include "qgrad/grad_first.h"

namespace qgrad {

enum class Metric { kCircuitCount, kEfr };

/// Whether PSR may be used on generators that fail the two-eigenvalue test
/// but split into commuting Pauli terms.
enum class PsrPolicy { kSpectralOnly, kAllowDecomposition };

std::string to_string(Metric m);
Metric parse_metric(const std::string& name);

/// PSR (when allowed) plus HT, DHT, RHT, RDHT, in tie-break order.
std::vector<Method> feasible_methods(const Pqc& pqc, std::size_t j,
                                     PsrPolicy policy = PsrPolicy::kSpectralOnly);

struct MethodChoice {
  Method method = Method::kHT;
  PsrMode psr_mode = PsrMode::kSpectral;
  double score = 0.0;
  std::vector<CostReport> candidates;  // one per feasible method
};

struct MethodAssignment {
  Metric metric = Metric::kCircuitCount;
  std::vector<MethodChoice> choices;  // one per parameter

  std::vector<Method> methods() const;
};

/// Per-parameter argmin of the metric over feasible methods; ties go to the
/// earlier of PSR, HT, DHT, RHT, RDHT. The EFR metric needs `errors`.
MethodAssignment select(const Pqc& pqc, Metric metric,
                        const ErrorTable* errors = nullptr,
                        PsrPolicy policy = PsrPolicy::kSpectralOnly);

/// The same method for every parameter. For PSR, `psr_mode` is tried first
/// and the other mode is the fallback; NotPSRCompatible when neither works.
MethodAssignment uniform_assignment(const Pqc& pqc, Method method,
                                    PsrMode psr_mode = PsrMode::kSpectral);

/// Gradient of f under an assignment, one plan per parameter.
std::vector<double> assigned_gradient(const Pqc& pqc,
                                      const MethodAssignment& assignment,
                                      const std::vector<double>& theta);

/// Full-gradient evaluator produced from an assignment.
class GradientEvaluator {
 public:
  GradientEvaluator(Pqc pqc, MethodAssignment assignment);

  std::vector<double> gradient(const std::vector<double>& theta) const;
  /// Shot estimate per component, seeded per parameter.
  std::vector<SampledValue> gradient_shots(const std::vector<double>& theta,
                                           std::uint64_t shots,
                                           std::uint64_t seed) const;
  /// Distinct circuits executed for one full gradient.
  std::size_t circuits_per_iteration() const { return circuits_; }
  const MethodAssignment& assignment() const { return assignment_; }

 private:
  Pqc pqc_;
  MethodAssignment assignment_;
  std::size_t circuits_ = 0;
};

/// Throws std::invalid_argument unless the assignment covers every
/// parameter of `pqc`.
GradientEvaluator build_gradient(const Pqc& pqc,
                                 const MethodAssignment& assignment);

/// Distinct circuits for one full gradient under `assignment`.
std::size_t circuits_per_iteration(const Pqc& pqc,
                                   const MethodAssignment& assignment);

std::string assignment_json(const MethodAssignment& a, const Pqc& pqc);
std::string assignment_csv(const MethodAssignment& a, const Pqc& pqc);

}  // namespace qgrad
