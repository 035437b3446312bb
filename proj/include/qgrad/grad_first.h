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
#include <stdexcept>
#include <vector>

#include "qgrad/circuit.h"
#include "qgrad/counts.h"
#include "qgrad/grouping.h"

namespace qgrad {

/// One circuit whose weighted expectation contributes to a derivative.
struct GradTask {
  Circuit circuit;
  PauliSum observable;
  Grouping grouping;
  double weight = 0.0;
};

/// A derivative as sum_t weight_t <observable_t> over circuit tasks.
///
/// distinct_circuit_count is the number of measured circuit configurations:
/// the sum of the tasks' group counts, or the count formula when the PQC
/// observable is counted as a single unit.
struct GradPlan {
  Method method = Method::kHT;
  std::size_t param = 0;
  std::vector<GradTask> tasks;
  std::size_t distinct_circuit_count = 0;
  int qubits = 0;
  int depth = 0;
};

struct GradResult {
  double value = 0.0;
  GradPlan plan;
};

class NotPSRCompatible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two-eigenvalue shift rule data: c = (h2 - h1) / 4, shift = pi / (4c).
struct PsrShift {
  double h1 = 0.0;
  double h2 = 0.0;
  double c = 0.0;
  double shift = 0.0;
};

/// Throws NotPSRCompatible unless `generator` has exactly two eigenvalues.
PsrShift psr_shift(const PauliSum& generator);
bool psr_spectral_feasible(const PauliSum& generator);
/// True iff the non-identity terms pairwise commute, so each term can be
/// shifted on its own.
bool psr_decomposable(const PauliSum& generator);

enum class PsrMode {
  kSpectral,    // two shifted full circuits
  kDecomposed,  // a +-pi/2 shift per commuting Pauli term
};

// Plan builders. `j` is the 0-based gate index.
GradPlan psr_plan(const Pqc& pqc, const std::vector<double>& theta,
                  std::size_t j, PsrMode mode = PsrMode::kSpectral);
GradPlan ht_plan(const Pqc& pqc, const std::vector<double>& theta,
                 std::size_t j);
GradPlan dht_plan(const Pqc& pqc, const std::vector<double>& theta,
                  std::size_t j);
GradPlan rht_plan(const Pqc& pqc, const std::vector<double>& theta,
                  std::size_t j);
GradPlan rdht_plan(const Pqc& pqc, const std::vector<double>& theta,
                   std::size_t j);
/// Dispatches on `method` (one of the five first-order quantum methods).
GradPlan build_plan(Method method, const Pqc& pqc,
                    const std::vector<double>& theta, std::size_t j,
                    PsrMode psr_mode = PsrMode::kSpectral);

/// Exact value of a plan.
double evaluate_plan(const GradPlan& plan);
/// Shot estimate: every task is sampled with `shots` shots per qubit-wise
/// group; the standard error combines the tasks in quadrature.
SampledValue evaluate_plan_shots(const GradPlan& plan, std::uint64_t shots,
                                 std::uint64_t seed);

/// [f(theta + eps e_j) - f(theta - eps e_j)] / (2 eps).
double fd_gradient(const Pqc& pqc, const std::vector<double>& theta,
                   std::size_t j, double eps = 1e-5);

GradResult psr_gradient(const Pqc& pqc, const std::vector<double>& theta,
                        std::size_t j, PsrMode mode = PsrMode::kSpectral);
GradResult ht_gradient(const Pqc& pqc, const std::vector<double>& theta,
                       std::size_t j);
GradResult dht_gradient(const Pqc& pqc, const std::vector<double>& theta,
                        std::size_t j);
GradResult rht_gradient(const Pqc& pqc, const std::vector<double>& theta,
                        std::size_t j);
GradResult rdht_gradient(const Pqc& pqc, const std::vector<double>& theta,
                         std::size_t j);

/// A Hermitian W op W^dagger, with W the unitary of `frame` (empty frame
/// means W = I).
struct HermitianFactor {
  PauliSum op;
  GateRun frame;
};

/// Circuits of the flexible Hadamard test for Im<psi|F_1 ... F_m|psi>,
/// where |psi> is produced by `prep` and factor `measured` (0-based) is the
/// measured observable. Multi-term unmeasured factors expand into the cross
/// product of their terms.
std::vector<GradTask> flexible_ht_tasks(
    const std::vector<HermitianFactor>& factors, std::size_t measured,
    const Circuit& prep);
double flexible_ht(const std::vector<HermitianFactor>& factors,
                   std::size_t measured, const Circuit& prep);

}  // namespace qgrad
