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

#include "qgrad/grad_first.h"

#include <cmath>
#include <numbers>

#include "qgrad/random.h"

namespace qgrad {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void check_param(const Pqc& pqc, const std::vector<double>& theta,
                 std::size_t j) {
  pqc.check_arity(theta);
  if (j >= pqc.gate_count()) {
    throw std::invalid_argument("parameter index " + std::to_string(j) +
                                " out of range");
  }
}

GradTask make_task(int qubits, GateRun ops, PauliSum obs, double weight) {
  GradTask t;
  t.circuit = Circuit{qubits, std::move(ops), {}};
  t.grouping = partition(obs, GroupingCriterion::kFullCommutativity);
  t.observable = std::move(obs);
  t.weight = weight;
  return t;
}

// X on qubit `ancilla` tensored with every term of `op`.
PauliSum with_ancilla_x(const PauliSum& op, int width, int ancilla) {
  std::vector<PauliTerm> terms;
  for (const auto& t : op.terms()) {
    terms.push_back(
        {t.coefficient, t.word.widened(width).with_letter(ancilla, 'X')});
  }
  return PauliSum(width, std::move(terms));
}

void append(GateRun& out, const GateRun& more) {
  out.insert(out.end(), more.begin(), more.end());
}

std::size_t sum_of_groups(const GradPlan& plan) {
  std::size_t total = 0;
  for (const auto& t : plan.tasks) total += t.grouping.size();
  return total;
}

void finish(GradPlan& plan, const Pqc& pqc, std::size_t j, bool spectral_psr) {
  const int n_gates = static_cast<int>(pqc.gate_count());
  const Shape shape = first_order_shape(plan.method, pqc.qubit_count(),
                                        n_gates, static_cast<int>(j) + 1);
  plan.qubits = shape.qubits;
  plan.depth = shape.depth;
  if (pqc.counting() == ObservableCounting::kPauliTerms) {
    plan.distinct_circuit_count = sum_of_groups(plan);
    return;
  }
  TermCounts c = term_counts(pqc, j);
  if (spectral_psr) c.n_h = 1;
  plan.distinct_circuit_count = first_order_count(plan.method, c);
}

}  // namespace

PsrShift psr_shift(const PauliSum& generator) {
  const auto spectrum = eigen_spectrum(generator);
  if (spectrum.size() != 2) {
    throw NotPSRCompatible("generator has " + std::to_string(spectrum.size()) +
                           " distinct eigenvalues; the shift rule needs 2");
  }
  PsrShift s;
  s.h1 = spectrum[0];
  s.h2 = spectrum[1];
  s.c = (s.h2 - s.h1) / 4;
  s.shift = std::numbers::pi / (4 * s.c);
  return s;
}

bool psr_spectral_feasible(const PauliSum& generator) {
  return eigen_spectrum(generator).size() == 2;
}

bool psr_decomposable(const PauliSum& generator) {
  return generator.without_identity().all_commute();
}

GradPlan psr_plan(const Pqc& pqc, const std::vector<double>& theta,
                  std::size_t j, PsrMode mode) {
  check_param(pqc, theta, j);
  const int nq = pqc.qubit_count();
  const std::size_t n = pqc.gate_count();
  const PauliSum obs = pqc.observable().without_identity();
  GradPlan plan;
  plan.method = Method::kPSR;
  plan.param = j;
  if (mode == PsrMode::kSpectral) {
    const PsrShift s = psr_shift(pqc.gate(j).generator);
    for (int sign : {+1, -1}) {
      std::vector<double> shifted = theta;
      shifted[j] += sign * s.shift;
      plan.tasks.push_back(make_task(nq, pqc.prefix(shifted, n), obs, sign * s.c));
    }
  } else {
    const PauliSum h = pqc.gate(j).generator.without_identity();
    if (!h.all_commute()) {
      throw NotPSRCompatible(
          "generator terms do not commute; cannot shift them one by one");
    }
    // Commuting terms factor the gate into per-term rotations with angles
    // beta_k theta_j, each differentiated by a +-pi/2 shift.
    for (const auto& q : h.terms()) {
      for (int sign : {+1, -1}) {
        GateRun ops = pqc.prefix(theta, j + 1);
        ops.push_back(PauliRotation{q.word, sign * kHalfPi});
        append(ops, pqc.gate_ops(theta, j + 1, n));
        plan.tasks.push_back(
            make_task(nq, std::move(ops), obs, sign * q.coefficient / 2));
      }
    }
  }
  finish(plan, pqc, j, mode == PsrMode::kSpectral);
  return plan;
}

GradPlan ht_plan(const Pqc& pqc, const std::vector<double>& theta,
                 std::size_t j) {
  check_param(pqc, theta, j);
  const int nq = pqc.qubit_count();
  const int width = nq + 1;
  const std::size_t n = pqc.gate_count();
  const PauliSum obs =
      with_ancilla_x(pqc.observable().without_identity(), width, nq);
  const GateRun before = widened(pqc.prefix(theta, j + 1), width);
  const GateRun after = widened(pqc.gate_ops(theta, j + 1, n), width);
  GradPlan plan;
  plan.method = Method::kHT;
  plan.param = j;
  const PauliSum h = pqc.gate(j).generator.without_identity();
  for (const auto& q : h.terms()) {
    GateRun ops{AncillaPrep{nq}};
    append(ops, before);
    ops.push_back(ControlledPauli{nq, 1, q.word.widened(width)});
    append(ops, after);
    plan.tasks.push_back(make_task(width, std::move(ops), obs, q.coefficient));
  }
  finish(plan, pqc, j, false);
  return plan;
}

GradPlan dht_plan(const Pqc& pqc, const std::vector<double>& theta,
                  std::size_t j) {
  check_param(pqc, theta, j);
  const int nq = pqc.qubit_count();
  const std::size_t n = pqc.gate_count();
  const PauliSum obs = pqc.observable().without_identity();
  const GateRun before = pqc.prefix(theta, j + 1);
  const GateRun after = pqc.gate_ops(theta, j + 1, n);
  GradPlan plan;
  plan.method = Method::kDHT;
  plan.param = j;
  const PauliSum h = pqc.gate(j).generator.without_identity();
  for (const auto& q : h.terms()) {
    // s = +1 inserts exp(+i pi/4 Q) = PauliRotation(Q, -pi/2).
    for (int s : {+1, -1}) {
      GateRun ops = before;
      ops.push_back(PauliRotation{q.word, -s * kHalfPi});
      append(ops, after);
      plan.tasks.push_back(
          make_task(nq, std::move(ops), obs, -0.5 * s * q.coefficient));
    }
  }
  finish(plan, pqc, j, false);
  return plan;
}

GradPlan rht_plan(const Pqc& pqc, const std::vector<double>& theta,
                  std::size_t j) {
  check_param(pqc, theta, j);
  const int nq = pqc.qubit_count();
  const int width = nq + 1;
  const std::size_t n = pqc.gate_count();
  const PauliSum measured =
      with_ancilla_x(pqc.gate(j).generator.without_identity(), width, nq);
  const GateRun full = widened(pqc.prefix(theta, n), width);
  const Segment undo =
      make_segment(widened(pqc.gate_ops(theta, j + 1, n), width), true);
  GradPlan plan;
  plan.method = Method::kRHT;
  plan.param = j;
  const PauliSum o = pqc.observable().without_identity();
  for (const auto& p : o.terms()) {
    GateRun ops{AncillaPrep{nq}};
    append(ops, full);
    ops.push_back(ControlledPauli{nq, 1, p.word.widened(width)});
    ops.push_back(undo);
    // The branches are U^dag|theta> and U^dag P|theta> (U = gates after j),
    // so <X (x) H_j> = +Im<theta|H~_j P|theta> and the derivative takes -alpha.
    plan.tasks.push_back(
        make_task(width, std::move(ops), measured, -p.coefficient));
  }
  finish(plan, pqc, j, false);
  return plan;
}

GradPlan rdht_plan(const Pqc& pqc, const std::vector<double>& theta,
                   std::size_t j) {
  check_param(pqc, theta, j);
  const int nq = pqc.qubit_count();
  const std::size_t n = pqc.gate_count();
  const PauliSum measured = pqc.gate(j).generator.without_identity();
  const GateRun full = pqc.prefix(theta, n);
  const Segment undo = make_segment(pqc.gate_ops(theta, j + 1, n), true);
  GradPlan plan;
  plan.method = Method::kRDHT;
  plan.param = j;
  const PauliSum o = pqc.observable().without_identity();
  for (const auto& p : o.terms()) {
    for (int s : {+1, -1}) {
      GateRun ops = full;
      ops.push_back(PauliRotation{p.word, -s * kHalfPi});
      ops.push_back(undo);
      plan.tasks.push_back(
          make_task(nq, std::move(ops), measured, 0.5 * s * p.coefficient));
    }
  }
  finish(plan, pqc, j, false);
  return plan;
}

GradPlan build_plan(Method method, const Pqc& pqc,
                    const std::vector<double>& theta, std::size_t j,
                    PsrMode psr_mode) {
  switch (method) {
    case Method::kPSR: return psr_plan(pqc, theta, j, psr_mode);
    case Method::kHT: return ht_plan(pqc, theta, j);
    case Method::kDHT: return dht_plan(pqc, theta, j);
    case Method::kRHT: return rht_plan(pqc, theta, j);
    case Method::kRDHT: return rdht_plan(pqc, theta, j);
    default:
      throw std::invalid_argument("no circuit plan for method " +
                                  to_string(method));
  }
}

double evaluate_plan(const GradPlan& plan) {
  double value = 0.0;
  for (const auto& t : plan.tasks) {
    value += t.weight * expectation(t.circuit.run(), t.observable);
  }
  return value;
}

SampledValue evaluate_plan_shots(const GradPlan& plan, std::uint64_t shots,
                                 std::uint64_t seed) {
  SampledValue out;
  double variance = 0.0;
  for (std::size_t i = 0; i < plan.tasks.size(); ++i) {
    const auto& t = plan.tasks[i];
    const Grouping qwc = partition(t.observable, GroupingCriterion::kQubitWise);
    const SampledValue s = sample_expectation(t.circuit.run(), t.observable,
                                              qwc, shots, derive_seed(seed, i));
    out.estimate += t.weight * s.estimate;
    variance += t.weight * t.weight * s.std_error * s.std_error;
  }
  out.std_error = std::sqrt(variance);
  return out;
}

double fd_gradient(const Pqc& pqc, const std::vector<double>& theta,
                   std::size_t j, double eps) {
  check_param(pqc, theta, j);
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  std::vector<double> plus = theta, minus = theta;
  plus[j] += eps;
  minus[j] -= eps;
  return (eval_cost(pqc, plus) - eval_cost(pqc, minus)) / (2 * eps);
}

GradResult psr_gradient(const Pqc& pqc, const std::vector<double>& theta,
                        std::size_t j, PsrMode mode) {
  GradPlan plan = psr_plan(pqc, theta, j, mode);
  const double v = evaluate_plan(plan);
  return {v, std::move(plan)};
}

GradResult ht_gradient(const Pqc& pqc, const std::vector<double>& theta,
                       std::size_t j) {
  GradPlan plan = ht_plan(pqc, theta, j);
  const double v = evaluate_plan(plan);
  return {v, std::move(plan)};
}

GradResult dht_gradient(const Pqc& pqc, const std::vector<double>& theta,
                        std::size_t j) {
  GradPlan plan = dht_plan(pqc, theta, j);
  const double v = evaluate_plan(plan);
  return {v, std::move(plan)};
}

GradResult rht_gradient(const Pqc& pqc, const std::vector<double>& theta,
                        std::size_t j) {
  GradPlan plan = rht_plan(pqc, theta, j);
  const double v = evaluate_plan(plan);
  return {v, std::move(plan)};
}

GradResult rdht_gradient(const Pqc& pqc, const std::vector<double>& theta,
                         std::size_t j) {
  GradPlan plan = rdht_plan(pqc, theta, j);
  const double v = evaluate_plan(plan);
  return {v, std::move(plan)};
}

std::vector<GradTask> flexible_ht_tasks(
    const std::vector<HermitianFactor>& factors, std::size_t measured,
    const Circuit& prep) {
  if (measured >= factors.size()) {
    throw std::invalid_argument("measured index out of range");
  }
  const int nq = prep.qubit_count;
  const int width = nq + 1;
  for (const auto& f : factors) {
    if (f.op.width() != nq) {
      throw std::invalid_argument("factor width does not match the state");
    }
    if (f.op.empty()) throw std::invalid_argument("zero factor");
  }
  const auto& m = factors[measured];
  PauliSum obs = with_ancilla_x(m.op, width, nq);
  GateRun measure_frame;
  if (!m.frame.empty()) {
    measure_frame.push_back(make_segment(widened(m.frame, width), true));
  }

  // Applies factor f's word `word` controlled on the ancilla reading `value`.
  auto controlled = [&](const HermitianFactor& f, const PauliWord& word,
                        int value, GateRun& ops) {
    if (f.frame.empty()) {
      ops.push_back(ControlledPauli{nq, value, word.widened(width)});
      return;
    }
    auto frame = std::make_shared<const GateRun>(widened(f.frame, width));
    ops.push_back(Segment{frame, true});
    ops.push_back(ControlledPauli{nq, value, word.widened(width)});
    ops.push_back(Segment{frame, false});
  };

  // Order of application: control-0 applies F_1 first up to F_{i-1};
  // control-1 applies F_m first down to F_{i+1}.
  std::vector<std::pair<std::size_t, int>> sequence;
  for (std::size_t t = 0; t < measured; ++t) sequence.push_back({t, 0});
  for (std::size_t t = factors.size(); t-- > measured + 1;) {
    sequence.push_back({t, 1});
  }

  std::vector<GradTask> tasks;
  std::vector<std::size_t> choice(sequence.size(), 0);
  const GateRun base = widened(prep.ops, width);
  while (true) {
    GateRun ops{AncillaPrep{nq}};
    append(ops, base);
    double weight = 1.0;
    for (std::size_t s = 0; s < sequence.size(); ++s) {
      const auto& f = factors[sequence[s].first];
      const auto& term = f.op[choice[s]];
      weight *= term.coefficient;
      controlled(f, term.word, sequence[s].second, ops);
    }
    append(ops, measure_frame);
    tasks.push_back(make_task(width, std::move(ops), obs, weight));
    // Next element of the cross product.
    std::size_t s = 0;
    for (; s < sequence.size(); ++s) {
      if (++choice[s] < factors[sequence[s].first].op.size()) break;
      choice[s] = 0;
    }
    if (s == sequence.size()) break;
  }
  return tasks;
}

double flexible_ht(const std::vector<HermitianFactor>& factors,
                   std::size_t measured, const Circuit& prep) {
  double value = 0.0;
  for (const auto& t : flexible_ht_tasks(factors, measured, prep)) {
    value += t.weight * expectation(t.circuit.run(), t.observable);
  }
  return value;
}

}  // namespace qgrad
