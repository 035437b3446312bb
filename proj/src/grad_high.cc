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

#include "qgrad/grad_high.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace qgrad {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void check_index(const Pqc& pqc, const std::vector<double>& theta,
                 const DerivativeIndex& idx) {
  pqc.check_arity(theta);
  for (std::size_t j : idx.indices()) {
    if (j >= pqc.gate_count()) {
      throw std::invalid_argument("derivative index out of range");
    }
  }
}

DenseMatrix gate_unitary(const PauliSum& generator, double angle) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(to_matrix(generator));
  const Eigen::VectorXcd phases =
      (solver.eigenvalues().cast<Complex>() * Complex(0.0, -angle / 2))
          .array()
          .exp();
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

// Effective (non-identity) terms of each indexed generator.
std::vector<PauliSum> index_generators(const Pqc& pqc,
                                       const DerivativeIndex& idx) {
  std::vector<PauliSum> out;
  for (std::size_t j : idx.indices()) {
    out.push_back(pqc.gate(j).generator.without_identity());
  }
  return out;
}

// Calls visit(choice) for every element of the cross product of term lists.
template <class F>
void for_each_choice(const std::vector<PauliSum>& sums, F&& visit) {
  std::vector<std::size_t> choice(sums.size(), 0);
  while (true) {
    visit(choice);
    std::size_t s = 0;
    for (; s < sums.size(); ++s) {
      if (++choice[s] < sums[s].size()) break;
      choice[s] = 0;
    }
    if (s == sums.size()) return;
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

std::size_t observable_groups(const Pqc& pqc) {
  if (pqc.counting() == ObservableCounting::kSingleUnit) return 1;
  return group_count(pqc.observable().without_identity(),
                     GroupingCriterion::kFullCommutativity);
}

std::size_t term_product(const std::vector<PauliSum>& sums) {
  std::size_t p = 1;
  for (const auto& s : sums) p *= s.size();
  return p;
}

}  // namespace

DerivativeIndex::DerivativeIndex(std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("empty derivative index");
  std::sort(indices_.begin(), indices_.end());
}

double nested_commutator_oracle(const Pqc& pqc, const std::vector<double>& theta,
                                const DerivativeIndex& idx) {
  check_index(pqc, theta, idx);
  if (pqc.qubit_count() > kMaxOracleQubits) {
    throw std::invalid_argument("nested-commutator oracle is capped at " +
                                std::to_string(kMaxOracleQubits) + " qubits");
  }
  const std::size_t n = pqc.gate_count();
  std::vector<DenseMatrix> u(n);
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = gate_unitary(pqc.gate(j).generator, theta[j]);
  }
  StateVector input(pqc.qubit_count());
  input.apply(pqc.input_prep());
  Eigen::VectorXcd psi = input.amplitudes();
  for (std::size_t j = 0; j < n; ++j) psi = u[j] * psi;

  // suffix[j] = U_n ... U_{j+1} (gates after j).
  const auto dim = static_cast<Eigen::Index>(psi.size());
  std::vector<DenseMatrix> suffix(n + 1, DenseMatrix::Identity(dim, dim));
  for (std::size_t j = n; j-- > 0;) {
    suffix[j] = j + 1 < n ? DenseMatrix(suffix[j + 1] * u[j + 1])
                          : DenseMatrix::Identity(dim, dim);
  }
  DenseMatrix c = to_matrix(pqc.observable());
  const auto& js = idx.indices();
  for (std::size_t t = js.size(); t-- > 0;) {
    const DenseMatrix ht = suffix[js[t]] * to_matrix(pqc.gate(js[t]).generator) *
                           suffix[js[t]].adjoint();
    c = ht * c - c * ht;
  }
  const Complex value = std::pow(Complex(0.0, 0.5), static_cast<int>(js.size())) *
                        psi.dot(c * psi);
  return value.real();
}

GradPlan kfold_ht_plan(const Pqc& pqc, const std::vector<double>& theta,
                       const DerivativeIndex& idx) {
  check_index(pqc, theta, idx);
  const int nq = pqc.qubit_count();
  const int k = static_cast<int>(idx.order());
  const int width = nq + k;
  const std::size_t n = pqc.gate_count();
  const auto& js = idx.indices();

  std::vector<PauliTerm> obs_terms;
  const PauliSum observable = pqc.observable().without_identity();
  for (const auto& t : observable.terms()) {
    PauliWord w = t.word.widened(width);
    for (int a = 0; a < k; ++a) w = w.with_letter(nq + a, 'X');
    obs_terms.push_back({t.coefficient, w});
  }
  const PauliSum obs(width, std::move(obs_terms));

  // Segments between consecutive insertion points.
  std::vector<GateRun> segments;
  std::size_t pos = 0;
  for (std::size_t t = 0; t < js.size(); ++t) {
    GateRun seg = t == 0 ? pqc.prefix(theta, js[t] + 1)
                         : pqc.gate_ops(theta, pos, js[t] + 1);
    segments.push_back(widened(seg, width));
    pos = js[t] + 1;
  }
  const GateRun tail = widened(pqc.gate_ops(theta, pos, n), width);

  const auto gens = index_generators(pqc, idx);
  GradPlan plan;
  plan.method = Method::kKFoldHT;
  plan.param = js.front();
  for_each_choice(gens, [&](const std::vector<std::size_t>& choice) {
    GateRun ops;
    for (int a = 0; a < k; ++a) ops.push_back(AncillaPrep{nq + a});
    double weight = 1.0;
    for (std::size_t t = 0; t < js.size(); ++t) {
      ops.insert(ops.end(), segments[t].begin(), segments[t].end());
      const auto& term = gens[t][choice[t]];
      ops.push_back(ControlledPauli{nq + static_cast<int>(t), 1,
                                    term.word.widened(width)});
      weight *= term.coefficient;
    }
    ops.insert(ops.end(), tail.begin(), tail.end());
    plan.tasks.push_back(make_task(width, std::move(ops), obs, weight));
  });
  const Shape shape = korder_qubits_depth(Method::kKFoldHT, k, nq,
                                          static_cast<int>(n));
  plan.qubits = shape.qubits;
  plan.depth = shape.depth;
  plan.distinct_circuit_count = term_product(gens) * observable_groups(pqc);
  return plan;
}

GradResult kfold_ht(const Pqc& pqc, const std::vector<double>& theta,
                    const DerivativeIndex& idx) {
  GradPlan plan = kfold_ht_plan(pqc, theta, idx);
  const double v = evaluate_plan(plan);
  return {v, std::move(plan)};
}

GradPlan dht_korder_plan(const Pqc& pqc, const std::vector<double>& theta,
                         const DerivativeIndex& idx) {
  check_index(pqc, theta, idx);
  const int nq = pqc.qubit_count();
  const int k = static_cast<int>(idx.order());
  const std::size_t n = pqc.gate_count();
  const auto& js = idx.indices();
  const PauliSum obs = pqc.observable().without_identity();
  const auto gens = index_generators(pqc, idx);
  const double norm = std::pow(-0.5, k);

  GradPlan plan;
  plan.method = Method::kDHTK;
  plan.param = js.front();
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << k); ++signs) {
    // Bit t set means s_t = -1.
    const double parity = std::popcount(signs) % 2 ? -1.0 : 1.0;
    for_each_choice(gens, [&](const std::vector<std::size_t>& choice) {
      GateRun ops = pqc.input_prep();
      std::size_t pos = 0;
      double weight = norm * parity;
      for (std::size_t t = 0; t < js.size(); ++t) {
        const GateRun seg = pqc.gate_ops(theta, pos, js[t] + 1);
        ops.insert(ops.end(), seg.begin(), seg.end());
        pos = js[t] + 1;
        const int s = (signs >> t) & 1 ? -1 : 1;
        const auto& term = gens[t][choice[t]];
        // exp(+s i pi/4 Q) = PauliRotation(Q, -s pi/2).
        ops.push_back(PauliRotation{term.word, -s * kHalfPi});
        weight *= term.coefficient;
      }
      const GateRun tail = pqc.gate_ops(theta, pos, n);
      ops.insert(ops.end(), tail.begin(), tail.end());
      plan.tasks.push_back(make_task(nq, std::move(ops), obs, weight));
    });
  }
  const Shape shape =
      korder_qubits_depth(Method::kDHT, k, nq, static_cast<int>(n));
  plan.qubits = shape.qubits;
  plan.depth = shape.depth;
  plan.distinct_circuit_count =
      (std::size_t{1} << k) * term_product(gens) * observable_groups(pqc);
  return plan;
}

GradResult dht_korder(const Pqc& pqc, const std::vector<double>& theta,
                      const DerivativeIndex& idx) {
  GradPlan plan = dht_korder_plan(pqc, theta, idx);
  const double v = evaluate_plan(plan);
  return {v, std::move(plan)};
}

Shape korder_qubits_depth(Method m, int k, int n_qubits, int n_gates) {
  if (k < 1) throw std::invalid_argument("derivative order must be >= 1");
  switch (m) {
    case Method::kPSR: return {n_qubits, n_gates};
    case Method::kHT: return {n_qubits + 1, n_gates + k};
    case Method::kDHT:
    case Method::kDHTK: return {n_qubits, n_gates + k};
    case Method::kKFoldHT: return {n_qubits + k, n_gates + k};
    default:
      throw std::invalid_argument("no k-th order shape for " + to_string(m));
  }
}

std::uint64_t korder_count(Method m, int k) {
  if (k < 1 || k > 62) throw std::invalid_argument("derivative order out of range");
  switch (m) {
    case Method::kPSR: return std::uint64_t{1} << k;
    case Method::kHT: return std::uint64_t{1} << (k - 1);
    case Method::kDHT:
    case Method::kDHTK: return std::uint64_t{1} << k;
    case Method::kKFoldHT: return 1;
    default:
      throw std::invalid_argument("no k-th order count for " + to_string(m));
  }
}

}  // namespace qgrad
