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
#include <vector>

#include "qgrad/grad_first.h"

namespace qgrad {

/// Gate positions j_1 <= ... <= j_k of a k-th order partial derivative
/// (0-based). Mixed partials are symmetric, so input order is irrelevant.
class DerivativeIndex {
 public:
  explicit DerivativeIndex(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t order() const { return indices_.size(); }

 private:
  std::vector<std::size_t> indices_;
};

/// Largest register accepted by the dense nested-commutator oracle.
inline constexpr int kMaxOracleQubits = 5;

/// (i/2)^k <theta|[H~_{j1}, [..., [H~_{jk}, O]]]|theta> with explicit dense
/// matrices, H~_j = U_{j+1:n} H_j U_{j+1:n}^dagger.
double nested_commutator_oracle(const Pqc& pqc, const std::vector<double>& theta,
                                const DerivativeIndex& idx);

/// k ancillas in (|0> - i|1>)/sqrt2, one controlled generator term per
/// index placed right after its gate, measured against X^k (x) O.
GradResult kfold_ht(const Pqc& pqc, const std::vector<double>& theta,
                    const DerivativeIndex& idx);
GradPlan kfold_ht_plan(const Pqc& pqc, const std::vector<double>& theta,
                       const DerivativeIndex& idx);

/// 2^k ancilla-free circuits: exp(s_t i pi/4 Q) inserted after gate j_t for
/// each sign vector s; value = (-1/2)^k sum_s (prod s) <O>_s.
GradResult dht_korder(const Pqc& pqc, const std::vector<double>& theta,
                      const DerivativeIndex& idx);
GradPlan dht_korder_plan(const Pqc& pqc, const std::vector<double>& theta,
                         const DerivativeIndex& idx);

/// Qubits and depth of the k-th order circuits for PSR, HT, DHT and the
/// k-fold test.
Shape korder_qubits_depth(Method m, int k, int n_qubits, int n_gates);

/// Distinct circuits of a k-th order derivative with single-word
/// generators and a single measurement group: PSR 2^k, HT 2^(k-1),
/// DHT 2^k, k-fold 1.
std::uint64_t korder_count(Method m, int k);

}  // namespace qgrad
