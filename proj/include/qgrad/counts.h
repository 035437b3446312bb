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

#include <cstddef>
#include <string>

#include "qgrad/circuit.h"

namespace qgrad {

enum class Method { kFD, kPSR, kHT, kDHT, kRHT, kRDHT, kKFoldHT, kDHTK };

std::string to_string(Method m);
/// Accepts fd, psr, ht, dht, rht, rdht, kfold, dhtk (case-sensitive).
Method parse_method(const std::string& name);

/// The five first-order quantum methods in tie-break order.
inline constexpr Method kFirstOrderMethods[] = {
    Method::kPSR, Method::kHT, Method::kDHT, Method::kRHT, Method::kRDHT};

/// N(.) and N_cm(.) of a gate generator and the observable. Identity terms
/// are excluded: they commute with everything and add no circuits.
struct TermCounts {
  std::size_t n_h = 0;
  std::size_t ncm_h = 0;
  std::size_t n_o = 0;
  std::size_t ncm_o = 0;
};

/// Counts for gate j (0-based). Under ObservableCounting::kSingleUnit the
/// observable counts as N(O) = N_cm(O) = 1.
TermCounts term_counts(const Pqc& pqc, std::size_t j);

/// Distinct circuits per derivative:
///   PSR 2 nH ncmO, HT nH ncmO, DHT 2 nH ncmO, RHT ncmH nO, RDHT 2 ncmH nO.
/// Throws std::invalid_argument for non-first-order methods or zero
/// arguments.
std::size_t first_order_count(Method m, std::size_t n_h, std::size_t ncm_h,
                              std::size_t n_o, std::size_t ncm_o);
std::size_t first_order_count(Method m, const TermCounts& c);

struct Shape {
  int qubits = 0;
  int depth = 0;  // parameterized-gate layers
};

/// Qubits and logical depth of the circuits of method m for a derivative
/// with respect to gate j (1-based, 1 <= j <= n).
Shape first_order_shape(Method m, int n_qubits, int n_gates, int j);

}  // namespace qgrad
