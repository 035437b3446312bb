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

#include "qgrad/counts.h"

#include <stdexcept>

#include "qgrad/grouping.h"

namespace qgrad {

std::string to_string(Method m) {
  switch (m) {
    case Method::kFD: return "fd";
    case Method::kPSR: return "psr";
    case Method::kHT: return "ht";
    case Method::kDHT: return "dht";
    case Method::kRHT: return "rht";
    case Method::kRDHT: return "rdht";
    case Method::kKFoldHT: return "kfold";
    case Method::kDHTK: return "dhtk";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::kFD, Method::kPSR, Method::kHT, Method::kDHT,
                   Method::kRHT, Method::kRDHT, Method::kKFoldHT,
                   Method::kDHTK}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method: " + name);
}

TermCounts term_counts(const Pqc& pqc, std::size_t j) {
  const PauliSum h = pqc.gate(j).generator.without_identity();
  TermCounts c;
  c.n_h = h.size();
  c.ncm_h = group_count(h, GroupingCriterion::kFullCommutativity);
  if (pqc.counting() == ObservableCounting::kSingleUnit) {
    c.n_o = c.ncm_o = 1;
  } else {
    const PauliSum o = pqc.observable().without_identity();
    c.n_o = o.size();
    c.ncm_o = group_count(o, GroupingCriterion::kFullCommutativity);
  }
  return c;
}

std::size_t first_order_count(Method m, std::size_t n_h, std::size_t ncm_h,
                              std::size_t n_o, std::size_t ncm_o) {
  if (n_h == 0 || ncm_h == 0 || n_o == 0 || ncm_o == 0) {
    throw std::invalid_argument("term counts must be positive");
  }
  switch (m) {
    case Method::kPSR: return 2 * n_h * ncm_o;
    case Method::kHT: return n_h * ncm_o;
    case Method::kDHT: return 2 * n_h * ncm_o;
    case Method::kRHT: return ncm_h * n_o;
    case Method::kRDHT: return 2 * ncm_h * n_o;
    default:
      throw std::invalid_argument("no first-order count for " + to_string(m));
  }
}

std::size_t first_order_count(Method m, const TermCounts& c) {
  return first_order_count(m, c.n_h, c.ncm_h, c.n_o, c.ncm_o);
}

Shape first_order_shape(Method m, int n_qubits, int n_gates, int j) {
  if (j < 1 || j > n_gates) {
    throw std::invalid_argument("gate index out of range");
  }
  const int reversed_depth = 2 * n_gates - j + 1;
  switch (m) {
    case Method::kPSR: return {n_qubits, n_gates};
    case Method::kHT: return {n_qubits + 1, n_gates + 1};
    case Method::kDHT: return {n_qubits, n_gates + 1};
    case Method::kRHT: return {n_qubits + 1, reversed_depth};
    case Method::kRDHT: return {n_qubits, reversed_depth};
    default:
      throw std::invalid_argument("no first-order shape for " + to_string(m));
  }
}

}  // namespace qgrad
