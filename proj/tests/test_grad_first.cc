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

#include <gtest/gtest.h>

#include "dense_oracle.h"

namespace qgrad {
namespace {

constexpr double kPi = std::numbers::pi;

PauliSum S(std::vector<std::pair<double, std::string>> t) {
  return PauliSum::from_strings(t);
}

Pqc rx_pqc() { return Pqc(1, {{S({{1.0, "X"}}), "t"}}, S({{1.0, "Z"}})); }

using Builder = GradResult (*)(const Pqc&, const std::vector<double>&, std::size_t);

GradResult psr_spectral(const Pqc& p, const std::vector<double>& t, std::size_t j) {
  return psr_gradient(p, t, j, PsrMode::kSpectral);
}

const std::pair<const char*, Builder> kAncillaMethods[] = {
    {"ht", ht_gradient}, {"dht", dht_gradient}, {"rht", rht_gradient}, {"rdht", rdht_gradient}};

TEST(Fd, RxExamples) {
  const Pqc p = rx_pqc();
  EXPECT_NEAR(fd_gradient(p, {0.0}, 0), 0.0, 1e-9);
  EXPECT_NEAR(fd_gradient(p, {kPi / 2}, 0), -1.0, 1e-6);
  // Second-order accuracy: halving eps cuts the error about fourfold.
  const double t = 0.7, exact = -std::sin(t);
  const double e1 = std::abs(fd_gradient(p, {t}, 0, 1e-2) - exact);
  const double e2 = std::abs(fd_gradient(p, {t}, 0, 5e-3) - exact);
  EXPECT_NEAR(e1 / e2, 4.0, 0.05);
}

TEST(Psr, ShiftData) {
  const PsrShift x = psr_shift(S({{1.0, "X"}}));
  EXPECT_NEAR(x.c, 0.5, 1e-12);
  EXPECT_NEAR(x.shift, kPi / 2, 1e-12);
  const PsrShift xz = psr_shift(S({{1.0, "X"}, {1.0, "Z"}}));
  EXPECT_NEAR(xz.h1, -std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(xz.h2, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(xz.c, std::sqrt(2.0) / 2, 1e-9);
  EXPECT_THROW(psr_shift(S({{1.0, "ZI"}, {1.0, "IZ"}})), NotPSRCompatible);
  EXPECT_FALSE(psr_spectral_feasible(S({{1.0, "ZI"}, {1.0, "IZ"}})));
  EXPECT_TRUE(psr_decomposable(S({{1.0, "ZI"}, {1.0, "IZ"}})));
  EXPECT_FALSE(psr_decomposable(S({{1.0, "ZI"}, {1.0, "XZ"}})));
}

TEST(Psr, Examples) {
  const GradResult r = psr_gradient(rx_pqc(), {kPi / 2}, 0);
  EXPECT_NEAR(r.value, -1.0, 1e-12);
  EXPECT_EQ(r.plan.tasks.size(), 2u);
  EXPECT_EQ(r.plan.distinct_circuit_count, 2u);

  const Pqc xz(1, {{S({{1.0, "X"}, {1.0, "Z"}}), "t"}}, S({{1.0, "Z"}, {0.3, "X"}}));
  EXPECT_NEAR(psr_gradient(xz, {0.4}, 0).value, oracle::fd(xz, {0.4}, 0), 1e-8);

  const Pqc bad(2, {{S({{1.0, "ZI"}, {1.0, "IZ"}}), "t"}}, S({{1.0, "XX"}}));
  EXPECT_THROW(psr_gradient(bad, {0.1}, 0), NotPSRCompatible);
  // The commuting terms can still be shifted one at a time.
  EXPECT_NEAR(psr_gradient(bad, {0.1}, 0, PsrMode::kDecomposed).value,
              oracle::fd(bad, {0.1}, 0), 1e-8);
  const Pqc nc(2, {{S({{1.0, "ZI"}, {1.0, "XZ"}, {0.5, "IY"}}), "t"}}, S({{1.0, "XX"}}));
  EXPECT_THROW(psr_gradient(nc, {0.1}, 0, PsrMode::kDecomposed), NotPSRCompatible);
}

TEST(Ht, Examples) {
  const GradResult r = ht_gradient(rx_pqc(), {kPi / 2}, 0);
  EXPECT_NEAR(r.value, -1.0, 1e-12);
  EXPECT_EQ(r.plan.distinct_circuit_count, 1u);
  EXPECT_EQ(r.plan.qubits, 2);

  const Pqc two(1, {{S({{0.5, "X"}, {0.25, "Z"}}), "t"}}, S({{1.0, "Z"}}));
  const GradPlan plan = ht_plan(two, {0.3}, 0);
  ASSERT_EQ(plan.tasks.size(), 2u);
  EXPECT_DOUBLE_EQ(plan.tasks[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(plan.tasks[1].weight, 0.25);
}

TEST(Dht, RxClosedForm) {
  for (double t : {0.0, 0.3, 1.1, -2.0}) {
    EXPECT_NEAR(dht_gradient(rx_pqc(), {t}, 0).value, -std::sin(t), 1e-12);
  }
  const GradPlan p = dht_plan(rx_pqc(), {0.3}, 0);
  EXPECT_EQ(p.tasks.size(), 2u);
  EXPECT_EQ(p.qubits, 1);
}

TEST(Rht, RxAndRdht) {
  for (double t : {0.0, 0.3, 1.1, -2.0}) {
    EXPECT_NEAR(rht_gradient(rx_pqc(), {t}, 0).value, -std::sin(t), 1e-12);
    EXPECT_NEAR(rdht_gradient(rx_pqc(), {t}, 0).value, -std::sin(t), 1e-12);
  }
  EXPECT_EQ(rht_plan(rx_pqc(), {0.1}, 0).distinct_circuit_count, 1u);
  EXPECT_EQ(rdht_plan(rx_pqc(), {0.1}, 0).distinct_circuit_count, 2u);
}

TEST(Counts, MixedGeneratorAcrossMethods) {
  // H = ZZ + XX + ZX: N(H) = 3, N_cm(H) = 2; O = ZI + 0.5 IX: N(O) = 2,
  // N_cm(O) = 1.
  const Pqc p(2, {{S({{1.0, "ZZ"}, {1.0, "XX"}, {1.0, "ZX"}}), "a"}},
              S({{1.0, "ZI"}, {0.5, "IX"}}));
  const TermCounts c = term_counts(p, 0);
  EXPECT_EQ(c.n_h, 3u);
  EXPECT_EQ(c.ncm_h, 2u);
  EXPECT_EQ(c.n_o, 2u);
  EXPECT_EQ(c.ncm_o, 1u);
  const std::vector<double> th{0.2};
  EXPECT_EQ(ht_plan(p, th, 0).distinct_circuit_count, 3u);
  EXPECT_EQ(dht_plan(p, th, 0).distinct_circuit_count, 6u);
  EXPECT_EQ(rht_plan(p, th, 0).distinct_circuit_count, 4u);
  EXPECT_EQ(rdht_plan(p, th, 0).distinct_circuit_count, 8u);
}

TEST(Methods, AgreeOnRandomPqcs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const Pqc p = oracle::random_pqc(seed, n, 1 + static_cast<int>(seed % 5));
    const auto theta = oracle::random_theta(seed, p.gate_count());
    for (std::size_t j = 0; j < p.gate_count(); ++j) {
      const double fd = oracle::fd(p, theta, j);
      const double comm = oracle::commutator_derivative(p, theta, {j});
      EXPECT_NEAR(fd, comm, 1e-6);
      for (const auto& [name, fn] : kAncillaMethods) {
        const GradResult r = fn(p, theta, j);
        EXPECT_NEAR(r.value, comm, 1e-10) << name << " seed " << seed << " j " << j;
        EXPECT_NEAR(evaluate_plan(r.plan), r.value, 1e-14);
      }
      if (psr_spectral_feasible(p.gate(j).generator)) {
        EXPECT_NEAR(psr_spectral(p, theta, j).value, comm, 1e-10) << seed;
      }
      if (psr_decomposable(p.gate(j).generator)) {
        EXPECT_NEAR(psr_gradient(p, theta, j, PsrMode::kDecomposed).value, comm, 1e-10);
      }
    }
  }
}

TEST(Methods, PlanCountsMatchFormulas) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const Pqc p = oracle::random_pqc(seed, n, 3);
    const auto theta = oracle::random_theta(seed, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      const TermCounts c = term_counts(p, j);
      for (Method m : {Method::kHT, Method::kDHT, Method::kRHT, Method::kRDHT}) {
        EXPECT_EQ(build_plan(m, p, theta, j).distinct_circuit_count, first_order_count(m, c))
            << to_string(m) << " seed " << seed;
      }
      if (psr_spectral_feasible(p.gate(j).generator)) {
        EXPECT_EQ(psr_plan(p, theta, j).distinct_circuit_count, 2 * c.ncm_o);
      }
      if (psr_decomposable(p.gate(j).generator)) {
        EXPECT_EQ(psr_plan(p, theta, j, PsrMode::kDecomposed).distinct_circuit_count,
                  first_order_count(Method::kPSR, c));
      }
    }
  }
}

TEST(Methods, ShapesFollowCostTable) {
  const Pqc p = oracle::random_pqc(7, 3, 4);
  const auto theta = oracle::random_theta(7, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    for (Method m : {Method::kHT, Method::kDHT, Method::kRHT, Method::kRDHT}) {
      const GradPlan plan = build_plan(m, p, theta, j);
      const Shape s = first_order_shape(m, 3, 4, static_cast<int>(j) + 1);
      EXPECT_EQ(plan.qubits, s.qubits);
      EXPECT_EQ(plan.depth, s.depth);
    }
  }
}

TEST(Methods, InputPreparationIsRespected) {
  Pqc p = oracle::random_pqc(3, 2, 3);
  const Pqc prepped = p.with_input_prep({PauliRotation{PauliWord::from_string("YX"), 0.8}});
  const auto theta = oracle::random_theta(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    const double fd = fd_gradient(prepped, theta, j);
    for (const auto& [name, fn] : kAncillaMethods) {
      EXPECT_NEAR(fn(prepped, theta, j).value, fd, 1e-6) << name;
    }
  }
}

TEST(Shots, HtEstimateIsWithinErrorBars) {
  const GradPlan plan = ht_plan(rx_pqc(), {0.9}, 0);
  const SampledValue v = evaluate_plan_shots(plan, 100000, 5);
  EXPECT_GT(v.std_error, 0.0);
  EXPECT_LT(std::abs(v.estimate + std::sin(0.9)), 4 * v.std_error);
}

TEST(FlexibleHt, Examples) {
  const Circuit zero{1, {}, {}};
  EXPECT_NEAR(flexible_ht({{S({{1.0, "Z"}}), {}}, {S({{1.0, "Z"}}), {}}}, 1, zero), 0.0, 1e-15);
  EXPECT_NEAR(flexible_ht({{S({{1.0, "X"}}), {}}, {S({{1.0, "Y"}}), {}}}, 1, zero), 1.0, 1e-12);
  EXPECT_NEAR(flexible_ht({{S({{1.0, "X"}}), {}}, {S({{1.0, "Y"}}), {}}}, 0, zero), 1.0, 1e-12);
  EXPECT_THROW(flexible_ht({{S({{1.0, "X"}}), {}}}, 1, zero), std::invalid_argument);
}

TEST(FlexibleHt, ChoiceInvarianceAndDenseOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::uint64_t ws = seed * 13 + 5;
    const int n = 1 + static_cast<int>(seed % 3);
    const Pqc prep = oracle::random_pqc(seed, n, 2);
    const auto theta = oracle::random_theta(seed, 2);
    const Circuit c = prep.circuit(theta);
    std::vector<HermitianFactor> f;
    oracle::Matrix prod = oracle::Matrix::Identity(1 << n, 1 << n);
    for (int k = 0; k < 3; ++k) {
      const std::string w = oracle::random_word(ws, n);
      f.push_back({S({{1.0, w}}), {}});
      prod = prod * oracle::pauli(w);
    }
    const oracle::Vector psi = oracle::state(prep, theta);
    const double want = psi.dot(prod * psi).imag();
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(flexible_ht(f, i, c), want, 1e-10);
  }
}

TEST(FlexibleHt, MultiTermFactorsExpand) {
  const int n = 2;
  const Pqc prep = oracle::random_pqc(9, n, 2);
  const auto theta = oracle::random_theta(9, 2);
  const PauliSum a = S({{0.7, "XZ"}, {-0.3, "YI"}});
  const PauliSum b = S({{1.0, "ZY"}});
  const PauliSum c = S({{0.4, "IX"}, {0.9, "ZZ"}});
  const oracle::Matrix prod = oracle::matrix(a) * oracle::matrix(b) * oracle::matrix(c);
  const oracle::Vector psi = oracle::state(prep, theta);
  const double want = psi.dot(prod * psi).imag();
  const std::vector<HermitianFactor> f{{a, {}}, {b, {}}, {c, {}}};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(flexible_ht(f, i, prep.circuit(theta)), want, 1e-10);
  }
  // Every unmeasured multi-term factor multiplies the task count.
  EXPECT_EQ(flexible_ht_tasks(f, 1, prep.circuit(theta)).size(), 4u);
}

TEST(FlexibleHt, ReproducesMinusGradient) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Pqc p = oracle::random_pqc(seed, 2, 3);
    const auto theta = oracle::random_theta(seed, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      const std::vector<HermitianFactor> f{
          {p.gate(j).generator, p.gate_ops(theta, j + 1, 3)}, {p.observable(), {}}};
      EXPECT_NEAR(flexible_ht(f, 1, p.circuit(theta)), -oracle::fd(p, theta, j), 1e-6);
    }
  }
}

}  // namespace
}  // namespace qgrad
