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

#include "qgrad/circuit.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace qgrad {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_angle(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("non-finite angle");
}

void check_qubit(int qubit, int width) {
  if (qubit < 0 || qubit >= width) {
    throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                " out of range for width " +
                                std::to_string(width));
  }
}

void check_width(const PauliWord& word, int width) {
  if (word.width() != width) {
    throw std::invalid_argument("width mismatch: word " + word.to_string() +
                                " on a " + std::to_string(width) +
                                "-qubit register");
  }
}

DenseMatrix ancilla_matrix(const AncillaPrep& op) {
  // Columns are the images of |0> and |1>: (|0> + p|1>)/sqrt2 and
  // (|0> - p|1>)/sqrt2 with p = -i or +i.
  const Complex p(0.0, static_cast<double>(op.phase_sign));
  DenseMatrix m(2, 2);
  m << 1.0, 1.0, p, -p;
  m /= std::sqrt(2.0);
  return op.adjoint ? DenseMatrix(m.adjoint()) : m;
}

// Word restricted to `qubits` (local bit i <- qubit qubits[i]).
PauliWord restrict_word(const PauliWord& word, const std::vector<int>& qubits) {
  std::uint64_t x = 0, z = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    x |= ((word.x_mask() >> qubits[i]) & 1) << i;
    z |= ((word.z_mask() >> qubits[i]) & 1) << i;
  }
  return PauliWord(static_cast<int>(qubits.size()), x, z);
}

}  // namespace

Segment make_segment(GateRun run, bool adjoint) {
  return Segment{std::make_shared<const GateRun>(std::move(run)), adjoint};
}

GateOp dagger(const GateOp& op) {
  return std::visit(
      Overloaded{
          [](const PauliRotation& r) -> GateOp {
            return PauliRotation{r.word, -r.angle};
          },
          [](const GeneratorRotation& r) -> GateOp {
            return GeneratorRotation{r.generator, -r.angle};
          },
          [](const ControlledPauli& c) -> GateOp { return c; },
          [](const AncillaPrep& a) -> GateOp {
            return AncillaPrep{a.qubit, a.phase_sign, !a.adjoint};
          },
          [](const Segment& s) -> GateOp {
            return Segment{s.run, !s.adjoint};
          },
      },
      op.kind);
}

GateRun dagger(const GateRun& run) {
  GateRun out;
  out.reserve(run.size());
  for (auto it = run.rbegin(); it != run.rend(); ++it) out.push_back(dagger(*it));
  return out;
}

GateOp widened(const GateOp& op, int width) {
  return std::visit(
      Overloaded{
          [&](const PauliRotation& r) -> GateOp {
            return PauliRotation{r.word.widened(width), r.angle};
          },
          [&](const GeneratorRotation& r) -> GateOp {
            return GeneratorRotation{r.generator.widened(width), r.angle};
          },
          [&](const ControlledPauli& c) -> GateOp {
            return ControlledPauli{c.control, c.control_value,
                                   c.word.widened(width)};
          },
          [&](const AncillaPrep& a) -> GateOp { return a; },
          [&](const Segment& s) -> GateOp {
            return make_segment(widened(*s.run, width), s.adjoint);
          },
      },
      op.kind);
}

GateRun widened(const GateRun& run, int width) {
  GateRun out;
  out.reserve(run.size());
  for (const auto& op : run) out.push_back(widened(op, width));
  return out;
}

void validate(const GateOp& op, int width) {
  std::visit(Overloaded{
                 [&](const PauliRotation& r) {
                   check_width(r.word, width);
                   check_angle(r.angle);
                 },
                 [&](const GeneratorRotation& r) {
                   if (r.generator.width() != width) {
                     throw std::invalid_argument("generator width mismatch");
                   }
                   check_angle(r.angle);
                 },
                 [&](const ControlledPauli& c) {
                   check_width(c.word, width);
                   check_qubit(c.control, width);
                   if ((c.word.support() >> c.control) & 1) {
                     throw std::invalid_argument(
                         "controlled Pauli acts on its own control qubit");
                   }
                   if (c.control_value != 0 && c.control_value != 1) {
                     throw std::invalid_argument("control value must be 0/1");
                   }
                 },
                 [&](const AncillaPrep& a) {
                   check_qubit(a.qubit, width);
                   if (a.phase_sign != 1 && a.phase_sign != -1) {
                     throw std::invalid_argument("ancilla phase must be +-i");
                   }
                 },
                 [&](const Segment& s) {
                   if (!s.run) throw std::invalid_argument("empty segment");
                   for (const auto& inner : *s.run) validate(inner, width);
                 },
             },
             op.kind);
}

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 0 || qubits > kMaxSimQubits) {
    throw std::invalid_argument("simulator supports at most " +
                                std::to_string(kMaxSimQubits) + " qubits");
  }
  amps_ = Eigen::VectorXcd::Zero(std::size_t{1} << qubits);
  amps_(0) = 1.0;
}

StateVector::StateVector(int qubits, Eigen::VectorXcd amplitudes)
    : StateVector(qubits) {
  if (static_cast<std::size_t>(amplitudes.size()) != dimension()) {
    throw std::invalid_argument("amplitude count does not match qubits");
  }
  amps_ = std::move(amplitudes);
}

void StateVector::check_word(const PauliWord& word) const {
  check_width(word, qubits_);
}

Eigen::VectorXcd StateVector::pauli_image(const PauliWord& word) const {
  check_word(word);
  Eigen::VectorXcd out(amps_.size());
  const std::uint64_t x = word.x_mask();
  for (std::uint64_t b = 0; b < dimension(); ++b) {
    out(b ^ x) = word.basis_phase(b) * amps_(b);
  }
  return out;
}

void StateVector::apply_rotation(const PauliWord& word, double angle) {
  check_word(word);
  const double c = std::cos(angle / 2);
  const Complex ms(0.0, -std::sin(angle / 2));
  amps_ = c * amps_ + ms * pauli_image(word);
}

void StateVector::apply_generator(const GeneratorRotation& op) {
  const PauliSum& g = op.generator;
  if (g.width() != qubits_) {
    throw std::invalid_argument("generator width mismatch");
  }
  if (g.all_commute()) {
    for (const auto& t : g.terms()) {
      if (t.word.is_identity()) {
        amps_ *= std::exp(Complex(0.0, -t.coefficient * op.angle / 2));
      } else {
        apply_rotation(t.word, t.coefficient * op.angle);
      }
    }
    return;
  }
  // Dense exponential restricted to the generator's support.
  std::uint64_t support = 0;
  for (const auto& t : g.terms()) support |= t.word.support();
  std::vector<int> qubits;
  for (int q = 0; q < qubits_; ++q) {
    if ((support >> q) & 1) qubits.push_back(q);
  }
  std::vector<PauliTerm> local;
  for (const auto& t : g.terms()) {
    local.push_back({t.coefficient, restrict_word(t.word, qubits)});
  }
  const DenseMatrix h =
      to_matrix(PauliSum(static_cast<int>(qubits.size()), std::move(local)));
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h);
  const Eigen::VectorXcd phases =
      (solver.eigenvalues().cast<Complex>() * Complex(0.0, -op.angle / 2))
          .array()
          .exp();
  const DenseMatrix u = solver.eigenvectors() * phases.asDiagonal() *
                        solver.eigenvectors().adjoint();
  apply_matrix(u, qubits);
}

void StateVector::apply_controlled(const ControlledPauli& op) {
  Eigen::VectorXcd out = amps_;
  const std::uint64_t cbit = std::uint64_t{1} << op.control;
  const std::uint64_t want = op.control_value ? cbit : 0;
  const std::uint64_t x = op.word.x_mask();
  for (std::uint64_t b = 0; b < dimension(); ++b) {
    if ((b & cbit) == want) out(b ^ x) = op.word.basis_phase(b) * amps_(b);
  }
  amps_ = std::move(out);
}

void StateVector::apply_matrix(const DenseMatrix& m,
                               const std::vector<int>& qubits) {
  const std::size_t k = qubits.size();
  const std::size_t local = std::size_t{1} << k;
  if (static_cast<std::size_t>(m.rows()) != local ||
      static_cast<std::size_t>(m.cols()) != local) {
    throw std::invalid_argument("matrix size does not match qubit list");
  }
  std::uint64_t mask = 0;
  for (int q : qubits) {
    check_qubit(q, qubits_);
    mask |= std::uint64_t{1} << q;
  }
  if (static_cast<std::size_t>(std::popcount(mask)) != k) {
    throw std::invalid_argument("repeated qubit in matrix application");
  }
  std::vector<std::uint64_t> offset(local, 0);
  for (std::size_t i = 0; i < local; ++i) {
    for (std::size_t bit = 0; bit < k; ++bit) {
      if ((i >> bit) & 1) offset[i] |= std::uint64_t{1} << qubits[bit];
    }
  }
  Eigen::VectorXcd in(local), res(local);
  for (std::uint64_t base = 0; base < dimension(); ++base) {
    if (base & mask) continue;
    for (std::size_t i = 0; i < local; ++i) in(i) = amps_(base | offset[i]);
    res.noalias() = m * in;
    for (std::size_t i = 0; i < local; ++i) amps_(base | offset[i]) = res(i);
  }
}

void StateVector::apply(const GateOp& op) {
  std::visit(Overloaded{
                 [&](const PauliRotation& r) {
                   check_angle(r.angle);
                   apply_rotation(r.word, r.angle);
                 },
                 [&](const GeneratorRotation& r) {
                   check_angle(r.angle);
                   apply_generator(r);
                 },
                 [&](const ControlledPauli& c) {
                   validate(c, qubits_);
                   apply_controlled(c);
                 },
                 [&](const AncillaPrep& a) {
                   validate(a, qubits_);
                   apply_matrix(ancilla_matrix(a), {a.qubit});
                 },
                 [&](const Segment& s) {
                   if (!s.run) throw std::invalid_argument("empty segment");
                   if (s.adjoint) {
                     for (auto it = s.run->rbegin(); it != s.run->rend(); ++it) {
                       apply(dagger(*it));
                     }
                   } else {
                     apply(*s.run);
                   }
                 },
             },
             op.kind);
}

void StateVector::apply(const GateRun& run) {
  for (const auto& op : run) apply(op);
}

Complex matrix_element(const StateVector& a, const PauliWord& word,
                       const StateVector& b) {
  return a.amplitudes().dot(b.pauli_image(word));
}

double expectation(const StateVector& state, const PauliWord& word) {
  check_width(word, state.qubit_count());
  const auto& psi = state.amplitudes();
  const std::uint64_t x = word.x_mask();
  Complex acc = 0.0;
  for (std::uint64_t b = 0; b < state.dimension(); ++b) {
    acc += std::conj(psi(b ^ x)) * word.basis_phase(b) * psi(b);
  }
  return acc.real();
}

double expectation(const StateVector& state, const PauliSum& obs) {
  if (obs.width() != state.qubit_count()) {
    throw std::invalid_argument("observable width mismatch");
  }
  double acc = 0.0;
  for (const auto& t : obs.terms()) {
    acc += t.coefficient * (t.word.is_identity() ? 1.0
                                                 : expectation(state, t.word));
  }
  return acc;
}

StateVector Circuit::run() const {
  StateVector state(qubit_count);
  state.apply(ops);
  return state;
}

Pqc::Pqc(int qubits, std::vector<PqcGate> gates, PauliSum observable,
         GateRun input_prep, ObservableCounting counting)
    : qubits_(qubits),
      gates_(std::move(gates)),
      observable_(std::move(observable)),
      input_prep_(std::move(input_prep)),
      counting_(counting) {
  if (qubits < 1 || qubits > kMaxSimQubits) {
    throw std::invalid_argument("PQC qubit count out of range");
  }
  if (observable_.width() != qubits) {
    throw std::invalid_argument("observable width does not match PQC");
  }
  std::unordered_set<std::string> names;
  for (const auto& g : gates_) {
    if (g.generator.width() != qubits) {
      throw std::invalid_argument("generator width does not match PQC for " +
                                  g.param);
    }
    if (g.generator.effective_size() == 0) {
      throw std::invalid_argument("generator of " + g.param +
                                  " has no non-identity term");
    }
    if (!names.insert(g.param).second) {
      throw std::invalid_argument("duplicate parameter name " + g.param);
    }
  }
  for (const auto& op : input_prep_) validate(op, qubits);
}

Pqc Pqc::with_input_prep(GateRun prep) const {
  return Pqc(qubits_, gates_, observable_, std::move(prep), counting_);
}

void Pqc::check_arity(const std::vector<double>& theta) const {
  if (theta.size() != gates_.size()) {
    throw std::invalid_argument("expected " + std::to_string(gates_.size()) +
                                " parameters, got " +
                                std::to_string(theta.size()));
  }
}

GateRun Pqc::gate_ops(const std::vector<double>& theta, std::size_t begin,
                      std::size_t end) const {
  check_arity(theta);
  if (begin > end || end > gates_.size()) {
    throw std::invalid_argument("gate range out of bounds");
  }
  GateRun out;
  for (std::size_t j = begin; j < end; ++j) {
    const PauliSum& g = gates_[j].generator;
    if (g.size() == 1 && !g[0].word.is_identity()) {
      out.push_back(PauliRotation{g[0].word, g[0].coefficient * theta[j]});
    } else {
      out.push_back(GeneratorRotation{g, theta[j]});
    }
  }
  return out;
}

GateRun Pqc::prefix(const std::vector<double>& theta, std::size_t end) const {
  GateRun out = input_prep_;
  GateRun gates = gate_ops(theta, 0, end);
  out.insert(out.end(), gates.begin(), gates.end());
  return out;
}

Circuit Pqc::circuit(const std::vector<double>& theta) const {
  Circuit c{qubits_, prefix(theta, gates_.size()), {}};
  for (std::size_t j = 0; j < gates_.size(); ++j) {
    c.bindings[gates_[j].param] = theta[j];
  }
  return c;
}

StateVector prepare_state(const Pqc& pqc, const std::vector<double>& theta) {
  return pqc.circuit(theta).run();
}

double eval_cost(const Pqc& pqc, const std::vector<double>& theta) {
  return expectation(prepare_state(pqc, theta), pqc.observable());
}

}  // namespace qgrad
