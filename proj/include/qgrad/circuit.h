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

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qgrad/pauli.h"

namespace qgrad {

/// Largest register the statevector simulator accepts.
inline constexpr int kMaxSimQubits = 14;

struct GateOp;
using GateRun = std::vector<GateOp>;

/// exp(-i * angle * word / 2).
struct PauliRotation {
  PauliWord word;
  double angle = 0.0;
};

/// exp(-i * angle * generator / 2).
struct GeneratorRotation {
  PauliSum generator;
  double angle = 0.0;
};

/// Applies `word` when qubit `control` reads `control_value`.
struct ControlledPauli {
  int control = 0;
  int control_value = 1;
  PauliWord word;
};

/// Maps |0> on `qubit` to (|0> + phase|1>)/sqrt(2), phase = -i by default
/// (+i gives the conjugate state). The adjoint undoes it.
struct AncillaPrep {
  int qubit = 0;
  int phase_sign = -1;  // -1 -> -i, +1 -> +i
  bool adjoint = false;
};

/// A shared run of ops, applied as-is or daggered (reverse order, each op
/// inverted).
struct Segment {
  std::shared_ptr<const GateRun> run;
  bool adjoint = false;
};

struct GateOp {
  using Kind = std::variant<PauliRotation, GeneratorRotation, ControlledPauli,
                            AncillaPrep, Segment>;
  Kind kind;

  GateOp(PauliRotation op) : kind(std::move(op)) {}
  GateOp(GeneratorRotation op) : kind(std::move(op)) {}
  GateOp(ControlledPauli op) : kind(std::move(op)) {}
  GateOp(AncillaPrep op) : kind(op) {}
  GateOp(Segment op) : kind(std::move(op)) {}
};

Segment make_segment(GateRun run, bool adjoint = false);
/// The inverse of `op`.
GateOp dagger(const GateOp& op);
/// The inverse of a whole run.
GateRun dagger(const GateRun& run);
/// Re-targets `op` onto a register of `width` qubits; the original qubits
/// keep their indices.
GateOp widened(const GateOp& op, int width);
GateRun widened(const GateRun& run, int width);

/// Throws std::invalid_argument unless `op` fits a `width`-qubit register
/// and all its angles are finite.
void validate(const GateOp& op, int width);

class StateVector {
 public:
  /// |0...0> on `qubits` qubits.
  explicit StateVector(int qubits);
  StateVector(int qubits, Eigen::VectorXcd amplitudes);

  int qubit_count() const { return qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

  void apply(const GateOp& op);
  void apply(const GateRun& run);
  /// Applies a 2^k x 2^k matrix to `qubits` (qubits[0] is the least
  /// significant bit of the local index).
  void apply_matrix(const DenseMatrix& m, const std::vector<int>& qubits);
  /// Returns word·psi without modifying the state.
  Eigen::VectorXcd pauli_image(const PauliWord& word) const;

 private:
  void apply_rotation(const PauliWord& word, double angle);
  void apply_generator(const GeneratorRotation& op);
  void apply_controlled(const ControlledPauli& op);
  void check_word(const PauliWord& word) const;

  int qubits_;
  Eigen::VectorXcd amps_;
};

/// Re<psi|O|psi>.
double expectation(const StateVector& state, const PauliSum& obs);
double expectation(const StateVector& state, const PauliWord& word);
/// <a|word|b>.
Complex matrix_element(const StateVector& a, const PauliWord& word,
                       const StateVector& b);

struct Circuit {
  int qubit_count = 0;
  GateRun ops;
  std::map<std::string, double> bindings;

  /// Replays the ops on |0...0>.
  StateVector run() const;
};

/// How the observable is counted by the cost model.
enum class ObservableCounting {
  kPauliTerms,  // N(O), N_cm(O) from the Pauli expansion
  kSingleUnit,  // one measurement setting (basis change + readout), N = 1
};

struct PqcGate {
  PauliSum generator;
  std::string param;
};

/// A parameterized circuit: gates exp(-i theta_j H_j / 2) applied after a
/// fixed input preparation, measured against `observable`.
class Pqc {
 public:
  Pqc(int qubits, std::vector<PqcGate> gates, PauliSum observable,
      GateRun input_prep = {},
      ObservableCounting counting = ObservableCounting::kPauliTerms);

  int qubit_count() const { return qubits_; }
  std::size_t gate_count() const { return gates_.size(); }
  const std::vector<PqcGate>& gates() const { return gates_; }
  const PqcGate& gate(std::size_t j) const { return gates_.at(j); }
  const PauliSum& observable() const { return observable_; }
  const GateRun& input_prep() const { return input_prep_; }
  ObservableCounting counting() const { return counting_; }

  Pqc with_input_prep(GateRun prep) const;

  /// Gates [begin, end) bound to theta.
  GateRun gate_ops(const std::vector<double>& theta, std::size_t begin,
                   std::size_t end) const;
  /// Input preparation followed by gates [0, end).
  GateRun prefix(const std::vector<double>& theta, std::size_t end) const;
  Circuit circuit(const std::vector<double>& theta) const;
  void check_arity(const std::vector<double>& theta) const;

 private:
  int qubits_;
  std::vector<PqcGate> gates_;
  PauliSum observable_;
  GateRun input_prep_;
  ObservableCounting counting_;
};

/// |theta> = U(theta)|input>.
StateVector prepare_state(const Pqc& pqc, const std::vector<double>& theta);
/// f(theta) = <theta|O|theta>.
double eval_cost(const Pqc& pqc, const std::vector<double>& theta);

}  // namespace qgrad
