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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qgrad/circuit.h"
#include "qgrad/qad.h"

namespace qgrad {

// ---------------------------------------------------------------- graphs

struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

/// One "u v" edge per line; blank lines and '#' comments are skipped.
/// Vertex count is 1 + the largest label. Throws std::invalid_argument on a
/// malformed line, a self-loop, or an empty edge list.
Graph parse_graph(const std::string& text);
Graph load_graph(const std::string& path);
bool is_connected(const Graph& g);

// ------------------------------------------------------------------ QAOA

/// p layers of exp(-i gamma_l sum ZZ / 2) exp(-i beta_l sum X / 2) on
/// |0...0>, observable sum_{edges} Z_u Z_v. Parameters "g{l}", "b{l}".
Pqc build_qaoa(const Graph& graph, int layers);

// ------------------------------------------------------------------ QAQC

enum class QaqcTarget { kQft, kToffoli, kWState, kIsing };
enum class Topology { kRing, kLine };

QaqcTarget parse_target(const std::string& name);
Topology parse_topology(const std::string& name);
std::string to_string(QaqcTarget t);
std::string to_string(Topology t);

/// Nearest-neighbour pairs on n qubits. A ring on n <= 2 equals the line.
std::vector<std::pair<int, int>> neighbour_pairs(int n, Topology topology);

/// Angles of the easy target U = exp(-i a sum ZZ) exp(-i b sum X).
struct IsingAngles {
  double zz = 0.0;
  double x = 0.0;
};
IsingAngles ising_angles(std::uint64_t seed);

/// Dense target unitary on n qubits (qubit q = bit q of the index).
/// Toffoli uses controls 0, 1 and target 2; the W-state target is a
/// Householder reflection taking |0...0> to the W state.
DenseMatrix target_unitary(QaqcTarget target, int n, Topology topology,
                           std::uint64_t seed = 0);

/// exp(-i theta_1 sum ZZ) exp(-i theta_2 sum X) per layer, layer 1 applied
/// first; theta holds (x, zz) angle pairs per layer.
DenseMatrix ansatz_unitary(int n, int layers, Topology topology,
                           const std::vector<double>& theta);

/// 1 - |Tr(V^dagger U)|^2 / d^2.
double hst_dense(const DenseMatrix& u, const DenseMatrix& v);

struct QaqcProblem {
  int n = 0;
  int layers = 0;
  Topology topology = Topology::kRing;
  DenseMatrix target;
  Pqc pqc;
};

/// Hilbert-Schmidt test on 2n qubits: register A = qubits [0, n), B =
/// [n, 2n). Bell pairs (A_i, B_i) are prepared, U acts on A, the ansatz
/// conjugate V* acts on B, and the observable is I minus the projector on
/// the Bell pairs, so f = 1 - |Tr(V^dagger U)|^2 / d^2. The observable is
/// counted as one measurement setting. Parameters "t{k}_x", "t{k}_zz" per
/// layer. n <= 3.
QaqcProblem build_qaqc(QaqcTarget target, int n, int layers,
                       Topology topology, std::uint64_t seed = 0);

// ------------------------------------------------------------------- QNN

struct Dataset {
  std::vector<std::vector<double>> features;  // scaled to [0, pi]
  std::vector<double> labels;                 // +1 first class, -1 second
};

/// Reads a CSV with a header row, four numeric feature columns and a class
/// column; keeps rows of the two named classes in file order. Features are
/// min-max scaled to [0, pi] over the kept rows; constant columns map to 0.
Dataset load_iris(const std::string& path,
                  const std::pair<std::string, std::string>& classes = {
                      "setosa", "versicolor"});
Dataset parse_iris(const std::string& text,
                   const std::pair<std::string, std::string>& classes = {
                       "setosa", "versicolor"});

/// Three-gate ansatz on 4 qubits: H1 = XXXX, H2 = sum alpha_i P_i over
/// {I,Z}^4 (alpha from `alpha_seed`), H3 = sum over {I,X}^4; observable
/// Z0Z1 + Z1Z2 + Z2Z3 + Z3Z0. Inputs are encoded by RY rotations.
Pqc build_qnn(std::uint64_t alpha_seed = 42);
/// RY(x_q) on qubit q.
GateRun encode_features(const std::vector<double>& x);

// -------------------------------------------------------------- training

/// Gradient source for training: a uniform method or a QAD assignment.
struct MethodSpec {
  bool qad = false;
  Method method = Method::kPSR;
  PsrMode psr_mode = PsrMode::kSpectral;
  Metric metric = Metric::kCircuitCount;
  PsrPolicy policy = PsrPolicy::kAllowDecomposition;
};

/// Parses psr, psr-decomposed, ht, dht, rht, rdht or qad.
MethodSpec parse_method_spec(const std::string& name,
                             Metric metric = Metric::kCircuitCount);
std::string to_string(const MethodSpec& spec);

/// Resolves a spec into a per-parameter assignment for `pqc`.
MethodAssignment resolve(const MethodSpec& spec, const Pqc& pqc,
                         const ErrorTable* errors = nullptr);

struct TrainConfig {
  int steps = 100;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
  double init_scale = 0.1;  // theta_0 uniform in [-scale, scale]
};

struct TrainTrace {
  std::vector<double> loss;                 // before each step, then final
  std::vector<std::size_t> circuits;        // distinct circuits per step
  std::vector<double> theta;                // final parameters
};

/// A loss and its gradient; circuits is the distinct-circuit count of one
/// gradient of the underlying PQC.
struct Objective {
  std::size_t parameters = 0;
  std::function<double(const std::vector<double>&)> loss;
  std::function<std::vector<double>(const std::vector<double>&)> gradient;
  std::size_t circuits = 0;
};

/// f(theta) of the PQC itself.
Objective pqc_objective(const Pqc& pqc, const MethodAssignment& assignment);
/// Mean squared error of <O> against labels, with the encoded features as
/// input preparation; gradient (2/M) sum (f - y) grad f.
Objective qnn_objective(const Pqc& pqc, const Dataset& data,
                        const MethodAssignment& assignment);

/// Plain gradient descent theta <- theta - eta grad.
TrainTrace train(const Objective& objective, const TrainConfig& config);
/// Same, from a given starting point.
TrainTrace train_from(const Objective& objective, std::vector<double> theta0,
                      const TrainConfig& config);

std::string trace_csv(const TrainTrace& trace);

// ---------------------------------------------------------------- sweep

/// Synthetic operator on n >= 3 qubits with 2n terms: max(1, round(f * 2n))
/// mutually commuting Z strings (the all-Z string first, with the largest
/// coefficient) plus Jordan-Wigner Majorana words, which anticommute with
/// each other and with the all-Z string. N_cm = 1 + (2n - #Z strings).
PauliSum synthetic_operator(int n, double commuting_fraction);

struct SweepCell {
  double h_fraction = 0.0;
  double o_fraction = 0.0;
  std::size_t dht = 0;
  std::size_t rdht = 0;
  double ratio = 0.0;  // dht / rdht
};

/// DHT / RDHT count ratio over a grid of commuting fractions in (0, 1].
std::vector<SweepCell> ratio_sweep(int n, const std::vector<double>& grid);
std::string sweep_csv(const std::vector<SweepCell>& cells);

}  // namespace qgrad
