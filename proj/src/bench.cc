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

#include "qgrad/bench.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qgrad/random.h"

namespace qgrad {
namespace {

constexpr double kPi = std::numbers::pi;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PauliSum zz_sum(int width, const std::vector<std::pair<int, int>>& pairs,
                int offset, double coefficient) {
  std::vector<PauliTerm> terms;
  for (auto [a, b] : pairs) {
    PauliWord w = PauliWord::identity(width)
                      .with_letter(offset + a, 'Z')
                      .with_letter(offset + b, 'Z');
    terms.push_back({coefficient, w});
  }
  return PauliSum(width, std::move(terms));
}

PauliSum x_sum(int width, int count, int offset, double coefficient) {
  std::vector<PauliTerm> terms;
  for (int q = 0; q < count; ++q) {
    terms.push_back({coefficient, PauliWord::single(width, offset + q, 'X')});
  }
  return PauliSum(width, std::move(terms));
}

// exp(-i t h) for Hermitian h.
DenseMatrix expm_hermitian(const DenseMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h);
  const Eigen::VectorXcd phases =
      (solver.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp();
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

// Hermitian G with exp(-i G) = u, from the Schur form of the unitary u.
DenseMatrix unitary_log(const DenseMatrix& u) {
  Eigen::ComplexSchur<DenseMatrix> schur(u);
  const DenseMatrix& q = schur.matrixU();
  const DenseMatrix& t = schur.matrixT();
  Eigen::VectorXcd angles(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) angles(i) = -std::arg(t(i, i));
  DenseMatrix g = q * angles.asDiagonal() * q.adjoint();
  return (g + g.adjoint()) / 2.0;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool class_matches(const std::string& cell, const std::string& name) {
  return cell == name || cell == "Iris-" + name;
}

}  // namespace

// ---------------------------------------------------------------- graphs

Graph parse_graph(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    std::istringstream fs(first);
    int u = -1, v = -1;
    std::string extra;
    if (!(fs >> u) || !fs.eof() || !(ls >> v) || (ls >> extra) || u < 0 ||
        v < 0) {
      throw std::invalid_argument("graph line " + std::to_string(lineno) +
                                  ": expected \"u v\" with vertex labels >= 0");
    }
    if (u == v) {
      throw std::invalid_argument("graph line " + std::to_string(lineno) +
                                  ": self-loop");
    }
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
    g.vertices = std::max(g.vertices, std::max(u, v) + 1);
  }
  if (g.edges.empty()) throw std::invalid_argument("graph has no edges");
  return g;
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

bool is_connected(const Graph& g) {
  if (g.vertices == 0) return false;
  std::vector<int> parent(g.vertices);
  for (int i = 0; i < g.vertices; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges) parent[find(u)] = find(v);
  const int root = find(0);
  for (int i = 1; i < g.vertices; ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

// ------------------------------------------------------------------ QAOA

Pqc build_qaoa(const Graph& graph, int layers) {
  if (graph.edges.empty()) throw std::invalid_argument("graph has no edges");
  if (!is_connected(graph)) throw std::invalid_argument("graph is not connected");
  if (layers < 1) throw std::invalid_argument("QAOA needs at least one layer");
  const int n = graph.vertices;
  const PauliSum cost = zz_sum(n, graph.edges, 0, 1.0);
  const PauliSum mixer = x_sum(n, n, 0, 1.0);
  std::vector<PqcGate> gates;
  for (int l = 0; l < layers; ++l) {
    gates.push_back({cost, "g" + std::to_string(l)});
    gates.push_back({mixer, "b" + std::to_string(l)});
  }
  return Pqc(n, std::move(gates), cost);
}

// ------------------------------------------------------------------ QAQC

QaqcTarget parse_target(const std::string& name) {
  if (name == "qft") return QaqcTarget::kQft;
  if (name == "toffoli") return QaqcTarget::kToffoli;
  if (name == "wstate") return QaqcTarget::kWState;
  if (name == "ising") return QaqcTarget::kIsing;
  throw std::invalid_argument("unknown target: " + name);
}

Topology parse_topology(const std::string& name) {
  if (name == "ring") return Topology::kRing;
  if (name == "line") return Topology::kLine;
  throw std::invalid_argument("unknown topology: " + name);
}

std::string to_string(QaqcTarget t) {
  switch (t) {
    case QaqcTarget::kQft: return "qft";
    case QaqcTarget::kToffoli: return "toffoli";
    case QaqcTarget::kWState: return "wstate";
    case QaqcTarget::kIsing: return "ising";
  }
  return "?";
}

std::string to_string(Topology t) {
  return t == Topology::kRing ? "ring" : "line";
}

std::vector<std::pair<int, int>> neighbour_pairs(int n, Topology topology) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  if (topology == Topology::kRing && n > 2) pairs.emplace_back(0, n - 1);
  return pairs;
}

IsingAngles ising_angles(std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, 0));
  IsingAngles a;
  a.zz = rng.uniform(0.2, 0.8);
  a.x = rng.uniform(0.2, 0.8);
  return a;
}

DenseMatrix ansatz_unitary(int n, int layers, Topology topology,
                           const std::vector<double>& theta) {
  if (theta.size() != static_cast<std::size_t>(2 * layers)) {
    throw std::invalid_argument("ansatz needs two angles per layer");
  }
  const DenseMatrix zz = to_matrix(zz_sum(n, neighbour_pairs(n, topology), 0, 1.0));
  const DenseMatrix x = to_matrix(x_sum(n, n, 0, 1.0));
  const Eigen::Index d = Eigen::Index{1} << n;
  DenseMatrix v = DenseMatrix::Identity(d, d);
  for (int k = 0; k < layers; ++k) {
    v = expm_hermitian(x, theta[2 * k]) * v;
    v = expm_hermitian(zz, theta[2 * k + 1]) * v;
  }
  return v;
}

DenseMatrix target_unitary(QaqcTarget target, int n, Topology topology,
                           std::uint64_t seed) {
  if (n < 1 || n > 3) throw std::invalid_argument("QAQC targets need 1 <= n <= 3");
  const Eigen::Index d = Eigen::Index{1} << n;
  switch (target) {
    case QaqcTarget::kQft: {
      DenseMatrix f(d, d);
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
          f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                               2 * kPi * static_cast<double>(j * k) /
                                   static_cast<double>(d));
        }
      }
      return f;
    }
    case QaqcTarget::kToffoli: {
      if (n < 3) throw std::invalid_argument("Toffoli needs 3 qubits");
      DenseMatrix t = DenseMatrix::Zero(d, d);
      for (Eigen::Index b = 0; b < d; ++b) {
        const Eigen::Index out = (b & 3) == 3 ? (b ^ 4) : b;
        t(out, b) = 1.0;
      }
      return t;
    }
    case QaqcTarget::kWState: {
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(d);
      for (int q = 0; q < n; ++q) w(Eigen::Index{1} << q) = 1.0 / std::sqrt(n);
      Eigen::VectorXcd v = -w;
      v(0) += 1.0;
      return DenseMatrix::Identity(d, d) - 2.0 * v * v.adjoint() / v.squaredNorm();
    }
    case QaqcTarget::kIsing: {
      const IsingAngles a = ising_angles(seed);
      return ansatz_unitary(n, 1, topology, {a.x, a.zz});
    }
  }
  throw std::invalid_argument("unknown target");
}

double hst_dense(const DenseMatrix& u, const DenseMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("HST operands differ in dimension");
  }
  const double d = static_cast<double>(u.rows());
  return 1.0 - std::norm((v.adjoint() * u).trace()) / (d * d);
}

QaqcProblem build_qaqc(QaqcTarget target, int n, int layers, Topology topology,
                       std::uint64_t seed) {
  if (n < 2 || n > 3) {
    throw std::invalid_argument("QAQC registers need 2 or 3 qubits");
  }
  if (layers < 1) throw std::invalid_argument("QAQC needs at least one layer");
  const int width = 2 * n;
  const auto pairs = neighbour_pairs(n, topology);

  GateRun prep;
  const PauliSum hadamard_gen = PauliSum::from_strings(
      {{1 / std::numbers::sqrt2, "X"}, {1 / std::numbers::sqrt2, "Z"}});
  for (int i = 0; i < n; ++i) {
    // exp(-i pi/2 (X+Z)/sqrt2) = -i H.
    std::vector<PauliTerm> terms;
    for (const auto& t : hadamard_gen.terms()) {
      terms.push_back({t.coefficient,
                       PauliWord::single(width, i, t.word.letter(0))});
    }
    prep.push_back(GeneratorRotation{PauliSum(width, std::move(terms)), kPi});
    prep.push_back(ControlledPauli{i, 1, PauliWord::single(width, n + i, 'X')});
  }

  const DenseMatrix u = target_unitary(target, n, topology, seed);
  if (target == QaqcTarget::kIsing) {
    const IsingAngles a = ising_angles(seed);
    prep.push_back(GeneratorRotation{x_sum(width, n, 0, 2.0), a.x});
    prep.push_back(GeneratorRotation{zz_sum(width, pairs, 0, 2.0), a.zz});
  } else {
    prep.push_back(GeneratorRotation{decompose(unitary_log(u)).widened(width), 2.0});
  }

  // Ansatz conjugate on B: exp(+i theta G) for the real generators G.
  std::vector<PqcGate> gates;
  for (int k = 0; k < layers; ++k) {
    gates.push_back({x_sum(width, n, n, -2.0), "t" + std::to_string(k) + "_x"});
    gates.push_back({zz_sum(width, pairs, n, -2.0), "t" + std::to_string(k) + "_zz"});
  }

  // I - prod_i (II + XX - YY + ZZ)/4 over the pairs (A_i, B_i).
  const std::size_t choices = std::size_t{1} << (2 * n);
  const double scale = std::pow(0.25, n);
  std::vector<PauliTerm> obs{{1.0, PauliWord::identity(width)}};
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t c = 0; c < choices; ++c) {
    PauliWord w = PauliWord::identity(width);
    double sign = -1.0;
    for (int i = 0; i < n; ++i) {
      const int letter = static_cast<int>((c >> (2 * i)) & 3);
      if (letter == 2) sign = -sign;
      if (letter != 0) {
        w = w.with_letter(i, kLetters[letter]).with_letter(n + i, kLetters[letter]);
      }
    }
    obs.push_back({sign * scale, w});
  }
  Pqc pqc(width, std::move(gates), PauliSum(width, std::move(obs)),
          std::move(prep), ObservableCounting::kSingleUnit);
  return QaqcProblem{n, layers, topology, u, std::move(pqc)};
}

// ------------------------------------------------------------------- QNN

Dataset parse_iris(const std::string& text,
                   const std::pair<std::string, std::string>& classes) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty data file");
  Dataset data;
  bool seen_first = false, seen_second = false;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 5) {
      throw std::invalid_argument("row " + std::to_string(row) + ": expected 5 columns, got " +
                                  std::to_string(cells.size()));
    }
    double label;
    if (class_matches(cells[4], classes.first)) {
      label = 1.0;
      seen_first = true;
    } else if (class_matches(cells[4], classes.second)) {
      label = -1.0;
      seen_second = true;
    } else {
      continue;
    }
    std::vector<double> x(4);
    for (int c = 0; c < 4; ++c) {
      std::size_t used = 0;
      try {
        x[c] = std::stod(cells[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cells[c].size() || !std::isfinite(x[c])) {
        throw std::invalid_argument("row " + std::to_string(row) + ": column " +
                                    std::to_string(c + 1) + " is not a number");
      }
    }
    data.features.push_back(std::move(x));
    data.labels.push_back(label);
  }
  if (!seen_first) throw std::invalid_argument("unknown class: " + classes.first);
  if (!seen_second) throw std::invalid_argument("unknown class: " + classes.second);
  for (int c = 0; c < 4; ++c) {
    double lo = data.features[0][c], hi = lo;
    for (const auto& x : data.features) {
      lo = std::min(lo, x[c]);
      hi = std::max(hi, x[c]);
    }
    for (auto& x : data.features) {
      x[c] = hi > lo ? kPi * (x[c] - lo) / (hi - lo) : 0.0;
    }
  }
  return data;
}

Dataset load_iris(const std::string& path,
                  const std::pair<std::string, std::string>& classes) {
  return parse_iris(read_file(path), classes);
}

Pqc build_qnn(std::uint64_t alpha_seed) {
  constexpr int n = 4;
  SplitMix64 rng(alpha_seed);
  std::vector<PauliTerm> h2, h3;
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    h2.push_back({rng.uniform(-1.0, 1.0), PauliWord(n, 0, mask)});
    h3.push_back({1.0, PauliWord(n, mask, 0)});
  }
  std::vector<PqcGate> gates{
      {PauliSum::from_strings({{1.0, "XXXX"}}), "w1"},
      {PauliSum(n, std::move(h2)), "w2"},
      {PauliSum(n, std::move(h3)), "w3"},
  };
  const PauliSum obs = PauliSum::from_strings(
      {{1.0, "ZZII"}, {1.0, "IZZI"}, {1.0, "IIZZ"}, {1.0, "ZIIZ"}});
  return Pqc(n, std::move(gates), obs);
}

GateRun encode_features(const std::vector<double>& x) {
  GateRun run;
  const int n = static_cast<int>(x.size());
  for (int q = 0; q < n; ++q) {
    run.push_back(PauliRotation{PauliWord::single(n, q, 'Y'), x[q]});
  }
  return run;
}

// -------------------------------------------------------------- training

MethodSpec parse_method_spec(const std::string& name, Metric metric) {
  MethodSpec s;
  s.metric = metric;
  if (name == "qad") {
    s.qad = true;
  } else if (name == "psr-decomposed") {
    s.method = Method::kPSR;
    s.psr_mode = PsrMode::kDecomposed;
  } else {
    s.method = parse_method(name);
    if (s.method == Method::kFD || s.method == Method::kKFoldHT ||
        s.method == Method::kDHTK) {
      throw std::invalid_argument("not a first-order circuit method: " + name);
    }
  }
  return s;
}

std::string to_string(const MethodSpec& spec) {
  if (spec.qad) return "qad";
  if (spec.method == Method::kPSR && spec.psr_mode == PsrMode::kDecomposed) {
    return "psr-decomposed";
  }
  return to_string(spec.method);
}

MethodAssignment resolve(const MethodSpec& spec, const Pqc& pqc,
                         const ErrorTable* errors) {
  if (spec.qad) return select(pqc, spec.metric, errors, spec.policy);
  return uniform_assignment(pqc, spec.method, spec.psr_mode);
}

Objective pqc_objective(const Pqc& pqc, const MethodAssignment& assignment) {
  auto evaluator = std::make_shared<GradientEvaluator>(pqc, assignment);
  Objective o;
  o.parameters = pqc.gate_count();
  o.loss = [pqc](const std::vector<double>& t) { return eval_cost(pqc, t); };
  o.gradient = [evaluator](const std::vector<double>& t) {
    return evaluator->gradient(t);
  };
  o.circuits = evaluator->circuits_per_iteration();
  return o;
}

Objective qnn_objective(const Pqc& pqc, const Dataset& data,
                        const MethodAssignment& assignment) {
  if (data.features.empty()) throw std::invalid_argument("empty dataset");
  auto samples = std::make_shared<std::vector<Pqc>>();
  for (const auto& x : data.features) {
    if (static_cast<int>(x.size()) != pqc.qubit_count()) {
      throw std::invalid_argument("feature count must equal the qubit count");
    }
    samples->push_back(pqc.with_input_prep(encode_features(x)));
  }
  auto labels = std::make_shared<std::vector<double>>(data.labels);
  const double m = static_cast<double>(samples->size());
  Objective o;
  o.parameters = pqc.gate_count();
  o.loss = [samples, labels, m](const std::vector<double>& t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < samples->size(); ++i) {
      const double r = eval_cost((*samples)[i], t) - (*labels)[i];
      sum += r * r;
    }
    return sum / m;
  };
  o.gradient = [samples, labels, m, assignment](const std::vector<double>& t) {
    std::vector<double> g(t.size(), 0.0);
    for (std::size_t i = 0; i < samples->size(); ++i) {
      const Pqc& p = (*samples)[i];
      const double r = eval_cost(p, t) - (*labels)[i];
      const auto gi = assigned_gradient(p, assignment, t);
      for (std::size_t j = 0; j < g.size(); ++j) g[j] += 2.0 / m * r * gi[j];
    }
    return g;
  };
  o.circuits = circuits_per_iteration(pqc, assignment);
  return o;
}

TrainTrace train(const Objective& objective, const TrainConfig& config) {
  SplitMix64 rng(config.seed);
  std::vector<double> theta(objective.parameters);
  for (auto& t : theta) t = rng.uniform(-config.init_scale, config.init_scale);
  return train_from(objective, std::move(theta), config);
}

TrainTrace train_from(const Objective& objective, std::vector<double> theta,
                      const TrainConfig& config) {
  if (theta.size() != objective.parameters) {
    throw std::invalid_argument("initial point has the wrong arity");
  }
  TrainTrace trace;
  for (int s = 0; s < config.steps; ++s) {
    trace.loss.push_back(objective.loss(theta));
    trace.circuits.push_back(objective.circuits);
    const auto g = objective.gradient(theta);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      theta[j] -= config.learning_rate * g[j];
    }
  }
  trace.loss.push_back(objective.loss(theta));
  trace.theta = std::move(theta);
  return trace;
}

std::string trace_csv(const TrainTrace& trace) {
  std::ostringstream os;
  os.precision(12);
  os << "iteration,loss,distinct_circuits\n";
  for (std::size_t i = 0; i < trace.loss.size(); ++i) {
    os << i << ',' << trace.loss[i] << ',';
    if (i < trace.circuits.size()) os << trace.circuits[i];
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- sweep

PauliSum synthetic_operator(int n, double commuting_fraction) {
  if (n < 3 || n > kMaxPauliWidth) {
    throw std::invalid_argument("synthetic operators need n >= 3");
  }
  if (!(commuting_fraction > 0.0 && commuting_fraction <= 1.0)) {
    throw std::invalid_argument("commuting fraction must lie in (0, 1]");
  }
  const int total = 2 * n;
  const int commuting = std::max(
      1, static_cast<int>(std::lround(commuting_fraction * total)));
  std::vector<PauliTerm> terms;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << n) - 1;
  terms.push_back({2.0, PauliWord(n, 0, all)});
  for (std::uint64_t mask = 1; static_cast<int>(terms.size()) < commuting; ++mask) {
    if (mask != all) terms.push_back({1.0, PauliWord(n, 0, mask)});
  }
  // Majoranas Z_0 .. Z_{k-1} X_k and Z_0 .. Z_{k-1} Y_k.
  for (int m = 0; static_cast<int>(terms.size()) < total; ++m) {
    const int k = m / 2;
    const std::uint64_t zs = (std::uint64_t{1} << k) - 1;
    const std::uint64_t bit = std::uint64_t{1} << k;
    terms.push_back({0.5, PauliWord(n, bit, m % 2 ? zs | bit : zs)});
  }
  return PauliSum(n, std::move(terms));
}

std::vector<SweepCell> ratio_sweep(int n, const std::vector<double>& grid) {
  std::vector<SweepCell> cells;
  for (double fh : grid) {
    const PauliSum h = synthetic_operator(n, fh);
    for (double fo : grid) {
      const Pqc pqc(n, {{h, "t"}}, synthetic_operator(n, fo));
      const TermCounts c = term_counts(pqc, 0);
      SweepCell cell;
      cell.h_fraction = fh;
      cell.o_fraction = fo;
      cell.dht = first_order_count(Method::kDHT, c);
      cell.rdht = first_order_count(Method::kRDHT, c);
      cell.ratio = static_cast<double>(cell.dht) / static_cast<double>(cell.rdht);
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  os << "h_fraction,o_fraction,dht,rdht,ratio\n";
  for (const auto& c : cells) {
    os << c.h_fraction << ',' << c.o_fraction << ',' << c.dht << ',' << c.rdht
       << ',' << c.ratio << '\n';
  }
  return os.str();
}

}  // namespace qgrad
