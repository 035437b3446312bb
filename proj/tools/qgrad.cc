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

// qgrad command-line front end. Exit codes: 0 success, 2 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgrad/bench.h"
#include "qgrad/cost.h"
#include "qgrad/grad_first.h"
#include "qgrad/grad_high.h"
#include "qgrad/grouping.h"
#include "qgrad/pqc_io.h"
#include "qgrad/qad.h"

namespace {

using nlohmann::json;
using namespace qgrad;

constexpr int kInputError = 2;

PsrMode parse_psr_mode(const std::string& s) {
  if (s == "spectral") return PsrMode::kSpectral;
  if (s == "decomposed") return PsrMode::kDecomposed;
  throw std::invalid_argument("unknown PSR mode: " + s);
}

std::vector<double> theta_or_zero(const std::string& csv, const Pqc& pqc) {
  if (csv.empty()) return std::vector<double>(pqc.gate_count(), 0.0);
  auto theta = parse_reals(csv);
  pqc.check_arity(theta);
  return theta;
}

std::optional<ErrorTable> maybe_errors(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return ErrorTable::load(path);
}

json trace_summary(const TrainTrace& trace, const std::string& method,
                   const MethodAssignment& assignment) {
  json j;
  j["method"] = method;
  json methods = json::array();
  for (Method m : assignment.methods()) methods.push_back(to_string(m));
  j["assignment"] = methods;
  j["iterations"] = trace.circuits.size();
  j["circuits_per_iteration"] = trace.circuits.empty() ? 0 : trace.circuits.front();
  j["initial_loss"] = trace.loss.front();
  j["final_loss"] = trace.loss.back();
  j["loss"] = trace.loss;
  j["theta"] = trace.theta;
  return j;
}

void write_trace(const std::string& path, const TrainTrace& trace) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << trace_csv(trace);
}

struct TrainOptions {
  std::string method = "qad";
  std::string metric = "count";
  std::string errors;
  std::string trace;
  int steps = 100;
  double lr = 0.1;
  std::uint64_t seed = 0;
  double init_scale = 0.1;
};

void add_train_options(CLI::App* cmd, TrainOptions& o) {
  cmd->add_option("--method", o.method,
                  "psr, psr-decomposed, ht, dht, rht, rdht or qad")
      ->capture_default_str();
  cmd->add_option("--metric", o.metric, "QAD metric: count or efr")
      ->capture_default_str();
  cmd->add_option("--errors", o.errors, "error table JSON (EFR metric)");
  cmd->add_option("--steps", o.steps, "gradient-descent steps")->capture_default_str();
  cmd->add_option("--lr", o.lr, "learning rate")->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed for the initial parameters")
      ->capture_default_str();
  cmd->add_option("--init-scale", o.init_scale,
                  "initial parameters uniform in [-s, s]")
      ->capture_default_str();
  cmd->add_option("--trace", o.trace,
                  "write the per-iteration CSV (iteration, loss, distinct_circuits)");
}

json run_training(const Pqc& pqc, const TrainOptions& o,
                  const std::function<Objective(const MethodAssignment&)>& make) {
  const auto errors = maybe_errors(o.errors);
  const MethodSpec spec = parse_method_spec(o.method, parse_metric(o.metric));
  const MethodAssignment a = resolve(spec, pqc, errors ? &*errors : nullptr);
  TrainConfig cfg;
  cfg.steps = o.steps;
  cfg.learning_rate = o.lr;
  cfg.seed = o.seed;
  cfg.init_scale = o.init_scale;
  const TrainTrace trace = train(make(a), cfg);
  write_trace(o.trace, trace);
  return trace_summary(trace, to_string(spec), a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum gradient estimation: circuits, costs and benchmarks"};
  app.require_subcommand(1);

  // grad
  std::string pqc_path, theta_csv, method = "ht", psr_mode = "spectral";
  std::size_t param = 0;
  std::uint64_t shots = 0, seed = 0;
  auto* grad = app.add_subcommand("grad", "first-order partial derivative");
  grad->add_option("--pqc", pqc_path, "PQC JSON file")->required();
  grad->add_option("--theta", theta_csv, "comma-separated angles (default 0)");
  grad->add_option("--param", param, "0-based gate index")->required();
  grad->add_option("--method", method, "fd, psr, ht, dht, rht or rdht")
      ->capture_default_str();
  grad->add_option("--psr-mode", psr_mode, "spectral or decomposed")
      ->capture_default_str();
  grad->add_option("--shots", shots, "shots per measured group (0 = exact)");
  grad->add_option("--seed", seed, "sampling seed");

  // higher
  std::string indices_csv, higher_method = "kfold";
  auto* higher = app.add_subcommand("higher", "k-th order partial derivative");
  higher->add_option("--pqc", pqc_path, "PQC JSON file")->required();
  higher->add_option("--theta", theta_csv, "comma-separated angles (default 0)");
  higher->add_option("--indices", indices_csv, "0-based gate indices j1,j2,...")
      ->required();
  higher->add_option("--method", higher_method, "kfold, dhtk or oracle")
      ->capture_default_str();

  // cost
  std::string errors_path, format = "json";
  auto* cost = app.add_subcommand("cost", "cost report per method for one gate");
  cost->add_option("--pqc", pqc_path, "PQC JSON file")->required();
  cost->add_option("--param", param, "0-based gate index")->required();
  cost->add_option("--errors", errors_path, "error table JSON");
  cost->add_option("--format", format, "json or csv")->capture_default_str();

  // qad
  std::string metric = "count";
  bool allow_decomposition = false;
  auto* qad = app.add_subcommand("qad", "per-parameter method selection");
  qad->add_option("--pqc", pqc_path, "PQC JSON file")->required();
  qad->add_option("--metric", metric, "count or efr")->capture_default_str();
  qad->add_option("--errors", errors_path, "error table JSON (needed for efr)");
  qad->add_option("--format", format, "json or csv")->capture_default_str();
  qad->add_flag("--allow-decomposition", allow_decomposition,
                "allow PSR on commuting multi-term generators");

  // group
  std::string criterion = "full";
  auto* group = app.add_subcommand("group", "partition the observable");
  group->add_option("--pqc", pqc_path, "PQC JSON file")->required();
  group->add_option("--criterion", criterion, "full or qubitwise")
      ->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark training runs");
  bench->require_subcommand(1);

  TrainOptions qaoa_opts;
  std::string graph_path;
  int layers = 1;
  auto* qaoa = bench->add_subcommand("qaoa", "QAOA MaxCut");
  qaoa->add_option("--graph", graph_path, "edge list, one \"u v\" per line")
      ->required();
  qaoa->add_option("--layers", layers, "QAOA depth p")->capture_default_str();
  add_train_options(qaoa, qaoa_opts);

  TrainOptions qaqc_opts;
  std::string target = "ising", topology = "ring";
  int qaqc_layers = 2, qaqc_qubits = 3;
  auto* qaqc = bench->add_subcommand("qaqc", "compiling via the Hilbert-Schmidt test");
  qaqc->add_option("--target", target, "qft, toffoli, wstate or ising")
      ->capture_default_str();
  qaqc->add_option("--layers", qaqc_layers, "Trotter layers k")->capture_default_str();
  qaqc->add_option("--topology", topology, "ring or line")->capture_default_str();
  qaqc->add_option("--qubits", qaqc_qubits, "qubits per register (2 or 3)")
      ->capture_default_str();
  add_train_options(qaqc, qaqc_opts);

  TrainOptions qnn_opts;
  qnn_opts.lr = 0.05;
  qnn_opts.steps = 50;
  std::string data_path, class_a = "setosa", class_b = "versicolor";
  auto* qnn = bench->add_subcommand("qnn", "Iris classifier");
  qnn->add_option("--data", data_path, "Iris CSV")->required();
  qnn->add_option("--class-a", class_a, "class labelled +1")->capture_default_str();
  qnn->add_option("--class-b", class_b, "class labelled -1")->capture_default_str();
  add_train_options(qnn, qnn_opts);

  // sweep
  int sweep_n = 4;
  std::string grid_csv = "0.25,0.5,0.75,1";
  auto* sweep = app.add_subcommand("sweep", "DHT/RDHT count-ratio grid");
  sweep->add_option("--n", sweep_n, "qubits (>= 3)")->capture_default_str();
  sweep->add_option("--grid", grid_csv, "commuting fractions in (0, 1]")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*grad) {
      const Pqc pqc = load_pqc(pqc_path);
      const auto theta = theta_or_zero(theta_csv, pqc);
      const Method m = parse_method(method);
      json out;
      if (m == Method::kFD) {
        out["value"] = fd_gradient(pqc, theta, param);
        out["distinct_circuits"] = 2;
        out["tasks"] = 2;
      } else {
        const GradPlan plan = build_plan(m, pqc, theta, param, parse_psr_mode(psr_mode));
        if (shots > 0) {
          const SampledValue v = evaluate_plan_shots(plan, shots, seed);
          out["value"] = v.estimate;
          out["std_error"] = v.std_error;
        } else {
          out["value"] = evaluate_plan(plan);
        }
        out["distinct_circuits"] = plan.distinct_circuit_count;
        out["tasks"] = plan.tasks.size();
      }
      std::cout << out.dump(2) << '\n';
    } else if (*higher) {
      const Pqc pqc = load_pqc(pqc_path);
      const auto theta = theta_or_zero(theta_csv, pqc);
      const DerivativeIndex idx(parse_indices(indices_csv));
      json out;
      if (higher_method == "oracle") {
        out["value"] = nested_commutator_oracle(pqc, theta, idx);
      } else {
        GradResult r;
        if (higher_method == "kfold") {
          r = kfold_ht(pqc, theta, idx);
        } else if (higher_method == "dhtk") {
          r = dht_korder(pqc, theta, idx);
        } else {
          throw std::invalid_argument("unknown method: " + higher_method);
        }
        out["value"] = r.value;
        out["distinct_circuits"] = r.plan.distinct_circuit_count;
        out["qubits"] = r.plan.qubits;
        out["depth"] = r.plan.depth;
      }
      std::cout << out.dump(2) << '\n';
    } else if (*cost) {
      const Pqc pqc = load_pqc(pqc_path);
      if (param >= pqc.gate_count()) throw std::invalid_argument("--param out of range");
      const auto errors = maybe_errors(errors_path);
      if (format != "json" && format != "csv") {
        throw std::invalid_argument("unknown format: " + format);
      }
      json reports = json::array();
      if (format == "csv") std::cout << csv_header() << '\n';
      for (Method m : feasible_methods(pqc, param, PsrPolicy::kAllowDecomposition)) {
        const PsrMode mode = psr_spectral_feasible(pqc.gate(param).generator)
                                 ? PsrMode::kSpectral
                                 : PsrMode::kDecomposed;
        const CostReport r = cost_report(pqc, param, m, errors ? &*errors : nullptr, mode);
        if (format == "csv") {
          std::cout << to_csv(r) << '\n';
        } else {
          reports.push_back(json::parse(to_json(r)));
        }
      }
      if (format == "json") std::cout << reports.dump(2) << '\n';
    } else if (*qad) {
      const Pqc pqc = load_pqc(pqc_path);
      const auto errors = maybe_errors(errors_path);
      const MethodAssignment a =
          select(pqc, parse_metric(metric), errors ? &*errors : nullptr,
                 allow_decomposition ? PsrPolicy::kAllowDecomposition
                                     : PsrPolicy::kSpectralOnly);
      if (format == "csv") {
        std::cout << assignment_csv(a, pqc);
      } else if (format == "json") {
        std::cout << assignment_json(a, pqc) << '\n';
      } else {
        throw std::invalid_argument("unknown format: " + format);
      }
    } else if (*group) {
      const Pqc pqc = load_pqc(pqc_path);
      GroupingCriterion c;
      if (criterion == "full") {
        c = GroupingCriterion::kFullCommutativity;
      } else if (criterion == "qubitwise") {
        c = GroupingCriterion::kQubitWise;
      } else {
        throw std::invalid_argument("unknown criterion: " + criterion);
      }
      const PauliSum obs = pqc.observable().without_identity();
      std::cout << grouping_report_json(obs, partition(obs, c)) << '\n';
    } else if (*qaoa) {
      const Pqc pqc = build_qaoa(load_graph(graph_path), layers);
      json s = run_training(pqc, qaoa_opts, [&](const MethodAssignment& a) {
        return pqc_objective(pqc, a);
      });
      s["benchmark"] = "qaoa";
      std::cout << s.dump(2) << '\n';
    } else if (*qaqc) {
      const QaqcProblem p = build_qaqc(parse_target(target), qaqc_qubits, qaqc_layers,
                                       parse_topology(topology));
      json s = run_training(p.pqc, qaqc_opts, [&](const MethodAssignment& a) {
        return pqc_objective(p.pqc, a);
      });
      s["benchmark"] = "qaqc";
      s["target"] = target;
      s["topology"] = topology;
      std::cout << s.dump(2) << '\n';
    } else if (*qnn) {
      const Pqc pqc = build_qnn();
      const Dataset data = load_iris(data_path, {class_a, class_b});
      json s = run_training(pqc, qnn_opts, [&](const MethodAssignment& a) {
        return qnn_objective(pqc, data, a);
      });
      s["benchmark"] = "qnn";
      s["samples"] = data.labels.size();
      std::cout << s.dump(2) << '\n';
    } else if (*sweep) {
      std::cout << sweep_csv(ratio_sweep(sweep_n, parse_reals(grid_csv)));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
