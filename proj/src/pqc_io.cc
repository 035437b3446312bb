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

#include "qgrad/pqc_io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qgrad {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) {
    fail(where + ": missing field \"" + name + "\"");
  }
  return j.at(name);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where + ": not finite");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<int>();
}

PauliWord word(const json& j, int width, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected a Pauli string");
  PauliWord w = PauliWord::from_string(j.get<std::string>());
  if (w.width() != width) {
    fail(where + ": Pauli string has width " + std::to_string(w.width()) +
         ", expected " + std::to_string(width));
  }
  return w;
}

std::vector<std::string> split(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

PauliSum pauli_sum_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    fail("Pauli sum: expected a non-empty array of [coeff, word] pairs");
  }
  std::vector<PauliTerm> terms;
  int width = -1;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "Pauli sum term " + std::to_string(i);
    const json& t = j[i];
    if (!t.is_array() || t.size() != 2) fail(where + ": expected [coeff, word]");
    const double c = number(t[0], where);
    if (!t[1].is_string()) fail(where + ": expected a Pauli string");
    PauliWord w = PauliWord::from_string(t[1].get<std::string>());
    if (width >= 0 && w.width() != width) fail(where + ": width mismatch");
    width = w.width();
    terms.push_back({c, w});
  }
  return PauliSum(width, std::move(terms));
}

json to_json(const PauliSum& sum) {
  json j = json::array();
  for (const auto& t : sum.terms()) {
    j.push_back(json::array({t.coefficient, t.word.to_string()}));
  }
  return j;
}

GateRun ops_from_json(const json& j, int width) {
  if (!j.is_array()) fail("op list: expected an array");
  GateRun run;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "op " + std::to_string(i);
    const json& o = j[i];
    const json& kind = field(o, "op", where);
    if (!kind.is_string()) fail(where + ": \"op\" must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "rotation") {
      run.push_back(PauliRotation{word(field(o, "word", where), width, where),
                                  number(field(o, "angle", where), where)});
    } else if (k == "generator") {
      PauliSum g = pauli_sum_from_json(field(o, "generator", where));
      if (g.width() != width) fail(where + ": generator width mismatch");
      run.push_back(GeneratorRotation{std::move(g),
                                      number(field(o, "angle", where), where)});
    } else if (k == "controlled") {
      const int value = o.contains("value") ? integer(o.at("value"), where) : 1;
      run.push_back(ControlledPauli{integer(field(o, "control", where), where),
                                    value,
                                    word(field(o, "word", where), width, where)});
    } else if (k == "ancilla") {
      AncillaPrep a;
      a.qubit = integer(field(o, "qubit", where), where);
      if (o.contains("phase")) {
        const json& p = o.at("phase");
        if (p == "-i") {
          a.phase_sign = -1;
        } else if (p == "+i") {
          a.phase_sign = 1;
        } else {
          fail(where + ": phase must be \"-i\" or \"+i\"");
        }
      }
      run.push_back(a);
    } else if (k == "inverse") {
      run.push_back(make_segment(ops_from_json(field(o, "ops", where), width),
                                 /*adjoint=*/true));
    } else {
      fail(where + ": unknown op \"" + k + "\"");
    }
    validate(run.back(), width);
  }
  return run;
}

json to_json(const GateRun& run) {
  json out = json::array();
  for (const auto& op : run) {
    std::visit(
        Overloaded{
            [&](const PauliRotation& r) {
              out.push_back({{"op", "rotation"},
                             {"word", r.word.to_string()},
                             {"angle", r.angle}});
            },
            [&](const GeneratorRotation& r) {
              out.push_back({{"op", "generator"},
                             {"generator", to_json(r.generator)},
                             {"angle", r.angle}});
            },
            [&](const ControlledPauli& c) {
              out.push_back({{"op", "controlled"},
                             {"control", c.control},
                             {"value", c.control_value},
                             {"word", c.word.to_string()}});
            },
            [&](const AncillaPrep& a) {
              if (a.adjoint) {
                AncillaPrep fwd = a;
                fwd.adjoint = false;
                out.push_back({{"op", "inverse"}, {"ops", to_json(GateRun{fwd})}});
              } else {
                out.push_back({{"op", "ancilla"},
                               {"qubit", a.qubit},
                               {"phase", a.phase_sign < 0 ? "-i" : "+i"}});
              }
            },
            [&](const Segment& s) {
              if (s.adjoint) {
                out.push_back({{"op", "inverse"}, {"ops", to_json(*s.run)}});
              } else {
                for (const auto& e : to_json(*s.run)) out.push_back(e);
              }
            },
        },
        op.kind);
  }
  return out;
}

Pqc pqc_from_json(const json& j) {
  if (!j.is_object()) fail("PQC: expected a JSON object");
  const int n = integer(field(j, "qubits", "PQC"), "PQC qubits");
  if (n < 1 || n > kMaxSimQubits) fail("PQC qubits out of range");
  const json& gs = field(j, "gates", "PQC");
  if (!gs.is_array()) fail("PQC gates: expected an array");
  std::vector<PqcGate> gates;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string where = "gate " + std::to_string(i);
    const json& p = field(gs[i], "param", where);
    if (!p.is_string()) fail(where + ": param must be a string");
    gates.push_back(
        {pauli_sum_from_json(field(gs[i], "generator", where)), p.get<std::string>()});
  }
  PauliSum obs = pauli_sum_from_json(field(j, "observable", "PQC"));
  GateRun prep;
  if (j.contains("input_prep")) prep = ops_from_json(j.at("input_prep"), n);
  ObservableCounting counting = ObservableCounting::kPauliTerms;
  if (j.contains("observable_counting")) {
    const json& c = j.at("observable_counting");
    if (c == "single") {
      counting = ObservableCounting::kSingleUnit;
    } else if (c != "terms") {
      fail("observable_counting must be \"terms\" or \"single\"");
    }
  }
  return Pqc(n, std::move(gates), std::move(obs), std::move(prep), counting);
}

Pqc parse_pqc(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("PQC JSON: ") + e.what());
  }
  return pqc_from_json(j);
}

Pqc load_pqc(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pqc(ss.str());
}

json to_json(const Pqc& pqc) {
  json j;
  j["qubits"] = pqc.qubit_count();
  json gates = json::array();
  for (const auto& g : pqc.gates()) {
    gates.push_back({{"param", g.param}, {"generator", to_json(g.generator)}});
  }
  j["gates"] = gates;
  j["observable"] = to_json(pqc.observable());
  if (!pqc.input_prep().empty()) j["input_prep"] = to_json(pqc.input_prep());
  j["observable_counting"] =
      pqc.counting() == ObservableCounting::kSingleUnit ? "single" : "terms";
  return j;
}

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  if (csv.empty()) return out;
  for (const auto& cell : split(csv)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size() || !std::isfinite(v)) {
      fail("not a real number: \"" + cell + "\"");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& csv) {
  std::vector<std::size_t> out;
  for (const auto& cell : split(csv)) {
    if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos) {
      fail("not an index: \"" + cell + "\"");
    }
    out.push_back(std::stoul(cell));
  }
  if (out.empty()) fail("empty index list");
  return out;
}

}  // namespace qgrad
