// Copyright 2026 The fincon Authors
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

#include "fincon/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "fincon/error.hpp"
#include "fincon/json_io.hpp"
#include "fincon/lie.hpp"
#include "fincon/synthesis.hpp"

namespace fincon {

namespace {

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Lie: return "lie";
    case Command::Synthesize: return "synthesize";
    case Command::Simulate: return "simulate";
    case Command::Demo: return "demo";
  }
  return "?";
}

Json read_json(const std::string& path, const char* what) {
  if (path.empty()) throw ValidationError(std::string("missing ") + what + " file");
  std::ifstream in(path);
  if (!in) throw ValidationError(std::string("cannot open ") + what + " file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string(what) + " file '" + path + "': " + e.what());
  }
}

std::vector<Index> modelled_window(const SystemModel& m) {
  std::vector<Index> w;
  for (Index k = 0; k < m.dim(); ++k)
    if (!in_guard_band(m, k)) w.push_back(k);
  return w;
}

Json operators_json(const std::vector<ControlOperator>& ops) {
  Json arr = Json::array();
  for (const auto& op : ops) {
    Json e;
    e["id"] = op.id;
    e["edges"] = op.edges.size();
    e["matching"] = !check_matching(op).has_value();
    arr.push_back(e);
  }
  return arr;
}

struct Outcome {
  Json report;
  std::string summary;
  int code = 0;
};

Outcome analyze(const SystemModel& m) {
  const auto ops = build_operators(m);
  const auto v = fct_verdict(m, ops);
  Outcome o;
  o.report["operators"] = operators_json(ops);
  o.report["verdict"] = to_json(v, m);
  o.summary = std::string(to_string(m.family)) + (m.scheme.empty() ? "" : " " + m.scheme) + ": " +
              std::string(to_string(v.kind()));
  return o;
}

Outcome lie(const SystemModel& m) {
  Outcome o;
  const auto ops = build_operators(m);
  const auto rep = closure(named(ops), modelled_window(m));
  o.report["closure"] = to_json(rep);
  std::ostringstream s;
  s << "closure dimension " << rep.dimension_found << (rep.saturated ? " (saturated)" : " (cap reached)");
  if (m.family == Family::HarmonicOscillator) {
    const int levels = m.osc_levels();
    const auto ld = lamb_dicke_closure(levels, m.eta, {.max_dim = 20});
    o.report["lamb_dicke_closure"] = to_json(ld);
    s << "; J(iI), eta J(a): " << ld.dimension_found << (ld.saturated ? " (saturated)" : " (cap reached)");
    constexpr int kPMax = 4;
    if (levels >= 2 * kPMax + 4) {
      const auto lemma = verify_lemma(annihilation(levels), kPMax);
      o.report["lemma"] = to_json(lemma);
      s << "; lemma " << (lemma.pass ? "pass" : "FAIL");
    } else {
      o.report["lemma"] = nullptr;
    }
  }
  o.summary = s.str();
  return o;
}

Outcome synthesize(const SystemModel& m, const RunConfig& cfg) {
  const auto ops = build_operators(m);
  const auto v = fct_verdict(m, ops);
  Outcome o;
  o.report["verdict"] = to_json(v, m);
  if (!v.finitely_controllable()) {
    o.report["pulses"] = nullptr;
    o.report["error"] = "no finite-controllability certificate: " + std::string(to_string(v.kind()));
    o.summary = "synthesis refused: " + std::string(to_string(v.kind()));
    o.code = 1;
    return o;
  }
  const CVector x0 = state_from_json(m, read_json(cfg.input_path, "input state"), cfg.normalize);
  std::optional<CVector> target;
  if (!cfg.target_path.empty())
    target = state_from_json(m, read_json(cfg.target_path, "target state"), cfg.normalize);
  const PulseSequence seq = target ? transfer(m, x0, *target, v, ops) : sweep_to_ground(m, x0, v, ops);
  CVector ground = CVector::Zero(m.dim());
  ground[v.certificate().root] = 1.0;
  const auto sim = simulate(m, x0, seq, ops, target ? *target : ground);
  o.report["pulses"] = to_json(seq)["pulses"];
  o.report["check"] = to_json(sim);
  std::ostringstream s;
  s.precision(17);
  s << seq.size() << " pulses, fidelity " << *sim.fidelity_to_target;
  o.summary = s.str();
  return o;
}

Outcome simulate_cmd(const SystemModel& m, const RunConfig& cfg) {
  const auto ops = build_operators(m);
  const CVector x0 = state_from_json(m, read_json(cfg.input_path, "input state"), cfg.normalize);
  const PulseSequence seq = sequence_from_json(read_json(cfg.pulses_path, "pulse sequence"));
  std::optional<CVector> target;
  if (!cfg.target_path.empty())
    target = state_from_json(m, read_json(cfg.target_path, "target state"), cfg.normalize);
  const auto sim = simulate(m, x0, seq, ops, target);
  Outcome o;
  o.report["simulation"] = to_json(sim);
  o.report["populations"] = sim.populations;
  std::ostringstream s;
  s.precision(17);
  s << sim.pulse_count << " pulses, guard leakage " << sim.leakage_guard;
  if (sim.fidelity_to_target) s << ", fidelity " << *sim.fidelity_to_target;
  o.summary = s.str();
  return o;
}

Outcome demo(const SystemModel& m, std::uint64_t seed) {
  Outcome o;
  const auto esc = l0_escape_demo(8, 1.0, 1.0);
  Json e;
  e["dim"] = 8;
  e["alternating_support"] = esc.alternating_support;
  e["summed_support"] = esc.summed_support;
  e["threshold"] = esc.threshold;
  e["alternating"] = state_to_json(esc.alternating);
  e["summed"] = state_to_json(esc.summed);
  o.report["l0_escape"] = e;

  std::ostringstream s;
  s << "l0 escape: support " << esc.alternating_support << " vs " << esc.summed_support;
  const auto ops = build_operators(m);
  const auto v = fct_verdict(m, ops);
  o.report["verdict"] = to_json(v, m);
  if (v.finitely_controllable()) {
    std::mt19937_64 rng(seed);
    const int support = static_cast<int>(std::min<std::size_t>(4, modelled_window(m).size()));
    const CVector a = random_superposition(m, rng, support);
    const CVector b = random_superposition(m, rng, support);
    const auto seq = transfer(m, a, b, v, ops);
    const auto sim = simulate(m, a, seq, ops, b);
    Json t;
    t["initial"] = state_to_json(a);
    t["final"] = state_to_json(b);
    t["pulses"] = to_json(seq)["pulses"];
    t["check"] = to_json(sim);
    o.report["random_transfer"] = t;
    s.precision(17);
    s << "; random transfer " << seq.size() << " pulses, fidelity " << *sim.fidelity_to_target;
  } else {
    o.report["random_transfer"] = nullptr;
  }
  o.summary = s.str();
  return o;
}

}  // namespace

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write '" + tmp.string() + "'");
    f << content;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ValidationError("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ValidationError("cannot rename onto '" + path + "'");
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    SystemModel m;
    if (cfg.command == Command::Demo && cfg.spec_path.empty())
      m = spin_oscillator(0.1, 4, "carrier+red");
    else
      m = model_from_json(read_json(cfg.spec_path, "system spec"));

    Outcome o;
    try {
      switch (cfg.command) {
        case Command::Analyze: o = analyze(m); break;
        case Command::Lie: o = lie(m); break;
        case Command::Synthesize: o = synthesize(m, cfg); break;
        case Command::Simulate: o = simulate_cmd(m, cfg); break;
        case Command::Demo: o = demo(m, cfg.seed); break;
      }
    } catch (const DomainError& e) {
      o.report["error"] = e.what();
      o.summary = std::string("domain error: ") + e.what();
      o.code = 1;
    }

    Json report;
    report["command"] = std::string(command_name(cfg.command));
    report["seed"] = cfg.seed;
    report["exit_code"] = o.code;
    report["model"] = to_json(m);
    for (auto it = o.report.begin(); it != o.report.end(); ++it) report[it.key()] = it.value();

    const std::string text = dump(report);
    if (!cfg.output_path.empty()) write_atomic(cfg.output_path, text);
    out << o.summary << "\n";
    if (cfg.output_path.empty()) out << text;
    return o.code;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fincon
