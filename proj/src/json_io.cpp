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

#include "fincon/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "fincon/error.hpp"

namespace fincon {

namespace {

void write(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          write(j[k], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        write(j[k], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default: out += j.dump();
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

Json pair_json(Index a, Index b) { return Json::array({a, b}); }

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(const SystemModel& m) {
  Json j;
  j["family"] = std::string(to_string(m.family));
  j["scheme"] = m.scheme;
  j["eta"] = m.eta;
  j["n_max"] = m.n_max;
  j["guard"] = m.guard;
  j["levels"] = m.levels;
  j["mu"] = m.mu;
  Json d;
  d["omega_m"] = m.drift.omega_m;
  d["omega_0"] = m.drift.omega_0;
  d["omega_s"] = m.drift.omega_s;
  d["omega_c_prime"] = m.drift.omega_c_prime;
  d["omega_z"] = m.drift.omega_z;
  j["drift_freqs"] = d;
  return j;
}

SystemModel model_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ValidationError("system spec must be a JSON object");
    for (const char* key : {"family", "n_max"})
      if (!j.contains(key)) throw ValidationError(std::string("system spec is missing \"") + key + "\"");
    SystemModel m;
    m.family = family_from_string(j.at("family").get<std::string>());
    m.scheme = get_or<std::string>(j, "scheme", "");
    m.eta = get_or<double>(j, "eta", m.eta);
    m.n_max = j.at("n_max").get<int>();
    m.guard = get_or<int>(j, "guard", m.guard);
    m.levels = get_or<int>(j, "levels", m.family == Family::NLevelOscillator ? 3 : m.levels);
    m.mu = get_or<double>(j, "mu", m.mu);
    if (j.contains("drift_freqs")) {
      const auto& d = j.at("drift_freqs");
      m.drift.omega_m = get_or<double>(d, "omega_m", 1.0);
      m.drift.omega_0 = get_or<double>(d, "omega_0", 1.0);
      m.drift.omega_s = get_or<double>(d, "omega_s", 1.0);
      m.drift.omega_c_prime = get_or<double>(d, "omega_c_prime", 1.0);
      m.drift.omega_z = get_or<double>(d, "omega_z", 1.0);
    }
    return validated(m);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("system spec: ") + e.what());
  }
}

Json to_json(const ControllabilityVerdict& v, const SystemModel& m) {
  Json j;
  j["kind"] = std::string(to_string(v.kind()));
  j["root"] = nullptr;
  j["peel_order"] = nullptr;
  j["components"] = nullptr;
  j["cycle"] = nullptr;
  j["witness_op"] = nullptr;
  auto label = [&](Index k) { return basis_label(m, k); };

  if (const auto* c = std::get_if<Certificate>(&v.evidence)) {
    Json root;
    root["vertex"] = c->root;
    root["label"] = label(c->root);
    Json h1 = Json::array({c->root});
    if (c->partner) h1.push_back(*c->partner);
    root["h1"] = h1;
    j["root"] = root;
    Json order = Json::array();
    for (const auto& s : c->peel_order) {
      Json e;
      e["vertex"] = s.vertex;
      e["label"] = label(s.vertex);
      e["parent"] = s.parent ? Json(*s.parent) : Json(nullptr);
      e["op"] = s.parent ? Json(s.op) : Json(nullptr);
      order.push_back(e);
    }
    j["peel_order"] = order;
  } else if (const auto* comp = std::get_if<Components>(&v.evidence)) {
    j["components"] = comp->parts;
  } else if (const auto* cyc = std::get_if<CycleWitness>(&v.evidence)) {
    j["cycle"] = cyc->vertices;
  } else if (const auto* w = std::get_if<MatchingWitness>(&v.evidence)) {
    Json wj;
    wj["op"] = w->op;
    wj["vertex"] = w->vertex;
    j["witness_op"] = wj;
  }
  return j;
}

Json to_json(const LieClosureReport& r) {
  Json j;
  j["generators"] = r.generators;
  j["dimension_found"] = r.dimension_found;
  j["saturated"] = r.saturated;
  j["depth"] = r.depth;
  j["interior_dim"] = r.interior_dim;
  return j;
}

Json to_json(const LemmaReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["max_residual"] = r.max_residual;
  j["interior"] = r.interior;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["identity"] = c.name;
    e["residual"] = c.residual;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

Json to_json(const PulseSequence& s) {
  Json pulses = Json::array();
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Pulse& p = s.pulses[k];
    Json e;
    e["op"] = p.op;
    e["edge"] = pair_json(p.i, p.j);
    e["theta"] = p.theta;
    e["phi"] = p.phi;
    e["provenance"] = k < s.provenance.size() ? s.provenance[k] : std::string();
    pulses.push_back(e);
  }
  Json j;
  j["pulses"] = pulses;
  return j;
}

PulseSequence sequence_from_json(const Json& j) {
  try {
    PulseSequence s;
    const Json& arr = j.is_array() ? j : j.at("pulses");
    for (const auto& e : arr) {
      Pulse p;
      p.op = e.at("op").get<std::string>();
      const auto& edge = e.at("edge");
      if (!edge.is_array() || edge.size() != 2) throw ValidationError("pulse edge must be [i, j]");
      p.i = edge[0].get<Index>();
      p.j = edge[1].get<Index>();
      if (p.i > p.j) std::swap(p.i, p.j);
      p.theta = e.at("theta").get<double>();
      p.phi = e.at("phi").get<double>();
      s.push(std::move(p), get_or<std::string>(e, "provenance", ""));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("pulse sequence: ") + e.what());
  }
}

Json state_to_json(const CVector& x) {
  Json arr = Json::array();
  for (Index k = 0; k < x.size(); ++k) arr.push_back(Json::array({x[k].real(), x[k].imag()}));
  return arr;
}

Json to_json(const SimulationReport& r) {
  Json j;
  j["final_state"] = state_to_json(r.final_state);
  j["fidelity_to_target"] = r.fidelity_to_target ? Json(*r.fidelity_to_target) : Json(nullptr);
  j["leakage_guard"] = r.leakage_guard;
  j["pulse_count"] = r.pulse_count;
  j["per_pulse_norm_drift"] = r.per_pulse_norm_drift;
  return j;
}

CVector state_from_json(const SystemModel& m, const Json& j, bool force_normalize) {
  try {
    const bool normalize = force_normalize || get_or<bool>(j, "normalize", false);
    CVector x = CVector::Zero(m.dim());
    std::set<Index> seen;
    for (const auto& e : j.at("amplitudes")) {
      std::string label;
      double re = 0.0, im = 0.0;
      if (e.is_array()) {
        if (e.size() != 3) throw ValidationError("amplitude entries must be [label, re, im]");
        label = e[0].get<std::string>();
        re = e[1].get<double>();
        im = e[2].get<double>();
      } else {
        label = e.at("label").get<std::string>();
        re = get_or<double>(e, "re", 0.0);
        im = get_or<double>(e, "im", 0.0);
      }
      const Index k = parse_label(m, label);
      if (!seen.insert(k).second) throw ValidationError("basis state '" + label + "' listed twice");
      x[k] = Complex{re, im};
    }
    const double n = x.norm();
    if (n == 0.0) throw ValidationError("state has no weight");
    if (normalize) return x / n;
    if (std::abs(n - 1.0) > 1e-9)
      throw ValidationError("state norm is " + std::to_string(n) + "; pass normalize to rescale");
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("state: ") + e.what());
  }
}

}  // namespace fincon
