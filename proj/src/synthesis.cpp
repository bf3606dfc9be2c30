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

#include "fincon/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fincon/error.hpp"

namespace fincon {

namespace {

constexpr double kPeeledTol = 1e-10;

void check_state(const SystemModel& m, const CVector& x, const char* what) {
  if (x.size() != m.dim()) {
    std::ostringstream os;
    os << what << " has dimension " << x.size() << ", model has " << m.dim();
    throw ValidationError(os.str());
  }
  if (std::abs(x.norm() - 1.0) > kFidelityTol) throw ValidationError(std::string(what) + " is not a unit vector");
  for (Index k = 0; k < x.size(); ++k)
    if (std::abs(x[k]) > kSkipAmplitude && in_guard_band(m, k))
      throw ValidationError(std::string(what) + " has weight on guard-band state " + basis_label(m, k));
}

// Pulse on edge {from, to} that zeroes the amplitude at `from`, expressed in
// the edge's index orientation.
Pulse zeroing_pulse(const std::string& op, Index from, Index to, const CVector& x) {
  const Rotation2 r = givens_zero(x[from], x[to]);
  Pulse p;
  p.op = op;
  p.i = std::min(from, to);
  p.j = std::max(from, to);
  p.theta = r.theta;
  // Swapping the roles of (a, b) maps phi to -phi - pi.
  p.phi = from < to ? r.phi : wrap_phase(-r.phi - std::numbers::pi);
  return p;
}

std::string describe(const SystemModel& m, Index from, Index to, const std::string& op) {
  std::ostringstream os;
  os << "zero |" << basis_label(m, from) << "> into |" << basis_label(m, to) << "> via " << op;
  return os.str();
}

}  // namespace

PulseSequence sweep_to_ground(const SystemModel& model, const CVector& state, const ControllabilityVerdict& verdict,
                              const std::vector<ControlOperator>& ops) {
  const SystemModel m = validated(model);
  const Certificate& cert = verdict.certificate();
  check_state(m, state, "state");

  PulseSequence seq;
  CVector x = state;
  std::vector<Index> peeled;
  for (const auto& step : cert.peel_order) {
    if (!step.parent) break;  // root
    const Index v = step.vertex;
    if (std::abs(x[v]) > kSkipAmplitude) {
      Pulse p = zeroing_pulse(step.op, v, *step.parent, x);
      x = apply_pulse(x, p, ops);
      seq.push(std::move(p), describe(m, v, *step.parent, step.op));
      for (Index q : peeled)
        if (std::abs(x[q]) > kPeeledTol) {
          std::ostringstream os;
          os << "descent violated: pulse on '" << step.op << "' refilled peeled state |" << basis_label(m, q) << ">";
          throw DomainError(os.str());
        }
    }
    peeled.push_back(v);
  }
  if (std::abs(std::abs(x[cert.root]) - 1.0) > kPeeledTol)
    throw DomainError("sweep_to_ground: weight did not collect on the root");
  return seq;
}

PulseSequence invert(const PulseSequence& seq) {
  PulseSequence out;
  for (std::size_t k = seq.size(); k-- > 0;) {
    Pulse p = seq.pulses[k];
    p.phi = wrap_phase(p.phi + std::numbers::pi);
    out.push(std::move(p), "reverse of: " + seq.provenance[k]);
  }
  return out;
}

PulseSequence transfer(const SystemModel& model, const CVector& initial, const CVector& final_state,
                       const ControllabilityVerdict& verdict, const std::vector<ControlOperator>& ops) {
  PulseSequence seq = sweep_to_ground(model, initial, verdict, ops);
  seq.append(invert(sweep_to_ground(model, final_state, verdict, ops)));
  return seq;
}

PulseSequence move_eigenstate(const SystemModel& model, Index from, Index to, const ControllabilityVerdict& verdict,
                              const std::vector<ControlOperator>& ops) {
  const SystemModel m = validated(model);
  const Certificate& cert = verdict.certificate();
  const Index dim = m.dim();
  if (from < 0 || from >= dim || to < 0 || to >= dim) throw ValidationError("move_eigenstate: vertex out of range");

  std::vector<Index> parent(static_cast<std::size_t>(dim), -1);
  std::vector<std::string> up_op(static_cast<std::size_t>(dim));
  for (const auto& s : cert.peel_order)
    if (s.parent) {
      parent[static_cast<std::size_t>(s.vertex)] = *s.parent;
      up_op[static_cast<std::size_t>(s.vertex)] = s.op;
    }
  auto chain = [&](Index v) {
    std::vector<Index> c{v};
    while (parent[static_cast<std::size_t>(c.back())] >= 0) c.push_back(parent[static_cast<std::size_t>(c.back())]);
    return c;  // v .. root
  };
  auto a = chain(from);
  auto b = chain(to);
  while (a.size() > 1 && b.size() > 1 && a[a.size() - 2] == b[b.size() - 2]) {
    a.pop_back();
    b.pop_back();
  }
  // a: from .. lca, b: to .. lca
  std::vector<Index> path = a;
  for (std::size_t k = b.size() - 1; k-- > 0;) path.push_back(b[k]);

  PulseSequence seq;
  CVector x = CVector::Unit(dim, from);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const Index u = path[k], w = path[k + 1];
    const std::string& op = parent[static_cast<std::size_t>(u)] == w ? up_op[static_cast<std::size_t>(u)]
                                                                      : up_op[static_cast<std::size_t>(w)];
    Pulse p = zeroing_pulse(op, u, w, x);
    x = apply_pulse(x, p, ops);
    seq.push(std::move(p), describe(m, u, w, op));
  }
  return seq;
}

double pulse_duration(const Pulse& pulse, const std::vector<ControlOperator>& ops, double field) {
  for (const auto& op : ops)
    if (op.id == pulse.op)
      for (const auto& e : op.edges)
        if (e.i == pulse.i && e.j == pulse.j) return pulse.theta / (std::abs(field) * std::abs(e.coupling));
  throw ValidationError("pulse_duration: pulse does not name an operator edge");
}

CVector random_superposition(const SystemModel& model, std::mt19937_64& rng, int support) {
  std::vector<Index> pool;
  for (Index k = 0; k < model.dim(); ++k)
    if (!in_guard_band(model, k)) pool.push_back(k);
  if (support < 1 || static_cast<std::size_t>(support) > pool.size())
    throw ValidationError("random_superposition: support out of range");
  std::normal_distribution<double> gauss;
  CVector x = CVector::Zero(model.dim());
  // partial Fisher-Yates
  for (int s = 0; s < support; ++s) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(s), pool.size() - 1);
    std::swap(pool[static_cast<std::size_t>(s)], pool[pick(rng)]);
    const double re = gauss(rng);
    const double im = gauss(rng);
    x[pool[static_cast<std::size_t>(s)]] = Complex{re, im};
  }
  return x / x.norm();
}

}  // namespace fincon
