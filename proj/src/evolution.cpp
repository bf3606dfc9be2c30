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

#include "fincon/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "fincon/error.hpp"
#include "fincon/graph.hpp"

namespace fincon {

namespace {

const ControlOperator& find_op(const std::vector<ControlOperator>& ops, const std::string& id) {
  for (const auto& op : ops)
    if (op.id == id) return op;
  throw ValidationError("pulse names unknown operator '" + id + "'");
}

const Edge& find_edge(const ControlOperator& op, Index i, Index j) {
  auto it = std::lower_bound(op.edges.begin(), op.edges.end(), std::pair{i, j}, [](const Edge& e, const auto& key) {
    return e.i != key.first ? e.i < key.first : e.j < key.second;
  });
  if (it == op.edges.end() || it->i != i || it->j != j) {
    std::ostringstream os;
    os << "edge (" << i << "," << j << ") is not an edge of operator '" << op.id << "'";
    throw ValidationError(os.str());
  }
  return *it;
}

double guard_population(const CVector& x, const std::vector<bool>& mask) {
  double p = 0.0;
  for (Index k = 0; k < x.size(); ++k)
    if (mask[static_cast<std::size_t>(k)]) p += std::norm(x[k]);
  return p;
}

std::vector<double> populations_of(const CVector& x) {
  std::vector<double> p(static_cast<std::size_t>(x.size()));
  for (Index k = 0; k < x.size(); ++k) p[static_cast<std::size_t>(k)] = std::norm(x[k]);
  return p;
}

}  // namespace

CVector apply_pulse(const CVector& state, const Pulse& pulse, const std::vector<ControlOperator>& ops) {
  const ControlOperator& op = find_op(ops, pulse.op);
  if (state.size() != op.dim()) throw ValidationError("apply_pulse: state dimension does not match operator");
  if (check_matching(op))
    throw DomainError("apply_pulse: operator '" + op.id + "' is not a matching; closed-form pulses do not apply");
  const Edge& target = find_edge(op, pulse.i, pulse.j);
  const double g_t = std::abs(target.coupling);
  if (g_t < kDarkCoupling) {
    std::ostringstream os;
    os << "dark transition: operator '" << op.id << "' edge (" << pulse.i << "," << pulse.j << ") has coupling "
       << g_t;
    throw DomainError(os.str());
  }
  const double arg_t = std::arg(target.coupling);

  CVector out = state;
  for (const auto& e : op.edges) {
    const double g = std::abs(e.coupling);
    if (g == 0.0) continue;
    const Rotation2 r{pulse.theta * g / g_t, wrap_phase(pulse.phi - (std::arg(e.coupling) - arg_t))};
    apply_rotation(r, out[e.i], out[e.j]);
  }
  return out;
}

CMatrix pulse_unitary(const Pulse& pulse, const std::vector<ControlOperator>& ops) {
  const Index dim = find_op(ops, pulse.op).dim();
  CMatrix u(dim, dim);
  for (Index c = 0; c < dim; ++c) u.col(c) = apply_pulse(CVector::Unit(dim, c), pulse, ops);
  return u;
}

SimulationReport simulate(const SystemModel& model, const CVector& state, const PulseSequence& seq,
                          const std::vector<ControlOperator>& ops, const std::optional<CVector>& target) {
  const SystemModel m = validated(model);
  if (state.size() != m.dim()) throw ValidationError("simulate: state dimension does not match the model");
  if (target && target->size() != m.dim()) throw ValidationError("simulate: target dimension does not match the model");
  const auto mask = guard_mask(m);

  SimulationReport rep;
  CVector x = state;
  const double norm0 = x.norm();
  rep.leakage_guard = guard_population(x, mask);
  rep.populations.push_back(populations_of(x));
  for (const auto& p : seq.pulses) {
    x = apply_pulse(x, p, ops);
    rep.per_pulse_norm_drift = std::max(rep.per_pulse_norm_drift, std::abs(x.norm() - norm0));
    rep.leakage_guard = std::max(rep.leakage_guard, guard_population(x, mask));
    rep.populations.push_back(populations_of(x));
  }
  rep.pulse_count = seq.size();
  if (target) rep.fidelity_to_target = fidelity(x, *target);
  rep.final_state = std::move(x);
  return rep;
}

std::string population_csv(const SystemModel& model, const SimulationReport& report) {
  const auto mask = guard_mask(validated(model));
  std::ostringstream os;
  os << std::setprecision(17);
  os << "index";
  for (Index k = 0; k < static_cast<Index>(mask.size()); ++k) os << ",p_" << k;
  os << ",leakage\n";
  for (std::size_t row = 0; row < report.populations.size(); ++row) {
    const auto& p = report.populations[row];
    double leak = 0.0;
    os << row;
    for (std::size_t k = 0; k < p.size(); ++k) {
      os << ',' << p[k];
      if (mask[k]) leak += p[k];
    }
    os << ',' << leak << '\n';
  }
  return os.str();
}

CVector drive_oscillator(double amplitude, int steps, double dt, const SystemModel& model, const CVector& initial,
                         const std::function<void(int, const CVector&)>& observer) {
  const SystemModel m = validated(model);
  if (m.family != Family::HarmonicOscillator) throw ValidationError("drive_oscillator: model is not a harmonic oscillator");
  if (steps < 0 || !(dt > 0.0)) throw ValidationError("drive_oscillator: need steps >= 0 and dt > 0");
  if (initial.size() != m.dim()) throw ValidationError("drive_oscillator: initial state has the wrong dimension");
  const auto ops = build_operators(m);
  const CMatrix& a = ops[0].matrix;
  const CMatrix& b = ops[1].matrix;
  const auto mask = guard_mask(m);

  CVector x = initial;
  for (int k = 0; k < steps; ++k) {
    const double t_mid = (k + 0.5) * dt;
    const double u = amplitude * std::cos(m.drift.omega_m * t_mid);
    x = expm_skew(a + u * b, dt) * x;
    const double leak = guard_population(x, mask);
    if (leak > 1e-6) {
      std::ostringstream os;
      os << "drive_oscillator: guard-band population " << leak << " after step " << k + 1
         << "; increase n_max (currently " << m.n_max << ")";
      throw DomainError(os.str());
    }
    if (observer) observer(k + 1, x);
  }
  return x;
}

CVector drive_oscillator(double amplitude, int steps, double dt, const SystemModel& model) {
  const SystemModel m = validated(model);
  return drive_oscillator(amplitude, steps, dt, m, CVector::Unit(m.dim(), 0));
}

CVector coherent_state(Complex alpha, int levels) {
  CVector out(levels);
  Complex c = std::exp(-std::norm(alpha) / 2.0);
  for (int n = 0; n < levels; ++n) {
    if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
    out[n] = c;
  }
  return out;
}

CoherentFit fit_coherent(const CVector& state) {
  if (state.size() == 0 || std::abs(state.norm() - 1.0) > kFidelityTol)
    throw ValidationError("fit_coherent: state must be a unit vector");
  double mean_n = 0.0;
  Complex mean_a = 0.0;
  for (Index n = 0; n < state.size(); ++n) {
    mean_n += static_cast<double>(n) * std::norm(state[n]);
    if (n + 1 < state.size()) mean_a += std::conj(state[n]) * std::sqrt(static_cast<double>(n + 1)) * state[n + 1];
  }
  const double phase = std::abs(mean_a) > 0.0 ? std::arg(mean_a) : 0.0;
  CoherentFit fit;
  fit.alpha = std::polar(std::sqrt(mean_n), phase);
  // Exact coefficients of |alpha> on the truncated support of `state`.
  const CVector ref = coherent_state(fit.alpha, static_cast<int>(state.size()));
  fit.fit_fidelity = std::clamp(std::norm(ref.dot(state)), 0.0, 1.0);
  return fit;
}

EscapeReport l0_escape_demo(int dim, double u, double v) {
  if (dim < 6 || dim % 2) throw ValidationError("l0_escape_demo: dim must be even and >= 6");
  const SystemModel m = block_example(dim);
  const auto ops = build_operators(m);
  const CMatrix& a = ops[0].matrix;
  const CMatrix& b = ops[1].matrix;
  const CVector e1 = CVector::Unit(dim, 0);

  EscapeReport rep;
  rep.alternating = expm(u * a) * (expm(v * b) * e1);
  rep.summed = expm(u * a + v * b) * e1;
  rep.alternating_support = support(rep.alternating, rep.threshold).size();
  rep.summed_support = support(rep.summed, rep.threshold).size();
  return rep;
}

}  // namespace fincon
