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

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fincon/models.hpp"
#include "fincon/pulse.hpp"

namespace fincon {

/// Couplings below this magnitude are treated as dark transitions.
inline constexpr double kDarkCoupling = 1e-12;

/// Applies the pulse as the whole operator: every edge e of `pulse.op` rotates by
/// theta * |g_e| / |g_target| with phase phi - (arg g_e - arg g_target). Exact
/// closed-form 2x2 rotations; requires a matching operator.
CVector apply_pulse(const CVector& state, const Pulse& pulse, const std::vector<ControlOperator>& ops);

/// The unitary a pulse applies, as a dense matrix.
CMatrix pulse_unitary(const Pulse& pulse, const std::vector<ControlOperator>& ops);

struct SimulationReport {
  CVector final_state;
  std::optional<double> fidelity_to_target;
  double leakage_guard = 0.0;  // max guard-band population over the trajectory
  std::size_t pulse_count = 0;
  double per_pulse_norm_drift = 0.0;  // max | ||psi|| - 1 |
  std::vector<std::vector<double>> populations;  // one row per pulse, row 0 is the input
};

SimulationReport simulate(const SystemModel& model, const CVector& state, const PulseSequence& seq,
                          const std::vector<ControlOperator>& ops, const std::optional<CVector>& target = std::nullopt);

/// CSV with columns index, p_0..p_{d-1}, leakage; one row per trajectory point.
std::string population_csv(const SystemModel& model, const SimulationReport& report);

/// Integrates x' = (A + u(t) B) x with u(t) = amplitude cos(omega_m t), held
/// constant over each step at its midpoint value. `observer` sees the state
/// after every step. Throws DomainError once guard-band population exceeds 1e-6.
CVector drive_oscillator(double amplitude, int steps, double dt, const SystemModel& model,
                         const CVector& initial,
                         const std::function<void(int, const CVector&)>& observer = {});
CVector drive_oscillator(double amplitude, int steps, double dt, const SystemModel& model);

struct CoherentFit {
  Complex alpha;
  double fit_fidelity = 0.0;
};

/// Coherent state e^{-|alpha|^2/2} sum alpha^n / sqrt(n!) |n> on `levels` states.
CVector coherent_state(Complex alpha, int levels);

/// |alpha|^2 from the mean occupation, arg(alpha) from <a>.
CoherentFit fit_coherent(const CVector& state);

struct EscapeReport {
  CVector alternating;  // exp(uA) exp(vB) e_1
  CVector summed;       // exp(uA + vB) e_1
  std::size_t alternating_support = 0;
  std::size_t summed_support = 0;
  double threshold = 1e-14;
};

/// Contrasts alternating exponentials of the block-example generators, which
/// stay in finitely supported vectors, with the exponential of their sum.
EscapeReport l0_escape_demo(int dim, double u, double v);

}  // namespace fincon
