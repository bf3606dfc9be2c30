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

#include <random>
#include <vector>

#include "fincon/evolution.hpp"
#include "fincon/graph.hpp"
#include "fincon/pulse.hpp"

namespace fincon {

/// Amplitudes at or below this magnitude are treated as already zero.
inline constexpr double kSkipAmplitude = 1e-12;

/// Drives `state` onto the certificate root by walking the peel order: each
/// peeled leaf with weight is zeroed by a pulse on its unique tree edge, chosen
/// from the amplitudes as simulated so far. Throws DomainError when the verdict
/// is an obstruction, an edge is dark, or a pulse refills an already peeled
/// vertex; ValidationError when the state is not a unit vector or reaches the
/// guard band.
PulseSequence sweep_to_ground(const SystemModel& model, const CVector& state, const ControllabilityVerdict& verdict,
                              const std::vector<ControlOperator>& ops);

/// Time reversal: reversed order, every phase shifted by pi.
PulseSequence invert(const PulseSequence& seq);

/// sweep_to_ground(initial) followed by invert(sweep_to_ground(final)).
PulseSequence transfer(const SystemModel& model, const CVector& initial, const CVector& final_state,
                       const ControllabilityVerdict& verdict, const std::vector<ControlOperator>& ops);

/// Eigenstate-to-eigenstate move: one full-transfer pulse per edge of the
/// tree path from `from` to `to`.
PulseSequence move_eigenstate(const SystemModel& model, Index from, Index to, const ControllabilityVerdict& verdict,
                              const std::vector<ControlOperator>& ops);

/// Physical duration of a pulse for a field of amplitude `field`: theta / (|field| |g_target|).
double pulse_duration(const Pulse& pulse, const std::vector<ControlOperator>& ops, double field);

/// Unit vector with complex Gaussian amplitudes on `support` distinct basis
/// states drawn uniformly from outside the guard band.
CVector random_superposition(const SystemModel& model, std::mt19937_64& rng, int support);

}  // namespace fincon
