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

#include <string>

#include "json.hpp"

#include "fincon/evolution.hpp"
#include "fincon/graph.hpp"
#include "fincon/lie.hpp"
#include "fincon/models.hpp"
#include "fincon/pulse.hpp"

namespace fincon {

using Json = nlohmann::ordered_json;

/// Serializes with 2-space indentation, keys in insertion order, and every
/// floating-point number printed with 17 significant digits.
std::string dump(const Json& j);

Json to_json(const SystemModel& m);
SystemModel model_from_json(const Json& j);

Json to_json(const ControllabilityVerdict& v, const SystemModel& m);
Json to_json(const LieClosureReport& r);
Json to_json(const LemmaReport& r);
Json to_json(const PulseSequence& s);
PulseSequence sequence_from_json(const Json& j);
Json to_json(const SimulationReport& r);
Json state_to_json(const CVector& x);

/// State document: {"normalize": bool, "amplitudes": [[label, re, im], ...]}.
/// Entries may also be objects {"label", "re", "im"}. Without normalization a
/// vector whose norm is off by more than 1e-9 is rejected.
CVector state_from_json(const SystemModel& m, const Json& j, bool force_normalize = false);

}  // namespace fincon
