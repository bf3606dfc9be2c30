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
#include <vector>

#include "fincon/numeric.hpp"

namespace fincon {

/// One piecewise-constant control segment. theta is the rotation angle on the
/// target edge (i, j), i < j, in the Rotation2 convention with (a, b) = (x_i, x_j);
/// a full population transfer ("pi-pulse", pulse area pi) is theta = pi/2.
struct Pulse {
  std::string op;
  Index i = 0;
  Index j = 0;
  double theta = 0.0;
  double phi = 0.0;

  double area() const { return 2.0 * theta; }
  bool operator==(const Pulse&) const = default;
};

struct PulseSequence {
  std::vector<Pulse> pulses;
  std::vector<std::string> provenance;  // one entry per pulse

  void push(Pulse p, std::string why) {
    pulses.push_back(std::move(p));
    provenance.push_back(std::move(why));
  }
  std::size_t size() const { return pulses.size(); }
  bool empty() const { return pulses.empty(); }
  void append(const PulseSequence& other) {
    pulses.insert(pulses.end(), other.pulses.begin(), other.pulses.end());
    provenance.insert(provenance.end(), other.provenance.begin(), other.provenance.end());
  }
};

}  // namespace fincon
