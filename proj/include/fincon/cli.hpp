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

#include <cstdint>
#include <iosfwd>
#include <string>

namespace fincon {

enum class Command { Analyze, Lie, Synthesize, Simulate, Demo };

struct RunConfig {
  Command command = Command::Analyze;
  std::string spec_path;
  std::string input_path;
  std::string target_path;
  std::string pulses_path;  // simulate only
  std::string output_path;  // empty: full report goes to stdout after the summary
  std::uint64_t seed = 0;
  bool normalize = false;
};

/// Exit codes: 0 success, 1 domain error (the report is still written and says
/// why), 2 I/O or validation error (nothing is written).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace fincon
