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

#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "fincon/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fincon: finite controllability analysis and pulse synthesis"};
  app.require_subcommand(1);

  fincon::RunConfig cfg;
  const std::map<std::string, fincon::Command> commands{
      {"analyze", fincon::Command::Analyze},
      {"lie", fincon::Command::Lie},
      {"synthesize", fincon::Command::Synthesize},
      {"simulate", fincon::Command::Simulate},
      {"demo", fincon::Command::Demo},
  };
  const std::map<std::string, std::string> help{
      {"analyze", "transfer-graph verdict for a system"},
      {"lie", "Lie-closure dimension of the control generators"},
      {"synthesize", "pulse sequence taking --in to ground, or to --target"},
      {"simulate", "apply a --pulses sequence to --in"},
      {"demo", "l0 escape demo plus a seeded random transfer"},
  };
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--spec", cfg.spec_path, "system spec JSON");
    sub->add_option("--in", cfg.input_path, "input state JSON");
    sub->add_option("--target", cfg.target_path, "target state JSON");
    sub->add_option("--out", cfg.output_path, "report path (written atomically)");
    sub->add_option("--seed", cfg.seed, "seed for randomized generation");
    sub->add_flag("--normalize", cfg.normalize, "rescale state amplitudes to unit norm");
    if (cmd == fincon::Command::Simulate) sub->add_option("--pulses", cfg.pulses_path, "pulse sequence JSON");
    sub->callback([&cfg, c = cmd] { cfg.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return fincon::run(cfg, std::cout, std::cerr);
}
