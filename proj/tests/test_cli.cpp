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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fincon/cli.hpp"
#include "fincon/error.hpp"
#include "fincon/json_io.hpp"
#include "fincon/synthesis.hpp"

namespace fincon {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fincon_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const auto p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Runs the CLI binary, returns exit code and captured stdout.
  static std::pair<int, std::string> exec(const std::string& args) {
    const std::string cmd = std::string(FINCON_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 256> buf{};
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
  }

  fs::path dir_;
};

const char* kCarrierRed = R"({"family": "SpinOscillator", "scheme": "carrier+red", "eta": 0.1, "n_max": 4})";
const char* kRedBlue = R"({"family": "SpinOscillator", "scheme": "red+blue", "eta": 0.1, "n_max": 4})";
const char* kKneerLaw = R"({"normalize": true, "amplitudes": [["up,3", 1, 0], ["down,2", 1, 0]]})";

TEST_F(CliTest, AnalyzeCarrierRed) {
  const auto spec = file("spec.json", kCarrierRed);
  const auto [rc, out] = exec("analyze --spec " + spec + " --out " + path("r.json"));
  EXPECT_EQ(rc, 0);
  EXPECT_NE(out.find("FinitelyControllable"), std::string::npos);
  const auto j = Json::parse(slurp(path("r.json")));
  EXPECT_EQ(j["verdict"]["kind"], "FinitelyControllable");
  EXPECT_EQ(j["verdict"]["root"]["label"], "down,0");
  EXPECT_EQ(j["model"]["family"], "SpinOscillator");
  EXPECT_EQ(j["model"]["guard"], 4);
  // fixed key order
  std::vector<std::string> keys;
  for (auto it = j["verdict"].begin(); it != j["verdict"].end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"kind", "root", "peel_order", "components", "cycle", "witness_op"}));
}

TEST_F(CliTest, SynthesizeRedBlueIsDomainError) {
  const auto spec = file("spec.json", kRedBlue);
  const auto in = file("in.json", kKneerLaw);
  const auto [rc, out] = exec("synthesize --spec " + spec + " --in " + in + " --out " + path("r.json"));
  EXPECT_EQ(rc, 1);
  const auto j = Json::parse(slurp(path("r.json")));
  EXPECT_EQ(j["verdict"]["kind"], "Disconnected");
  EXPECT_EQ(j["verdict"]["components"].size(), 2u);
  EXPECT_EQ(j["exit_code"], 1);
}

TEST_F(CliTest, MissingSpecIsIoError) {
  const auto in = file("in.json", kKneerLaw);
  const auto [rc, out] = exec("simulate --spec " + path("nope.json") + " --in " + in + " --out " + path("r.json"));
  EXPECT_EQ(rc, 2);
  EXPECT_FALSE(fs::exists(path("r.json")));
}

TEST_F(CliTest, UnknownFlagIsValidationError) {
  EXPECT_EQ(exec("analyze --bogus").first, 2);
  EXPECT_EQ(exec("").first, 2);
}

TEST_F(CliTest, SynthesizeThenSimulate) {
  const auto spec = file("spec.json", kCarrierRed);
  const auto in = file("in.json", kKneerLaw);
  const auto ground = file("g.json", R"({"normalize": false, "amplitudes": [["down,0", 1, 0]]})");
  auto [rc, out] = exec("synthesize --spec " + spec + " --in " + in + " --out " + path("s.json"));
  ASSERT_EQ(rc, 0);
  const auto s = Json::parse(slurp(path("s.json")));
  EXPECT_EQ(s["pulses"].size(), 7u);
  EXPECT_EQ(s["pulses"][0]["op"], "carrier");
  EXPECT_GE(s["check"]["fidelity_to_target"].get<double>(), 1 - 1e-12);

  std::tie(rc, out) = exec("simulate --spec " + spec + " --in " + in + " --pulses " + path("s.json") + " --target " +
                           ground + " --out " + path("sim.json"));
  ASSERT_EQ(rc, 0);
  const auto sim = Json::parse(slurp(path("sim.json")));
  EXPECT_GE(sim["simulation"]["fidelity_to_target"].get<double>(), 1 - 1e-12);
  EXPECT_EQ(sim["simulation"]["pulse_count"], 7);
  EXPECT_EQ(sim["populations"].size(), 8u);
}

TEST_F(CliTest, SynthesizeTransferToTarget) {
  const auto spec = file("spec.json", kCarrierRed);
  const auto in = file("in.json", kKneerLaw);
  const auto tgt = file("t.json", R"({"normalize": true, "amplitudes": [{"label": "up,1", "re": 0, "im": 2}, ["down,4", 1, 1]]})");
  const auto [rc, out] = exec("synthesize --spec " + spec + " --in " + in + " --target " + tgt + " --out " + path("s.json"));
  ASSERT_EQ(rc, 0);
  EXPECT_GE(Json::parse(slurp(path("s.json")))["check"]["fidelity_to_target"].get<double>(), 1 - 1e-9);
}

TEST_F(CliTest, NormalizationRules) {
  const auto spec = file("spec.json", kCarrierRed);
  const auto raw = file("raw.json", R"({"normalize": false, "amplitudes": [["up,3", 1, 0], ["down,2", 1, 0]]})");
  EXPECT_EQ(exec("synthesize --spec " + spec + " --in " + raw + " --out " + path("a.json")).first, 2);
  EXPECT_FALSE(fs::exists(path("a.json")));
  EXPECT_EQ(exec("synthesize --normalize --spec " + spec + " --in " + raw + " --out " + path("b.json")).first, 0);
  const auto guard = file("guard.json", R"({"normalize": false, "amplitudes": [["up,6", 1, 0]]})");
  EXPECT_EQ(exec("synthesize --spec " + spec + " --in " + guard + " --out " + path("c.json")).first, 2);
  const auto bad = file("bad.json", R"({"normalize": false, "amplitudes": [["left,0", 1, 0]]})");
  EXPECT_EQ(exec("synthesize --spec " + spec + " --in " + bad + " --out " + path("d.json")).first, 2);
}

TEST_F(CliTest, DeterministicReports) {
  const auto spec = file("spec.json", kCarrierRed);
  for (const std::string cmd : {"demo --seed 42", "analyze", "lie"}) {
    const std::string extra = cmd.rfind("demo", 0) == 0 ? "" : " --spec " + spec;
    ASSERT_EQ(exec(cmd + extra + " --out " + path("1.json")).first, 0);
    ASSERT_EQ(exec(cmd + extra + " --out " + path("2.json")).first, 0);
    EXPECT_EQ(slurp(path("1.json")), slurp(path("2.json"))) << cmd;
  }
  ASSERT_EQ(exec("demo --seed 43 --out " + path("3.json")).first, 0);
  EXPECT_NE(slurp(path("1.json")), slurp(path("3.json")));
}

TEST_F(CliTest, LieOnOscillator) {
  const auto spec = file("ho.json", R"({"family": "HarmonicOscillator", "n_max": 20})");
  const auto [rc, out] = exec("lie --spec " + spec + " --out " + path("l.json"));
  ASSERT_EQ(rc, 0);
  const auto j = Json::parse(slurp(path("l.json")));
  EXPECT_EQ(j["closure"]["dimension_found"], 4);
  EXPECT_EQ(j["closure"]["saturated"], true);
  EXPECT_EQ(j["lamb_dicke_closure"]["dimension_found"], 20);
  EXPECT_EQ(j["lemma"]["pass"], true);
}

TEST_F(CliTest, InProcessRunWithoutOutPrintsReport) {
  RunConfig cfg;
  cfg.command = Command::Analyze;
  cfg.spec_path = file("spec.json", R"({"family": "SpinTwoOscillators", "n_max": 1, "guard": 0})");
  std::ostringstream out, err;
  EXPECT_EQ(run(cfg, out, err), 0);
  const std::string text = out.str();
  const auto nl = text.find('\n');
  EXPECT_NE(text.substr(0, nl).find("CyclicObstruction"), std::string::npos);
  const auto j = Json::parse(text.substr(nl + 1));
  EXPECT_EQ(j["verdict"]["cycle"].size(), 6u);
}

TEST_F(CliTest, BadSpecFields) {
  std::ostringstream out, err;
  RunConfig cfg;
  cfg.spec_path = file("s1.json", R"({"family": "SpinOscillator", "scheme": "green", "n_max": 3})");
  EXPECT_EQ(run(cfg, out, err), 2);
  cfg.spec_path = file("s2.json", R"({"family": "SpinOscillator"})");
  EXPECT_EQ(run(cfg, out, err), 2);
  cfg.spec_path = file("s3.json", R"({"family": "SpinOscillator", "n_max": "four"})");
  EXPECT_EQ(run(cfg, out, err), 2);
  cfg.spec_path = file("s4.json", "{not json");
  EXPECT_EQ(run(cfg, out, err), 2);
}

TEST_F(CliTest, AtomicWriteReplaces) {
  const auto p = file("x.json", "old");
  write_atomic(p, "new");
  EXPECT_EQ(slurp(p), "new");
  EXPECT_FALSE(fs::exists(p + ".tmp"));
  EXPECT_THROW(write_atomic(path("missing_dir/y.json"), "z"), ValidationError);
}

TEST(JsonIo, SeventeenDigits) {
  Json j;
  j["x"] = 0.1;
  j["n"] = 3;
  j["v"] = Json::array({1.0 / 3.0, 2.0});
  EXPECT_EQ(dump(j), "{\n  \"x\": 0.10000000000000001,\n  \"n\": 3,\n  \"v\": [0.33333333333333331, 2]\n}\n");
}

TEST(JsonIo, PulseSequenceRoundTrip) {
  PulseSequence s;
  s.push({"red", 3, 4, 0.123456789012345678, -2.5}, "zero |down,2>");
  s.push({"carrier", 0, 1, 1.5707963267948966, 0.0}, "");
  const auto back = sequence_from_json(Json::parse(dump(to_json(s))));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.pulses[0], s.pulses[0]);
  EXPECT_EQ(back.pulses[1], s.pulses[1]);
  EXPECT_EQ(back.provenance, s.provenance);
  EXPECT_THROW(sequence_from_json(Json::parse(R"({"pulses": [{"op": "r"}]})")), ValidationError);
}

TEST(JsonIo, ModelRoundTrip) {
  const auto m = nlevel_oscillator(4, 0.25, 3, "scheme-b", 2);
  const auto back = model_from_json(Json::parse(dump(to_json(m))));
  EXPECT_EQ(back.family, m.family);
  EXPECT_EQ(back.scheme, m.scheme);
  EXPECT_EQ(back.eta, m.eta);
  EXPECT_EQ(back.levels, 4);
  EXPECT_EQ(back.guard, 2);
  EXPECT_EQ(dump(to_json(back)), dump(to_json(m)));
}

TEST(JsonIo, StateParsing) {
  const auto m = spin_oscillator(0.1, 3);
  const auto x = state_from_json(m, Json::parse(kKneerLaw));
  EXPECT_NEAR(std::norm(x[7]), 0.5, 1e-15);
  EXPECT_NEAR(std::norm(x[4]), 0.5, 1e-15);
  EXPECT_THROW(state_from_json(m, Json::parse(R"({"amplitudes": [["up,1", 1, 0], ["up,1", 0, 0]]})")), ValidationError);
  EXPECT_THROW(state_from_json(m, Json::parse(R"({"amplitudes": []})")), ValidationError);
  EXPECT_THROW(state_from_json(m, Json::parse(R"({"amplitudes": [["up,1", 1]]})")), ValidationError);
  const auto y = state_from_json(m, Json::parse(R"({"amplitudes": [["up,1", 3, 4]]})"), true);
  EXPECT_NEAR(y[3].real(), 0.6, 1e-15);
}

}  // namespace
}  // namespace fincon
