// End-to-end checks of the command-line tool. The binary path arrives via the
// SAVANNA_CLI environment variable set by the test harness.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

std::string cli() {
  const char* path = std::getenv("SAVANNA_CLI");
  REQUIRE_MESSAGE(path != nullptr, "SAVANNA_CLI must point at the built binary");
  return path;
}

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& workdir) {
  fs::create_directories(workdir);
  const std::string out_file = workdir + "/stdout.txt";
  const std::string cmd = cli() + " " + args + " > " + out_file + " 2> " + workdir + "/stderr.txt";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kTmp = "cli_test_output";

}  // namespace

TEST_CASE("thresholds command emits the six thresholds") {
  const std::string dir = kTmp + "/thresholds";
  const RunResult r = run_cli("thresholds --preset R1 --gamma-tg 0.03 --out " + dir, dir);
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"R_01\": 1.666666") != std::string::npos);
  CHECK(r.stdout_text.find("\"R_pulse_Ge\": 12.1186") != std::string::npos);
  CHECK(slurp(dir + "/thresholds.json") == r.stdout_text);
}

TEST_CASE("no grass burnt reports the infinity sentinel") {
  const std::string dir = kTmp + "/inf";
  const RunResult r = run_cli("thresholds --preset R1 --lambda-fg 0 --out " + dir, dir);
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"R_pulse_Ge\": \"inf\"") != std::string::npos);
}

TEST_CASE("classify command prints the case label") {
  const std::string dir = kTmp + "/classify";
  CHECK(run_cli("classify --preset R1 --gamma-tg 0.051 --out " + dir, dir).stdout_text == "V\n");
  CHECK(run_cli("classify --preset R1 --gamma-tg 0.03 --out " + dir, dir).stdout_text ==
        "XIII\n");
  const RunResult boundary = run_cli(
      "classify --preset R1 --gamma-tg 0.03 --tau 1 --lambda-fg 0.50341469620859047 --out " + dir,
      dir);
  CHECK(boundary.stdout_text == "DirectConditions\n");
  CHECK(slurp(dir + "/classify.json").find("\"boundary\": true") != std::string::npos);
}

TEST_CASE("simulate with horizon zero emits only the initial state") {
  const std::string dir = kTmp + "/sim0";
  const RunResult r =
      run_cli("simulate --preset R1 --horizon 0 --initial 2,7 --out " + dir, dir);
  CHECK(r.exit_code == 0);
  CHECK(slurp(dir + "/trajectory.csv") == "t,G,T,event\n0,2,7,\n");
}

TEST_CASE("orbit command anchors the grassland orbit at its post-fire value") {
  const std::string dir = kTmp + "/orbit";
  const RunResult r = run_cli("orbit --preset R1 --kind grassland --out " + dir, dir);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir + "/orbit.csv");
  // first sampled row (phase 0) and the closing wrap row both carry ~1.9996
  CHECK(csv.find("\n0,1.99955") != std::string::npos);
  CHECK(csv.find("\n12,1.99955") != std::string::npos);
  const std::string run_json = slurp(dir + "/run.json");
  CHECK(run_json.find("\"lambda1\": 0.000449734") != std::string::npos);
}

TEST_CASE("savanna orbit request fails with exit 3 when the threshold forbids it") {
  const std::string dir = kTmp + "/orbit_missing";
  const RunResult r = run_cli(
      "orbit --preset R3-fig6 --omega-arg standing --kind savanna --out " + dir, dir);
  CHECK(r.exit_code == 3);
}

TEST_CASE("config validation failures exit with code 2") {
  const std::string dir = kTmp + "/badcfg";
  fs::create_directories(dir);
  std::ofstream(dir + "/bad.json") << R"({"params": {"gamma_G": 0.7, "K_G": 4,
    "gamma_T": 0.75, "K_T": 14, "gamma_TG": 0.03, "lambda_fG": 0.5,
    "lambda_fT": 0.9, "tau": 12, "lambda_Fg": 1}})";
  CHECK(run_cli("thresholds --config " + dir + "/bad.json --out " + dir, dir).exit_code == 2);
  CHECK(run_cli("thresholds --out " + dir, dir).exit_code == 2);
  CHECK(run_cli("thresholds --preset NOPE --out " + dir, dir).exit_code == 2);
}

TEST_CASE("identical configs produce byte-identical artifacts") {
  const std::string d1 = kTmp + "/det1";
  const std::string d2 = kTmp + "/det2";
  run_cli("simulate --preset R2 --horizon 3 --out " + d1, d1);
  run_cli("simulate --preset R2 --horizon 3 --out " + d2, d2);
  CHECK(slurp(d1 + "/trajectory.csv") == slurp(d2 + "/trajectory.csv"));
  CHECK(slurp(d1 + "/trajectory.csv").size() > 100);
}

TEST_CASE("emitted reproduction JSON re-ingests to an identical run") {
  const std::string d1 = kTmp + "/repro1";
  const std::string d2 = kTmp + "/repro2";
  const RunResult first =
      run_cli("thresholds --preset R3-fig6 --omega-arg standing --out " + d1, d1);
  CHECK(first.exit_code == 0);
  const RunResult second = run_cli("thresholds --config " + d1 + "/run.json --out " + d2, d2);
  CHECK(second.exit_code == 0);
  CHECK(slurp(d1 + "/thresholds.json") == slurp(d2 + "/thresholds.json"));
}

TEST_CASE("sweep command emits one row per value") {
  const std::string dir = kTmp + "/sweep";
  const RunResult r = run_cli(
      "sweep --preset R1 --param gamma_TG --values -0.01,0.01,0.03,0.051 --no-probes --out " +
          dir,
      dir);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir + "/sweep.csv");
  CHECK(csv.find(",XIII,") != std::string::npos);
  CHECK(csv.find(",V,") != std::string::npos);
  CHECK(csv.find(",DirectConditions,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("presets list names every built-in scenario") {
  const std::string dir = kTmp + "/presets";
  const RunResult r = run_cli("presets list", dir);
  CHECK(r.exit_code == 0);
  for (const char* name : {"R1", "R2", "R2-fig4", "R3-fig5", "R3-fig6", "R3-fig7"})
    CHECK(r.stdout_text.find(name) != std::string::npos);
}

TEST_CASE("basin command on a coarse bistable grid") {
  const std::string dir = kTmp + "/basin";
  const RunResult r = run_cli(
      "basin --preset R3-fig6 --omega-arg standing --ng 8 --nt 8 --out " + dir, dir);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir + "/basin.csv");
  CHECK(csv.find("Forest") != std::string::npos);
  CHECK(csv.find("GrasslandPeriodic") != std::string::npos);
}
