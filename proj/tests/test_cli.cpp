#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

#ifndef AGENT_THERMO_CLI_PATH
#define AGENT_THERMO_CLI_PATH "agent-thermo"
#endif
#ifndef AGENT_THERMO_SPEC_DIR
#define AGENT_THERMO_SPEC_DIR "specs"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

// Runs the CLI, capturing stdout (and stderr too when asked).
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const fs::path out = fs::temp_directory_path() / "agent_thermo_cli_out.txt";
  const std::string command = std::string(AGENT_THERMO_CLI_PATH) + " " + args +
                              " > " + out.string() +
                              (merge_stderr ? " 2>&1" : "");
  const int status = std::system(command.c_str());
  std::ifstream in(out);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  fs::remove(out);
  return RunResult{status == 0 ? 0 : 1, buffer.str()};
}

std::string spec(const std::string& name) {
  return (fs::path(AGENT_THERMO_SPEC_DIR) / name).string();
}

}  // namespace

TEST_CASE("cli analyze: alice-bob figures") {
  const auto result = run_cli("analyze " + spec("alice_bob.json"));
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::ordered_json::parse(result.output);
  CHECK(doc["classical_rate"].get<double>() == doctest::Approx(2.0));
  CHECK(doc["online_cost"].get<double>() == doctest::Approx(1.5));
  CHECK(doc["advantage_predicted"].get<bool>());
  CHECK(doc["encodings"][1]["gap"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("cli analyze: memoryless spec has no advantage") {
  const auto result = run_cli("analyze " + spec("memoryless.json"));
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::ordered_json::parse(result.output);
  CHECK(doc["classical_rate"].get<double>() == doctest::Approx(0.0));
  CHECK_FALSE(doc["advantage_predicted"].get<bool>());
}

TEST_CASE("cli analyze: over-budget stride fails with capacity hint") {
  const auto result =
      run_cli("analyze " + spec("alice_bob.json") + " --stride 12", true);
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("budget") != std::string::npos);
}

TEST_CASE("cli detect: alice-bob wasteful pairs") {
  const auto result = run_cli("detect " + spec("alice_bob.json"));
  REQUIRE(result.exit_code == 0);
  int pair_lines = 0;
  std::istringstream lines(result.output);
  std::string line;
  while (std::getline(lines, line))
    if (line.find('~') != std::string::npos) {
      ++pair_lines;
      CHECK(line.find("0.5") != std::string::npos);
    }
  CHECK(pair_lines == 4);

  const auto none = run_cli("detect " + spec("echo.json"));
  CHECK(none.output == "none\n");
}

TEST_CASE("cli simulate: seeded reproducibility and empty runs") {
  const std::string args =
      "simulate " + spec("alice_bob.json") + " --steps 200 --seed 7";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  const auto empty =
      run_cli("simulate " + spec("alice_bob.json") + " --steps 0");
  CHECK(empty.output == "t,x,y,state\n");
}

TEST_CASE("cli minimize: writes a quotient spec") {
  const auto result = run_cli("minimize " + spec("alice_bob.json") + " 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::ordered_json::parse(result.output);
  CHECK(doc["states"].size() == 4);
}

TEST_CASE("cli sweep: deterministic byte-identical CSV") {
  const std::string args = "sweep brownian --sigma 0.05 --n 4 8 16";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.rfind("N,H_classical_bits,H_quantum_bits,gap_kTln2\n", 0) ==
        0);
  int rows = -1;  // discount header
  for (char c : a.output)
    if (c == '\n') ++rows;
  CHECK(rows == 3);
}

TEST_CASE("cli sweep clock: four rows, increasing classical column") {
  const auto result =
      run_cli("sweep clock --dt 0.2 0.1 0.05 0.025 --tau 1 --gammax 0.1");
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "dt,L,classical_dissipation_per_time,quantum_dissipation_per_time");
  double previous = -1.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto last_comma = line.rfind(',');
    const auto second_last = line.rfind(',', last_comma - 1);
    const double classical = std::stod(
        line.substr(second_last + 1, last_comma - second_last - 1));
    CHECK(classical > previous);
    previous = classical;
  }
  CHECK(rows == 4);
}

TEST_CASE("cli: unwritable output path fails nonzero") {
  const auto result = run_cli("sweep brownian --n 4 --out /nonexistent/dir/x.csv 2>/dev/null");
  CHECK(result.exit_code != 0);
}
