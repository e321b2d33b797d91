// Command-line front end: analyze | sweep | detect | simulate | minimize.
// Diagnostics go to stderr; data goes to stdout or --out. Exit code 0 only
// when no error diagnostics were produced.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agent_thermo/case_studies.hpp"
#include "agent_thermo/errors.hpp"
#include "agent_thermo/spec_io.hpp"
#include "agent_thermo/thermo.hpp"

namespace at = agent_thermo;

namespace {

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes either to --out or to stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw at::Error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run_analyze(const std::string& spec_path, int stride, double kT,
                std::uint64_t budget, const std::string& out) {
  const at::ProcessSpec spec = at::parse_spec(spec_path);
  const at::ThermoReport report =
      at::analyze(spec.machine, spec.inputs, stride, spec.encoding, budget, kT);
  const at::Transducer minimal = at::minimize(spec.machine).machine;
  const auto echo = at::spec_to_json(spec.machine, spec.inputs, spec.encoding);
  Sink sink(out);
  sink.stream() << at::report_to_json(report, minimal, echo).dump(2) << "\n";
  return 0;
}

int run_detect(const std::string& spec_path, std::uint64_t budget) {
  const at::ProcessSpec spec = at::parse_spec(spec_path);
  const at::Transducer minimal = at::minimize(spec.machine).machine;
  const auto relation = at::distinguishability(minimal);
  const auto encoding =
      at::gram_from_overlaps(at::solve_overlaps(minimal));
  const auto oracle = at::interrogation_values(minimal, 6, budget);
  const auto pairs = relation.wasteful_pairs();
  if (pairs.empty()) {
    std::cout << "none\n";
    return 0;
  }
  std::cout << "pair,gram,oracle_depth6\n";
  for (const auto& [i, j] : pairs) {
    std::cout << minimal.state_names()[static_cast<std::size_t>(i)] << "~"
              << minimal.state_names()[static_cast<std::size_t>(j)] << ","
              << format_sig(encoding.gram(i, j)) << ","
              << format_sig(oracle(i, j)) << "\n";
  }
  return 0;
}

int run_simulate(const std::string& spec_path, std::uint64_t steps,
                 std::uint64_t seed, const std::string& out) {
  const at::ProcessSpec spec = at::parse_spec(spec_path);
  const auto trajectory = at::simulate(spec.machine, spec.inputs, steps, seed);
  Sink sink(out);
  auto& os = sink.stream();
  os << "t,x,y,state\n";
  for (const auto& step : trajectory) {
    os << step.t << ","
       << spec.machine.input_alphabet()[static_cast<std::size_t>(step.input)]
       << ","
       << spec.machine.output_alphabet()[static_cast<std::size_t>(step.output)]
       << ","
       << spec.machine.state_names()[static_cast<std::size_t>(step.state)]
       << "\n";
  }
  return 0;
}

int run_minimize(const std::string& spec_path, const std::string& out) {
  const at::ProcessSpec spec = at::parse_spec(spec_path);
  const at::Minimization minimization = at::minimize(spec.machine);
  std::optional<at::GramKernel> encoding;
  if (spec.encoding &&
      spec.encoding->dimension() == minimization.machine.num_states())
    encoding = spec.encoding;
  Sink sink(out);
  sink.stream() << at::spec_to_json(minimization.machine, spec.inputs, encoding)
                       .dump(2)
                << "\n";
  std::cerr << "minimized " << spec.machine.num_states() << " -> "
            << minimization.machine.num_states() << " states\n";
  return 0;
}

int run_brownian_sweep(double sigma, const std::vector<int>& bins,
                       const std::string& out) {
  const auto rows = at::brownian_sweep(sigma, bins);
  Sink sink(out);
  auto& os = sink.stream();
  os << "N,H_classical_bits,H_quantum_bits,gap_kTln2\n";
  for (const auto& row : rows)
    os << row.bins << "," << format_sig(row.classical_bits) << ","
       << format_sig(row.quantum_bits) << "," << format_sig(row.gap_bits)
       << "\n";
  return 0;
}

int run_clock_sweep(const at::ResetClockParams& base,
                    const std::vector<double>& dt_list,
                    const std::string& out) {
  const auto rows = at::clock_sweep(base, dt_list);
  Sink sink(out);
  auto& os = sink.stream();
  os << "dt,L,classical_dissipation_per_time,quantum_dissipation_per_time\n";
  for (const auto& row : rows)
    os << format_sig(row.dt) << "," << row.stride << ","
       << format_sig(row.classical_per_time) << ","
       << format_sig(row.quantum_per_time) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic analysis of finite input-output strategies"};
  app.require_subcommand(1);
  std::uint64_t budget = at::default_budget();
  app.add_option("--budget", budget, "enumeration budget (path slots)");

  std::string spec_path, out;
  int stride = 1;
  double kT = 1.0;
  auto* analyze = app.add_subcommand(
      "analyze", "full classical/quantum work-rate report for a spec");
  analyze->add_option("spec", spec_path, "process spec file")->required();
  analyze->add_option("--stride", stride, "block length L");
  analyze->add_option("--kT", kT, "energy scale multiplying every rate");
  analyze->add_option("--out", out, "report path (default stdout)");

  auto* detect = app.add_subcommand(
      "detect", "list causally wasteful pairs with Gram and oracle overlaps");
  detect->add_option("spec", spec_path, "process spec file")->required();

  std::uint64_t steps = 1000, seed = 1;
  auto* simulate =
      app.add_subcommand("simulate", "sample a trajectory from the strategy");
  simulate->add_option("spec", spec_path, "process spec file")->required();
  simulate->add_option("--steps", steps, "number of steps");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--out", out, "trajectory path (default stdout)");

  auto* minimize_cmd = app.add_subcommand(
      "minimize", "write the minimal (causal-state) machine as a spec");
  minimize_cmd->add_option("spec", spec_path, "process spec file")->required();
  minimize_cmd->add_option("--out", out, "spec path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "case-study scaling sweeps (CSV)");
  sweep->require_subcommand(1);
  double sigma = 0.01;
  std::vector<int> bins{8, 16, 32, 64, 128, 256, 512, 1024};
  auto* brownian = sweep->add_subcommand("brownian", "ring-diffusion sweep");
  brownian->add_option("--sigma", sigma, "Gaussian width (ring units)");
  brownian->add_option("--n", bins, "bin counts");
  brownian->add_option("--out", out, "CSV path (default stdout)");

  at::ResetClockParams clock{0.5, 1.0, 10.0, 0.1, 0.1, 1.0, -1};
  std::vector<double> dt_list{0.1, 0.05, 0.025, 0.0125, 0.00625};
  auto* clock_cmd = sweep->add_subcommand("clock", "reset-clock sweep");
  clock_cmd->add_option("--p", clock.p, "mixture weight");
  clock_cmd->add_option("--gamma0", clock.gamma0, "decay rate (1/s)");
  clock_cmd->add_option("--gamma1", clock.gamma1, "decay rate (1/s)");
  clock_cmd->add_option("--gammax", clock.gammax, "input rate (1/s)");
  clock_cmd->add_option("--tau", clock.tau, "decision window (s)");
  clock_cmd->add_option("--dt", dt_list, "step lengths (s)");
  clock_cmd->add_option("--truncation", clock.truncation,
                        "max tracked age (-1 = ceil(1/dt))");
  clock_cmd->add_option("--out", out, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(spec_path, stride, kT, budget, out);
    if (*detect) return run_detect(spec_path, budget);
    if (*simulate) return run_simulate(spec_path, steps, seed, out);
    if (*minimize_cmd) return run_minimize(spec_path, out);
    if (*brownian) return run_brownian_sweep(sigma, bins, out);
    if (*clock_cmd) return run_clock_sweep(clock, dt_list, out);
  } catch (const at::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
