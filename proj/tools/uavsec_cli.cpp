// uavsec: Monte Carlo runner for secure UAV association, placement and power
// allocation.
//
//   uavsec run --config exp.cfg --out results/ [--seed N] [--workers N]
//   uavsec aggregate --in results/results.csv --out results/summary.csv
//   uavsec demo [--config exp.cfg] --out demo/ [--seed N] [--scheme proposed]

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "uavsec/framework.hpp"
#include "uavsec/harness.hpp"
#include "uavsec/io.hpp"

namespace fs = std::filesystem;
using namespace uavsec;

namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  return out;
}

ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : load_config(path);
}

int cmd_run(const std::string& config_path, const fs::path& out_dir, std::optional<std::uint64_t> seed, int workers) {
  ExperimentConfig config = config_or_default(config_path);
  if (seed)
    config.seed = *seed;
  config.validate();
  // Fail on an unwritable destination before any computation.
  auto results = open_output(out_dir / "results.csv");
  auto summary = open_output(out_dir / "summary.csv");

  const auto values = config.effective_sweep();
  std::cerr << fmt::format("{} values x {} realizations x {} schemes on {} worker(s)\n", values.size(),
                           config.realizations, config.schemes.size(), workers);
  const auto rows = run_experiment(config, workers);
  write_results_csv(results, config.axis, rows);
  write_summary_csv(summary, config.axis, aggregate(rows));
  std::cerr << fmt::format("wrote {} rows to {}\n", rows.size(), (out_dir / "results.csv").string());
  return 0;
}

int cmd_aggregate(const fs::path& in_path, const fs::path& out_path) {
  std::ifstream in(in_path);
  if (!in)
    throw std::runtime_error("cannot open " + in_path.string());
  SweepAxis axis{};
  const auto rows = read_results_csv(in, &axis);
  if (rows.empty())
    throw std::runtime_error("no rows in " + in_path.string());
  auto out = open_output(out_path);
  write_summary_csv(out, axis, aggregate(rows));
  return 0;
}

int cmd_demo(const std::string& config_path, const fs::path& out_dir, std::optional<std::uint64_t> seed,
             const std::string& scheme) {
  ExperimentConfig config = config_or_default(config_path);
  if (seed)
    config.seed = *seed;
  config.validate();
  const double value = config.effective_sweep().front();
  const ExperimentConfig c = config.at(value);
  std::uint64_t stream = 0;
  const Scenario scenario = realization_scenario(config, value, 0, &stream);
  RunOptions opts;
  opts.trace_association = true;
  const auto rec = run_bca(scenario, c.system(), c.bca(scheme), RandomStream(config.seed, stream).derive(0x5EED), opts);

  auto scen = open_output(out_dir / "scenario.txt");
  write_scenario(scen, scenario);
  auto trace = open_output(out_dir / "association_trace.csv");
  write_association_trace_csv(trace, rec.association_trace);
  auto traj = open_output(out_dir / "deployment.csv");
  write_trajectory_csv(traj, rec.trajectory);
  auto snap = open_output(out_dir / "snapshot.csv");
  write_snapshot_csv(snap, rec.snapshot);
  auto alloc = open_output(out_dir / "allocation.csv");
  write_allocation_csv(alloc, rec.allocation, rec.snapshot);
  auto sol = open_output(out_dir / "solution.csv");
  write_solution_header(sol);
  write_solution_rows(sol, 0, rec);

  const auto report = certify_equilibrium(rec);
  std::cout << fmt::format("scheme {}: N={} L={} E={} M={}\n", scheme, scenario.n_nodes(), scenario.n_legitimate(),
                           scenario.n_eavesdroppers(), rec.network.n_uavs());
  for (const auto& it : rec.iterations)
    std::cout << fmt::format("  iteration {}: sum secrecy {:.4f} bits/s/Hz, {:.1f}% positive, "
                             "association rounds {}, altitude rounds {}\n",
                             it.iteration, it.sum_secrecy_rate, it.positive_secrecy_pct, it.association_rounds,
                             it.altitude_rounds);
  std::cout << fmt::format("  equilibrium violations: {} association, {} altitude\n", report.association.size(),
                           report.altitude.size());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure UAV-IoT association, placement and power allocation experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  auto* run = app.add_subcommand("run", "Monte Carlo sweep; writes results.csv and summary.csv");
  run->add_option("--config", config_path, "experiment config (key = value)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--seed", seed, "master seed (overrides the config)");
  run->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

  std::string in_csv, out_csv;
  auto* agg = app.add_subcommand("aggregate", "summarize a results.csv");
  agg->add_option("--in", in_csv, "results csv")->required()->check(CLI::ExistingFile);
  agg->add_option("--out", out_csv, "summary csv")->required();

  std::string scheme = "proposed";
  auto* demo = app.add_subcommand("demo", "one realization with trace dumps");
  demo->add_option("--config", config_path, "experiment config")->check(CLI::ExistingFile);
  demo->add_option("--out", out_dir, "output directory")->required();
  demo->add_option("--seed", seed, "master seed");
  demo->add_option("--scheme", scheme, "scheme name")
      ->check(CLI::IsMember(uavsec::scheme_names()));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run)
      return cmd_run(config_path, out_dir, seed, workers);
    if (*agg)
      return cmd_aggregate(in_csv, out_csv);
    if (*demo)
      return cmd_demo(config_path, out_dir, seed, scheme);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
