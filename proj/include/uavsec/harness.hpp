#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "uavsec/framework.hpp"

namespace uavsec {

enum class SweepAxis { Gamma0Db, NNodes, GammaPDb };

std::string axis_name(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Everything one Monte Carlo experiment needs. Defaults are the common
/// simulation parameters (80 nodes, 8 subchannels, 20 dB, urban channel).
struct ExperimentConfig {
  int n_nodes = 80;
  int n_subchannels = 8;
  int n_it = 5;
  double gamma_p_db = 20.0;
  double gamma0_db = -10.0;
  double q = 0.5;
  EnvParams env;
  Region region;

  int association_max_rounds = 10;
  int altitude_max_rounds = 10;
  AltitudeUpdate altitude_update = AltitudeUpdate::Sequential;
  int kmeans_max_iters = 300;
  int n_iter_pow = 3;
  int n_iter_bis = 50;
  double bisection_tol = 1e-6;
  bool power_each_iteration = false;

  SweepAxis axis = SweepAxis::Gamma0Db;
  std::vector<double> sweep_values; // empty: the axis' base value only
  int realizations = 200;
  std::vector<std::string> schemes{"proposed"};
  std::uint64_t seed = 1;
  bool record_runtime = true;

  void validate() const;
  /// The sweep values actually run (base value when none are configured).
  std::vector<double> effective_sweep() const;
  /// Copy with the axis parameter set to `value`.
  ExperimentConfig at(double value) const;
  SystemParams system() const;
  BcaConfig bca(const std::string& scheme) const;
};

/// Flat "key = value" text; '#' starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ResultRow {
  std::string scheme;
  double value = 0.0;
  int realization = 0;
  double sum_secrecy_rate = 0.0;
  double positive_secrecy_pct = 0.0;
  int association_rounds = 0;
  int altitude_rounds = 0;
  double runtime_ms = 0.0;
};

struct SummaryRow {
  std::string scheme;
  double value = 0.0;
  int realizations = 0;
  double mean_rate = 0.0, stderr_rate = 0.0;
  double mean_pct = 0.0, stderr_pct = 0.0;
  double mean_association_rounds = 0.0;
  double mean_altitude_rounds = 0.0;
};

/// Stream id of realization r at a sweep value; retries after an empty
/// legitimate set use id + 1, id + 2, ...
std::uint64_t realization_stream(std::uint64_t seed, double value, int realization);

/// Scenario for (value, realization), resampled until it has a legitimate node.
/// `stream_out` receives the stream id actually used.
Scenario realization_scenario(const ExperimentConfig& config, double value, int realization,
                              std::uint64_t* stream_out = nullptr);

/// Random stream handed to every scheme of one realization (paired design).
RandomStream realization_rng(const ExperimentConfig& config, std::uint64_t stream);

/// Runs every (value, realization, scheme) triple; rows come back ordered by
/// value, then realization, then scheme as listed, whatever the worker count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int workers = 1);

/// Mean and standard error per (scheme, value); schemes in first-appearance
/// order, values ascending.
std::vector<SummaryRow> aggregate(const std::vector<ResultRow>& rows);

} // namespace uavsec
