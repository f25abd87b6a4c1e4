#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uavsec/association.hpp"
#include "uavsec/positioning.hpp"
#include "uavsec/power.hpp"
#include "uavsec/radio.hpp"

namespace uavsec {

enum class AssociationScheme { Slll, BestResponse, Greedy };
enum class PositioningScheme { KMeansBestResponse, AdaptedGreedy };
enum class PowerScheme { Secure, MaxMinSinr, MaxSumRate };

/// Physical parameters shared by every block.
struct SystemParams {
  int n_subchannels = 8;
  double gamma_p = 100.0; // linear total transmit SNR per UAV
  EnvParams env;
};

struct BcaConfig {
  int n_it = 5;
  AssociationScheme association = AssociationScheme::Slll;
  PositioningScheme positioning = PositioningScheme::KMeansBestResponse;
  PowerScheme power = PowerScheme::Secure;
  int association_max_rounds = 10;
  int altitude_max_rounds = 10;
  AltitudeUpdate altitude_update = AltitudeUpdate::Sequential;
  int kmeans_max_iters = 300;
  PowerConfig power_config;
  /// Feed each iteration's allocated powers into the next iteration's games
  /// instead of the uniform profile.
  bool power_each_iteration = false;

  void validate() const;
};

/// Named scheme combinations: proposed, br_assoc, greedy_assoc,
/// adapted_greedy, maxmin_sinr, max_sumrate. Throws on unknown names.
BcaConfig scheme_config(std::string_view name, BcaConfig base = {});
const std::vector<std::string>& scheme_names();

struct IterationMetrics {
  int iteration = 0;
  double sum_secrecy_rate = 0.0;
  double positive_secrecy_pct = 0.0;
  int association_rounds = 0;
  int altitude_rounds = 0;
  bool association_converged = false;
  bool altitude_converged = false;
};

struct SolutionRecord {
  Network network; // final geometry
  AssociationArray assoc;
  PowerMatrix powers;
  SecrecySnapshot snapshot;
  std::vector<IterationMetrics> iterations; // exactly n_it entries
  std::vector<Deployment> trajectory;       // deployment after each iteration
  std::vector<AllocationStep> allocation;   // steps of the final allocation
  std::vector<AssociationTraceRow> association_trace;
  bool converged = false;                   // an iteration with no moves in either game
  int iterations_run = 0;

  double sum_secrecy_rate() const { return iterations.back().sum_secrecy_rate; }
  double positive_secrecy_pct() const { return iterations.back().positive_secrecy_pct; }
  int max_association_rounds() const;
  int max_altitude_rounds() const;
};

struct RunOptions {
  bool trace_association = false;
};

/// Block coordinate ascent for one realization: k-means once, then n_it
/// rounds of association and altitude games with uniform-power interference,
/// then power allocation. `rng` seeds every random choice through derived
/// streams, so schemes given the same stream see the same initial deployment.
SolutionRecord run_bca(const Scenario& scenario, const SystemParams& params, const BcaConfig& config,
                       const RandomStream& rng, const RunOptions& options = {});

AllocationResult allocate_power(const Network& net, const AssociationArray& assoc, PowerScheme scheme,
                                const PowerConfig& config);

struct EquilibriumReport {
  std::vector<Deviation> association;
  std::vector<AltitudeDeviation> altitude;
  bool ok() const { return association.empty() && altitude.empty(); }
};

/// Exhaustive check, under uniform powers, that no node can profit from a
/// free resource and no UAV from another grid altitude.
EquilibriumReport certify_equilibrium(const Network& net, const AssociationArray& assoc);
EquilibriumReport certify_equilibrium(const SolutionRecord& record);

} // namespace uavsec
