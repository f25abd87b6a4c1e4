#include "uavsec/framework.hpp"

#include <algorithm>
#include <stdexcept>

namespace uavsec {

namespace {
enum StreamKey : std::uint64_t { kKMeans = 1, kAssociation = 2, kAltitude = 3, kAdaptedGreedy = 4 };
}

void BcaConfig::validate() const {
  if (n_it < 1)
    throw std::invalid_argument("bca: n_it must be at least 1");
  if (association_max_rounds < 1 || altitude_max_rounds < 1)
    throw std::invalid_argument("bca: round caps must be positive");
  power_config.validate();
}

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"proposed",       "br_assoc",    "greedy_assoc",
                                              "adapted_greedy", "maxmin_sinr", "max_sumrate"};
  return names;
}

BcaConfig scheme_config(std::string_view name, BcaConfig base) {
  base.positioning = PositioningScheme::KMeansBestResponse;
  base.association = AssociationScheme::Slll;
  base.power = PowerScheme::Secure;
  if (name == "proposed") {
  } else if (name == "br_assoc") {
    base.association = AssociationScheme::BestResponse;
  } else if (name == "greedy_assoc") {
    base.association = AssociationScheme::Greedy;
  } else if (name == "adapted_greedy") {
    base.positioning = PositioningScheme::AdaptedGreedy;
  } else if (name == "maxmin_sinr") {
    base.power = PowerScheme::MaxMinSinr;
  } else if (name == "max_sumrate") {
    base.power = PowerScheme::MaxSumRate;
  } else {
    throw std::invalid_argument("unknown scheme: " + std::string(name));
  }
  return base;
}

int SolutionRecord::max_association_rounds() const {
  int r = 0;
  for (const auto& it : iterations)
    r = std::max(r, it.association_rounds);
  return r;
}

int SolutionRecord::max_altitude_rounds() const {
  int r = 0;
  for (const auto& it : iterations)
    r = std::max(r, it.altitude_rounds);
  return r;
}

AllocationResult allocate_power(const Network& net, const AssociationArray& assoc, PowerScheme scheme,
                                const PowerConfig& config) {
  switch (scheme) {
  case PowerScheme::Secure:
    return secure_allocate(net, assoc, config);
  case PowerScheme::MaxMinSinr:
    return maxmin_sinr_allocate(net, assoc, config);
  case PowerScheme::MaxSumRate:
    return max_sumrate_allocate(net, assoc, config);
  }
  throw std::logic_error("allocate_power: unhandled scheme");
}

SolutionRecord run_bca(const Scenario& scenario, const SystemParams& params, const BcaConfig& config,
                       const RandomStream& rng, const RunOptions& options) {
  config.validate();
  const int M = choose_uav_count(scenario.n_legitimate(), params.n_subchannels);
  RandomStream kmeans_rng = rng.derive(kKMeans);
  RandomStream assoc_rng = rng.derive(kAssociation);
  RandomStream alt_rng = rng.derive(kAltitude);

  Network net(scenario, params.env, params.n_subchannels, params.gamma_p,
              initial_deployment(scenario, M, kmeans_rng, config.kmeans_max_iters));
  AssociationArray assoc = net.empty_association();
  std::vector<AssociationTraceRow> trace_rows;
  auto* trace = options.trace_association ? &trace_rows : nullptr;

  SolutionRecord rec{net, assoc, net.uniform_powers(), {}, {}, {}, {}, {}, false, 0};

  auto measure = [&](IterationMetrics m) {
    auto alloc = allocate_power(net, assoc, config.power, config.power_config);
    rec.snapshot = build_snapshot(net, assoc, alloc.powers);
    m.sum_secrecy_rate = sum_secrecy_rate(rec.snapshot);
    m.positive_secrecy_pct = positive_secrecy_fraction(rec.snapshot);
    rec.powers = std::move(alloc.powers);
    rec.allocation = std::move(alloc.steps);
    return m;
  };

  if (config.positioning == PositioningScheme::AdaptedGreedy) {
    RandomStream greedy_rng = rng.derive(kAdaptedGreedy);
    auto placed = adapted_greedy_place(net, greedy_rng, config.kmeans_max_iters);
    for (int m = 0; m < M; ++m)
      net.move_uav(m, placed.deployment.uavs.col(m));
    assoc = std::move(placed.assoc);
    IterationMetrics first = measure({1, 0, 0, placed.bindings, placed.placements, true, true});
    for (int it = 1; it <= config.n_it; ++it) {
      first.iteration = it;
      rec.iterations.push_back(first);
      rec.trajectory.push_back(net.deployment());
    }
    rec.converged = true;
    rec.iterations_run = 1;
  } else {
    PowerMatrix game_powers = net.uniform_powers();
    for (int it = 1; it <= config.n_it; ++it) {
      if (rec.converged) {
        IterationMetrics repeat = rec.iterations.back();
        repeat.iteration = it;
        repeat.association_rounds = 0;
        repeat.altitude_rounds = 0;
        rec.iterations.push_back(repeat);
        rec.trajectory.push_back(net.deployment());
        continue;
      }
      ++rec.iterations_run;
      IterationMetrics m;
      m.iteration = it;
      int assoc_moves = 0;
      const Eigen::MatrixXd phi = phi_table(net, game_powers);
      if (config.association == AssociationScheme::Greedy) {
        AssociationArray next = greedy_associate(phi, net.empty_association());
        assoc_moves = next == assoc ? 0 : 1;
        m.association_rounds = next.n_associated();
        m.association_converged = true;
        assoc = std::move(next);
      } else {
        GameOptions opts;
        opts.max_rounds = config.association_max_rounds;
        opts.rule = config.association == AssociationScheme::Slll ? ActionRule::SmoothBestResponse
                                                                   : ActionRule::BestResponse;
        opts.trace = trace;
        auto res = play_association_game(phi, assoc, assoc_rng, opts);
        assoc = std::move(res.assoc);
        assoc_moves = res.moves;
        m.association_rounds = res.rounds;
        m.association_converged = res.converged;
      }
      const auto alt = br_altitude(net, assoc, game_powers, alt_rng, config.altitude_max_rounds,
                                   config.altitude_update);
      m.altitude_rounds = alt.rounds;
      m.altitude_converged = alt.converged;

      rec.iterations.push_back(measure(m));
      rec.trajectory.push_back(net.deployment());
      if (config.power_each_iteration)
        game_powers = rec.powers;
      if (assoc_moves == 0 && alt.moves == 0 && m.association_converged && alt.converged)
        rec.converged = true;
    }
  }
  rec.network = net;
  rec.assoc = assoc;
  rec.association_trace = std::move(trace_rows);
  return rec;
}

EquilibriumReport certify_equilibrium(const Network& net, const AssociationArray& assoc) {
  const PowerMatrix uniform = net.uniform_powers();
  EquilibriumReport report;
  report.association = profitable_deviations(phi_table(net, uniform), assoc);
  report.altitude = altitude_deviations(net, assoc, uniform);
  return report;
}

EquilibriumReport certify_equilibrium(const SolutionRecord& record) {
  return certify_equilibrium(record.network, record.assoc);
}

} // namespace uavsec
