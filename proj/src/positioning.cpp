#include "uavsec/positioning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uavsec/association.hpp"
#include "uavsec/radio.hpp"

namespace uavsec {

namespace {

void assign_nearest(const Eigen::Matrix2Xd& points, const Eigen::Matrix2Xd& centroids, std::vector<int>& membership) {
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    Eigen::Index best;
    (centroids.colwise() - points.col(i)).colwise().squaredNorm().minCoeff(&best);
    membership[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
}

} // namespace

double kmeans_sse(const Eigen::Matrix2Xd& points, const Eigen::Matrix2Xd& centroids,
                  const std::vector<int>& membership) {
  double sse = 0.0;
  for (Eigen::Index i = 0; i < points.cols(); ++i)
    sse += (points.col(i) - centroids.col(membership[static_cast<std::size_t>(i)])).squaredNorm();
  return sse;
}

KMeansResult kmeans_2d(const Eigen::Matrix2Xd& points, int k, RandomStream& rng, int max_iters, double tolerance) {
  const int n = static_cast<int>(points.cols());
  if (k < 1)
    throw std::invalid_argument("kmeans_2d: k must be positive");
  if (n < 1)
    throw EmptyInstanceError("kmeans_2d: no points");

  KMeansResult out;
  out.centroids.resize(2, k);
  out.membership.assign(static_cast<std::size_t>(n), 0);

  // Partial Fisher-Yates: the first min(k, n) entries are distinct random points.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const int distinct = std::min(k, n);
  for (int i = 0; i < distinct; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - i)));
    std::swap(order[i], order[j]);
    out.centroids.col(i) = points.col(order[i]);
  }
  constexpr double kJitter = 1e-3;
  for (int i = distinct; i < k; ++i) {
    const int src = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    out.centroids.col(i) = points.col(src) + Eigen::Vector2d(rng.uniform(-kJitter, kJitter), rng.uniform(-kJitter, kJitter));
  }

  Eigen::Matrix2Xd next(2, k);
  std::vector<int> counts(static_cast<std::size_t>(k));
  for (int iter = 1; iter <= max_iters; ++iter) {
    out.iterations = iter;
    assign_nearest(points, out.centroids, out.membership);
    out.sse_history.push_back(kmeans_sse(points, out.centroids, out.membership));

    next.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      next.col(out.membership[i]) += points.col(i);
      ++counts[out.membership[i]];
    }
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        next.col(c) /= counts[c];
        continue;
      }
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        const double d = (points.col(i) - out.centroids.col(out.membership[i])).squaredNorm();
        if (!taken[i] && d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) {
        next.col(c) = out.centroids.col(c);
      } else {
        taken[far] = true;
        next.col(c) = points.col(far);
      }
    }
    const double shift = (next - out.centroids).colwise().norm().maxCoeff();
    out.centroids = next;
    if (shift <= tolerance) {
      out.converged = true;
      break;
    }
  }
  assign_nearest(points, out.centroids, out.membership);
  out.sse_history.push_back(kmeans_sse(points, out.centroids, out.membership));
  return out;
}

Deployment initial_deployment(const Scenario& scenario, int n_uavs, RandomStream& rng, int max_iters) {
  Eigen::Matrix2Xd legit(2, scenario.n_legitimate());
  for (int l = 0; l < scenario.n_legitimate(); ++l)
    legit.col(l) = scenario.position(scenario.legitimate[l]);
  const auto km = kmeans_2d(legit, n_uavs, rng, max_iters);

  Deployment d;
  d.altitude_grid = scenario.region.altitude_grid();
  d.uavs.resize(3, n_uavs);
  const double z0 = d.altitude_grid(d.altitude_grid.size() / 2);
  for (int m = 0; m < n_uavs; ++m)
    d.uavs.col(m) << km.centroids(0, m), km.centroids(1, m), z0;
  return d;
}

double uav_secrecy_metric(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers, int m,
                          double z) {
  const auto served = assoc.served_by(m);
  if (served.empty())
    return 0.0;
  Eigen::Vector3d pos = net.deployment().uavs.col(m);
  pos.z() = z;
  const Eigen::RowVectorXd row = channel_gains_from(pos, net.scenario().nodes, net.env());
  const auto& gains = net.gains();
  const auto& eaves = net.scenario().eavesdroppers;

  double total = 0.0;
  for (int l : served) {
    const int c = assoc.resource_of(l)->subchannel;
    const int n = net.node_of(l);
    const double legit = row(n) / (interference(gains, powers, n, m, c) + 1.0);
    double best_e = -1.0;
    for (int e : eaves)
      best_e = std::max(best_e, row(e) / (interference(gains, powers, e, m, c) + 1.0));
    total += best_e < 0.0 ? kPhiCap : std::log2(legit / best_e);
  }
  return total;
}

double altitude_payoff(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers, int m,
                       double z) {
  const double here = net.deployment().uavs(2, m);
  if (z == here)
    return 0.0;
  return uav_secrecy_metric(net, assoc, powers, m, z) - uav_secrecy_metric(net, assoc, powers, m, here);
}

std::vector<double> best_altitudes(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers,
                                   int m, double* best_gain) {
  std::vector<double> argmax;
  double best = 0.0;
  if (!assoc.served_by(m).empty()) {
    const Eigen::VectorXd& grid = net.deployment().altitude_grid;
    const double here = net.deployment().uavs(2, m);
    const double base = uav_secrecy_metric(net, assoc, powers, m, here);
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      if (grid(k) == here)
        continue;
      const double f = uav_secrecy_metric(net, assoc, powers, m, grid(k)) - base;
      if (f <= 0.0)
        continue;
      if (f > best) {
        best = f;
        argmax.assign(1, grid(k));
      } else if (f == best) {
        argmax.push_back(grid(k));
      }
    }
  }
  if (best_gain)
    *best_gain = best;
  return argmax;
}

AltitudeResult br_altitude(Network& net, const AssociationArray& assoc, RandomStream& rng, int max_rounds,
                           AltitudeUpdate update) {
  return br_altitude(net, assoc, net.uniform_powers(), rng, max_rounds, update);
}

AltitudeResult br_altitude(Network& net, const AssociationArray& assoc, const PowerMatrix& powers, RandomStream& rng,
                           int max_rounds, AltitudeUpdate update) {
  AltitudeResult out;
  const int M = net.n_uavs();
  std::vector<double> target(static_cast<std::size_t>(M));
  auto pick = [&](const std::vector<double>& argmax) {
    return argmax.size() == 1 ? argmax.front() : argmax[rng.uniform_index(argmax.size())];
  };

  for (int round = 1; round <= max_rounds; ++round) {
    out.rounds = round;
    bool any = false;
    for (int m = 0; m < M; ++m) {
      target[m] = std::numeric_limits<double>::quiet_NaN();
      const auto argmax = best_altitudes(net, assoc, powers, m);
      if (argmax.empty())
        continue;
      any = true;
      if (update == AltitudeUpdate::Sequential) {
        net.set_altitude(m, pick(argmax));
        ++out.moves;
      } else {
        target[m] = pick(argmax);
      }
    }
    if (!any) {
      out.converged = true;
      break;
    }
    if (update == AltitudeUpdate::Simultaneous)
      for (int m = 0; m < M; ++m)
        if (!std::isnan(target[m])) {
          net.set_altitude(m, target[m]);
          ++out.moves;
        }
  }
  return out;
}

std::vector<AltitudeDeviation> altitude_deviations(const Network& net, const AssociationArray& assoc,
                                                   const PowerMatrix& powers) {
  std::vector<AltitudeDeviation> out;
  const auto& grid = net.deployment().altitude_grid;
  for (int m = 0; m < net.n_uavs(); ++m)
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      const double f = altitude_payoff(net, assoc, powers, m, grid(k));
      if (f > 0.0)
        out.push_back({m, grid(k), f});
    }
  return out;
}

AdaptedGreedyResult adapted_greedy_place(const Network& base, RandomStream& rng, int kmeans_max_iters) {
  Network net = base;
  const int M = net.n_uavs();
  const int C = net.n_subchannels();
  const int L = net.n_legitimate();
  const auto& eaves = net.scenario().eavesdroppers;
  const Eigen::VectorXd grid = net.deployment().altitude_grid;

  AdaptedGreedyResult out;
  out.assoc = net.empty_association();
  PowerMatrix powers = PowerMatrix::zeros(M, C, net.gamma_p());

  for (int m = 0; m < M; ++m) {
    std::vector<int> remaining;
    for (int l = 0; l < L; ++l)
      if (!out.assoc.resource_of(l))
        remaining.push_back(l);

    Eigen::Vector2d site(0.5 * (net.scenario().region.x_min + net.scenario().region.x_max),
                         0.5 * (net.scenario().region.y_min + net.scenario().region.y_max));
    if (!remaining.empty()) {
      Eigen::Matrix2Xd pts(2, static_cast<Eigen::Index>(remaining.size()));
      for (std::size_t i = 0; i < remaining.size(); ++i)
        pts.col(static_cast<Eigen::Index>(i)) = net.scenario().position(net.node_of(remaining[i]));
      const int k = std::min<int>(M - m, static_cast<int>(remaining.size()));
      const auto km = kmeans_2d(pts, k, rng, kmeans_max_iters);
      std::vector<int> sizes(static_cast<std::size_t>(k), 0);
      for (int c : km.membership)
        ++sizes[c];
      const auto largest = std::max_element(sizes.begin(), sizes.end()) - sizes.begin();
      site = km.centroids.col(largest);
    }

    powers.gamma.row(m).setConstant(net.gamma_p() / C);
    double best_score = -std::numeric_limits<double>::infinity();
    double best_z = grid(grid.size() / 2);
    std::vector<std::pair<int, int>> best_fill;
    for (Eigen::Index zi = 0; zi < grid.size(); ++zi) {
      net.move_uav(m, Eigen::Vector3d(site.x(), site.y(), grid(zi)));
      // Metric of each remaining node on each subchannel of UAV m.
      Eigen::MatrixXd phi(static_cast<Eigen::Index>(remaining.size()), C);
      for (int c = 0; c < C; ++c) {
        const auto e = strongest_eavesdropper(net.gains(), powers, eaves, m, c);
        for (std::size_t i = 0; i < remaining.size(); ++i) {
          const int n = net.node_of(remaining[i]);
          phi(static_cast<Eigen::Index>(i), c) =
              e.node < 0 ? kPhiCap : std::log2(effective_channel(net.gains(), powers, n, m, c) / e.effective);
        }
      }
      std::vector<bool> node_used(remaining.size(), false), chan_used(static_cast<std::size_t>(C), false);
      std::vector<std::pair<int, int>> fill;
      double score = 0.0;
      for (int step = 0; step < C && step < static_cast<int>(remaining.size()); ++step) {
        int bi = -1, bc = -1;
        double bv = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
          if (node_used[i])
            continue;
          for (int c = 0; c < C; ++c)
            if (!chan_used[c] && phi(static_cast<Eigen::Index>(i), c) > bv) {
              bv = phi(static_cast<Eigen::Index>(i), c);
              bi = static_cast<int>(i);
              bc = c;
            }
        }
        node_used[bi] = true;
        chan_used[bc] = true;
        fill.emplace_back(remaining[bi], bc);
        score += bv;
      }
      if (score > best_score) {
        best_score = score;
        best_z = grid(zi);
        best_fill = std::move(fill);
      }
    }
    net.move_uav(m, Eigen::Vector3d(site.x(), site.y(), best_z));
    for (auto [l, c] : best_fill) {
      out.assoc.assign(l, {m, c});
      ++out.bindings;
    }
    ++out.placements;
  }
  out.deployment = net.deployment();
  return out;
}

} // namespace uavsec
