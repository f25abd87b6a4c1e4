#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "uavsec/association.hpp"
#include "uavsec/positioning.hpp"
#include "uavsec/radio.hpp"

using namespace uavsec;
using fixtures::make_network;
using fixtures::make_scenario;

namespace {

// Sum of the metric over UAV m's nodes, recomputed from a full metric table
// after physically moving the UAV.
double recomputed_metric(Network net, const AssociationArray& assoc, const PowerMatrix& powers, int m, double z) {
  net.set_altitude(m, z);
  const Eigen::MatrixXd phi = phi_table(net, powers);
  double total = 0.0;
  for (int l : assoc.served_by(m))
    total += phi(l, assoc.flat(*assoc.resource_of(l)));
  return total;
}

Network random_network(int L, int E, std::uint64_t seed, int C, const Region& region = {}) {
  auto s = fixtures::random_scenario(L, E, seed);
  s.region = region;
  const int M = choose_uav_count(L, C);
  RandomStream rng(seed, 1);
  return Network(s, EnvParams::urban(), C, 100.0, initial_deployment(s, M, rng));
}

} // namespace

TEST_CASE("k-means: identical points collapse") {
  Eigen::Matrix2Xd pts(2, 6);
  pts.colwise() = Eigen::Vector2d(250.0, 400.0);
  RandomStream rng(1, 0);
  for (int k : {1, 3, 6, 9}) {
    const auto km = kmeans_2d(pts, k, rng);
    for (int c = 0; c < k; ++c)
      CHECK((km.centroids.col(c) - pts.col(0)).norm() < 2e-3);
    CHECK(km.sse_history.back() < 1e-5);
  }
}

TEST_CASE("k-means: k = 1 gives the mean") {
  RandomStream gen(2, 0);
  Eigen::Matrix2Xd pts(2, 40);
  for (Eigen::Index i = 0; i < pts.cols(); ++i)
    pts.col(i) << gen.uniform(0, 1000), gen.uniform(0, 1000);
  RandomStream rng(3, 0);
  const auto km = kmeans_2d(pts, 1, rng);
  CHECK(km.converged);
  CHECK((km.centroids.col(0) - pts.rowwise().mean()).norm() < 1e-9);
}

TEST_CASE("k-means: two separated groups") {
  RandomStream gen(4, 0);
  Eigen::Matrix2Xd pts(2, 40);
  for (Eigen::Index i = 0; i < 20; ++i)
    pts.col(i) << gen.uniform(0, 100), gen.uniform(0, 100);
  for (Eigen::Index i = 20; i < 40; ++i)
    pts.col(i) << gen.uniform(900, 1000), gen.uniform(900, 1000);
  const Eigen::Vector2d a = pts.leftCols(20).rowwise().mean();
  const Eigen::Vector2d b = pts.rightCols(20).rowwise().mean();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomStream rng(seed, 0);
    const auto km = kmeans_2d(pts, 2, rng);
    const bool first_is_a = (km.centroids.col(0) - a).norm() < (km.centroids.col(0) - b).norm();
    CHECK((km.centroids.col(first_is_a ? 0 : 1) - a).norm() < 1e-9);
    CHECK((km.centroids.col(first_is_a ? 1 : 0) - b).norm() < 1e-9);
    // Every point sits with its nearest centroid.
    for (Eigen::Index i = 0; i < 40; ++i) {
      Eigen::Index best;
      (km.centroids.colwise() - pts.col(i)).colwise().squaredNorm().minCoeff(&best);
      CHECK(km.membership[i] == best);
    }
  }
}

TEST_CASE("k-means: SSE never increases") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomStream gen(seed, 9);
    Eigen::Matrix2Xd pts(2, 60);
    for (Eigen::Index i = 0; i < pts.cols(); ++i)
      pts.col(i) << gen.uniform(0, 1000), gen.uniform(0, 1000);
    RandomStream rng(seed, 0);
    const auto km = kmeans_2d(pts, 7, rng);
    for (std::size_t i = 1; i < km.sse_history.size(); ++i)
      CHECK(km.sse_history[i] <= km.sse_history[i - 1] * (1 + 1e-12));
  }
}

TEST_CASE("initial deployment sits at the middle altitude level inside the region") {
  const auto net = random_network(20, 20, 7, 8);
  const auto& d = net.deployment();
  CHECK(d.within(net.scenario().region));
  for (int m = 0; m < d.n_uavs(); ++m)
    CHECK(d.level_of(m) == 4);
}

TEST_CASE("altitude payoff") {
  auto net = random_network(16, 16, 8, 4);
  RandomStream rng(8, 2);
  const auto assoc = slll_associate(net, net.empty_association(), rng).assoc;
  const auto powers = net.uniform_powers();
  const auto& grid = net.deployment().altitude_grid;
  for (int m = 0; m < net.n_uavs(); ++m) {
    const double here = net.deployment().uavs(2, m);
    CHECK(altitude_payoff(net, assoc, powers, m, here) == 0.0);
    const double base = recomputed_metric(net, assoc, powers, m, here);
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      const double expected = recomputed_metric(net, assoc, powers, m, grid(k)) - base;
      CHECK(altitude_payoff(net, assoc, powers, m, grid(k)) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  // A UAV with no nodes holds position.
  const auto none = net.empty_association();
  CHECK(altitude_payoff(net, none, powers, 0, grid(0)) == 0.0);
  CHECK(best_altitudes(net, none, powers, 0).empty());
}

TEST_CASE("single UAV reaches its best altitude and stops in round 2") {
  auto net = make_network(make_scenario({{400, 500, true},
                                         {450, 520, true},
                                         {700, 650, false},
                                         {100, 100, false},
                                         {520, 470, true}}),
                          {{450, 500, 20}}, 4, 100.0);
  const auto assoc = greedy_associate(net);
  const auto powers = net.uniform_powers();
  const auto& grid = net.deployment().altitude_grid;
  double best = -1e300;
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    best = std::max(best, recomputed_metric(net, assoc, powers, 0, grid(k)));
  REQUIRE(recomputed_metric(net, assoc, powers, 0, 20.0) < best);

  RandomStream rng(1, 0);
  const auto res = br_altitude(net, assoc, rng, 10);
  CHECK(res.converged);
  CHECK(res.rounds == 2);
  CHECK(res.moves == 1);
  CHECK(recomputed_metric(net, assoc, powers, 0, net.deployment().uavs(2, 0)) == best);

  // Already optimal: immediate convergence without movement.
  const auto again = br_altitude(net, assoc, rng, 10);
  CHECK(again.converged);
  CHECK(again.rounds == 1);
  CHECK(again.moves == 0);
}

TEST_CASE("two UAVs on a four-level grid end unilaterally unimprovable") {
  Region region;
  region.n_altitude_levels = 4;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto net = random_network(8, 10, seed, 4, region);
    REQUIRE(net.n_uavs() == 2);
    REQUIRE(net.deployment().altitude_grid.size() == 4);
    RandomStream rng(seed, 3);
    const auto assoc = slll_associate(net, net.empty_association(), rng).assoc;
    for (auto update : {AltitudeUpdate::Sequential, AltitudeUpdate::Simultaneous}) {
      Network n = net;
      const auto res = br_altitude(n, assoc, rng, 50, update);
      for (int m = 0; m < 2; ++m)
        CHECK(n.deployment().level_of(m) >= 0);
      if (!res.converged)
        continue;
      const auto powers = n.uniform_powers();
      CHECK(altitude_deviations(n, assoc, powers).empty());
      const auto& grid = n.deployment().altitude_grid;
      for (int m = 0; m < 2; ++m) {
        const double here = recomputed_metric(n, assoc, powers, m, n.deployment().uavs(2, m));
        for (Eigen::Index k = 0; k < grid.size(); ++k)
          CHECK(recomputed_metric(n, assoc, powers, m, grid(k)) <= here + 1e-12);
      }
    }
  }
}

TEST_CASE("best altitudes are the positive maximizers of the payoff") {
  auto net = random_network(24, 20, 12, 8);
  RandomStream rng(12, 2);
  const auto assoc = slll_associate(net, net.empty_association(), rng).assoc;
  const auto powers = net.uniform_powers();
  const auto& grid = net.deployment().altitude_grid;
  for (int m = 0; m < net.n_uavs(); ++m) {
    double gain = 0.0;
    const auto picks = best_altitudes(net, assoc, powers, m, &gain);
    double best = 0.0;
    for (Eigen::Index k = 0; k < grid.size(); ++k)
      best = std::max(best, altitude_payoff(net, assoc, powers, m, grid(k)));
    CHECK(gain == best);
    CHECK(picks.empty() == (best <= 0.0));
    for (double z : picks)
      CHECK(altitude_payoff(net, assoc, powers, m, z) == best);
  }
}

TEST_CASE("adapted greedy placement") {
  SUBCASE("counts") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto net = random_network(21, 20, seed, 4);
      RandomStream rng(seed, 4);
      const auto res = adapted_greedy_place(net, rng);
      CHECK(res.placements == net.n_uavs());
      CHECK(res.bindings == std::min(21, net.n_uavs() * 4));
      CHECK(res.assoc.satisfies_constraints());
      CHECK(res.deployment.within(net.scenario().region));
      for (int m = 0; m < res.deployment.n_uavs(); ++m)
        CHECK(res.deployment.level_of(m) >= 0);
    }
  }
  SUBCASE("one UAV with enough subchannels serves everyone from the node mean") {
    const auto net = random_network(5, 6, 3, 8);
    REQUIRE(net.n_uavs() == 1);
    RandomStream rng(3, 4);
    const auto res = adapted_greedy_place(net, rng);
    CHECK(res.assoc.n_associated() == 5);
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (int l = 0; l < 5; ++l)
      mean += net.scenario().position(net.node_of(l));
    mean /= 5.0;
    CHECK((res.deployment.uavs.col(0).head<2>() - mean).norm() < 1e-9);
  }
}
