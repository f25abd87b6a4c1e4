#pragma once

#include <initializer_list>
#include <utility>

#include "uavsec/harness.hpp"
#include "uavsec/network.hpp"

namespace fixtures {

using namespace uavsec;

struct Node {
  double x, y;
  bool legit;
};

inline Scenario make_scenario(std::initializer_list<Node> nodes) {
  Eigen::Matrix2Xd pts(2, static_cast<Eigen::Index>(nodes.size()));
  std::vector<Role> roles;
  Eigen::Index i = 0;
  for (const auto& n : nodes) {
    pts.col(i++) << n.x, n.y;
    roles.push_back(n.legit ? Role::Legitimate : Role::Eavesdropper);
  }
  return Scenario(Region{}, std::move(pts), std::move(roles), 0.5);
}

inline Deployment make_deployment(std::initializer_list<Eigen::Vector3d> uavs, const Region& region = {}) {
  Deployment d;
  d.altitude_grid = region.altitude_grid();
  d.uavs.resize(3, static_cast<Eigen::Index>(uavs.size()));
  Eigen::Index i = 0;
  for (const auto& u : uavs)
    d.uavs.col(i++) = u;
  return d;
}

/// Network with a hand-set gain matrix is not possible (gains follow the
/// geometry), so tests pick positions and read the gains back.
inline Network make_network(Scenario s, std::initializer_list<Eigen::Vector3d> uavs, int c, double gamma_p) {
  return Network(std::move(s), EnvParams::urban(), c, gamma_p, make_deployment(uavs));
}

/// Random Table-like instance with exactly `L` legitimate and `E` eavesdroppers.
inline Scenario random_scenario(int L, int E, std::uint64_t seed, double side = 1000.0) {
  RandomStream rng(seed, 0xF1);
  Region region;
  region.x_max = region.y_max = side;
  const auto pts = sample_nodes(region, L + E, rng);
  std::vector<Role> roles(static_cast<std::size_t>(L + E), Role::Eavesdropper);
  for (int i = 0; i < L; ++i)
    roles[static_cast<std::size_t>(i)] = Role::Legitimate;
  return Scenario(region, pts, roles, 0.5);
}

} // namespace fixtures
