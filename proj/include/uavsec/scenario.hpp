#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "uavsec/random.hpp"

namespace uavsec {

/// Thrown when a realization cannot be built (no nodes, no legitimate nodes).
class EmptyInstanceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Rectangular service area plus the UAV altitude band and its grid size.
struct Region {
  double x_min = 0.0, x_max = 1000.0;
  double y_min = 0.0, y_max = 1000.0;
  double z_min = 20.0, z_max = 300.0;
  int n_altitude_levels = 8;

  /// Throws std::invalid_argument unless the bounds are ordered and
  /// 0 < z_min < z_max, n_altitude_levels >= 2. Degenerate (zero-width)
  /// horizontal extents are accepted for sampling.
  void validate() const;
  bool contains(double x, double y) const;
  /// N_z evenly spaced levels spanning [z_min, z_max] inclusive.
  Eigen::VectorXd altitude_grid() const;
};

enum class Role : std::uint8_t { Legitimate, Eavesdropper };

/// Fixed ground population for one realization.
struct Scenario {
  Region region;
  Eigen::Matrix2Xd nodes;        // column n = (x, y) of node n
  std::vector<Role> roles;       // per node
  std::vector<int> legitimate;   // node indices, ascending
  std::vector<int> eavesdroppers;
  double q = 0.5;

  Scenario() = default;
  Scenario(Region region, Eigen::Matrix2Xd nodes, std::vector<Role> roles, double q);

  int n_nodes() const { return static_cast<int>(nodes.cols()); }
  int n_legitimate() const { return static_cast<int>(legitimate.size()); }
  int n_eavesdroppers() const { return static_cast<int>(eavesdroppers.size()); }
  Eigen::Vector2d position(int n) const { return nodes.col(n); }
};

Eigen::Matrix2Xd sample_nodes(const Region& region, int n, RandomStream& rng);
std::vector<Role> partition_roles(int n, double q, RandomStream& rng);

/// M = ceil(L / C), the smallest M with (M-1) C < L <= M C.
int choose_uav_count(int n_legitimate, int n_subchannels);

/// Node placement followed by role partition, both from `rng`.
Scenario generate_scenario(const Region& region, int n_nodes, double q, RandomStream& rng);

/// One node per line: "x y L|E". Lines starting with '#' are comments.
void write_scenario(std::ostream& out, const Scenario& scenario);
Scenario read_scenario(std::istream& in, const Region& region, double q = 0.5);

} // namespace uavsec
