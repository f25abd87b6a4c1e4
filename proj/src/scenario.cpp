#include "uavsec/scenario.hpp"

#include <fmt/format.h>

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace uavsec {

void Region::validate() const {
  if (!(x_min <= x_max) || !(y_min <= y_max))
    throw std::invalid_argument("region: horizontal bounds out of order");
  if (!(z_min > 0.0) || !(z_min < z_max))
    throw std::invalid_argument("region: need 0 < z_min < z_max");
  if (n_altitude_levels < 2)
    throw std::invalid_argument("region: need at least two altitude levels");
}

bool Region::contains(double x, double y) const {
  return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
}

Eigen::VectorXd Region::altitude_grid() const {
  Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(n_altitude_levels, z_min, z_max);
  // LinSpaced can round the last element; pin both endpoints.
  grid(0) = z_min;
  grid(n_altitude_levels - 1) = z_max;
  return grid;
}

Scenario::Scenario(Region region_, Eigen::Matrix2Xd nodes_, std::vector<Role> roles_, double q_)
    : region(region_), nodes(std::move(nodes_)), roles(std::move(roles_)), q(q_) {
  if (static_cast<Eigen::Index>(roles.size()) != nodes.cols())
    throw std::invalid_argument("scenario: one role per node required");
  for (int n = 0; n < static_cast<int>(roles.size()); ++n)
    (roles[n] == Role::Legitimate ? legitimate : eavesdroppers).push_back(n);
}

Eigen::Matrix2Xd sample_nodes(const Region& region, int n, RandomStream& rng) {
  if (n < 1)
    throw EmptyInstanceError("sample_nodes: at least one node required");
  Eigen::Matrix2Xd pts(2, n);
  for (int i = 0; i < n; ++i) {
    pts(0, i) = rng.uniform(region.x_min, region.x_max);
    pts(1, i) = rng.uniform(region.y_min, region.y_max);
  }
  return pts;
}

std::vector<Role> partition_roles(int n, double q, RandomStream& rng) {
  std::vector<Role> roles(static_cast<std::size_t>(n));
  for (auto& r : roles)
    r = rng.bernoulli(q) ? Role::Legitimate : Role::Eavesdropper;
  return roles;
}

int choose_uav_count(int n_legitimate, int n_subchannels) {
  if (n_subchannels < 1)
    throw std::invalid_argument("choose_uav_count: need at least one subchannel");
  if (n_legitimate < 1)
    throw EmptyInstanceError("choose_uav_count: empty legitimate set");
  return (n_legitimate + n_subchannels - 1) / n_subchannels;
}

Scenario generate_scenario(const Region& region, int n_nodes, double q, RandomStream& rng) {
  auto pts = sample_nodes(region, n_nodes, rng);
  auto roles = partition_roles(n_nodes, q, rng);
  return Scenario(region, std::move(pts), std::move(roles), q);
}

void write_scenario(std::ostream& out, const Scenario& s) {
  out << "# x y role\n";
  for (int n = 0; n < s.n_nodes(); ++n)
    out << fmt::format("{:.17g} {:.17g} {}\n", s.nodes(0, n), s.nodes(1, n),
                       s.roles[n] == Role::Legitimate ? 'L' : 'E');
}

Scenario read_scenario(std::istream& in, const Region& region, double q) {
  std::vector<double> xs, ys;
  std::vector<Role> roles;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream ls(line);
    double x, y;
    std::string role;
    if (!(ls >> x >> y >> role) || (role != "L" && role != "E"))
      throw std::runtime_error(fmt::format("scenario line {}: expected 'x y L|E'", lineno));
    xs.push_back(x);
    ys.push_back(y);
    roles.push_back(role == "L" ? Role::Legitimate : Role::Eavesdropper);
  }
  Eigen::Matrix2Xd pts(2, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    pts.col(static_cast<Eigen::Index>(i)) << xs[i], ys[i];
  return Scenario(region, std::move(pts), std::move(roles), q);
}

} // namespace uavsec
