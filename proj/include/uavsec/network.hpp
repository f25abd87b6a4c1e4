#pragma once

#include <Eigen/Core>

#include <compare>
#include <optional>
#include <vector>

#include "uavsec/channel.hpp"
#include "uavsec/scenario.hpp"

namespace uavsec {

/// A subchannel c of UAV m; the action of a legitimate node.
struct ResourceAction {
  int uav = 0;
  int subchannel = 0;
  auto operator<=>(const ResourceAction&) const = default;
};

/// Binary association a[l][m][c], stored as the per-node resource plus the
/// per-resource owner so that both one-node-per-subchannel and
/// one-subchannel-per-node hold by construction. `l` indexes the legitimate
/// set (0..L-1), not the scenario's node list.
class AssociationArray {
public:
  static constexpr int kFree = -1;

  AssociationArray() = default;
  AssociationArray(int n_legitimate, int n_uavs, int n_subchannels);

  int n_legitimate() const { return static_cast<int>(resource_.size()); }
  int n_uavs() const { return n_uavs_; }
  int n_subchannels() const { return n_subchannels_; }
  int n_resources() const { return n_uavs_ * n_subchannels_; }

  bool at(int l, int m, int c) const;
  std::optional<ResourceAction> resource_of(int l) const { return resource_[l]; }
  int owner(int m, int c) const { return owner_[flat(m, c)]; }
  int owner(ResourceAction r) const { return owner(r.uav, r.subchannel); }
  bool is_free(ResourceAction r) const { return owner(r) == kFree; }

  /// Moves node l onto r, releasing whatever l held. Throws if another node owns r.
  void assign(int l, ResourceAction r);
  void release(int l);

  /// Legitimate indices served by UAV m, ordered by subchannel.
  std::vector<int> served_by(int m) const;
  int n_associated() const;
  /// Recounts both sum constraints from scratch.
  bool satisfies_constraints() const;

  ResourceAction resource_at(int flat_index) const {
    return {flat_index / n_subchannels_, flat_index % n_subchannels_};
  }
  int flat(int m, int c) const { return m * n_subchannels_ + c; }
  int flat(ResourceAction r) const { return flat(r.uav, r.subchannel); }

  bool operator==(const AssociationArray&) const = default;

private:
  int n_uavs_ = 0;
  int n_subchannels_ = 0;
  std::vector<std::optional<ResourceAction>> resource_;
  std::vector<int> owner_;
};

/// Transmit SNR per (UAV, subchannel), noise-normalized, with the per-UAV budget.
struct PowerMatrix {
  Eigen::MatrixXd gamma; // M x C
  double budget = 0.0;

  static PowerMatrix zeros(int n_uavs, int n_subchannels, double budget);
  /// budget / C on every subchannel of every UAV.
  static PowerMatrix uniform(int n_uavs, int n_subchannels, double budget);

  int n_uavs() const { return static_cast<int>(gamma.rows()); }
  int n_subchannels() const { return static_cast<int>(gamma.cols()); }
  /// Nonnegative and sum_c gamma(m, c) <= budget (1 + rel_tol) for every m.
  bool feasible(double rel_tol = 1e-9) const;
};

/// UAV positions plus the discrete altitude grid.
struct Deployment {
  Eigen::Matrix3Xd uavs;          // column m = (x, y, z)
  Eigen::VectorXd altitude_grid;

  int n_uavs() const { return static_cast<int>(uavs.cols()); }
  /// Index of UAV m's altitude on the grid, or -1 if it is off-grid.
  int level_of(int m) const;
  bool within(const Region& region) const;
};

/// Complete geometric state of one realization: ground nodes, UAVs, and the
/// gain matrix kept in sync with the deployment.
class Network {
public:
  Network(Scenario scenario, EnvParams env, int n_subchannels, double gamma_p, Deployment deployment);

  const Scenario& scenario() const { return scenario_; }
  const EnvParams& env() const { return env_; }
  const Deployment& deployment() const { return deployment_; }
  /// M x N gains, all nodes (legitimate and eavesdroppers).
  const Eigen::MatrixXd& gains() const { return gains_; }

  int n_uavs() const { return deployment_.n_uavs(); }
  int n_subchannels() const { return n_subchannels_; }
  int n_legitimate() const { return scenario_.n_legitimate(); }
  double gamma_p() const { return gamma_p_; }

  /// Scenario node index of legitimate node l.
  int node_of(int l) const { return scenario_.legitimate[l]; }

  void move_uav(int m, const Eigen::Vector3d& position);
  void set_altitude(int m, double z);

  AssociationArray empty_association() const {
    return AssociationArray(n_legitimate(), n_uavs(), n_subchannels_);
  }
  PowerMatrix uniform_powers() const { return PowerMatrix::uniform(n_uavs(), n_subchannels_, gamma_p_); }

private:
  Scenario scenario_;
  EnvParams env_;
  int n_subchannels_;
  double gamma_p_;
  Deployment deployment_;
  Eigen::MatrixXd gains_;
};

} // namespace uavsec
