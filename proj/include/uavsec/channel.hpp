#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uavsec {

/// Air-to-ground propagation constants. Defaults are the urban preset.
struct EnvParams {
  double psi = 9.61;
  double omega = 0.16;
  double eta_los = 1.0;
  double eta_nlos = 20.0;
  double alpha_j = 0.3;
  double alpha_g = 0.3; // ground exponent; no ground-to-ground link uses it

  static EnvParams urban() { return {}; }
  void validate() const;
};

class ChannelDomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

namespace detail {
inline void require_altitude(double z) {
  if (!(z > 0.0))
    throw ChannelDomainError("channel: UAV altitude must be positive");
}
} // namespace detail

/// Probability of a line-of-sight link from altitude z to a node at ground
/// distance r. The elevation angle enters the sigmoid in degrees; r = 0 is
/// straight overhead (90 degrees).
template <typename Scalar>
Scalar los_probability(Scalar z, Scalar r, const EnvParams& env) {
  detail::require_altitude(static_cast<double>(z));
  using std::atan2;
  using std::exp;
  const Scalar elevation_deg = Scalar(180) / std::numbers::pi_v<Scalar> * atan2(z, r);
  return Scalar(1) /
         (Scalar(1) + Scalar(env.psi) * exp(-Scalar(env.omega) * (elevation_deg - Scalar(env.psi))));
}

/// Mean pathloss (linear): distance term times the LoS/NLoS-weighted attenuation.
template <typename Scalar>
Scalar avg_pathloss(Scalar z, Scalar r, const EnvParams& env) {
  using std::pow;
  const Scalar p_los = los_probability(z, r, env);
  const Scalar attenuation = p_los * Scalar(env.eta_los) + (Scalar(1) - p_los) * Scalar(env.eta_nlos);
  return pow(z * z + r * r, Scalar(env.alpha_j) / Scalar(2)) * attenuation;
}

/// |h|^2 with h = 1/sqrt(pathloss).
template <typename Scalar>
Scalar channel_gain(const Eigen::Matrix<Scalar, 3, 1>& uav, const Eigen::Matrix<Scalar, 2, 1>& node,
                    const EnvParams& env) {
  const Scalar r = (uav.template head<2>() - node).norm();
  return Scalar(1) / avg_pathloss(uav.z(), r, env);
}

/// Gain matrix for every (UAV, node) pair: rows are UAVs, columns nodes.
Eigen::MatrixXd channel_gains(const Eigen::Matrix3Xd& uavs, const Eigen::Matrix2Xd& nodes,
                              const EnvParams& env);

/// Gains from one UAV position to all nodes, as a row vector.
Eigen::RowVectorXd channel_gains_from(const Eigen::Vector3d& uav, const Eigen::Matrix2Xd& nodes,
                                      const EnvParams& env);

} // namespace uavsec
