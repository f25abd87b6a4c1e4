#include "uavsec/channel.hpp"

namespace uavsec {

void EnvParams::validate() const {
  if (!(psi > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("env: psi and omega must be positive");
  if (!(eta_los > 0.0) || !(eta_nlos >= eta_los))
    throw std::invalid_argument("env: need 0 < eta_los <= eta_nlos");
  if (!(alpha_j > 0.0))
    throw std::invalid_argument("env: alpha_j must be positive");
}

Eigen::RowVectorXd channel_gains_from(const Eigen::Vector3d& uav, const Eigen::Matrix2Xd& nodes,
                                      const EnvParams& env) {
  Eigen::RowVectorXd g(nodes.cols());
  for (Eigen::Index n = 0; n < nodes.cols(); ++n)
    g(n) = channel_gain<double>(uav, nodes.col(n), env);
  return g;
}

Eigen::MatrixXd channel_gains(const Eigen::Matrix3Xd& uavs, const Eigen::Matrix2Xd& nodes,
                              const EnvParams& env) {
  Eigen::MatrixXd g(uavs.cols(), nodes.cols());
  for (Eigen::Index m = 0; m < uavs.cols(); ++m)
    g.row(m) = channel_gains_from(uavs.col(m), nodes, env);
  return g;
}

} // namespace uavsec
