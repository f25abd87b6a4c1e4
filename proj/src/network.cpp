#include "uavsec/network.hpp"

#include <stdexcept>

namespace uavsec {

AssociationArray::AssociationArray(int n_legitimate, int n_uavs, int n_subchannels)
    : n_uavs_(n_uavs), n_subchannels_(n_subchannels),
      resource_(static_cast<std::size_t>(n_legitimate)),
      owner_(static_cast<std::size_t>(n_uavs * n_subchannels), kFree) {
  if (n_legitimate < 0 || n_uavs < 0 || n_subchannels < 0)
    throw std::invalid_argument("association: negative dimension");
}

bool AssociationArray::at(int l, int m, int c) const {
  const auto& r = resource_[l];
  return r && r->uav == m && r->subchannel == c;
}

void AssociationArray::assign(int l, ResourceAction r) {
  if (r.uav < 0 || r.uav >= n_uavs_ || r.subchannel < 0 || r.subchannel >= n_subchannels_)
    throw std::out_of_range("association: resource index out of range");
  const int current = owner(r);
  if (current == l)
    return;
  if (current != kFree)
    throw std::logic_error("association: resource already occupied");
  release(l);
  owner_[flat(r)] = l;
  resource_[l] = r;
}

void AssociationArray::release(int l) {
  if (auto& r = resource_[l]) {
    owner_[flat(*r)] = kFree;
    r.reset();
  }
}

std::vector<int> AssociationArray::served_by(int m) const {
  std::vector<int> out;
  for (int c = 0; c < n_subchannels_; ++c)
    if (const int l = owner(m, c); l != kFree)
      out.push_back(l);
  return out;
}

int AssociationArray::n_associated() const {
  int n = 0;
  for (const auto& r : resource_)
    n += r.has_value();
  return n;
}

bool AssociationArray::satisfies_constraints() const {
  std::vector<int> per_resource(owner_.size(), 0);
  for (int l = 0; l < n_legitimate(); ++l)
    for (int m = 0; m < n_uavs_; ++m)
      for (int c = 0; c < n_subchannels_; ++c)
        per_resource[flat(m, c)] += at(l, m, c);
  for (int k : per_resource)
    if (k > 1)
      return false;
  for (int i = 0; i < static_cast<int>(owner_.size()); ++i) {
    const int l = owner_[i];
    if (l != kFree && !(resource_[l] && flat(*resource_[l]) == i))
      return false;
    if (l == kFree && per_resource[i] != 0)
      return false;
  }
  return true;
}

PowerMatrix PowerMatrix::zeros(int n_uavs, int n_subchannels, double budget) {
  return {Eigen::MatrixXd::Zero(n_uavs, n_subchannels), budget};
}

PowerMatrix PowerMatrix::uniform(int n_uavs, int n_subchannels, double budget) {
  return {Eigen::MatrixXd::Constant(n_uavs, n_subchannels, budget / n_subchannels), budget};
}

bool PowerMatrix::feasible(double rel_tol) const {
  if ((gamma.array() < 0.0).any() || !gamma.allFinite())
    return false;
  return (gamma.rowwise().sum().array() <= budget * (1.0 + rel_tol)).all();
}

int Deployment::level_of(int m) const {
  for (Eigen::Index k = 0; k < altitude_grid.size(); ++k)
    if (altitude_grid(k) == uavs(2, m))
      return static_cast<int>(k);
  return -1;
}

bool Deployment::within(const Region& region) const {
  for (int m = 0; m < n_uavs(); ++m) {
    if (!region.contains(uavs(0, m), uavs(1, m)))
      return false;
    if (uavs(2, m) < region.z_min || uavs(2, m) > region.z_max)
      return false;
  }
  return true;
}

Network::Network(Scenario scenario, EnvParams env, int n_subchannels, double gamma_p, Deployment deployment)
    : scenario_(std::move(scenario)), env_(env), n_subchannels_(n_subchannels), gamma_p_(gamma_p),
      deployment_(std::move(deployment)) {
  if (n_subchannels_ < 1)
    throw std::invalid_argument("network: need at least one subchannel");
  gains_ = channel_gains(deployment_.uavs, scenario_.nodes, env_);
}

void Network::move_uav(int m, const Eigen::Vector3d& position) {
  deployment_.uavs.col(m) = position;
  gains_.row(m) = channel_gains_from(position, scenario_.nodes, env_);
}

void Network::set_altitude(int m, double z) {
  Eigen::Vector3d p = deployment_.uavs.col(m);
  p.z() = z;
  move_uav(m, p);
}

} // namespace uavsec
