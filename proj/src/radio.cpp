#include "uavsec/radio.hpp"

#include <algorithm>
#include <cmath>

namespace uavsec {

double interference(const Eigen::MatrixXd& gains, const PowerMatrix& powers, int n, int m, int c) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < gains.rows(); ++k)
    if (k != m)
      total += powers.gamma(k, c) * gains(k, n);
  return total;
}

double effective_channel(const Eigen::MatrixXd& gains, const PowerMatrix& powers, int n, int m, int c) {
  return gains(m, n) / (interference(gains, powers, n, m, c) + 1.0);
}

double sinr(const Network& net, int l, int m, int c, const AssociationArray& assoc,
            const PowerMatrix& powers) {
  if (!assoc.at(l, m, c))
    return 0.0;
  return powers.gamma(m, c) * effective_channel(net.gains(), powers, net.node_of(l), m, c);
}

EavesdropperPick strongest_eavesdropper(const Eigen::MatrixXd& gains, const PowerMatrix& powers,
                                        std::span<const int> eavesdroppers, int m, int c) {
  EavesdropperPick best;
  double best_eff = -1.0;
  for (int e : eavesdroppers) {
    const double eff = effective_channel(gains, powers, e, m, c);
    if (eff > best_eff || (eff == best_eff && e < best.node)) {
      best_eff = eff;
      best.node = e;
    }
  }
  if (best.node >= 0) {
    best.effective = best_eff;
    best.sinr = powers.gamma(m, c) * best_eff;
  }
  return best;
}

double secrecy_rate(double gamma_l, double gamma_e) {
  return std::max(0.0, std::log2((1.0 + gamma_l) / (1.0 + gamma_e)));
}

double phi_metric(const Eigen::MatrixXd& gains, const PowerMatrix& powers,
                  std::span<const int> eavesdroppers, int n, int m, int c) {
  const auto e = strongest_eavesdropper(gains, powers, eavesdroppers, m, c);
  if (e.node < 0)
    return kPhiCap;
  const double legit = effective_channel(gains, powers, n, m, c);
  if (!(legit > 0.0) || !(e.effective > 0.0))
    throw ChannelDomainError("phi_metric: zero effective channel");
  return std::log2(legit / e.effective);
}

Eigen::MatrixXd phi_table(const Network& net, const PowerMatrix& powers) {
  const int L = net.n_legitimate();
  const int M = net.n_uavs();
  const int C = net.n_subchannels();
  const auto& eaves = net.scenario().eavesdroppers;
  Eigen::MatrixXd table(L, M * C);
  for (int m = 0; m < M; ++m)
    for (int c = 0; c < C; ++c) {
      const auto e = strongest_eavesdropper(net.gains(), powers, eaves, m, c);
      for (int l = 0; l < L; ++l) {
        if (e.node < 0) {
          table(l, m * C + c) = kPhiCap;
          continue;
        }
        const double legit = effective_channel(net.gains(), powers, net.node_of(l), m, c);
        table(l, m * C + c) = std::log2(legit / e.effective);
      }
    }
  return table;
}

SecrecySnapshot build_snapshot(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers) {
  SecrecySnapshot snap;
  snap.gains = net.gains();
  const auto& eaves = net.scenario().eavesdroppers;
  snap.links.resize(static_cast<std::size_t>(net.n_legitimate()));
  for (int l = 0; l < net.n_legitimate(); ++l) {
    LinkRecord& rec = snap.links[l];
    rec.l = l;
    rec.node = net.node_of(l);
    const auto r = assoc.resource_of(l);
    if (!r)
      continue;
    rec.associated = true;
    rec.uav = r->uav;
    rec.subchannel = r->subchannel;
    rec.interference = interference(net.gains(), powers, rec.node, r->uav, r->subchannel);
    rec.sinr = powers.gamma(r->uav, r->subchannel) * net.gains()(r->uav, rec.node) / (rec.interference + 1.0);
    const auto e = strongest_eavesdropper(net.gains(), powers, eaves, r->uav, r->subchannel);
    rec.eavesdropper = e.node;
    if (e.node >= 0) {
      rec.eavesdropper_interference = interference(net.gains(), powers, e.node, r->uav, r->subchannel);
      rec.eavesdropper_sinr = e.sinr;
      rec.phi = std::log2((net.gains()(r->uav, rec.node) / (rec.interference + 1.0)) / e.effective);
    } else {
      rec.phi = kPhiCap;
    }
    rec.secrecy = secrecy_rate(rec.sinr, rec.eavesdropper_sinr);
  }
  return snap;
}

double sum_secrecy_rate(const SecrecySnapshot& snapshot) {
  double total = 0.0;
  for (const auto& rec : snapshot.links)
    total += rec.secrecy;
  return total;
}

double positive_secrecy_fraction(const SecrecySnapshot& snapshot) {
  if (snapshot.links.empty())
    throw EmptyInstanceError("positive_secrecy_fraction: no legitimate nodes");
  const auto positive = std::count_if(snapshot.links.begin(), snapshot.links.end(),
                                      [](const LinkRecord& r) { return r.secrecy > 0.0; });
  return 100.0 * static_cast<double>(positive) / static_cast<double>(snapshot.links.size());
}

double association_potential(const Eigen::MatrixXd& phi, const AssociationArray& assoc) {
  double total = 0.0;
  for (int l = 0; l < assoc.n_legitimate(); ++l) {
    const auto r = assoc.resource_of(l);
    total += r ? phi(l, assoc.flat(*r)) : kUnassociatedPhi;
  }
  return total;
}

} // namespace uavsec
