#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

#include "uavsec/network.hpp"

namespace uavsec {

/// Association metric used when no eavesdropper exists (bits).
inline constexpr double kPhiCap = 60.0;
/// Metric assigned to an unassociated node (bits); below any real metric.
inline constexpr double kUnassociatedPhi = -60.0;

/// Co-channel interference at node n (scenario index) on subchannel c, from
/// every UAV except the serving one: sum_{k != m} gamma(k, c) g(k, n).
double interference(const Eigen::MatrixXd& gains, const PowerMatrix& powers, int n, int m, int c);

/// Interference-normalized gain g(m, n) / (I + 1).
double effective_channel(const Eigen::MatrixXd& gains, const PowerMatrix& powers, int n, int m, int c);

/// Downlink SINR of legitimate node l (legitimate index) on (m, c); zero
/// unless a[l][m][c] = 1.
double sinr(const Network& net, int l, int m, int c, const AssociationArray& assoc,
            const PowerMatrix& powers);

struct EavesdropperPick {
  int node = -1;          // scenario index; -1 when there are no eavesdroppers
  double sinr = 0.0;      // gamma(m, c) * effective
  double effective = 0.0; // g(m, e*) / (I + 1)
};

/// Eavesdropper with the largest SINR on (m, c). The ranking uses the
/// effective channel, which differs from the SINR by the common factor
/// gamma(m, c), so it stays defined when that power is zero. Ties go to the
/// lowest node index.
EavesdropperPick strongest_eavesdropper(const Eigen::MatrixXd& gains, const PowerMatrix& powers,
                                        std::span<const int> eavesdroppers, int m, int c);

/// [log2((1 + gamma_l) / (1 + gamma_e))]^+ in bits/s/Hz.
double secrecy_rate(double gamma_l, double gamma_e);

/// High-SINR secrecy metric of node n on (m, c):
/// log2 of the legitimate over the strongest eavesdropper effective channel.
/// Independent of gamma(m, c). Returns kPhiCap when there are no eavesdroppers.
double phi_metric(const Eigen::MatrixXd& gains, const PowerMatrix& powers,
                  std::span<const int> eavesdroppers, int n, int m, int c);

/// phi of legitimate node l on every resource, laid out [l][flat(m, c)].
Eigen::MatrixXd phi_table(const Network& net, const PowerMatrix& powers);

struct LinkRecord {
  int l = 0;              // legitimate index
  int node = 0;           // scenario index
  bool associated = false;
  int uav = -1, subchannel = -1;
  double interference = 0.0;
  double sinr = 0.0;
  int eavesdropper = -1;  // scenario index of e*
  double eavesdropper_interference = 0.0;
  double eavesdropper_sinr = 0.0;
  double phi = kUnassociatedPhi;
  double secrecy = 0.0;
};

/// Every per-link quantity for one (association, positions, powers) state.
struct SecrecySnapshot {
  Eigen::MatrixXd gains;
  std::vector<LinkRecord> links; // one per legitimate node
};

SecrecySnapshot build_snapshot(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers);

double sum_secrecy_rate(const SecrecySnapshot& snapshot);
/// Percentage of legitimate nodes with strictly positive secrecy rate.
/// Throws EmptyInstanceError when there are no legitimate nodes.
double positive_secrecy_fraction(const SecrecySnapshot& snapshot);

/// Sum over all legitimate nodes of their current metric (unassociated
/// nodes contribute kUnassociatedPhi). This is the potential of the
/// association game.
double association_potential(const Eigen::MatrixXd& phi, const AssociationArray& assoc);

} // namespace uavsec
