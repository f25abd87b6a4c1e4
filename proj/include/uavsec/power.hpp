#pragma once

#include <Eigen/Core>

#include <vector>

#include "uavsec/network.hpp"

namespace uavsec {

struct PowerConfig {
  double gamma_0 = 0.1;       // minimum SINR (linear), -10 dB
  int n_iter_pow = 3;         // interference refresh iterations
  int n_iter_bis = 50;
  double bisection_tol = 1e-6;
  void validate() const;
};

/// Per-link channel state of one UAV under frozen interference.
struct ServedLink {
  int l = 0;           // legitimate index
  int subchannel = 0;
  double legit_eff = 0.0; // g(m, l) / (I_l + 1)
  double eave_eff = 0.0;  // g(m, e*) / (I_e* + 1); 0 without eavesdroppers
  int eavesdropper = -1;
  double ratio() const;   // legit_eff / eave_eff (infinite without eavesdroppers)
};

/// Links of UAV m with interference computed from `powers` (held fixed).
std::vector<ServedLink> frozen_links(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers, int m);

/// Indices into `links` whose legitimate effective channel strictly beats the
/// strongest eavesdropper's.
std::vector<int> secrecy_eligible_set(const std::vector<ServedLink>& links);

struct QosPower {
  Eigen::VectorXd per_link; // aligned with the links
  double total = 0.0;       // P_NS
};

/// Minimum powers giving every link SINR exactly gamma_0: gamma_0 / legit_eff.
QosPower qos_power(const std::vector<ServedLink>& links, double gamma_0);

enum class BisectionStatus { Solved, NoEligibleNodes, NoBudget };

struct BisectionResult {
  Eigen::VectorXd per_link; // zero outside the eligible set
  double gamma_s = 1.0;     // secrecy target 2^{R_S} of the returned profile
  double gamma_lo = 1.0, gamma_hi = 1.0;
  int iterations = 0;
  BisectionStatus status = BisectionStatus::Solved;
};

/// Power needed by link k for secrecy ratio target gamma_s, clamped at 0.
double secrecy_power(const ServedLink& link, double gamma_s);

/// Max-min secrecy split of budget P_S over the eligible links: bisection on
/// the common target gamma_s in (1, min ratio). Returns the last profile whose
/// total does not exceed P_S.
BisectionResult secrecy_bisection(const std::vector<ServedLink>& links, const std::vector<int>& eligible,
                                  double budget, const PowerConfig& config);

/// One outer-iteration record of an allocator, for dumps and audits.
struct AllocationStep {
  int iteration = 0;
  int uav = 0;
  int subchannel = 0;
  int l = 0;
  double p_qos = 0.0;
  double p_secrecy = 0.0;
  double p_total = 0.0;
  bool fallback = false; // scaled QoS profile used
};

struct AllocationResult {
  PowerMatrix powers;
  std::vector<AllocationStep> steps;
  std::vector<bool> budget_ok; // per outer iteration
};

/// Secure allocation: QoS floor, then max-min secrecy with what is left,
/// repeated with interference refresh. Starts from uniform powers.
AllocationResult secure_allocate(const Network& net, const AssociationArray& assoc, const PowerConfig& config);

/// Equal SINR for every served node of each UAV, exhausting the budget.
AllocationResult maxmin_sinr_allocate(const Network& net, const AssociationArray& assoc, const PowerConfig& config);

/// Waterfilling per UAV over floors (I + 1) / g.
AllocationResult max_sumrate_allocate(const Network& net, const AssociationArray& assoc, const PowerConfig& config);

/// Waterfilling with total `budget` over `floors`; returns powers and the water level.
struct WaterfillResult {
  Eigen::VectorXd powers;
  double level = 0.0;
};
WaterfillResult waterfill(const Eigen::VectorXd& floors, double budget, int bisection_iters = 200);

} // namespace uavsec
