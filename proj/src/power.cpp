#include "uavsec/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "uavsec/radio.hpp"

namespace uavsec {

void PowerConfig::validate() const {
  if (!(gamma_0 > 0.0))
    throw std::invalid_argument("power: gamma_0 must be positive");
  if (n_iter_bis < 1 || n_iter_pow < 1)
    throw std::invalid_argument("power: iteration counts must be positive");
}

double ServedLink::ratio() const {
  return eave_eff > 0.0 ? legit_eff / eave_eff : std::numeric_limits<double>::infinity();
}

std::vector<ServedLink> frozen_links(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers,
                                     int m) {
  std::vector<ServedLink> links;
  const auto& eaves = net.scenario().eavesdroppers;
  for (int l : assoc.served_by(m)) {
    ServedLink s;
    s.l = l;
    s.subchannel = assoc.resource_of(l)->subchannel;
    s.legit_eff = effective_channel(net.gains(), powers, net.node_of(l), m, s.subchannel);
    const auto e = strongest_eavesdropper(net.gains(), powers, eaves, m, s.subchannel);
    s.eavesdropper = e.node;
    s.eave_eff = e.node >= 0 ? e.effective : 0.0;
    links.push_back(s);
  }
  return links;
}

std::vector<int> secrecy_eligible_set(const std::vector<ServedLink>& links) {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(links.size()); ++k)
    if (links[k].legit_eff > links[k].eave_eff)
      out.push_back(k);
  return out;
}

QosPower qos_power(const std::vector<ServedLink>& links, double gamma_0) {
  QosPower q;
  q.per_link.resize(static_cast<Eigen::Index>(links.size()));
  for (std::size_t k = 0; k < links.size(); ++k)
    q.per_link(static_cast<Eigen::Index>(k)) = gamma_0 / links[k].legit_eff;
  q.total = q.per_link.sum();
  return q;
}

double secrecy_power(const ServedLink& link, double gamma_s) {
  const double denom = link.legit_eff - gamma_s * link.eave_eff;
  if (!(denom > 0.0))
    return std::numeric_limits<double>::infinity();
  return std::max(0.0, (gamma_s - 1.0) / denom);
}

BisectionResult secrecy_bisection(const std::vector<ServedLink>& links, const std::vector<int>& eligible,
                                  double budget, const PowerConfig& config) {
  BisectionResult out;
  out.per_link = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(links.size()));
  if (eligible.empty()) {
    out.status = BisectionStatus::NoEligibleNodes;
    return out;
  }
  if (!(budget > 0.0)) {
    out.status = BisectionStatus::NoBudget;
    return out;
  }

  auto demand = [&](double gamma_s) {
    double total = 0.0;
    for (int k : eligible)
      total += secrecy_power(links[k], gamma_s);
    return total;
  };

  double hi = std::numeric_limits<double>::infinity();
  double best_eff = 0.0;
  for (int k : eligible) {
    hi = std::min(hi, links[k].ratio());
    best_eff = std::max(best_eff, links[k].legit_eff);
  }
  if (std::isinf(hi)) {
    // No eavesdropper: one link alone at this target already spends the budget.
    hi = 1.0 + budget * best_eff;
  } else {
    // Keep the upper end strictly inside the interval, away from the pole.
    hi = 1.0 + (hi - 1.0) * (1.0 - 1e-9);
  }
  double lo = 1.0;

  for (int it = 0; it < config.n_iter_bis; ++it) {
    if (hi - lo < config.bisection_tol)
      break;
    const double mid = 0.5 * (lo + hi);
    const double total = demand(mid);
    ++out.iterations;
    if (total > budget) {
      hi = mid;
    } else if (total < budget) {
      lo = mid;
    } else {
      lo = hi = mid;
      break;
    }
  }
  out.gamma_lo = lo;
  out.gamma_hi = hi;
  out.gamma_s = lo;
  for (int k : eligible)
    out.per_link(k) = secrecy_power(links[k], lo);
  return out;
}

namespace {

// Interference refresh loop shared by all allocators: `solve` fills row m of
// `next` given the links frozen under `current`.
template <typename Solve>
AllocationResult iterate_allocation(const Network& net, const AssociationArray& assoc, const PowerConfig& config,
                                    Solve&& solve) {
  AllocationResult out;
  PowerMatrix current = net.uniform_powers();
  for (int it = 1; it <= config.n_iter_pow; ++it) {
    PowerMatrix next = PowerMatrix::zeros(net.n_uavs(), net.n_subchannels(), net.gamma_p());
    for (int m = 0; m < net.n_uavs(); ++m) {
      const auto links = frozen_links(net, assoc, current, m);
      if (links.empty())
        continue;
      solve(it, m, links, next, out.steps);
    }
    out.budget_ok.push_back(next.feasible());
    current = std::move(next);
  }
  out.powers = std::move(current);
  return out;
}

} // namespace

AllocationResult secure_allocate(const Network& net, const AssociationArray& assoc, const PowerConfig& config) {
  config.validate();
  const double budget = net.gamma_p();
  return iterate_allocation(net, assoc, config,
                            [&](int it, int m, const std::vector<ServedLink>& links, PowerMatrix& next,
                                std::vector<AllocationStep>& steps) {
    const auto eligible = secrecy_eligible_set(links);
    const auto qos = qos_power(links, config.gamma_0);
    const bool fallback = qos.total >= budget || eligible.empty();
    Eigen::VectorXd p_b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(links.size()));
    Eigen::VectorXd p;
    if (fallback) {
      p = qos.per_link * (budget / qos.total);
    } else {
      p_b = secrecy_bisection(links, eligible, budget - qos.total, config).per_link;
      p = qos.per_link + p_b;
    }
    for (std::size_t k = 0; k < links.size(); ++k) {
      const auto i = static_cast<Eigen::Index>(k);
      next.gamma(m, links[k].subchannel) = p(i);
      steps.push_back({it, m, links[k].subchannel, links[k].l, qos.per_link(i), p_b(i), p(i), fallback});
    }
  });
}

AllocationResult maxmin_sinr_allocate(const Network& net, const AssociationArray& assoc, const PowerConfig& config) {
  config.validate();
  const double budget = net.gamma_p();
  return iterate_allocation(net, assoc, config,
                            [&](int it, int m, const std::vector<ServedLink>& links, PowerMatrix& next,
                                std::vector<AllocationStep>& steps) {
    double inverse_sum = 0.0;
    for (const auto& s : links)
      inverse_sum += 1.0 / s.legit_eff;
    const double common = budget / inverse_sum;
    for (const auto& s : links) {
      const double p = common / s.legit_eff;
      next.gamma(m, s.subchannel) = p;
      steps.push_back({it, m, s.subchannel, s.l, p, 0.0, p, false});
    }
  });
}

WaterfillResult waterfill(const Eigen::VectorXd& floors, double budget, int bisection_iters) {
  WaterfillResult out;
  out.powers = Eigen::VectorXd::Zero(floors.size());
  if (floors.size() == 0 || !(budget > 0.0))
    return out;
  auto spent = [&](double level) { return (level - floors.array()).max(0.0).sum(); };
  double lo = floors.minCoeff();
  double hi = lo + budget;
  for (int i = 0; i < bisection_iters && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    (spent(mid) > budget ? hi : lo) = mid;
  }
  // Close the level exactly on the active set the bisection identified.
  double level = 0.5 * (lo + hi);
  for (int pass = 0; pass < 3; ++pass) {
    double floor_sum = 0.0;
    int active = 0;
    for (Eigen::Index c = 0; c < floors.size(); ++c)
      if (floors(c) < level) {
        floor_sum += floors(c);
        ++active;
      }
    if (active == 0)
      break;
    level = (budget + floor_sum) / active;
  }
  out.level = level;
  out.powers = (level - floors.array()).max(0.0).matrix();
  // Guard the budget against rounding in the final sum.
  const double total = out.powers.sum();
  if (total > budget)
    out.powers *= budget / total;
  return out;
}

AllocationResult max_sumrate_allocate(const Network& net, const AssociationArray& assoc, const PowerConfig& config) {
  config.validate();
  const double budget = net.gamma_p();
  return iterate_allocation(net, assoc, config,
                            [&](int it, int m, const std::vector<ServedLink>& links, PowerMatrix& next,
                                std::vector<AllocationStep>& steps) {
    Eigen::VectorXd floors(static_cast<Eigen::Index>(links.size()));
    for (std::size_t k = 0; k < links.size(); ++k)
      floors(static_cast<Eigen::Index>(k)) = 1.0 / links[k].legit_eff;
    const auto wf = waterfill(floors, budget);
    for (std::size_t k = 0; k < links.size(); ++k) {
      const double p = wf.powers(static_cast<Eigen::Index>(k));
      next.gamma(m, links[k].subchannel) = p;
      steps.push_back({it, m, links[k].subchannel, links[k].l, 0.0, 0.0, p, false});
    }
  });
}

} // namespace uavsec
