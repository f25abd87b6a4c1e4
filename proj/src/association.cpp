#include "uavsec/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavsec/radio.hpp"

namespace uavsec {

double marginal_payoff(const Eigen::MatrixXd& phi, const AssociationArray& assoc, int l,
                       ResourceAction candidate) {
  const auto current = assoc.resource_of(l);
  const double now = current ? phi(l, assoc.flat(*current)) : kUnassociatedPhi;
  return phi(l, assoc.flat(candidate)) - now;
}

std::vector<double> sbr_distribution(std::span<const double> payoffs) {
  if (payoffs.empty())
    return {};
  const double top = *std::max_element(payoffs.begin(), payoffs.end());
  std::vector<double> p(payoffs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    p[i] = std::exp(payoffs[i] - top);
    total += p[i];
  }
  for (double& v : p)
    v /= total;
  return p;
}

namespace {

// Free resources with positive marginal payoff for node l, in flat order.
void available_actions(const Eigen::MatrixXd& phi, const AssociationArray& assoc, int l,
                       std::vector<int>& actions, std::vector<double>& payoffs) {
  actions.clear();
  payoffs.clear();
  for (int k = 0; k < assoc.n_resources(); ++k) {
    const ResourceAction r = assoc.resource_at(k);
    if (!assoc.is_free(r))
      continue;
    const double f = marginal_payoff(phi, assoc, l, r);
    if (f > 0.0) {
      actions.push_back(k);
      payoffs.push_back(f);
    }
  }
}

} // namespace

AssociationResult play_association_game(const Eigen::MatrixXd& phi, AssociationArray start,
                                        RandomStream& rng, const GameOptions& options) {
  AssociationResult out;
  out.assoc = std::move(start);
  AssociationArray& a = out.assoc;
  out.potential.push_back(association_potential(phi, a));

  const int L = a.n_legitimate();
  std::vector<int> actions;
  std::vector<double> payoffs;
  std::vector<std::optional<Proposal>> proposals(static_cast<std::size_t>(L));
  std::vector<std::vector<int>> contenders(static_cast<std::size_t>(a.n_resources()));

  for (int round = 1; round <= options.max_rounds; ++round) {
    out.rounds = round;
    bool any = false;
    // Decision phase: every node reads the round-start state.
    for (int l = 0; l < L; ++l) {
      proposals[l].reset();
      available_actions(phi, a, l, actions, payoffs);
      if (actions.empty())
        continue;
      std::size_t pick = 0;
      if (options.rule == ActionRule::SmoothBestResponse) {
        const auto dist = sbr_distribution(payoffs);
        pick = rng.categorical(dist);
      } else {
        pick = static_cast<std::size_t>(std::max_element(payoffs.begin(), payoffs.end()) - payoffs.begin());
      }
      proposals[l] = Proposal{l, a.resource_at(actions[pick]), payoffs[pick]};
      any = true;
    }
    if (!any) {
      out.converged = true;
      out.potential.push_back(out.potential.back());
      break;
    }

    // Conflict resolution at each resource, after the barrier.
    for (auto& c : contenders)
      c.clear();
    for (int l = 0; l < L; ++l)
      if (proposals[l])
        contenders[a.flat(proposals[l]->action)].push_back(l);

    std::vector<int> winners;
    for (int k = 0; k < a.n_resources(); ++k) {
      const auto& bidders = contenders[k];
      if (bidders.empty())
        continue;
      double best = -std::numeric_limits<double>::infinity();
      for (int l : bidders)
        best = std::max(best, proposals[l]->payoff);
      std::vector<int> top;
      for (int l : bidders)
        if (proposals[l]->payoff == best)
          top.push_back(l);
      const int winner = top.size() == 1 ? top.front()
                                         : top[static_cast<std::size_t>(rng.uniform_index(top.size()))];
      winners.push_back(winner);
      if (options.trace)
        for (int l : bidders)
          options.trace->push_back({round, l, proposals[l]->action, proposals[l]->payoff, l == winner});
    }
    // Winners release first, so a resource freed this round is only
    // advertised from the next round on (it cannot have been bid for).
    for (int l : winners)
      a.release(l);
    for (int l : winners)
      a.assign(l, proposals[l]->action);
    out.moves += static_cast<int>(winners.size());
    out.potential.push_back(association_potential(phi, a));
  }
  return out;
}

AssociationResult slll_associate(const Network& net, const AssociationArray& start, RandomStream& rng,
                                 int max_rounds, std::vector<AssociationTraceRow>* trace) {
  const Eigen::MatrixXd phi = phi_table(net, net.uniform_powers());
  return play_association_game(phi, start, rng, {max_rounds, ActionRule::SmoothBestResponse, trace});
}

AssociationResult best_response_associate(const Network& net, const AssociationArray& start,
                                          RandomStream& rng, int max_rounds,
                                          std::vector<AssociationTraceRow>* trace) {
  const Eigen::MatrixXd phi = phi_table(net, net.uniform_powers());
  return play_association_game(phi, start, rng, {max_rounds, ActionRule::BestResponse, trace});
}

AssociationArray greedy_associate(const Eigen::MatrixXd& phi, AssociationArray a) {
  const int L = a.n_legitimate();
  while (true) {
    int best_l = -1, best_k = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < L; ++l) {
      if (a.resource_of(l))
        continue;
      for (int k = 0; k < a.n_resources(); ++k)
        if (a.is_free(a.resource_at(k)) && phi(l, k) > best) {
          best = phi(l, k);
          best_l = l;
          best_k = k;
        }
    }
    if (best_l < 0)
      break;
    a.assign(best_l, a.resource_at(best_k));
  }
  return a;
}

AssociationArray greedy_associate(const Network& net) {
  return greedy_associate(phi_table(net, net.uniform_powers()), net.empty_association());
}

std::vector<Deviation> profitable_deviations(const Eigen::MatrixXd& phi, const AssociationArray& assoc) {
  std::vector<Deviation> out;
  for (int l = 0; l < assoc.n_legitimate(); ++l)
    for (int k = 0; k < assoc.n_resources(); ++k) {
      const ResourceAction r = assoc.resource_at(k);
      if (!assoc.is_free(r))
        continue;
      const double f = marginal_payoff(phi, assoc, l, r);
      if (f > 0.0)
        out.push_back({l, r, f});
    }
  return out;
}

} // namespace uavsec
