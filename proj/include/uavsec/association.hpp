#pragma once

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

#include "uavsec/network.hpp"
#include "uavsec/random.hpp"

namespace uavsec {

/// A node's bid for a free resource in one round.
struct Proposal {
  int node = 0; // legitimate index
  ResourceAction action;
  double payoff = 0.0; // marginal payoff, always > 0
};

/// One row of the round-by-round association trace.
struct AssociationTraceRow {
  int round = 0;
  int node = 0;
  ResourceAction action;
  double payoff = 0.0;
  bool winner = false;
};

struct AssociationResult {
  AssociationArray assoc;
  int rounds = 0;        // rounds executed, including the final no-move round
  int moves = 0;         // executed reassignments
  bool converged = false;
  std::vector<double> potential; // initial potential, then one entry per executed round
};

/// Gain of node l for moving to `candidate` relative to its current
/// resource. An unassociated node's current metric is kUnassociatedPhi.
double marginal_payoff(const Eigen::MatrixXd& phi, const AssociationArray& assoc, int l,
                       ResourceAction candidate);

/// Smooth best response: softmax of the payoffs (unit temperature), computed
/// with max-subtraction. Returns an empty vector for empty input.
std::vector<double> sbr_distribution(std::span<const double> payoffs);

enum class ActionRule { SmoothBestResponse, BestResponse };

struct GameOptions {
  int max_rounds = 10;
  ActionRule rule = ActionRule::SmoothBestResponse;
  std::vector<AssociationTraceRow>* trace = nullptr;
};

/// Synchronous association game on a fixed metric table `phi` ([l][flat(m,c)]).
/// Each round every node draws one action among free resources with positive
/// marginal payoff; per resource the highest-payoff contender wins (random
/// tie-break) and releases its previous resource. Stops when no node has a
/// profitable free resource or after max_rounds.
AssociationResult play_association_game(const Eigen::MatrixXd& phi, AssociationArray start,
                                        RandomStream& rng, const GameOptions& options);

/// Synchronous log-linear learning on the uniform-power metric table.
AssociationResult slll_associate(const Network& net, const AssociationArray& start, RandomStream& rng,
                                 int max_rounds = 10, std::vector<AssociationTraceRow>* trace = nullptr);

/// Same protocol as slll_associate, with deterministic argmax actions
/// (lowest resource index on ties).
AssociationResult best_response_associate(const Network& net, const AssociationArray& start,
                                          RandomStream& rng, int max_rounds = 10,
                                          std::vector<AssociationTraceRow>* trace = nullptr);

/// Repeatedly binds the (unassociated node, free resource) pair with the
/// largest metric until every node is served or resources run out.
/// Ties go to the lowest (node, resource) pair.
AssociationArray greedy_associate(const Eigen::MatrixXd& phi, AssociationArray start);
AssociationArray greedy_associate(const Network& net);

/// Nodes that still have a free resource with positive marginal payoff.
struct Deviation {
  int node = 0;
  ResourceAction action;
  double payoff = 0.0;
};
std::vector<Deviation> profitable_deviations(const Eigen::MatrixXd& phi, const AssociationArray& assoc);

} // namespace uavsec
