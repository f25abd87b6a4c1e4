#pragma once

#include <Eigen/Core>

#include <vector>

#include "uavsec/network.hpp"
#include "uavsec/random.hpp"

namespace uavsec {

struct KMeansResult {
  Eigen::Matrix2Xd centroids;
  std::vector<int> membership;      // cluster of each input point
  int iterations = 0;
  bool converged = false;
  std::vector<double> sse_history;  // within-cluster SSE after each assignment step
};

/// Lloyd's algorithm seeded with k distinct data points. Stops when no
/// centroid moves more than `tolerance` meters or after max_iters. An empty
/// cluster is reseeded at the point farthest from its own centroid. With
/// k > points, the surplus centroids start on jittered copies of data points.
KMeansResult kmeans_2d(const Eigen::Matrix2Xd& points, int k, RandomStream& rng, int max_iters = 300,
                       double tolerance = 1e-6);

/// Within-cluster sum of squared distances.
double kmeans_sse(const Eigen::Matrix2Xd& points, const Eigen::Matrix2Xd& centroids,
                  const std::vector<int>& membership);

/// Initial deployment: k-means centroids of the legitimate nodes, every UAV
/// at grid level floor(N_z / 2).
Deployment initial_deployment(const Scenario& scenario, int n_uavs, RandomStream& rng, int max_iters = 300);

/// Sum of the secrecy metric over the nodes UAV m serves, with UAV m moved to
/// altitude z and everything else held fixed.
double uav_secrecy_metric(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers, int m,
                          double z);

/// Marginal gain for UAV m of moving from its current altitude to z.
/// Zero for a UAV that serves nobody.
double altitude_payoff(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers, int m,
                       double z);

struct AltitudeResult {
  int rounds = 0;  // including the final no-move round
  int moves = 0;
  bool converged = false;
};

enum class AltitudeUpdate {
  /// UAVs decide in index order and each move takes effect immediately, so
  /// later UAVs in the same round see it.
  Sequential,
  /// Every UAV decides against the round-start state; moves commit together.
  Simultaneous,
};

/// Best-response altitude game over the network's grid with uniform powers.
/// Each UAV with a positive-gain level moves to a random maximizer of its
/// marginal payoff. Mutates `net`.
AltitudeResult br_altitude(Network& net, const AssociationArray& assoc, RandomStream& rng, int max_rounds = 10,
                           AltitudeUpdate update = AltitudeUpdate::Sequential);
/// Same game with interference from an explicit power matrix.
AltitudeResult br_altitude(Network& net, const AssociationArray& assoc, const PowerMatrix& powers, RandomStream& rng,
                           int max_rounds, AltitudeUpdate update = AltitudeUpdate::Sequential);

/// Positive-gain maximizers of UAV m's payoff over the grid (empty if none),
/// with the maximal payoff.
std::vector<double> best_altitudes(const Network& net, const AssociationArray& assoc, const PowerMatrix& powers,
                                   int m, double* best_gain = nullptr);

struct AltitudeDeviation {
  int uav = 0;
  double altitude = 0.0;
  double payoff = 0.0;
};
std::vector<AltitudeDeviation> altitude_deviations(const Network& net, const AssociationArray& assoc,
                                                   const PowerMatrix& powers);

struct AdaptedGreedyResult {
  Deployment deployment;
  AssociationArray assoc;
  int placements = 0;
  int bindings = 0;
};

/// Places UAVs one at a time: UAV m goes to the centroid of the largest
/// k-means cluster of the still-unserved legitimate nodes (k = UAVs left),
/// tries every grid altitude, and keeps the altitude whose greedy fill of up
/// to C unserved nodes has the largest total metric. UAVs not yet placed do
/// not transmit while later UAVs are evaluated.
AdaptedGreedyResult adapted_greedy_place(const Network& net, RandomStream& rng, int kmeans_max_iters = 300);

} // namespace uavsec
