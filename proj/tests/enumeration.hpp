#pragma once

// Exhaustive oracles for small association games, independent of the game
// implementation.

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "uavsec/network.hpp"
#include "uavsec/radio.hpp"

namespace enumeration {

using namespace uavsec;

// Every injective partial assignment of L nodes to R resources, as the
// per-node resource index (-1 = none).
inline std::vector<std::vector<int>> all_assignments(int L, int R) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(L), -1);
  std::vector<bool> used(static_cast<std::size_t>(R), false);
  std::function<void(int)> rec = [&](int l) {
    if (l == L) {
      out.push_back(cur);
      return;
    }
    cur[l] = -1;
    rec(l + 1);
    for (int r = 0; r < R; ++r)
      if (!used[r]) {
        used[r] = true;
        cur[l] = r;
        rec(l + 1);
        used[r] = false;
      }
    cur[l] = -1;
  };
  rec(0);
  return out;
}

inline double metric(const Eigen::MatrixXd& phi, const std::vector<int>& a, int l) {
  return a[l] < 0 ? kUnassociatedPhi : phi(l, a[l]);
}

// Pure equilibria of the association game, found by enumeration: no node
// has a free resource with a strictly larger metric than its own.
inline std::set<std::vector<int>> pure_equilibria(const Eigen::MatrixXd& phi) {
  const int L = static_cast<int>(phi.rows()), R = static_cast<int>(phi.cols());
  std::set<std::vector<int>> ne;
  for (const auto& a : all_assignments(L, R)) {
    std::vector<bool> taken(static_cast<std::size_t>(R), false);
    for (int r : a)
      if (r >= 0)
        taken[r] = true;
    bool stable = true;
    for (int l = 0; l < L && stable; ++l)
      for (int r = 0; r < R && stable; ++r)
        if (!taken[r] && phi(l, r) > metric(phi, a, l))
          stable = false;
    if (stable)
      ne.insert(a);
  }
  return ne;
}

inline double optimum(const Eigen::MatrixXd& phi) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : all_assignments(static_cast<int>(phi.rows()), static_cast<int>(phi.cols()))) {
    double f = 0.0;
    for (int l = 0; l < static_cast<int>(a.size()); ++l)
      f += metric(phi, a, l);
    best = std::max(best, f);
  }
  return best;
}

inline std::vector<int> as_vector(const AssociationArray& a) {
  std::vector<int> v;
  for (int l = 0; l < a.n_legitimate(); ++l) {
    const auto r = a.resource_of(l);
    v.push_back(r ? a.flat(*r) : -1);
  }
  return v;
}

} // namespace enumeration
