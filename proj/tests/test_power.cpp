#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "uavsec/association.hpp"
#include "uavsec/positioning.hpp"
#include "uavsec/power.hpp"
#include "uavsec/radio.hpp"

using namespace uavsec;

namespace {

ServedLink link(double legit, double eave, int l = 0, int c = 0) {
  ServedLink s;
  s.l = l;
  s.subchannel = c;
  s.legit_eff = legit;
  s.eave_eff = eave;
  s.eavesdropper = eave > 0.0 ? 1 : -1;
  return s;
}

struct Instance {
  Network net;
  AssociationArray assoc;
};

Instance seeded_instance(std::uint64_t seed, double gamma_p, int L = 30, int E = 30, int C = 8) {
  const auto s = fixtures::random_scenario(L, E, seed);
  RandomStream rng(seed, 1);
  Network net(s, EnvParams::urban(), C, gamma_p, initial_deployment(s, choose_uav_count(L, C), rng));
  RandomStream arng(seed, 2);
  auto assoc = slll_associate(net, net.empty_association(), arng).assoc;
  return {std::move(net), std::move(assoc)};
}

} // namespace

TEST_CASE("QoS power closed form") {
  // g = 0.5: I = 0 gives effective 0.5, I = 1 gives 0.25.
  const auto q = qos_power({link(0.5 / 1.0, 0.0), link(0.5 / 2.0, 0.0, 1, 1)}, 0.1);
  CHECK(q.per_link(0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(q.per_link(1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(q.total == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("QoS power meets the SINR floor exactly under frozen interference") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto [net, assoc] = seeded_instance(seed, 100.0);
    const auto frozen = net.uniform_powers();
    for (int m = 0; m < net.n_uavs(); ++m) {
      const auto links = frozen_links(net, assoc, frozen, m);
      const auto q = qos_power(links, 0.1);
      PowerMatrix p = frozen;
      for (std::size_t k = 0; k < links.size(); ++k)
        p.gamma(m, links[k].subchannel) = q.per_link(static_cast<Eigen::Index>(k));
      for (const auto& s : links)
        CHECK(std::abs(sinr(net, s.l, m, s.subchannel, assoc, p) / 0.1 - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("secrecy eligibility") {
  const std::vector<ServedLink> links{link(0.5, 0.1), link(0.2, 0.2), link(0.1, 0.3), link(0.4, 0.0)};
  CHECK(secrecy_eligible_set(links) == std::vector<int>{0, 3});
  CHECK(secrecy_eligible_set({link(0.1, 0.5), link(0.2, 0.6)}).empty());
  // Membership agrees with a positive metric.
  auto [net, assoc] = seeded_instance(3, 100.0);
  const auto uniform = net.uniform_powers();
  const Eigen::MatrixXd phi = phi_table(net, uniform);
  for (int m = 0; m < net.n_uavs(); ++m) {
    const auto fl = frozen_links(net, assoc, uniform, m);
    const auto el = secrecy_eligible_set(fl);
    for (int k = 0; k < static_cast<int>(fl.size()); ++k) {
      const bool eligible = std::find(el.begin(), el.end(), k) != el.end();
      CHECK(eligible == (phi(fl[k].l, assoc.flat(m, fl[k].subchannel)) > 0.0));
    }
  }
}

TEST_CASE("secrecy bisection: single-link analytic case") {
  const std::vector<ServedLink> links{link(0.5, 0.1)};
  const auto r = secrecy_bisection(links, {0}, 1.6, PowerConfig{});
  CHECK(r.status == BisectionStatus::Solved);
  // (g - 1) / (0.5 - 0.1 g) = 1.6  =>  g = 1.8 / 1.16.
  CHECK(r.gamma_s == doctest::Approx(1.8 / 1.16).epsilon(1e-6));
  CHECK(std::abs(r.gamma_s - 1.5517) <= 1e-3);
  CHECK(std::abs(r.per_link(0) - 1.6) <= 1e-3);
  CHECK(r.per_link(0) <= 1.6);
  CHECK(r.gamma_hi - r.gamma_lo < 1e-6);
  CHECK(r.gamma_s > 1.0);
  CHECK(r.gamma_s < 5.0);
}

TEST_CASE("secrecy bisection: limits, statuses and equalization") {
  const std::vector<ServedLink> links{link(0.5, 0.1), link(0.9, 0.3, 1, 1), link(0.2, 0.3, 2, 2)};
  const std::vector<int> eligible{0, 1};

  const auto tiny = secrecy_bisection(links, eligible, 1e-9, PowerConfig{});
  CHECK(tiny.gamma_s - 1.0 < 1e-6);
  CHECK(tiny.per_link.sum() <= 1e-9);

  CHECK(secrecy_bisection(links, {}, 1.0, PowerConfig{}).status == BisectionStatus::NoEligibleNodes);
  const auto none = secrecy_bisection(links, eligible, 0.0, PowerConfig{});
  CHECK(none.status == BisectionStatus::NoBudget);
  CHECK(none.per_link.isZero());

  for (double budget : {0.01, 0.5, 3.0, 40.0, 1e4}) {
    const auto r = secrecy_bisection(links, eligible, budget, PowerConfig{});
    CHECK(r.per_link.sum() <= budget);
    CHECK(r.per_link(2) == 0.0);
    CHECK(r.gamma_s > 1.0);
    CHECK(r.gamma_s < std::min(links[0].ratio(), links[1].ratio()));
    for (int k : eligible) {
      const double p = r.per_link(k);
      const double ratio = (1.0 + p * links[k].legit_eff) / (1.0 + p * links[k].eave_eff);
      CHECK(ratio >= r.gamma_s * (1.0 - 1e-12));
    }
  }

  // Demand grows with the target.
  double prev = 0.0;
  for (double g = 1.0; g < 2.9; g += 0.05) {
    const double d = secrecy_power(links[0], g) + secrecy_power(links[1], g);
    CHECK(d >= prev);
    prev = d;
  }

  // Without an eavesdropper the budget is still spent.
  const std::vector<ServedLink> alone{link(0.5, 0.0)};
  const auto free = secrecy_bisection(alone, {0}, 2.0, PowerConfig{});
  CHECK(free.status == BisectionStatus::Solved);
  CHECK(free.per_link(0) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("waterfilling") {
  SUBCASE("equal floors split evenly") {
    const auto w = waterfill(Eigen::VectorXd::Constant(4, 2.0), 8.0);
    for (Eigen::Index i = 0; i < 4; ++i)
      CHECK(w.powers(i) == doctest::Approx(2.0));
    CHECK(w.level == doctest::Approx(4.0));
  }
  SUBCASE("one strong channel takes a small budget") {
    Eigen::VectorXd floors(3);
    floors << 0.1, 10.0, 12.0;
    const auto w = waterfill(floors, 1.0);
    CHECK(w.powers(0) == doctest::Approx(1.0));
    CHECK(w.powers(1) == 0.0);
    CHECK(w.powers(2) == 0.0);
  }
  SUBCASE("KKT on random floors") {
    RandomStream rng(17, 0);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng.uniform_index(8));
      Eigen::VectorXd floors(n);
      for (int i = 0; i < n; ++i)
        floors(i) = std::exp(rng.uniform(-4.0, 4.0));
      const double budget = std::exp(rng.uniform(-3.0, 5.0));
      const auto w = waterfill(floors, budget);
      CHECK(w.powers.sum() <= budget * (1 + 1e-12));
      CHECK(w.powers.sum() == doctest::Approx(budget).epsilon(1e-9));
      for (int i = 0; i < n; ++i) {
        if (w.powers(i) > 0.0)
          CHECK(std::abs(w.powers(i) + floors(i) - w.level) <= 1e-6);
        else
          CHECK(floors(i) >= w.level - 1e-6);
      }
    }
  }
}

TEST_CASE("secure allocation: fallback is the scaled QoS profile") {
  // At a tiny budget every UAV is short of the QoS total.
  auto [net, assoc] = seeded_instance(4, 0.1);
  PowerConfig cfg;
  cfg.n_iter_pow = 1;
  const auto res = secure_allocate(net, assoc, cfg);
  const auto frozen = net.uniform_powers();
  for (int m = 0; m < net.n_uavs(); ++m) {
    const auto links = frozen_links(net, assoc, frozen, m);
    if (links.empty())
      continue;
    const auto q = qos_power(links, cfg.gamma_0);
    REQUIRE(q.total >= net.gamma_p());
    const Eigen::VectorXd expected = q.per_link * (net.gamma_p() / q.total);
    for (std::size_t k = 0; k < links.size(); ++k)
      CHECK(res.powers.gamma(m, links[k].subchannel) == expected(static_cast<Eigen::Index>(k)));
  }
  for (const auto& s : res.steps)
    CHECK(s.fallback);
}

TEST_CASE("secure allocation with a generous budget") {
  SUBCASE("single link") {
    auto net = fixtures::make_network(fixtures::make_scenario({{500, 500, true}, {900, 900, false}}),
                                      {{500, 500, 100}}, 1, 1e4);
    auto assoc = net.empty_association();
    assoc.assign(0, {0, 0});
    const auto res = secure_allocate(net, assoc, PowerConfig{});
    const auto snap = build_snapshot(net, assoc, res.powers);
    CHECK(snap.links[0].sinr >= 0.1);
    CHECK(snap.links[0].secrecy > 0.0);
    CHECK(res.powers.gamma(0, 0) == doctest::Approx(1e4).epsilon(1e-5));
  }
  SUBCASE("QoS floor for everyone, secrecy share for eligible nodes") {
    auto [net, assoc] = seeded_instance(6, 100.0);
    PowerConfig cfg;
    const auto res = secure_allocate(net, assoc, cfg);
    CHECK(res.powers.feasible());
    for (const auto& s : res.steps) {
      CHECK(s.p_total >= s.p_qos * (s.fallback ? 0.0 : 1.0));
      CHECK(s.p_secrecy >= 0.0);
      if (!s.fallback)
        CHECK(s.p_total == s.p_qos + s.p_secrecy);
    }
  }
}

TEST_CASE("max-min SINR allocation") {
  SUBCASE("one node gets the whole budget") {
    auto net = fixtures::make_network(fixtures::make_scenario({{500, 500, true}}), {{500, 500, 100}}, 2, 50.0);
    auto assoc = net.empty_association();
    assoc.assign(0, {0, 1});
    const auto res = maxmin_sinr_allocate(net, assoc, PowerConfig{});
    CHECK(res.powers.gamma(0, 1) == doctest::Approx(50.0));
    CHECK(res.powers.gamma(0, 0) == 0.0);
  }
  SUBCASE("two symmetric nodes split evenly") {
    auto net = fixtures::make_network(fixtures::make_scenario({{400, 500, true}, {600, 500, true}}),
                                      {{500, 500, 100}}, 2, 50.0);
    auto assoc = net.empty_association();
    assoc.assign(0, {0, 0});
    assoc.assign(1, {0, 1});
    const auto res = maxmin_sinr_allocate(net, assoc, PowerConfig{});
    CHECK(res.powers.gamma(0, 0) == doctest::Approx(25.0));
    CHECK(res.powers.gamma(0, 1) == doctest::Approx(25.0));
  }
  SUBCASE("equal SINR under frozen interference, budget exhausted") {
    auto [net, assoc] = seeded_instance(8, 100.0);
    PowerConfig cfg;
    cfg.n_iter_pow = 1;
    const auto res = maxmin_sinr_allocate(net, assoc, cfg);
    const auto frozen = net.uniform_powers();
    for (int m = 0; m < net.n_uavs(); ++m) {
      const auto links = frozen_links(net, assoc, frozen, m);
      if (links.empty())
        continue;
      const double first = res.powers.gamma(m, links[0].subchannel) * links[0].legit_eff;
      for (const auto& s : links)
        CHECK(res.powers.gamma(m, s.subchannel) * s.legit_eff == doctest::Approx(first).epsilon(1e-12));
      CHECK(std::abs(res.powers.gamma.row(m).sum() / net.gamma_p() - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("every allocator respects the budget in every outer iteration") {
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    for (double gp : {0.1, 1.0, 100.0, 1e4}) {
      auto [net, assoc] = seeded_instance(seed, gp);
      for (auto res : {secure_allocate(net, assoc, PowerConfig{}), maxmin_sinr_allocate(net, assoc, PowerConfig{}),
                       max_sumrate_allocate(net, assoc, PowerConfig{})}) {
        CHECK(res.budget_ok.size() == 3);
        for (bool ok : res.budget_ok)
          CHECK(ok);
        CHECK(res.powers.feasible());
        CHECK((res.powers.gamma.array() >= 0.0).all());
      }
    }
}
