//------------------------------------------------------------------------------
//
//   Copyright 2026 The netauction authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "netauction/fixtures.hpp"
#include "netauction/verification.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace netauction;
using namespace netauction::verification;
using mechanisms::Mechanism;
using model::AgentId;
using model::EconomicNetwork;

namespace {

const Mechanism kAll[] = {Mechanism::vickrey, Mechanism::vcg, Mechanism::idm_tc,
                          Mechanism::csm};

const DeviationReport &report_for(const IncentiveAudit &audit, const AgentId &agent)
{
  auto it = std::find_if(audit.reports.begin(), audit.reports.end(),
                         [&](const DeviationReport &r) { return r.agent == agent; });
  REQUIRE(it != audit.reports.end());
  return *it;
}

}  // namespace

TEST_CASE("bid grids cover every pivotal value")
{
  EconomicNetwork net  = fixtures::tree_market();
  auto            grid = build_bid_grid(net, "H", Rational(1, 8));

  std::set<Rational> values(grid.begin(), grid.end());
  CHECK(values.size() == grid.size());  // distinct and sorted
  CHECK(std::is_sorted(grid.begin(), grid.end()));

  // Zero, the true bid, every rival bid.
  for (int v : {0, 10, 5, 7, 14, 9, 2, 1})
  {
    CHECK(values.count(Rational(v)) == 1);
  }
  // Chain cost 1 and best-rival-plus-cost 9, straddled by the resolution.
  CHECK(values.count(Rational(7, 8)) == 1);
  CHECK(values.count(Rational(9, 8)) == 1);
  CHECK(values.count(Rational(71, 8)) == 1);
  CHECK(values.count(Rational(73, 8)) == 1);
  CHECK(values.size() == 12);
}

TEST_CASE("deviation enumeration spans the whole strategy space")
{
  EconomicNetwork net = fixtures::bridged_market();

  auto for_e = enumerate_deviations(net, "E", {});
  CHECK(for_e.size() == 5);  // 4 share subsets + withdrawal

  auto for_a = enumerate_deviations(net, "A", {});
  CHECK(for_a.size() == 9);  // 8 share subsets + withdrawal
  bool has_cd = std::any_of(for_a.begin(), for_a.end(), [](const DeviationSpec &s) {
    const auto *share = std::get_if<AltShare>(&s.deviation);
    return share != nullptr && share->shared == std::set<AgentId>{"C", "D"};
  });
  CHECK(has_cd);

  auto grid  = build_bid_grid(net, "H", Rational(1, 8));
  auto for_h = enumerate_deviations(net, "H", grid);
  CHECK(for_h.size() == grid.size() + 1);
}

TEST_CASE("oversized share spaces are refused")
{
  EconomicNetwork net;
  std::set<AgentId> flock;
  for (int i = 0; i < 21; ++i)
  {
    AgentId id = "B" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    net.add_buyer(id, 1);
    flock.insert(id);
  }
  net.add_intermediary("I0", 0, flock);
  net.seller_neighbours = {"I0"};

  CHECK_THROWS_AS(enumerate_deviations(net, "I0", {}), SubsetExplosion);
}

TEST_CASE("deviations overwrite only the deviating agent's report")
{
  EconomicNetwork net  = fixtures::tree_market();
  auto            base = model::truthful_profile(net);

  auto bid = with_deviation(base, {"H", AltBid{Rational(3)}});
  CHECK(std::get<model::BidReport>(bid.report_for("H")).bid == Rational(3));
  CHECK(std::get<model::BidReport>(bid.report_for("G")).bid == Rational(9));

  auto share = with_deviation(base, {"A", AltShare{{"C"}}});
  CHECK(std::get<model::ShareReport>(share.report_for("A")).shared ==
        std::set<AgentId>{"C"});

  auto gone = with_deviation(base, {"E", Withdraw{}});
  CHECK(gone.is_nil("E"));
}

TEST_CASE("the sharing mechanism survives a full strategic sweep of the fixtures")
{
  for (const auto &net : {fixtures::tree_market(), fixtures::general_market(),
                          fixtures::bridged_market(), fixtures::line_market(),
                          fixtures::diamond_market(), fixtures::direct_buyers_market()})
  {
    auto audit = check_incentives(net, Mechanism::csm);
    CHECK(audit.ic_violations == 0);
    CHECK(audit.ir_violations == 0);
    CHECK(audit.wbb_violations == 0);
    CHECK_FALSE(audit.truthful_tie);
  }
}

TEST_CASE("the bridged fixture breaks the diffusion mechanism for exactly one unit")
{
  auto audit = check_incentives(fixtures::bridged_market(), Mechanism::idm_tc);
  CHECK(audit.ic_violations >= 1);

  const auto &rep = report_for(audit, "A");
  CHECK(rep.property_violated == Property::ic);
  CHECK(rep.truthful_utility == Rational(0));
  CHECK(rep.best_deviation_utility == Rational(1));
  CHECK(rep.best_deviation_utility - rep.truthful_utility == Rational(1));
  REQUIRE(rep.best_deviation.has_value());
  const auto *share = std::get_if<AltShare>(&rep.best_deviation->deviation);
  REQUIRE(share != nullptr);
  CHECK(share->shared == std::set<AgentId>{"C", "D"});
}

TEST_CASE("the diffusion mechanism is clean on tree fixtures")
{
  for (const auto &net :
       {fixtures::tree_market(), fixtures::line_market(), fixtures::direct_buyers_market()})
  {
    auto audit = check_incentives(net, Mechanism::idm_tc);
    CHECK(audit.ic_violations == 0);
    CHECK(audit.ir_violations == 0);
    CHECK(audit.wbb_violations == 0);
  }
}

TEST_CASE("externality pricing leaks money but not incentives on the line fixture")
{
  auto audit = check_incentives(fixtures::line_market(), Mechanism::vcg);
  CHECK(audit.ic_violations == 0);
  CHECK(audit.ir_violations == 0);
  CHECK(audit.wbb_violations >= 1);
  CHECK(report_for(audit, "M").property_violated == Property::wbb);
}

TEST_CASE("exact ties park the instance instead of overclaiming")
{
  EconomicNetwork net = fixtures::direct_buyers_market();
  net.agents["X"].bid = 3;

  auto audit = check_incentives(net, Mechanism::csm);
  CHECK(audit.truthful_tie);
  CHECK(audit.ties_skipped == 1);
  CHECK(audit.reports.empty());
  CHECK(audit.ic_violations == 0);
}

TEST_CASE("a no-trade market is still quiet under the sweep")
{
  EconomicNetwork net;
  net.seller_neighbours = {"M"};
  net.add_intermediary("M", 2, {"T"});
  net.add_buyer("T", 1);

  auto audit = check_incentives(net, Mechanism::csm);
  CHECK(audit.truthful_no_trade);
  CHECK(audit.ic_violations == 0);
  CHECK(audit.ir_violations == 0);
  CHECK(audit.wbb_violations == 0);
}

TEST_CASE("the ic flag is set exactly when a deviation strictly wins")
{
  for (const auto &net : {fixtures::tree_market(), fixtures::bridged_market(),
                          fixtures::line_market(), fixtures::diamond_market()})
  {
    for (Mechanism m : kAll)
    {
      auto audit = check_incentives(net, m);
      for (const auto &rep : audit.reports)
      {
        CHECK((rep.property_violated == Property::ic) ==
              (rep.best_deviation_utility > rep.truthful_utility));
      }
    }
  }
}

TEST_CASE("welfare matches the brute-force optimum for the efficient mechanisms")
{
  for (const auto &net : {fixtures::tree_market(), fixtures::general_market(),
                          fixtures::bridged_market(), fixtures::line_market(),
                          fixtures::diamond_market(), fixtures::direct_buyers_market()})
  {
    CHECK(check_efficiency(net, Mechanism::vcg));
    CHECK(check_efficiency(net, Mechanism::idm_tc));
    CHECK(check_efficiency(net, Mechanism::csm));
  }
  // The plain second-price auction ignores the network, so it falls short
  // whenever the best buyer sits behind an intermediary.
  CHECK_FALSE(check_efficiency(fixtures::tree_market(), Mechanism::vickrey));
  CHECK(check_efficiency(fixtures::direct_buyers_market(), Mechanism::vickrey));
}

TEST_CASE("revenue comparisons and their provable orderings")
{
  auto tree = compare_revenues(fixtures::tree_market());
  CHECK(tree.revenue.at("vickrey") == Rational(1));
  CHECK(tree.revenue.at("vcg") == Rational(1));
  CHECK(tree.revenue.at("idm-tc") == Rational(4));
  CHECK(tree.revenue.at("csm") == Rational(4));
  CHECK(tree.bounds_hold);
  CHECK(tree.failures.empty());

  auto line = compare_revenues(fixtures::line_market());
  CHECK(line.revenue.at("vcg") == Rational(-8));
  CHECK(line.revenue.at("csm") == Rational(0));
  CHECK(line.bounds_hold);  // no bound constrains vcg

  auto direct = compare_revenues(fixtures::direct_buyers_market());
  for (const auto &[name, value] : direct.revenue)
  {
    CHECK(value == Rational(3));
  }
}

TEST_CASE("abandoned chain suffixes never reappear after a winner flip")
{
  auto tree = check_chain_suffix_disjointness(fixtures::tree_market());
  CHECK(tree.checked == 2);
  CHECK(tree.violations == 0);

  auto bridged = check_chain_suffix_disjointness(fixtures::bridged_market());
  CHECK(bridged.checked == 2);
  CHECK(bridged.violations == 0);

  auto line = check_chain_suffix_disjointness(fixtures::line_market());
  CHECK(line.checked == 0);  // the flip leaves nobody to sell to

  for (std::uint64_t seed = 400; seed < 430; ++seed)
  {
    GeneratorConfig cfg;
    cfg.n_buyers         = 4;
    cfg.n_intermediaries = 3;
    cfg.edge_probability = 0.5;
    cfg.seed             = seed;
    auto audit = check_chain_suffix_disjointness(generate_network(cfg));
    CHECK(audit.violations == 0);
  }
}

TEST_CASE("random sweep of the sharing mechanism stays clean")
{
  for (std::uint64_t seed = 300; seed < 340; ++seed)
  {
    GeneratorConfig cfg;
    cfg.n_buyers         = 3;
    cfg.n_intermediaries = 2 + static_cast<int>(seed % 2);
    cfg.edge_probability = 0.3 + 0.2 * static_cast<double>(seed % 3);
    cfg.tree_mode        = (seed % 5 == 0);
    cfg.seed             = seed;

    EconomicNetwork net   = generate_network(cfg);
    auto            audit = check_incentives(net, Mechanism::csm);
    CHECK(audit.wbb_violations == 0);
    if (audit.truthful_tie)
    {
      continue;
    }
    CHECK(audit.ic_violations == 0);
    CHECK(audit.ir_violations == 0);
  }
}
