#pragma once
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

#include "netauction/generator.hpp"
#include "netauction/mechanisms.hpp"

namespace netauction {
namespace verification {

using mechanisms::Mechanism;
using mechanisms::MechanismOutcome;
using model::Agent;
using model::ReportProfile;

class SubsetExplosion : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct AltBid
{
  Rational value;
};

struct AltShare
{
  std::set<AgentId> shared;
};

struct Withdraw
{
};

using Deviation = std::variant<AltBid, AltShare, Withdraw>;

/// One unilateral strategy: an off-value bid, a partial share, or silence.
struct DeviationSpec
{
  AgentId   agent;
  Deviation deviation;
};

enum class Property
{
  none,
  ic,
  ir,
  wbb
};

inline const char *property_name(Property p)
{
  switch (p)
  {
  case Property::none:
    return "none";
  case Property::ic:
    return "ic";
  case Property::ir:
    return "ir";
  case Property::wbb:
    return "wbb";
  }
  return "?";
}

/// Verdict for one agent under one mechanism. The ic tag is set exactly when
/// the best deviation strictly beats truth-telling (exact arithmetic).
struct DeviationReport
{
  Mechanism                    mechanism = Mechanism::csm;
  AgentId                      agent;
  Rational                     truthful_utility;
  std::optional<DeviationSpec> best_deviation;
  Rational                     best_deviation_utility;
  Property                     property_violated = Property::none;
};

/// Per-instance audit: one report per participating agent plus counters. A
/// profile whose winner was picked among exact surplus ties is skipped from
/// utility claims (and counted); revenue is still inspected on every profile.
struct IncentiveAudit
{
  Mechanism                    mechanism = Mechanism::csm;
  std::vector<DeviationReport> reports;
  int                          ic_violations  = 0;
  int                          ir_violations  = 0;
  int                          wbb_violations = 0;  // negative-revenue profiles seen
  int                          ties_skipped   = 0;
  bool                         truthful_tie      = false;
  bool                         truthful_no_trade = false;
};

/// Bid values that cover every regime of a buyer's piecewise-constant utility:
/// zero, the true bid, everyone else's bid, and both sides of each pivotal
/// threshold (the chain cost alone and the best rival surplus plus the chain
/// cost).
inline std::vector<Rational> build_bid_grid(const EconomicNetwork &net, const AgentId &buyer,
                                            const Rational &resolution)
{
  std::set<Rational> grid{Rational(0), net.agent(buyer).bid};
  for (const auto &[id, agent] : net.agents)
  {
    if (agent.is_buyer() && id != buyer)
    {
      grid.insert(agent.bid);
    }
  }

  auto eff = model::apply_reports(net, model::truthful_profile(net));
  graph::NetworkEngine eng(eff);
  int                  b = eng.index_of(buyer);
  auto                 dist = eng.distances();
  if (b >= 0 && dist[b].has_value())
  {
    Rational lcc_cost = *dist[b];
    Rational rival    = graph::welfare_of(eng, graph::NetworkEngine::bit(b));
    Rational upper    = rival + lcc_cost;
    for (const Rational &pivot : {lcc_cost, upper})
    {
      grid.insert(pivot);
      grid.insert(pivot + resolution);
      if (pivot - resolution >= 0)
      {
        grid.insert(pivot - resolution);
      }
    }
  }
  return {grid.begin(), grid.end()};
}

/// All unilateral deviations for one agent: every grid bid for a buyer, every
/// subset of the true neighbour set for an intermediary, plus withdrawal.
inline std::vector<DeviationSpec> enumerate_deviations(const EconomicNetwork &net,
                                                       const AgentId &        agent,
                                                       const std::vector<Rational> &bid_grid)
{
  const Agent &              a = net.agent(agent);
  std::vector<DeviationSpec> out;
  if (a.is_buyer())
  {
    for (const auto &value : bid_grid)
    {
      out.push_back({agent, AltBid{value}});
    }
  }
  else
  {
    if (a.neighbours.size() > 20)
    {
      throw SubsetExplosion("neighbour set of '" + agent + "' too large to enumerate (" +
                            std::to_string(a.neighbours.size()) + ")");
    }
    std::vector<AgentId> pool(a.neighbours.begin(), a.neighbours.end());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask)
    {
      AltShare share;
      for (std::size_t i = 0; i < pool.size(); ++i)
      {
        if (mask & (std::uint64_t{1} << i))
        {
          share.shared.insert(pool[i]);
        }
      }
      out.push_back({agent, std::move(share)});
    }
  }
  out.push_back({agent, Withdraw{}});
  return out;
}

inline ReportProfile with_deviation(const ReportProfile &base, const DeviationSpec &spec)
{
  ReportProfile profile = base;
  std::visit(
      [&](const auto &dev) {
        using T = std::decay_t<decltype(dev)>;
        if constexpr (std::is_same_v<T, AltBid>)
        {
          profile.set_bid(spec.agent, dev.value);
        }
        else if constexpr (std::is_same_v<T, AltShare>)
        {
          profile.set_share(spec.agent, dev.shared);
        }
        else
        {
          profile.set_nil(spec.agent);
        }
      },
      spec.deviation);
  return profile;
}

/// Brute-force strategic sweep: evaluates every participant's truthful
/// utility and every unilateral deviation with everyone else truthful,
/// always measuring utilities against true types. Flags individual
/// rationality breaches (negative truthful utility, or a share deviation
/// that forces an intermediary below zero) and budget breaches (negative
/// revenue on any evaluated profile).
inline IncentiveAudit check_incentives(const EconomicNetwork &net, Mechanism mech,
                                       const Rational &bid_grid_resolution = Rational(1, 8))
{
  IncentiveAudit audit;
  audit.mechanism = mech;

  auto truthful = model::truthful_profile(net);
  auto out_t    = mechanisms::run_mechanism(mech, net, truthful);
  if (out_t.revenue < 0)
  {
    ++audit.wbb_violations;
  }
  if (out_t.tie)
  {
    audit.truthful_tie = true;
    ++audit.ties_skipped;
    return audit;
  }
  audit.truthful_no_trade = !out_t.winner.has_value();

  auto eff = model::apply_reports(net, truthful);
  for (const auto &id : eff.participants)
  {
    const Agent &   a = net.agent(id);
    DeviationReport rep;
    rep.mechanism              = mech;
    rep.agent                  = id;
    rep.truthful_utility       = mechanisms::utility_of(net, out_t, id);
    rep.best_deviation_utility = rep.truthful_utility;

    std::vector<Rational> grid;
    if (a.is_buyer())
    {
      grid = build_bid_grid(net, id, bid_grid_resolution);
    }
    bool saw_negative_revenue = out_t.revenue < 0;
    bool share_forces_loss    = false;
    bool any_evaluated        = false;
    for (const auto &spec : enumerate_deviations(net, id, grid))
    {
      auto out_d = mechanisms::run_mechanism(mech, net, with_deviation(truthful, spec));
      if (out_d.revenue < 0)
      {
        ++audit.wbb_violations;
        saw_negative_revenue = true;
      }
      if (out_d.tie)
      {
        ++audit.ties_skipped;
        continue;
      }
      Rational u = mechanisms::utility_of(net, out_d, id);
      if (!any_evaluated || u > rep.best_deviation_utility)
      {
        rep.best_deviation_utility = u;
        rep.best_deviation         = spec;
        any_evaluated              = true;
      }
      if (!a.is_buyer() && u < 0)
      {
        share_forces_loss = true;
      }
    }

    if (rep.best_deviation_utility > rep.truthful_utility)
    {
      rep.property_violated = Property::ic;
      ++audit.ic_violations;
    }
    else if (rep.truthful_utility < 0 || share_forces_loss)
    {
      rep.property_violated = Property::ir;
      ++audit.ir_violations;
    }
    else if (saw_negative_revenue)
    {
      rep.property_violated = Property::wbb;
    }
    audit.reports.push_back(std::move(rep));
  }
  return audit;
}

/// True when the mechanism's welfare under truth-telling matches the
/// brute-force optimum over all enumerated chains.
inline bool check_efficiency(const EconomicNetwork &net, Mechanism mech)
{
  auto truthful = model::truthful_profile(net);
  auto out      = mechanisms::run_mechanism(mech, net, truthful);
  auto eff      = model::apply_reports(net, truthful);

  Rational oracle = 0;
  for (const auto &[id, bid] : eff.effective_bids)
  {
    std::optional<Rational> cheapest;
    for (const auto &chain : graph::enumerate_all_chains(eff, id))
    {
      if (!cheapest.has_value() || chain.transaction_cost < *cheapest)
      {
        cheapest = chain.transaction_cost;
      }
    }
    if (cheapest.has_value() && bid - *cheapest > oracle)
    {
      oracle = bid - *cheapest;
    }
  }
  return out.welfare == oracle;
}

/// Revenue of all four mechanisms under truth-telling, with the provable
/// orderings checked: the sharing mechanism never earns less than the direct
/// second-price auction, which never loses money; on trees the diffusion
/// mechanism dominates the second-price auction too.
struct RevenueComparison
{
  std::map<std::string, Rational> revenue;
  bool                            bounds_hold = true;
  std::vector<std::string>        failures;
};

inline RevenueComparison compare_revenues(const EconomicNetwork &net)
{
  RevenueComparison rc;
  auto              truthful = model::truthful_profile(net);
  for (Mechanism m :
       {Mechanism::vickrey, Mechanism::vcg, Mechanism::idm_tc, Mechanism::csm})
  {
    rc.revenue[mechanisms::mechanism_name(m)] =
        mechanisms::run_mechanism(m, net, truthful).revenue;
  }
  auto fail = [&rc](const std::string &what) {
    rc.bounds_hold = false;
    rc.failures.push_back(what);
  };
  const Rational &vickrey = rc.revenue.at("vickrey");
  if (vickrey < 0)
  {
    fail("vickrey revenue is negative");
  }
  if (rc.revenue.at("csm") < vickrey)
  {
    fail("csm revenue falls below vickrey");
  }
  if (model::is_tree(net) && rc.revenue.at("idm-tc") < vickrey)
  {
    fail("idm-tc revenue falls below vickrey on a tree");
  }
  return rc;
}

/// Counts, over the truthful profile, the winner flips caused by withholding
/// a threshold set, and how often the rest of the original chain leaks into
/// the new winner's chain (it never should).
struct SuffixAudit
{
  int checked    = 0;
  int violations = 0;
};

inline SuffixAudit check_chain_suffix_disjointness(const EconomicNetwork &net)
{
  SuffixAudit audit;
  auto        eff = model::apply_reports(net, model::truthful_profile(net));
  graph::NetworkEngine eng(eff);
  auto        alloc = graph::allocate(eng);
  if (!alloc.winner.has_value())
  {
    return audit;
  }
  const auto &path = alloc.chain->path;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
  {
    int  j   = eng.index_of(path[k]);
    auto thr = mechanisms::threshold_detail(eng, j);
    if (!thr.changed_winner)
    {
      continue;
    }
    auto alt = graph::allocate(eng, 0, {j, eng.links_at(j) & ~eng.mask_of(thr.withheld)});
    if (!alt.winner.has_value())
    {
      continue;
    }
    ++audit.checked;
    std::set<AgentId> new_chain(alt.chain->path.begin(), alt.chain->path.end());
    for (std::size_t t = k + 1; t < path.size(); ++t)
    {
      if (new_chain.count(path[t]) != 0)
      {
        ++audit.violations;
        break;
      }
    }
  }
  return audit;
}

}  // namespace verification
}  // namespace netauction
