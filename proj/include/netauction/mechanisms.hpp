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

#include "netauction/graph_core.hpp"

#include <string_view>

namespace netauction {
namespace mechanisms {

using graph::AllocationResult;
using graph::NetworkEngine;
using graph::TradingChain;
using model::Agent;
using model::AgentId;
using model::EconomicNetwork;
using model::EffectiveNetwork;
using model::ReportProfile;

enum class Mechanism
{
  vickrey,
  vcg,
  idm_tc,
  csm
};

inline const char *mechanism_name(Mechanism m)
{
  switch (m)
  {
  case Mechanism::vickrey:
    return "vickrey";
  case Mechanism::vcg:
    return "vcg";
  case Mechanism::idm_tc:
    return "idm-tc";
  case Mechanism::csm:
    return "csm";
  }
  return "?";
}

inline std::optional<Mechanism> parse_mechanism(std::string_view name)
{
  if (name == "vickrey")
  {
    return Mechanism::vickrey;
  }
  if (name == "vcg")
  {
    return Mechanism::vcg;
  }
  if (name == "idm-tc")
  {
    return Mechanism::idm_tc;
  }
  if (name == "csm")
  {
    return Mechanism::csm;
  }
  return std::nullopt;
}

/// Full result of running one mechanism on one report profile. Allocation and
/// payment entries exist for every agent (zeros included); revenue is the
/// exact sum of payments. The tie flag records whether the winner was picked
/// by the deterministic smallest-id rule among equal-surplus buyers.
struct MechanismOutcome
{
  Mechanism                   mechanism = Mechanism::vickrey;
  std::optional<AgentId>      winner;
  std::optional<TradingChain> chain;
  std::map<AgentId, int>      allocation;
  std::map<AgentId, Rational> payments;
  Rational                    revenue = 0;
  Rational                    welfare = 0;
  bool                        tie     = false;

  const Rational &payment_for(const AgentId &id) const { return payments.at(id); }
  int             allocation_for(const AgentId &id) const { return allocation.at(id); }
};

/// Utility of one agent under this outcome, measured against its TRUE type:
/// winning buyers gain their true value, chain intermediaries bear their true
/// cost, everyone is charged their payment.
inline Rational utility_of(const EconomicNetwork &net, const MechanismOutcome &out,
                           const AgentId &agent)
{
  const Agent &a  = net.agent(agent);
  int          pi = out.allocation_for(agent);
  Rational     v  = 0;
  if (pi == 1)
  {
    v = a.bid;
  }
  else if (pi == -1)
  {
    v = -a.cost;
  }
  return v - out.payment_for(agent);
}

inline std::map<AgentId, Rational> utilities(const EconomicNetwork &net,
                                             const MechanismOutcome &out)
{
  std::map<AgentId, Rational> us;
  for (const auto &[id, agent] : net.agents)
  {
    us.emplace(id, utility_of(net, out, id));
  }
  return us;
}

namespace detail {

inline MechanismOutcome blank_outcome(Mechanism m, const EconomicNetwork &net)
{
  MechanismOutcome out;
  out.mechanism = m;
  for (const auto &[id, agent] : net.agents)
  {
    out.allocation.emplace(id, 0);
    out.payments.emplace(id, Rational(0));
  }
  return out;
}

inline void finalize(MechanismOutcome &out)
{
  out.revenue = 0;
  for (const auto &[id, x] : out.payments)
  {
    out.revenue += x;
  }
}

inline void mark_chain(MechanismOutcome &out, const TradingChain &chain)
{
  for (std::size_t k = 0; k + 1 < chain.path.size(); ++k)
  {
    out.allocation[chain.path[k]] = -1;
  }
  out.allocation[chain.path.back()] = 1;
}

inline std::uint64_t chain_mask(const NetworkEngine &eng, const TradingChain &chain)
{
  std::uint64_t mask = 0;
  for (const auto &id : chain.path)
  {
    mask |= NetworkEngine::bit(eng.index_of(id));
  }
  return mask;
}

inline std::uint64_t critical_mask(const NetworkEngine &eng, int i)
{
  return eng.closure() & ~eng.closure(NetworkEngine::bit(i));
}

}  // namespace detail

/// Outcome of the successive-withholding probe for one intermediary: the
/// withheld set and whether withholding it actually flips the winner (when it
/// cannot, the full shared set is returned instead).
struct ThresholdResult
{
  std::set<AgentId> withheld;
  bool              changed_winner = false;
};

/// The smallest share subset whose withholding changes the efficient winner.
/// Walks the current lowest-cost chain: repeatedly withholds i's successor on
/// it and re-solves, stopping when the winner changes (possibly to nobody).
/// If i drops off the chain with the winner intact, no subset of its links
/// can change the outcome and the full shared set is returned.
inline ThresholdResult threshold_detail(const NetworkEngine &eng, int i)
{
  ThresholdResult result;
  auto            original = graph::allocate(eng);
  std::uint64_t   reported = eng.links_at(i);
  if (!original.winner.has_value())
  {
    result.withheld = eng.ids_of(reported);
    return result;
  }
  std::uint64_t allowed  = ~0ull;
  std::uint64_t withheld = 0;
  for (;;)
  {
    auto current = graph::allocate(eng, 0, {i, allowed});
    if (current.winner != original.winner)
    {
      result.withheld       = eng.ids_of(withheld);
      result.changed_winner = true;
      return result;
    }
    int pos = -1;
    for (std::size_t k = 0; k < current.chain->path.size(); ++k)
    {
      if (eng.index_of(current.chain->path[k]) == i)
      {
        pos = static_cast<int>(k);
        break;
      }
    }
    if (pos < 0)
    {
      result.withheld = eng.ids_of(reported);
      return result;
    }
    int succ = eng.index_of(current.chain->path[pos + 1]);
    withheld |= NetworkEngine::bit(succ);
    allowed &= ~NetworkEngine::bit(succ);
  }
}

inline std::set<AgentId> threshold_neighbourhood(const EffectiveNetwork &eff, const AgentId &i)
{
  NetworkEngine eng(eff);
  int           idx = eng.index_of(i);
  if (idx < 0)
  {
    return {};
  }
  return threshold_detail(eng, idx).withheld;
}

/// Second-price auction restricted to buyers the seller knows directly; the
/// rest of the network is ignored and there is no chain.
inline MechanismOutcome run_vickrey(const EconomicNetwork &net, const ReportProfile &profile)
{
  auto eff = model::apply_reports(net, profile);
  auto out = detail::blank_outcome(Mechanism::vickrey, net);
  NetworkEngine eng(eff);

  std::uint64_t direct = eng.bidders() & eng.seller_links();
  int           winner = -1;
  std::uint64_t scan   = direct;
  while (scan != 0)
  {
    int j = __builtin_ctzll(scan);
    scan &= scan - 1;
    if (winner == -1 || eng.bid_at(j) > eng.bid_at(winner))
    {
      winner   = j;
      out.tie  = false;
    }
    else if (eng.bid_at(j) == eng.bid_at(winner))
    {
      out.tie = true;
    }
  }
  if (winner < 0)
  {
    return out;
  }
  Rational      second = 0;
  std::uint64_t others = direct & ~NetworkEngine::bit(winner);
  bool          any    = false;
  while (others != 0)
  {
    int j = __builtin_ctzll(others);
    others &= others - 1;
    if (!any || eng.bid_at(j) > second)
    {
      second = eng.bid_at(j);
      any    = true;
    }
  }
  out.winner                       = eng.id_at(winner);
  out.allocation[eng.id_at(winner)] = 1;
  out.payments[eng.id_at(winner)]  = second;
  out.welfare                      = eng.bid_at(winner);
  detail::finalize(out);
  return out;
}

/// Efficient allocation where every participant is charged the externality it
/// imposes: x_i equals the best welfare without i minus what the others get
/// under the chosen allocation. Budget balance is not guaranteed.
inline MechanismOutcome run_vcg(const EconomicNetwork &net, const ReportProfile &profile)
{
  auto eff = model::apply_reports(net, profile);
  auto out = detail::blank_outcome(Mechanism::vcg, net);
  NetworkEngine eng(eff);

  auto alloc  = graph::allocate(eng);
  out.tie     = alloc.tie;
  out.welfare = alloc.welfare;
  if (!alloc.winner.has_value())
  {
    return out;
  }
  out.winner = alloc.winner;
  out.chain  = alloc.chain;
  detail::mark_chain(out, *alloc.chain);

  std::uint64_t on_chain = detail::chain_mask(eng, *alloc.chain);
  std::uint64_t active   = eng.bidders() | eng.sharers();
  while (active != 0)
  {
    int j = __builtin_ctzll(active);
    active &= active - 1;
    Rational v = 0;
    if (eng.id_at(j) == *alloc.winner)
    {
      v = eng.bid_at(j);
    }
    else if (on_chain & NetworkEngine::bit(j))
    {
      v = -eng.cost_at(j);
    }
    Rational without = graph::welfare_of(eng, NetworkEngine::bit(j));
    out.payments[eng.id_at(j)] = without - (alloc.welfare - v);
  }
  detail::finalize(out);
  return out;
}

/// Diffusion mechanism with transaction costs: the winner's critical sequence
/// splits the welfare differences; chain members outside it are reimbursed
/// their cost; the winner pays the welfare without it plus the chain cost.
inline MechanismOutcome run_idm_tc(const EconomicNetwork &net, const ReportProfile &profile)
{
  auto eff = model::apply_reports(net, profile);
  auto out = detail::blank_outcome(Mechanism::idm_tc, net);
  NetworkEngine eng(eff);

  auto alloc  = graph::allocate(eng);
  out.tie     = alloc.tie;
  out.welfare = alloc.welfare;
  if (!alloc.winner.has_value())
  {
    return out;
  }
  out.winner = alloc.winner;
  out.chain  = alloc.chain;
  detail::mark_chain(out, *alloc.chain);

  int m = eng.index_of(*alloc.winner);

  std::vector<int> chain_idx;
  for (const auto &id : alloc.chain->path)
  {
    chain_idx.push_back(eng.index_of(id));
  }
  std::vector<int> critical;
  for (int j : chain_idx)
  {
    if ((eng.closure(NetworkEngine::bit(j)) & NetworkEngine::bit(m)) == 0)
    {
      critical.push_back(j);
    }
  }

  std::set<int> critical_set(critical.begin(), critical.end());
  for (std::size_t k = 0; k + 1 < critical.size(); ++k)
  {
    int      j        = critical[k];
    Rational with_dj  = graph::welfare_of(eng, detail::critical_mask(eng, j));
    Rational with_dn  = graph::welfare_of(eng, detail::critical_mask(eng, critical[k + 1]));
    out.payments[eng.id_at(j)] = with_dj - with_dn - eng.cost_at(j);
  }
  Rational cost_sum = 0;
  for (std::size_t k = 0; k + 1 < chain_idx.size(); ++k)
  {
    int j = chain_idx[k];
    cost_sum += eng.cost_at(j);
    if (critical_set.count(j) == 0)
    {
      out.payments[eng.id_at(j)] = -eng.cost_at(j);
    }
  }
  out.payments[*alloc.winner] =
      graph::welfare_of(eng, NetworkEngine::bit(m)) + cost_sum;
  detail::finalize(out);
  return out;
}

/// Customer sharing mechanism: the winner pays its externality like VCG;
/// every sharing intermediary pays the welfare without its critical set minus
/// the welfare it could force by withholding its threshold set, net of its
/// cost when it sits on the trading chain.
inline MechanismOutcome run_csm(const EconomicNetwork &net, const ReportProfile &profile)
{
  auto eff = model::apply_reports(net, profile);
  auto out = detail::blank_outcome(Mechanism::csm, net);
  NetworkEngine eng(eff);

  auto alloc  = graph::allocate(eng);
  out.tie     = alloc.tie;
  out.welfare = alloc.welfare;
  if (!alloc.winner.has_value())
  {
    return out;
  }
  out.winner = alloc.winner;
  out.chain  = alloc.chain;
  detail::mark_chain(out, *alloc.chain);

  int m = eng.index_of(*alloc.winner);
  out.payments[*alloc.winner] =
      graph::welfare_of(eng, NetworkEngine::bit(m)) - alloc.welfare + eng.bid_at(m);

  std::uint64_t on_chain = detail::chain_mask(eng, *alloc.chain);
  std::uint64_t sharers  = eng.sharers();
  while (sharers != 0)
  {
    int j = __builtin_ctzll(sharers);
    sharers &= sharers - 1;
    auto     thr      = threshold_detail(eng, j);
    Rational with_dj  = graph::welfare_of(eng, detail::critical_mask(eng, j));
    Rational withheld = graph::welfare_of(
        eng, 0, {j, eng.links_at(j) & ~eng.mask_of(thr.withheld)});
    Rational v = (on_chain & NetworkEngine::bit(j)) ? -eng.cost_at(j) : Rational(0);
    out.payments[eng.id_at(j)] = with_dj - withheld + v;
  }
  detail::finalize(out);
  return out;
}

inline MechanismOutcome run_mechanism(Mechanism m, const EconomicNetwork &net,
                                      const ReportProfile &profile)
{
  switch (m)
  {
  case Mechanism::vickrey:
    return run_vickrey(net, profile);
  case Mechanism::vcg:
    return run_vcg(net, profile);
  case Mechanism::idm_tc:
    return run_idm_tc(net, profile);
  case Mechanism::csm:
    return run_csm(net, profile);
  }
  throw std::logic_error("unknown mechanism");
}

/// Provable floor on CSM revenue for a profile: the welfare without the
/// critical set of the first chain intermediary able to flip the winner, or
/// without the winner itself when no chain member can.
struct RevenueFloor
{
  Rational               value;
  std::optional<AgentId> pivot;  // the flipping intermediary, if any
};

inline RevenueFloor csm_revenue_floor(const EffectiveNetwork &eff)
{
  NetworkEngine eng(eff);
  auto          alloc = graph::allocate(eng);
  if (!alloc.winner.has_value())
  {
    return {Rational(0), std::nullopt};
  }
  for (std::size_t k = 0; k + 1 < alloc.chain->path.size(); ++k)
  {
    int j = eng.index_of(alloc.chain->path[k]);
    if (threshold_detail(eng, j).changed_winner)
    {
      return {graph::welfare_of(eng, detail::critical_mask(eng, j)), eng.id_at(j)};
    }
  }
  int m = eng.index_of(*alloc.winner);
  return {graph::welfare_of(eng, NetworkEngine::bit(m)), std::nullopt};
}

}  // namespace mechanisms
}  // namespace netauction
