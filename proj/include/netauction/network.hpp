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

#include "netauction/rational.hpp"

#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace netauction {
namespace model {

using AgentId = std::string;

/// Identifier reserved for the seller. It may not name an agent and may not
/// appear inside any neighbour set; agents link to the seller implicitly by
/// being listed in seller_neighbours.
inline const AgentId &seller_id()
{
  static const AgentId id{"s"};
  return id;
}

enum class AgentKind
{
  buyer,
  intermediary
};

/// One market participant. Buyers carry a bid and never link onward; an
/// intermediary carries a per-trade cost and the set of agents it can inform.
struct Agent
{
  AgentId           id;
  AgentKind         kind = AgentKind::buyer;
  Rational          bid  = 0;   // buyers only
  Rational          cost = 0;   // intermediaries only
  std::set<AgentId> neighbours;  // intermediaries only

  bool is_buyer() const { return kind == AgentKind::buyer; }
  bool is_intermediary() const { return kind == AgentKind::intermediary; }
};

/// The true market: who the seller can inform directly, and every agent's
/// private type. Information only flows along declared neighbour links.
struct EconomicNetwork
{
  std::set<AgentId>        seller_neighbours;
  std::map<AgentId, Agent> agents;

  bool has_agent(const AgentId &id) const { return agents.count(id) != 0; }

  const Agent &agent(const AgentId &id) const { return agents.at(id); }

  void add_buyer(const AgentId &id, Rational bid)
  {
    Agent a;
    a.id   = id;
    a.kind = AgentKind::buyer;
    a.bid  = std::move(bid);
    agents[id] = std::move(a);
  }

  void add_intermediary(const AgentId &id, Rational cost, std::set<AgentId> neighbours)
  {
    Agent a;
    a.id         = id;
    a.kind       = AgentKind::intermediary;
    a.cost       = std::move(cost);
    a.neighbours = std::move(neighbours);
    agents[id]   = std::move(a);
  }
};

enum class ViolationKind
{
  DanglingReference,
  NegativeBid,
  NegativeCost,
  BuyerHasNeighbours,
  SelfLink,
  SellerInNeighbourSet,
  ReservedIdentifier,
  EmptyIdentifier,
  InconsistentIdentifier,
  OverlappingBuyerGroups
};

struct Violation
{
  ViolationKind kind;
  AgentId       agent;   // the offending agent ("" for network-level issues)
  AgentId       detail;  // referenced id, where applicable

  std::string message() const
  {
    switch (kind)
    {
    case ViolationKind::DanglingReference:
      return "dangling reference to unknown agent '" + detail + "' (from '" + agent + "')";
    case ViolationKind::NegativeBid:
      return "buyer '" + agent + "' has a negative bid";
    case ViolationKind::NegativeCost:
      return "intermediary '" + agent + "' has a negative cost";
    case ViolationKind::BuyerHasNeighbours:
      return "buyer '" + agent + "' declares a neighbour set";
    case ViolationKind::SelfLink:
      return "intermediary '" + agent + "' links to itself";
    case ViolationKind::SellerInNeighbourSet:
      return "intermediary '" + agent + "' lists the seller as a neighbour";
    case ViolationKind::ReservedIdentifier:
      return "agent id '" + agent + "' is reserved for the seller";
    case ViolationKind::EmptyIdentifier:
      return "empty agent id";
    case ViolationKind::InconsistentIdentifier:
      return "agent keyed as '" + agent + "' carries id '" + detail + "'";
    case ViolationKind::OverlappingBuyerGroups:
      return "buyer '" + detail + "' appears in several neighbour sets ('" + agent +
             "' among them) under strict buyer groups";
    }
    return "unknown violation";
  }
};

/// Structural validation. Returns every violation found; an empty result means
/// the network satisfies all model invariants. With strict_buyer_groups set,
/// a buyer reachable from two different informants is also rejected.
inline std::vector<Violation> validate_network(const EconomicNetwork &net,
                                               bool strict_buyer_groups = false)
{
  std::vector<Violation> out;
  auto check_ref = [&](const AgentId &from, const AgentId &ref) {
    if (!net.has_agent(ref))
    {
      out.push_back({ViolationKind::DanglingReference, from, ref});
    }
  };

  for (const auto &id : net.seller_neighbours)
  {
    check_ref("", id);
  }

  std::map<AgentId, AgentId> buyer_parent;  // buyer -> first informant seen
  for (const auto &[key, agent] : net.agents)
  {
    if (key.empty())
    {
      out.push_back({ViolationKind::EmptyIdentifier, key, ""});
    }
    if (key == seller_id())
    {
      out.push_back({ViolationKind::ReservedIdentifier, key, ""});
    }
    if (agent.id != key)
    {
      out.push_back({ViolationKind::InconsistentIdentifier, key, agent.id});
    }
    if (agent.is_buyer())
    {
      if (agent.bid < 0)
      {
        out.push_back({ViolationKind::NegativeBid, key, ""});
      }
      if (!agent.neighbours.empty())
      {
        out.push_back({ViolationKind::BuyerHasNeighbours, key, ""});
      }
      continue;
    }
    if (agent.cost < 0)
    {
      out.push_back({ViolationKind::NegativeCost, key, ""});
    }
    for (const auto &ref : agent.neighbours)
    {
      if (ref == key)
      {
        out.push_back({ViolationKind::SelfLink, key, ""});
      }
      else if (ref == seller_id())
      {
        out.push_back({ViolationKind::SellerInNeighbourSet, key, ""});
      }
      else
      {
        check_ref(key, ref);
        if (strict_buyer_groups && net.has_agent(ref) && net.agent(ref).is_buyer())
        {
          auto [it, fresh] = buyer_parent.emplace(ref, key);
          if (!fresh && it->second != key)
          {
            out.push_back({ViolationKind::OverlappingBuyerGroups, key, ref});
          }
        }
      }
    }
  }
  return out;
}

/// True when every agent has exactly one informant (the seller or a single
/// intermediary) and is reachable from the seller, i.e. the market is a tree.
inline bool is_tree(const EconomicNetwork &net)
{
  std::map<AgentId, int> indegree;
  for (const auto &[id, agent] : net.agents)
  {
    indegree[id] = 0;
  }
  for (const auto &id : net.seller_neighbours)
  {
    ++indegree[id];
  }
  for (const auto &[id, agent] : net.agents)
  {
    for (const auto &ref : agent.neighbours)
    {
      ++indegree[ref];
    }
  }
  for (const auto &[id, deg] : indegree)
  {
    if (deg != 1)
    {
      return false;
    }
  }

  std::set<AgentId>   seen(net.seller_neighbours.begin(), net.seller_neighbours.end());
  std::deque<AgentId> frontier(net.seller_neighbours.begin(), net.seller_neighbours.end());
  while (!frontier.empty())
  {
    AgentId at = frontier.front();
    frontier.pop_front();
    for (const auto &ref : net.agent(at).neighbours)
    {
      if (seen.insert(ref).second)
      {
        frontier.push_back(ref);
      }
    }
  }
  return seen.size() == net.agents.size();
}

struct BidReport
{
  Rational bid;
};

struct ShareReport
{
  std::set<AgentId> shared;
};

struct NilReport
{
};

using Report = std::variant<NilReport, BidReport, ShareReport>;

/// What every agent declares to the mechanism: a bid, a shared subset of its
/// true neighbours, or nil. Agents missing from the map count as nil.
struct ReportProfile
{
  std::map<AgentId, Report> reports;

  const Report &report_for(const AgentId &id) const
  {
    static const Report nil{NilReport{}};
    auto                it = reports.find(id);
    return it == reports.end() ? nil : it->second;
  }

  bool is_nil(const AgentId &id) const
  {
    return std::holds_alternative<NilReport>(report_for(id));
  }

  void set_bid(const AgentId &id, Rational bid) { reports[id] = BidReport{std::move(bid)}; }
  void set_share(const AgentId &id, std::set<AgentId> shared)
  {
    reports[id] = ShareReport{std::move(shared)};
  }
  void set_nil(const AgentId &id) { reports[id] = NilReport{}; }
};

/// The profile where everyone cooperates: buyers bid their value and
/// intermediaries share their whole neighbour set. Agents the seller's
/// information can never reach are nil.
inline ReportProfile truthful_profile(const EconomicNetwork &net)
{
  std::set<AgentId>   reachable(net.seller_neighbours.begin(), net.seller_neighbours.end());
  std::deque<AgentId> frontier(net.seller_neighbours.begin(), net.seller_neighbours.end());
  while (!frontier.empty())
  {
    AgentId at = frontier.front();
    frontier.pop_front();
    for (const auto &ref : net.agent(at).neighbours)
    {
      if (reachable.insert(ref).second)
      {
        frontier.push_back(ref);
      }
    }
  }

  ReportProfile profile;
  for (const auto &[id, agent] : net.agents)
  {
    if (reachable.count(id) == 0)
    {
      profile.set_nil(id);
    }
    else if (agent.is_buyer())
    {
      profile.set_bid(id, agent.bid);
    }
    else
    {
      profile.set_share(id, agent.neighbours);
    }
  }
  return profile;
}

}  // namespace model
}  // namespace netauction
