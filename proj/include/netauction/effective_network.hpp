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

#include "netauction/network.hpp"

#include <algorithm>

namespace netauction {
namespace model {

/// Raised when a report breaks the rules of the game: a share set exceeding
/// the true neighbour set, a negative bid, or a kind-inconsistent report.
class InvalidReport : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// The market a mechanism actually sees after a report profile is submitted:
/// only agents the information reaches participate, links are what the
/// participating intermediaries chose to share, bids are what participating
/// buyers declared. A nil agent may still participate (someone pointed the
/// information at it) but contributes no links and no bid.
struct EffectiveNetwork
{
  EconomicNetwork                    base;  // owned: safe to outlive the input network
  std::set<AgentId>                  participants;
  std::map<AgentId, std::set<AgentId>> effective_links;  // non-nil participating intermediaries
  std::map<AgentId, Rational>        effective_bids;     // non-nil participating buyers

  /// Re-expresses this effective market as a report profile; feeding it back
  /// through apply_reports reproduces the same participants.
  ReportProfile as_profile() const
  {
    ReportProfile profile;
    for (const auto &[id, agent] : base.agents)
    {
      if (auto it = effective_bids.find(id); it != effective_bids.end())
      {
        profile.set_bid(id, it->second);
      }
      else if (auto lt = effective_links.find(id); lt != effective_links.end())
      {
        profile.set_share(id, lt->second);
      }
      else
      {
        profile.set_nil(id);
      }
    }
    return profile;
  }
};

/// The feasibility closure: starting from the seller's neighbours, an agent
/// participates exactly when some participating intermediary shared a link to
/// it. Reports of unreached agents are ignored; a reported nil never blocks
/// participation derived from others' links. Idempotent.
inline EffectiveNetwork apply_reports(const EconomicNetwork &net, const ReportProfile &raw)
{
  for (const auto &[id, report] : raw.reports)
  {
    if (!net.has_agent(id))
    {
      throw InvalidReport("report for unknown agent '" + id + "'");
    }
    const Agent &agent = net.agent(id);
    if (const auto *bid = std::get_if<BidReport>(&report))
    {
      if (!agent.is_buyer())
      {
        throw InvalidReport("intermediary '" + id + "' submitted a bid");
      }
      if (bid->bid < 0)
      {
        throw InvalidReport("buyer '" + id + "' bid a negative amount");
      }
    }
    else if (const auto *share = std::get_if<ShareReport>(&report))
    {
      if (!agent.is_intermediary())
      {
        throw InvalidReport("buyer '" + id + "' submitted a share set");
      }
      if (!std::includes(agent.neighbours.begin(), agent.neighbours.end(),
                         share->shared.begin(), share->shared.end()))
      {
        throw InvalidReport("intermediary '" + id +
                            "' shared agents outside its neighbour set");
      }
    }
  }

  EffectiveNetwork eff;
  eff.base = net;
  std::deque<AgentId> frontier;
  for (const auto &id : net.seller_neighbours)
  {
    if (eff.participants.insert(id).second)
    {
      frontier.push_back(id);
    }
  }
  while (!frontier.empty())
  {
    AgentId at = frontier.front();
    frontier.pop_front();
    const auto *share = std::get_if<ShareReport>(&raw.report_for(at));
    if (share == nullptr)
    {
      continue;
    }
    for (const auto &ref : share->shared)
    {
      if (eff.participants.insert(ref).second)
      {
        frontier.push_back(ref);
      }
    }
  }

  for (const auto &id : eff.participants)
  {
    const Report &report = raw.report_for(id);
    if (const auto *bid = std::get_if<BidReport>(&report))
    {
      eff.effective_bids.emplace(id, bid->bid);
    }
    else if (const auto *share = std::get_if<ShareReport>(&report))
    {
      eff.effective_links.emplace(id, share->shared);
    }
  }
  return eff;
}

}  // namespace model
}  // namespace netauction
