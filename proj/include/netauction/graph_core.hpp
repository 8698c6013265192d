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

#include "netauction/effective_network.hpp"

#include <cstdint>
#include <cstdlib>
#include <optional>

namespace netauction {
namespace graph {

using model::AgentId;
using model::EffectiveNetwork;

/// A simple path from a seller neighbour to a terminal agent. The transaction
/// cost sums the costs of every intermediary on the path except the terminal.
struct TradingChain
{
  std::vector<AgentId> path;
  Rational             transaction_cost;
};

class InstanceTooLarge : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Cap on brute-force enumeration work, overridable through the
/// NETAUCTION_MAX_ENUM environment variable (counted in DFS expansions).
inline std::size_t default_enum_cap()
{
  static const std::size_t cap = [] {
    if (const char *env = std::getenv("NETAUCTION_MAX_ENUM"))
    {
      char *             end    = nullptr;
      unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && parsed > 0)
      {
        return static_cast<std::size_t>(parsed);
      }
    }
    return static_cast<std::size_t>(1000000);
  }();
  return cap;
}

/// Restricts one agent's outgoing links to the allowed mask; expresses edge
/// deletions and share withholding without rebuilding the network.
struct LinkOverride
{
  int           node    = -1;
  std::uint64_t allowed = ~0ull;
};

/// Bit-mask evaluation engine over an effective network (at most 64 agents).
/// Indices are assigned in ascending AgentId order, so the smallest index in
/// a scan is also the smallest id; every query takes a removal mask and an
/// optional single-node link restriction, which together express agent
/// deletions, edge deletions and share withholding without rebuilding.
class NetworkEngine
{
public:
  struct Trade
  {
    int      winner = -1;  // index of the welfare-maximizing bidder, -1 if none reachable
    Rational value;        // its bid minus chain cost (may be negative)
    Rational chain_cost;
    bool     tie = false;  // another bidder attains the same value
  };

  explicit NetworkEngine(const EffectiveNetwork &eff)
  {
    const auto &agents = eff.base.agents;
    if (agents.size() > 64)
    {
      throw InstanceTooLarge("engine supports at most 64 agents, got " +
                             std::to_string(agents.size()));
    }
    ids_.reserve(agents.size());
    for (const auto &[id, agent] : agents)
    {
      index_.emplace(id, static_cast<int>(ids_.size()));
      ids_.push_back(id);
      bids_.push_back(agent.bid);
      costs_.push_back(agent.cost);
    }
    links_.assign(ids_.size(), 0);
    for (const auto &[id, agent] : agents)
    {
      int i = index_.at(id);
      if (agent.is_intermediary())
      {
        inter_mask_ |= bit(i);
      }
    }
    for (const auto &id : eff.participants)
    {
      participants_ |= bit(index_.at(id));
    }
    for (const auto &id : eff.base.seller_neighbours)
    {
      seller_links_ |= bit(index_.at(id));
    }
    for (const auto &[id, bid] : eff.effective_bids)
    {
      int i = index_.at(id);
      bidders_ |= bit(i);
      bids_[i] = bid;
    }
    for (const auto &[id, shared] : eff.effective_links)
    {
      int i = index_.at(id);
      sharers_ |= bit(i);
      for (const auto &ref : shared)
      {
        links_[i] |= bit(index_.at(ref));
      }
    }
  }

  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

  int size() const { return static_cast<int>(ids_.size()); }

  int index_of(const AgentId &id) const
  {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
  }

  const AgentId &id_at(int i) const { return ids_[i]; }
  const Rational &bid_at(int i) const { return bids_[i]; }
  const Rational &cost_at(int i) const { return costs_[i]; }
  std::uint64_t  links_at(int i) const { return links_[i]; }
  std::uint64_t  participants() const { return participants_; }
  std::uint64_t  bidders() const { return bidders_; }
  std::uint64_t  sharers() const { return sharers_; }
  std::uint64_t  intermediaries() const { return inter_mask_; }
  std::uint64_t  seller_links() const { return seller_links_; }
  bool is_intermediary(int i) const { return (inter_mask_ & bit(i)) != 0; }

  std::uint64_t mask_of(const std::set<AgentId> &ids) const
  {
    std::uint64_t mask = 0;
    for (const auto &id : ids)
    {
      if (int i = index_of(id); i >= 0)
      {
        mask |= bit(i);
      }
    }
    return mask;
  }

  std::set<AgentId> ids_of(std::uint64_t mask) const
  {
    std::set<AgentId> out;
    for (int i = 0; i < size(); ++i)
    {
      if (mask & bit(i))
      {
        out.insert(ids_[i]);
      }
    }
    return out;
  }

  /// Everyone the seller's information reaches when `removed` agents are
  /// deleted and the override restricts one agent's outgoing links.
  std::uint64_t closure(std::uint64_t removed = 0, LinkOverride ov = {}) const
  {
    std::uint64_t blocked = removed | ~participants_;
    std::uint64_t reach   = seller_links_ & ~blocked;
    std::uint64_t frontier = reach;
    while (frontier != 0)
    {
      std::uint64_t next = 0;
      std::uint64_t heads = frontier & inter_mask_;
      while (heads != 0)
      {
        int u = lowest_bit(heads);
        heads &= heads - 1;
        next |= out_links(u, ov) & ~blocked;
      }
      frontier = next & ~reach;
      reach |= frontier;
    }
    return reach;
  }

  /// Single-source minimum transaction cost to reach each agent (cost of the
  /// cheapest chain ending there, terminal excluded). Unreachable agents get
  /// no value.
  std::vector<std::optional<Rational>> distances(std::uint64_t removed = 0,
                                                 LinkOverride  ov      = {}) const
  {
    std::uint64_t                        blocked = removed | ~participants_;
    std::vector<std::optional<Rational>> dist(ids_.size());
    std::uint64_t                        pending = 0;
    std::uint64_t                        sources = seller_links_ & ~blocked;
    while (sources != 0)
    {
      int j = lowest_bit(sources);
      sources &= sources - 1;
      dist[j] = Rational(0);
      pending |= bit(j);
    }
    while (pending != 0)
    {
      int           best  = -1;
      std::uint64_t probe = pending;
      while (probe != 0)
      {
        int j = lowest_bit(probe);
        probe &= probe - 1;
        if (best == -1 || *dist[j] < *dist[best])
        {
          best = j;
        }
      }
      pending &= ~bit(best);
      if (!is_intermediary(best))
      {
        continue;
      }
      Rational      through = *dist[best] + costs_[best];
      std::uint64_t outs    = out_links(best, ov) & ~blocked;
      while (outs != 0)
      {
        int k = lowest_bit(outs);
        outs &= outs - 1;
        if (!dist[k].has_value())
        {
          dist[k] = through;
          pending |= bit(k);
        }
        else if (through < *dist[k] && (pending & bit(k)))
        {
          dist[k] = through;
        }
      }
    }
    return dist;
  }

  /// Welfare-maximizing bidder and its raw surplus; no-trade conventions are
  /// applied by the callers.
  Trade best_trade(std::uint64_t removed = 0, LinkOverride ov = {}) const
  {
    auto          dist = distances(removed, ov);
    Trade         best;
    std::uint64_t scan = bidders_ & ~removed;
    while (scan != 0)
    {
      int j = lowest_bit(scan);
      scan &= scan - 1;
      if (!dist[j].has_value())
      {
        continue;
      }
      Rational sw = bids_[j] - *dist[j];
      if (best.winner == -1 || sw > best.value)
      {
        best.winner     = j;
        best.value      = sw;
        best.chain_cost = *dist[j];
        best.tie        = false;
      }
      else if (sw == best.value)
      {
        best.tie = true;
      }
    }
    return best;
  }

  /// The minimum-cost chain to `target`, tie-broken to the lexicographically
  /// smallest id sequence. Greedy head selection: a candidate head is kept
  /// when some completion avoiding the nodes already used still meets the
  /// optimal cost.
  std::optional<std::vector<int>> min_cost_chain(int target, std::uint64_t removed = 0,
                                                 LinkOverride ov = {}) const
  {
    if (target < 0 || (bit(target) & (removed | ~participants_)))
    {
      return std::nullopt;
    }
    auto dist = distances(removed, ov);
    if (!dist[target].has_value())
    {
      return std::nullopt;
    }
    const Rational   total = *dist[target];
    std::vector<int> path;
    std::uint64_t    visited = 0;
    Rational         acc     = 0;
    int              at      = -1;
    for (;;)
    {
      std::uint64_t cands =
          (at == -1 ? seller_links_ : out_links(at, ov)) & ~removed & ~visited & participants_;
      int next = -1;
      while (cands != 0)
      {
        int j = lowest_bit(cands);
        cands &= cands - 1;
        if (j == target)
        {
          if (acc == total)
          {
            next = j;
            break;
          }
          continue;
        }
        if (!is_intermediary(j))
        {
          continue;
        }
        auto rest = completion_cost(j, target, removed | visited, ov);
        if (rest.has_value() && acc + *rest == total)
        {
          next = j;
          break;
        }
      }
      if (next == -1)
      {
        throw std::logic_error("min_cost_chain lost its completion invariant");
      }
      path.push_back(next);
      visited |= bit(next);
      if (next == target)
      {
        return path;
      }
      acc += costs_[next];
      at = next;
    }
  }

private:
  static int lowest_bit(std::uint64_t mask)
  {
    return __builtin_ctzll(mask);
  }

  std::uint64_t out_links(int u, LinkOverride ov) const
  {
    std::uint64_t mask = links_[u];
    return u == ov.node ? mask & ov.allowed : mask;
  }

  /// Minimum cost of a path from `from` to `target` avoiding `blocked`,
  /// counting the costs of every intermediary from `from` inclusive up to but
  /// excluding `target`; computed by a reverse sweep.
  std::optional<Rational> completion_cost(int from, int target, std::uint64_t blocked,
                                          LinkOverride ov) const
  {
    blocked |= ~participants_;
    if (bit(from) & blocked)
    {
      return std::nullopt;
    }
    std::vector<std::optional<Rational>> h(ids_.size());
    h[target]             = Rational(0);
    std::uint64_t pending = bit(target);
    std::uint64_t settled = 0;
    while (pending != 0)
    {
      int           best  = -1;
      std::uint64_t probe = pending;
      while (probe != 0)
      {
        int v = lowest_bit(probe);
        probe &= probe - 1;
        if (best == -1 || *h[v] < *h[best])
        {
          best = v;
        }
      }
      pending &= ~bit(best);
      settled |= bit(best);
      if (best == from)
      {
        return h[from];
      }
      std::uint64_t ins = inter_mask_ & ~blocked & ~settled;
      while (ins != 0)
      {
        int u = lowest_bit(ins);
        ins &= ins - 1;
        if ((out_links(u, ov) & bit(best)) == 0)
        {
          continue;
        }
        Rational cand = costs_[u] + *h[best];
        if (!h[u].has_value() || cand < *h[u])
        {
          h[u] = cand;
          pending |= bit(u);
        }
      }
    }
    return std::nullopt;
  }

  std::vector<AgentId>       ids_;
  std::map<AgentId, int>     index_;
  std::vector<Rational>      bids_;
  std::vector<Rational>      costs_;
  std::vector<std::uint64_t> links_;
  std::uint64_t              participants_ = 0;
  std::uint64_t              bidders_      = 0;
  std::uint64_t              sharers_      = 0;
  std::uint64_t              inter_mask_   = 0;
  std::uint64_t              seller_links_ = 0;
};

namespace detail {

inline TradingChain to_chain(const NetworkEngine &eng, const std::vector<int> &path)
{
  TradingChain chain;
  chain.transaction_cost = 0;
  for (std::size_t k = 0; k < path.size(); ++k)
  {
    chain.path.push_back(eng.id_at(path[k]));
    if (k + 1 < path.size())
    {
      chain.transaction_cost += eng.cost_at(path[k]);
    }
  }
  return chain;
}

}  // namespace detail

/// Allocation decision with the no-trade convention applied: no winner when
/// no bidder is reachable or the best surplus is negative.
struct AllocationResult
{
  std::optional<AgentId>      winner;
  std::optional<TradingChain> chain;
  Rational                    welfare;  // 0 when there is no trade
  bool                        tie = false;
};

inline AllocationResult allocate(const NetworkEngine &eng, std::uint64_t removed = 0,
                                 LinkOverride ov = {})
{
  AllocationResult result;
  result.welfare = 0;
  auto trade     = eng.best_trade(removed, ov);
  if (trade.winner < 0 || trade.value < 0)
  {
    return result;
  }
  result.winner  = eng.id_at(trade.winner);
  result.welfare = trade.value;
  result.tie     = trade.tie;
  auto path      = eng.min_cost_chain(trade.winner, removed, ov);
  result.chain   = detail::to_chain(eng, *path);
  return result;
}

inline Rational welfare_of(const NetworkEngine &eng, std::uint64_t removed = 0,
                           LinkOverride ov = {})
{
  auto trade = eng.best_trade(removed, ov);
  if (trade.winner < 0 || trade.value < 0)
  {
    return 0;
  }
  return trade.value;
}

/// The cheapest trading chain to `target`, or nothing when unreachable.
inline std::optional<TradingChain> lowest_cost_chain(const EffectiveNetwork &eff,
                                                     const AgentId &         target)
{
  NetworkEngine eng(eff);
  int           t = eng.index_of(target);
  if (t < 0)
  {
    return std::nullopt;
  }
  auto path = eng.min_cost_chain(t);
  if (!path.has_value())
  {
    return std::nullopt;
  }
  return detail::to_chain(eng, *path);
}

/// Every simple path from a seller neighbour to `target`, with exact costs,
/// in lexicographic order. Brute-force oracle for small instances; work is
/// capped to guard against runaway growth.
inline std::vector<TradingChain> enumerate_all_chains(const EffectiveNetwork &eff,
                                                      const AgentId &         target,
                                                      std::size_t cap = default_enum_cap())
{
  std::vector<TradingChain> chains;
  if (eff.participants.count(target) == 0)
  {
    return chains;
  }
  std::vector<AgentId> path;
  std::set<AgentId>    on_path;
  Rational             acc        = 0;
  std::size_t          expansions = 0;

  auto dfs = [&](auto &&self, const AgentId &at) -> void {
    if (++expansions > cap)
    {
      throw InstanceTooLarge("chain enumeration exceeded " + std::to_string(cap) +
                             " expansions");
    }
    path.push_back(at);
    on_path.insert(at);
    if (at == target)
    {
      chains.push_back({path, acc});
    }
    else if (auto it = eff.effective_links.find(at); it != eff.effective_links.end())
    {
      acc += eff.base.agent(at).cost;
      for (const auto &next : it->second)
      {
        if (on_path.count(next) == 0)
        {
          self(self, next);
        }
      }
      acc -= eff.base.agent(at).cost;
    }
    on_path.erase(at);
    path.pop_back();
  };

  for (const auto &first : eff.base.seller_neighbours)
  {
    if (eff.participants.count(first) != 0)
    {
      dfs(dfs, first);
    }
  }
  return chains;
}

/// d_i: the agents that lose all their chains when i disappears (i included).
/// Computed by diffing reachability with and without i.
inline std::set<AgentId> diffusion_critical_set(const EffectiveNetwork &eff, const AgentId &i)
{
  NetworkEngine eng(eff);
  int           idx = eng.index_of(i);
  if (idx < 0 || (eng.closure() & NetworkEngine::bit(idx)) == 0)
  {
    return {};
  }
  std::uint64_t with    = eng.closure();
  std::uint64_t without = eng.closure(NetworkEngine::bit(idx));
  return eng.ids_of(with & ~without);
}

/// C_i: the agents every chain to i passes through, ordered from the seller
/// side outward (ends with i itself). Equals the ordered intersection of all
/// chains to i.
inline std::vector<AgentId> diffusion_critical_sequence(const EffectiveNetwork &eff,
                                                        const AgentId &         i)
{
  std::vector<AgentId> seq;
  NetworkEngine        eng(eff);
  int                  t = eng.index_of(i);
  if (t < 0)
  {
    return seq;
  }
  auto path = eng.min_cost_chain(t);
  if (!path.has_value())
  {
    return seq;
  }
  for (int j : *path)
  {
    if ((eng.closure(NetworkEngine::bit(j)) & NetworkEngine::bit(t)) == 0)
    {
      seq.push_back(eng.id_at(j));
    }
  }
  return seq;
}

/// Maximum attainable welfare once the given agents are deleted and the
/// participation closure is recomputed; 0 when no buyer remains reachable or
/// every surplus is negative.
inline Rational welfare_without(const EffectiveNetwork &eff, const std::set<AgentId> &removed)
{
  NetworkEngine eng(eff);
  return welfare_of(eng, eng.mask_of(removed));
}

/// Winner, chain and welfare of the efficient allocation, with deterministic
/// smallest-id tie-breaking; the tie flag records whether a tie was broken.
inline AllocationResult efficient_allocation(const EffectiveNetwork &eff)
{
  NetworkEngine eng(eff);
  return allocate(eng);
}

}  // namespace graph
}  // namespace netauction
