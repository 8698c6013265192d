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

#include <cmath>
#include <random>

namespace netauction {
namespace verification {

using model::AgentId;
using model::EconomicNetwork;

/// Deterministic pseudo-random market description: identical configs produce
/// byte-identical networks on every platform.
struct GeneratorConfig
{
  int           n_buyers          = 4;
  int           n_intermediaries  = 3;
  double        edge_probability  = 0.35;
  Rational      max_bid           = 10;
  Rational      max_cost          = 5;
  bool          tree_mode         = false;
  std::uint64_t seed              = 0;
};

namespace detail {

/// Uniform draw from [0, n) by rejection; std::uniform_int_distribution is
/// implementation-defined and would break cross-platform determinism.
inline std::uint64_t rand_below(std::mt19937_64 &rng, std::uint64_t n)
{
  if (n <= 1)
  {
    return 0;
  }
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t       r;
  do
  {
    r = rng();
  } while (r >= limit);
  return r % n;
}

inline bool draw_edge(std::mt19937_64 &rng, std::uint64_t p_millionths)
{
  return rand_below(rng, 1000000) < p_millionths;
}

/// Amount on the eighths grid in [0, max], drawn uniformly.
inline Rational rand_amount(std::mt19937_64 &rng, const Rational &max)
{
  BigInt eighths = numerator(max) * 8 / denominator(max);
  if (eighths < 0)
  {
    eighths = 0;
  }
  auto steps = eighths.convert_to<std::uint64_t>();
  return Rational(BigInt(rand_below(rng, steps + 1)), BigInt(8));
}

/// Parent array of a uniformly random labelled tree on nodes {0..k}, rooted
/// at 0; decodes a uniform random code sequence.
inline std::vector<int> random_tree_parents(std::mt19937_64 &rng, int k)
{
  std::vector<int> parent(k + 1, -1);
  if (k == 0)
  {
    return parent;
  }
  std::vector<std::vector<int>> adj(k + 1);
  if (k == 1)
  {
    adj[0].push_back(1);
    adj[1].push_back(0);
  }
  else
  {
    std::vector<int> code(k - 1);
    for (auto &x : code)
    {
      x = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(k) + 1));
    }
    std::vector<int> degree(k + 1, 1);
    for (int x : code)
    {
      ++degree[x];
    }
    for (int x : code)
    {
      for (int j = 0; j <= k; ++j)
      {
        if (degree[j] == 1)
        {
          adj[j].push_back(x);
          adj[x].push_back(j);
          --degree[j];
          --degree[x];
          break;
        }
      }
    }
    int u = -1;
    for (int j = 0; j <= k; ++j)
    {
      if (degree[j] == 1)
      {
        if (u < 0)
        {
          u = j;
        }
        else
        {
          adj[u].push_back(j);
          adj[j].push_back(u);
          break;
        }
      }
    }
  }
  std::vector<int> stack{0};
  std::vector<bool> seen(k + 1, false);
  seen[0] = true;
  while (!stack.empty())
  {
    int at = stack.back();
    stack.pop_back();
    for (int next : adj[at])
    {
      if (!seen[next])
      {
        seen[next]   = true;
        parent[next] = at;
        stack.push_back(next);
      }
    }
  }
  return parent;
}

inline AgentId padded_id(char prefix, int n)
{
  std::string id(1, prefix);
  if (n < 10)
  {
    id.push_back('0');
  }
  id += std::to_string(n);
  return id;
}

}  // namespace detail

/// Builds a valid market where every agent is reachable under full sharing.
/// Tree mode draws a uniform tree over the seller and the intermediaries and
/// hangs each buyer off one uniformly chosen node. Otherwise each agent gets
/// an independent chance of a link from every earlier intermediary and is
/// adopted by the seller directly when no link materializes.
inline EconomicNetwork generate_network(const GeneratorConfig &cfg)
{
  if (cfg.n_buyers < 0 || cfg.n_intermediaries < 0)
  {
    throw std::invalid_argument("agent counts must be nonnegative");
  }
  if (cfg.n_buyers + cfg.n_intermediaries > 64)
  {
    throw std::invalid_argument("generator supports at most 64 agents");
  }
  if (cfg.edge_probability < 0.0 || cfg.edge_probability > 1.0)
  {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
  if (cfg.max_bid < 0 || cfg.max_cost < 0)
  {
    throw std::invalid_argument("amount bounds must be nonnegative");
  }

  std::mt19937_64 rng(cfg.seed);
  const int       k = cfg.n_intermediaries;
  const auto      p = static_cast<std::uint64_t>(std::llround(cfg.edge_probability * 1000000.0));

  EconomicNetwork                 net;
  std::vector<AgentId>            inter_ids(k + 1);
  std::vector<std::set<AgentId>>  inter_links(k + 1);
  for (int j = 1; j <= k; ++j)
  {
    inter_ids[j] = detail::padded_id('I', j);
  }

  auto attach = [&](int parent, const AgentId &child) {
    if (parent == 0)
    {
      net.seller_neighbours.insert(child);
    }
    else
    {
      inter_links[parent].insert(child);
    }
  };

  if (cfg.tree_mode)
  {
    auto parent = detail::random_tree_parents(rng, k);
    for (int j = 1; j <= k; ++j)
    {
      attach(parent[j], inter_ids[j]);
    }
    for (int b = 1; b <= cfg.n_buyers; ++b)
    {
      int at = static_cast<int>(detail::rand_below(rng, static_cast<std::uint64_t>(k) + 1));
      attach(at, detail::padded_id('B', b));
    }
  }
  else
  {
    for (int j = 1; j <= k; ++j)
    {
      bool linked = false;
      for (int i = 1; i < j; ++i)
      {
        if (detail::draw_edge(rng, p))
        {
          inter_links[i].insert(inter_ids[j]);
          linked = true;
        }
      }
      if (!linked)
      {
        net.seller_neighbours.insert(inter_ids[j]);
      }
    }
    for (int b = 1; b <= cfg.n_buyers; ++b)
    {
      AgentId id     = detail::padded_id('B', b);
      bool    linked = false;
      for (int i = 1; i <= k; ++i)
      {
        if (detail::draw_edge(rng, p))
        {
          inter_links[i].insert(id);
          linked = true;
        }
      }
      if (!linked)
      {
        net.seller_neighbours.insert(id);
      }
    }
  }

  for (int j = 1; j <= k; ++j)
  {
    net.add_intermediary(inter_ids[j], detail::rand_amount(rng, cfg.max_cost),
                         std::move(inter_links[j]));
  }
  for (int b = 1; b <= cfg.n_buyers; ++b)
  {
    net.add_buyer(detail::padded_id('B', b), detail::rand_amount(rng, cfg.max_bid));
  }
  return net;
}

}  // namespace verification
}  // namespace netauction
