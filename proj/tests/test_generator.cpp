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
#include "netauction/graph_core.hpp"
#include "netauction/json_io.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace netauction;
using model::EconomicNetwork;
using verification::GeneratorConfig;
using verification::generate_network;

namespace {

std::string dump(const EconomicNetwork &net)
{
  return io::network_to_json(net).dump();
}

}  // namespace

TEST_CASE("generation is deterministic per seed")
{
  GeneratorConfig cfg;
  cfg.n_buyers         = 5;
  cfg.n_intermediaries = 4;
  cfg.edge_probability = 0.4;
  cfg.seed             = 99;

  CHECK(dump(generate_network(cfg)) == dump(generate_network(cfg)));

  GeneratorConfig other = cfg;
  other.seed            = 100;
  CHECK(dump(generate_network(cfg)) != dump(generate_network(other)));

  GeneratorConfig tree = cfg;
  tree.tree_mode       = true;
  CHECK(dump(generate_network(tree)) == dump(generate_network(tree)));
}

TEST_CASE("generated markets validate and are fully reachable")
{
  for (std::uint64_t seed = 0; seed < 30; ++seed)
  {
    GeneratorConfig cfg;
    cfg.n_buyers         = 4;
    cfg.n_intermediaries = 3;
    cfg.edge_probability = 0.35;
    cfg.tree_mode        = (seed % 2 == 1);
    cfg.seed             = seed;

    EconomicNetwork net = generate_network(cfg);
    CHECK(model::validate_network(net).empty());

    auto eff = model::apply_reports(net, model::truthful_profile(net));
    CHECK(eff.participants.size() == net.agents.size());
  }
}

TEST_CASE("zero edge probability degenerates to a star")
{
  GeneratorConfig cfg;
  cfg.n_buyers         = 3;
  cfg.n_intermediaries = 2;
  cfg.edge_probability = 0.0;
  cfg.seed             = 5;

  EconomicNetwork net = generate_network(cfg);
  CHECK(net.seller_neighbours.size() == net.agents.size());
  for (const auto &[id, agent] : net.agents)
  {
    CHECK(agent.neighbours.empty());
  }
}

TEST_CASE("unit edge probability wires every permitted link")
{
  GeneratorConfig cfg;
  cfg.n_buyers         = 2;
  cfg.n_intermediaries = 3;
  cfg.edge_probability = 1.0;
  cfg.seed             = 5;

  EconomicNetwork net = generate_network(cfg);
  CHECK(net.seller_neighbours == std::set<model::AgentId>{"I01"});
  CHECK(net.agent("I01").neighbours ==
        std::set<model::AgentId>{"B01", "B02", "I02", "I03"});
  CHECK(net.agent("I02").neighbours == std::set<model::AgentId>{"B01", "B02", "I03"});
  CHECK(net.agent("I03").neighbours == std::set<model::AgentId>{"B01", "B02"});
}

TEST_CASE("tree mode yields trees with single chains")
{
  for (std::uint64_t seed = 200; seed < 220; ++seed)
  {
    GeneratorConfig cfg;
    cfg.n_buyers         = 4;
    cfg.n_intermediaries = 3;
    cfg.tree_mode        = true;
    cfg.seed             = seed;

    EconomicNetwork net = generate_network(cfg);
    CHECK(model::is_tree(net));

    auto eff = model::apply_reports(net, model::truthful_profile(net));
    for (const auto &id : eff.participants)
    {
      CHECK(graph::enumerate_all_chains(eff, id).size() == 1);
    }
  }
}

TEST_CASE("amounts stay on the eighths grid within bounds")
{
  GeneratorConfig cfg;
  cfg.n_buyers         = 6;
  cfg.n_intermediaries = 4;
  cfg.max_bid          = Rational(7, 2);
  cfg.max_cost         = 2;
  cfg.seed             = 17;

  EconomicNetwork net = generate_network(cfg);
  for (const auto &[id, agent] : net.agents)
  {
    const Rational &amount = agent.is_buyer() ? agent.bid : agent.cost;
    const Rational &bound  = agent.is_buyer() ? cfg.max_bid : cfg.max_cost;
    CHECK(amount >= 0);
    CHECK(amount <= bound);
    CHECK(BigInt(8) % denominator(amount) == 0);
  }
}

TEST_CASE("identifiers are zero-padded and disjoint")
{
  GeneratorConfig cfg;
  cfg.n_buyers         = 11;
  cfg.n_intermediaries = 12;
  cfg.seed             = 3;

  EconomicNetwork net = generate_network(cfg);
  CHECK(net.has_agent("B01"));
  CHECK(net.has_agent("B11"));
  CHECK(net.has_agent("I01"));
  CHECK(net.has_agent("I12"));
  CHECK(static_cast<int>(net.agents.size()) == 23);
}

TEST_CASE("invalid configurations are rejected")
{
  GeneratorConfig cfg;

  cfg.n_buyers = -1;
  CHECK_THROWS_AS(generate_network(cfg), std::invalid_argument);

  cfg          = GeneratorConfig{};
  cfg.n_buyers = 40;
  cfg.n_intermediaries = 40;
  CHECK_THROWS_AS(generate_network(cfg), std::invalid_argument);

  cfg                  = GeneratorConfig{};
  cfg.edge_probability = 1.5;
  CHECK_THROWS_AS(generate_network(cfg), std::invalid_argument);

  cfg         = GeneratorConfig{};
  cfg.max_bid = -1;
  CHECK_THROWS_AS(generate_network(cfg), std::invalid_argument);
}

TEST_CASE("degenerate sizes still generate")
{
  GeneratorConfig cfg;
  cfg.n_buyers         = 0;
  cfg.n_intermediaries = 0;
  EconomicNetwork empty = generate_network(cfg);
  CHECK(empty.agents.empty());
  CHECK(empty.seller_neighbours.empty());

  cfg.n_buyers = 1;
  EconomicNetwork solo = generate_network(cfg);
  CHECK(solo.agents.size() == 1);
  CHECK(solo.seller_neighbours == std::set<model::AgentId>{"B01"});
}
