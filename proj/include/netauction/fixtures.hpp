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

namespace netauction {
namespace fixtures {

using model::EconomicNetwork;

/// Tree-shaped reference market. The seller knows intermediaries A and B and
/// buyers J, K directly; A (cost 0) informs buyers C, D and intermediary E
/// (cost 1), which informs buyers G and H; B (cost 10) informs buyer F.
/// The efficient trade sells to H through [A, E, H] at welfare 9.
inline EconomicNetwork tree_market()
{
  EconomicNetwork net;
  net.seller_neighbours = {"A", "B", "J", "K"};
  net.add_intermediary("A", 0, {"C", "D", "E"});
  net.add_intermediary("B", 10, {"F"});
  net.add_intermediary("E", 1, {"G", "H"});
  net.add_buyer("C", 5);
  net.add_buyer("D", 7);
  net.add_buyer("F", 14);
  net.add_buyer("G", 9);
  net.add_buyer("H", 10);
  net.add_buyer("J", 2);
  net.add_buyer("K", 1);
  return net;
}

/// Same market with one overlapping buyer group: B also informs D, so D is
/// reachable through either A (cost 0) or B (cost 10). Used to exercise the
/// threshold computations on a non-tree topology.
inline EconomicNetwork general_market()
{
  EconomicNetwork net = tree_market();
  net.agents["B"].neighbours = {"D", "F"};
  return net;
}

/// Tree market plus a bridge from B to E. E now has two informants, which
/// strips A of its critical position for H and lets A profit by withholding
/// E under the diffusion mechanism.
inline EconomicNetwork bridged_market()
{
  EconomicNetwork net = tree_market();
  net.agents["B"].neighbours = {"E", "F"};
  return net;
}

/// Minimal chain: the seller knows only intermediary M (cost 2), which
/// informs buyer T (bid 10). VCG runs a deficit here; the sharing mechanism
/// does not.
inline EconomicNetwork line_market()
{
  EconomicNetwork net;
  net.seller_neighbours = {"M"};
  net.add_intermediary("M", 2, {"T"});
  net.add_buyer("T", 10);
  return net;
}

/// Two buyers known directly to the seller, bids 5 and 3. Every mechanism
/// degenerates to a second-price auction with revenue 3.
inline EconomicNetwork direct_buyers_market()
{
  EconomicNetwork net;
  net.seller_neighbours = {"X", "Y"};
  net.add_buyer("X", 5);
  net.add_buyer("Y", 3);
  return net;
}

/// Two parallel chains to one buyer: P (cost 3) and Q (cost 2) both inform
/// buyer T (bid 10). Exactly two trading chains exist and the cheaper one
/// wins.
inline EconomicNetwork diamond_market()
{
  EconomicNetwork net;
  net.seller_neighbours = {"P", "Q"};
  net.add_intermediary("P", 3, {"T"});
  net.add_intermediary("Q", 2, {"T"});
  net.add_buyer("T", 10);
  return net;
}

}  // namespace fixtures
}  // namespace netauction
