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

#include "netauction/mechanisms.hpp"
#include "netauction/verification.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace netauction {
namespace io {

using Json = nlohmann::ordered_json;
using model::AgentId;
using model::EconomicNetwork;

class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Integers are emitted as JSON numbers; anything else becomes an exact
/// decimal string. Floating point never appears in outputs.
inline Json rational_to_json(const Rational &value)
{
  if (denominator(value) == 1)
  {
    const BigInt &num = numerator(value);
    if (num >= BigInt(std::numeric_limits<long long>::min()) &&
        num <= BigInt(std::numeric_limits<long long>::max()))
    {
      return num.convert_to<long long>();
    }
  }
  return format_rational(value);
}

/// Amounts are accepted as JSON integers or as decimal strings parsed
/// exactly; non-integer JSON numbers are rejected because binary floats do
/// not round-trip decimal amounts.
inline Rational rational_from_json(const Json &j, const std::string &what)
{
  if (j.is_number_integer())
  {
    return Rational(j.get<long long>());
  }
  if (j.is_number_unsigned())
  {
    return Rational(BigInt(j.get<unsigned long long>()));
  }
  if (j.is_string())
  {
    auto parsed = parse_rational(j.get<std::string>());
    if (!parsed.has_value())
    {
      throw ParseError(what + ": cannot parse amount '" + j.get<std::string>() + "'");
    }
    return *parsed;
  }
  if (j.is_number_float())
  {
    throw ParseError(what + ": non-integer amounts must be decimal strings");
  }
  throw ParseError(what + ": expected a number or decimal string");
}

inline std::string rational_string(const Rational &value)
{
  return format_rational(value);
}

namespace detail {

inline void expect_keys(const Json &obj, const std::set<std::string> &allowed,
                        const std::string &what)
{
  for (const auto &[key, value] : obj.items())
  {
    if (allowed.count(key) == 0)
    {
      throw ParseError(what + ": unexpected key '" + key + "'");
    }
  }
}

inline std::set<AgentId> id_set_from_json(const Json &j, const std::string &what)
{
  if (!j.is_array())
  {
    throw ParseError(what + ": expected an array of agent ids");
  }
  std::set<AgentId> out;
  for (const auto &item : j)
  {
    if (!item.is_string())
    {
      throw ParseError(what + ": agent ids must be strings");
    }
    out.insert(item.get<AgentId>());
  }
  return out;
}

}  // namespace detail

inline EconomicNetwork network_from_json(const Json &j)
{
  if (!j.is_object())
  {
    throw ParseError("network: expected a JSON object");
  }
  detail::expect_keys(j, {"seller_neighbours", "agents"}, "network");
  if (!j.contains("seller_neighbours") || !j.contains("agents"))
  {
    throw ParseError("network: requires 'seller_neighbours' and 'agents'");
  }

  EconomicNetwork net;
  net.seller_neighbours =
      detail::id_set_from_json(j.at("seller_neighbours"), "seller_neighbours");

  if (!j.at("agents").is_array())
  {
    throw ParseError("network: 'agents' must be an array");
  }
  for (const auto &entry : j.at("agents"))
  {
    if (!entry.is_object() || !entry.contains("id") || !entry.at("id").is_string())
    {
      throw ParseError("agents: every entry needs a string 'id'");
    }
    AgentId id = entry.at("id").get<AgentId>();
    if (net.has_agent(id))
    {
      throw ParseError("agents: duplicate id '" + id + "'");
    }
    if (!entry.contains("kind") || !entry.at("kind").is_string())
    {
      throw ParseError("agent '" + id + "': needs a string 'kind'");
    }
    std::string kind = entry.at("kind").get<std::string>();
    if (kind == "buyer")
    {
      detail::expect_keys(entry, {"id", "kind", "bid"}, "buyer '" + id + "'");
      if (!entry.contains("bid"))
      {
        throw ParseError("buyer '" + id + "': missing 'bid'");
      }
      net.add_buyer(id, rational_from_json(entry.at("bid"), "buyer '" + id + "' bid"));
    }
    else if (kind == "intermediary")
    {
      detail::expect_keys(entry, {"id", "kind", "cost", "neighbours"},
                          "intermediary '" + id + "'");
      if (!entry.contains("cost") || !entry.contains("neighbours"))
      {
        throw ParseError("intermediary '" + id + "': missing 'cost' or 'neighbours'");
      }
      net.add_intermediary(
          id, rational_from_json(entry.at("cost"), "intermediary '" + id + "' cost"),
          detail::id_set_from_json(entry.at("neighbours"),
                                   "intermediary '" + id + "' neighbours"));
    }
    else
    {
      throw ParseError("agent '" + id + "': unknown kind '" + kind + "'");
    }
  }
  return net;
}

inline Json network_to_json(const EconomicNetwork &net)
{
  Json j;
  j["seller_neighbours"] = Json::array();
  for (const auto &id : net.seller_neighbours)
  {
    j["seller_neighbours"].push_back(id);
  }
  j["agents"] = Json::array();
  for (const auto &[id, agent] : net.agents)
  {
    Json a;
    a["id"] = id;
    if (agent.is_buyer())
    {
      a["kind"] = "buyer";
      a["bid"]  = rational_to_json(agent.bid);
    }
    else
    {
      a["kind"] = "intermediary";
      a["cost"] = rational_to_json(agent.cost);
      a["neighbours"] = Json::array();
      for (const auto &ref : agent.neighbours)
      {
        a["neighbours"].push_back(ref);
      }
    }
    j["agents"].push_back(std::move(a));
  }
  return j;
}

/// Monetary values in outcome reports are always exact decimal strings; only
/// nonzero payments are listed.
inline Json outcome_to_json(const mechanisms::MechanismOutcome &out)
{
  Json j;
  j["mechanism"] = mechanisms::mechanism_name(out.mechanism);
  j["winner"]    = out.winner.has_value() ? Json(*out.winner) : Json(nullptr);
  if (out.chain.has_value())
  {
    Json chain = Json::array();
    for (const auto &id : out.chain->path)
    {
      chain.push_back(id);
    }
    j["chain"] = std::move(chain);
  }
  else
  {
    j["chain"] = nullptr;
  }
  j["payments"] = Json::object();
  for (const auto &[id, x] : out.payments)
  {
    if (x != 0)
    {
      j["payments"][id] = rational_string(x);
    }
  }
  j["revenue"] = rational_string(out.revenue);
  j["welfare"] = rational_string(out.welfare);
  return j;
}

inline Json deviation_to_json(const verification::DeviationSpec &spec)
{
  Json j;
  std::visit(
      [&](const auto &dev) {
        using T = std::decay_t<decltype(dev)>;
        if constexpr (std::is_same_v<T, verification::AltBid>)
        {
          j["kind"]  = "alt-bid";
          j["value"] = rational_string(dev.value);
        }
        else if constexpr (std::is_same_v<T, verification::AltShare>)
        {
          j["kind"]   = "alt-share";
          j["shared"] = Json::array();
          for (const auto &id : dev.shared)
          {
            j["shared"].push_back(id);
          }
        }
        else
        {
          j["kind"] = "withdraw";
        }
      },
      spec.deviation);
  return j;
}

inline Json audit_to_json(const verification::IncentiveAudit &audit)
{
  Json j;
  j["mechanism"] = mechanisms::mechanism_name(audit.mechanism);
  j["reports"]   = Json::array();
  for (const auto &rep : audit.reports)
  {
    Json r;
    r["agent"]            = rep.agent;
    r["truthful_utility"] = rational_string(rep.truthful_utility);
    r["best_deviation"] =
        rep.best_deviation.has_value() ? deviation_to_json(*rep.best_deviation) : Json(nullptr);
    r["best_deviation_utility"] = rational_string(rep.best_deviation_utility);
    r["property_violated"]      = verification::property_name(rep.property_violated);
    j["reports"].push_back(std::move(r));
  }
  j["summary"] = {{"ic_violations", audit.ic_violations},
                  {"ir_violations", audit.ir_violations},
                  {"wbb_violations", audit.wbb_violations},
                  {"ties_skipped", audit.ties_skipped}};
  if (audit.truthful_tie)
  {
    j["summary"]["truthful_tie"] = true;
  }
  return j;
}

inline Json comparison_to_json(const verification::RevenueComparison &rc)
{
  Json j;
  j["revenue"] = Json::object();
  for (const auto &[name, value] : rc.revenue)
  {
    j["revenue"][name] = rational_string(value);
  }
  j["bounds_hold"] = rc.bounds_hold;
  j["failures"]    = Json::array();
  for (const auto &f : rc.failures)
  {
    j["failures"].push_back(f);
  }
  return j;
}

inline Json parse_json_text(const std::string &text, const std::string &what)
{
  try
  {
    return Json::parse(text);
  }
  catch (const nlohmann::json::parse_error &err)
  {
    throw ParseError(what + ": " + err.what());
  }
}

inline EconomicNetwork load_network(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParseError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return network_from_json(parse_json_text(buffer.str(), path));
}

inline void save_text(const std::string &path, const std::string &text)
{
  std::ofstream out(path);
  if (!out)
  {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << text;
}

}  // namespace io
}  // namespace netauction
