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
//
// netauction: run single-item auctions over an economic network, audit their
// incentive properties, compare revenues, and generate test markets.
//
// Exit codes: 0 success, 1 parse/usage error, 2 validation or capacity error,
// 3 property-gate failure.

#include "netauction/netauction.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace {

using namespace netauction;
using mechanisms::Mechanism;
using model::EconomicNetwork;

struct ValidationFailure
{
};

EconomicNetwork load_validated(const std::string &path)
{
  EconomicNetwork net        = io::load_network(path);
  auto            violations = model::validate_network(net);
  if (!violations.empty())
  {
    for (const auto &v : violations)
    {
      std::cerr << "validation: " << v.message() << "\n";
    }
    throw ValidationFailure{};
  }
  return net;
}

Mechanism mechanism_from_flag(const std::string &name)
{
  auto parsed = mechanisms::parse_mechanism(name);
  if (!parsed.has_value())
  {
    throw io::ParseError("unknown mechanism '" + name + "'");
  }
  return *parsed;
}

void emit(const std::string &output, const std::string &text)
{
  if (output.empty())
  {
    std::cout << text;
  }
  else
  {
    io::save_text(output, text);
  }
}

std::string outcome_table(const mechanisms::MechanismOutcome &out)
{
  std::ostringstream t;
  t << "mechanism  " << mechanisms::mechanism_name(out.mechanism) << "\n";
  t << "winner     " << (out.winner.has_value() ? *out.winner : std::string("-")) << "\n";
  t << "chain      ";
  if (out.chain.has_value())
  {
    for (std::size_t k = 0; k < out.chain->path.size(); ++k)
    {
      t << (k == 0 ? "" : " -> ") << out.chain->path[k];
    }
  }
  else
  {
    t << "-";
  }
  t << "\n";
  t << "welfare    " << format_rational(out.welfare) << "\n";
  t << "revenue    " << format_rational(out.revenue) << "\n";
  t << "payments\n";
  for (const auto &[id, x] : out.payments)
  {
    if (x != 0)
    {
      t << "  " << id << "  " << format_rational(x) << "\n";
    }
  }
  return t.str();
}

std::string audit_table(const verification::IncentiveAudit &audit, bool efficient)
{
  std::ostringstream t;
  t << "mechanism       " << mechanisms::mechanism_name(audit.mechanism) << "\n";
  t << "ic_violations   " << audit.ic_violations << "\n";
  t << "ir_violations   " << audit.ir_violations << "\n";
  t << "wbb_violations  " << audit.wbb_violations << "\n";
  t << "ties_skipped    " << audit.ties_skipped << "\n";
  t << "efficient       " << (efficient ? "yes" : "no") << "\n";
  for (const auto &rep : audit.reports)
  {
    if (rep.property_violated != verification::Property::none)
    {
      t << "  " << rep.agent << "  " << verification::property_name(rep.property_violated)
        << "  truthful " << format_rational(rep.truthful_utility) << "  best "
        << format_rational(rep.best_deviation_utility) << "\n";
    }
  }
  return t.str();
}

std::string comparison_table(const verification::RevenueComparison &rc)
{
  std::ostringstream t;
  for (const auto &[name, value] : rc.revenue)
  {
    t << name << "  " << format_rational(value) << "\n";
  }
  t << "bounds_hold  " << (rc.bounds_hold ? "yes" : "no") << "\n";
  for (const auto &f : rc.failures)
  {
    t << "  " << f << "\n";
  }
  return t.str();
}

int cmd_run(const std::string &network, const std::string &mech, const std::string &output,
            const std::string &format)
{
  EconomicNetwork net = load_validated(network);
  auto            out =
      mechanisms::run_mechanism(mechanism_from_flag(mech), net, model::truthful_profile(net));
  emit(output,
       format == "table" ? outcome_table(out) : io::outcome_to_json(out).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string &network, const std::string &mech,
               const std::string &resolution, bool expect_violation,
               const std::string &output, const std::string &format)
{
  EconomicNetwork net = load_validated(network);
  auto            res = parse_rational(resolution);
  if (!res.has_value() || *res <= 0)
  {
    throw io::ParseError("bid grid resolution must be a positive amount, got '" +
                         resolution + "'");
  }
  Mechanism m     = mechanism_from_flag(mech);
  auto      audit = verification::check_incentives(net, m, *res);
  bool      efficient = verification::check_efficiency(net, m);

  io::Json j     = io::audit_to_json(audit);
  j["efficient"] = efficient;
  emit(output, format == "table" ? audit_table(audit, efficient) : j.dump(2) + "\n");

  int found = audit.ic_violations + audit.ir_violations + audit.wbb_violations;
  if (expect_violation)
  {
    return found > 0 ? 0 : 3;
  }
  int gated = 0;
  switch (m)
  {
  case Mechanism::csm:
  case Mechanism::vickrey:
    gated = audit.ic_violations + audit.ir_violations + audit.wbb_violations;
    break;
  case Mechanism::vcg:
    gated = audit.ic_violations + audit.ir_violations;
    break;
  case Mechanism::idm_tc:
    gated = model::is_tree(net)
                ? audit.ic_violations + audit.ir_violations + audit.wbb_violations
                : 0;
    break;
  }
  return gated > 0 ? 3 : 0;
}

int cmd_compare(const std::string &network, const std::string &output,
                const std::string &format)
{
  EconomicNetwork net = load_validated(network);
  auto            rc  = verification::compare_revenues(net);
  emit(output,
       format == "table" ? comparison_table(rc) : io::comparison_to_json(rc).dump(2) + "\n");
  return rc.bounds_hold ? 0 : 3;
}

int cmd_gen(const verification::GeneratorConfig &cfg, const std::string &output)
{
  EconomicNetwork net = verification::generate_network(cfg);
  emit(output, io::network_to_json(net).dump(2) + "\n");
  return 0;
}

int cmd_fixtures(const std::string &output_dir)
{
  namespace fs = std::filesystem;
  fs::path dir = output_dir.empty() ? fs::path(".") : fs::path(output_dir);
  fs::create_directories(dir);

  const std::pair<const char *, EconomicNetwork> all[] = {
      {"tree_market.json", fixtures::tree_market()},
      {"general_market.json", fixtures::general_market()},
      {"bridged_market.json", fixtures::bridged_market()},
      {"line_market.json", fixtures::line_market()},
      {"direct_buyers.json", fixtures::direct_buyers_market()},
      {"diamond_market.json", fixtures::diamond_market()},
  };
  for (const auto &[name, net] : all)
  {
    fs::path path = dir / name;
    io::save_text(path.string(), io::network_to_json(net).dump(2) + "\n");
    std::cout << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"single-item auctions over economic networks with transaction costs"};
  app.require_subcommand(1);

  std::string network;
  std::string mechanism;
  std::string output;
  std::string format     = "json";
  std::string resolution = "0.125";
  std::string max_bid    = "10";
  std::string max_cost   = "5";
  bool        expect_violation = false;

  verification::GeneratorConfig gen_cfg;

  auto add_io = [&](CLI::App *cmd, bool needs_mechanism) {
    cmd->add_option("--network", network, "network description file")->required();
    if (needs_mechanism)
    {
      cmd->add_option("--mechanism", mechanism, "mechanism to run")
          ->required()
          ->check(CLI::IsMember({"vickrey", "vcg", "idm-tc", "csm"}));
    }
    cmd->add_option("--output", output, "write the report here instead of stdout");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
  };

  auto *run = app.add_subcommand("run", "run one mechanism on a network");
  add_io(run, true);

  auto *verify = app.add_subcommand("verify", "sweep all unilateral deviations");
  add_io(verify, true);
  verify->add_option("--bid-grid-resolution", resolution,
                     "spacing around pivotal bid values");
  verify->add_flag("--expect-violation", expect_violation,
                   "succeed only if some property is violated");

  auto *compare = app.add_subcommand("compare", "revenue of all mechanisms side by side");
  add_io(compare, false);

  auto *gen = app.add_subcommand("gen", "generate a random market");
  gen->add_option("--buyers", gen_cfg.n_buyers, "number of buyers");
  gen->add_option("--intermediaries", gen_cfg.n_intermediaries, "number of intermediaries");
  gen->add_option("--edge-prob", gen_cfg.edge_probability, "link probability");
  gen->add_option("--max-bid", max_bid, "upper bound for bids");
  gen->add_option("--max-cost", max_cost, "upper bound for costs");
  gen->add_flag("--tree", gen_cfg.tree_mode, "draw a uniform tree instead");
  gen->add_option("--seed", gen_cfg.seed, "generator seed");
  gen->add_option("--output", output, "write the network here instead of stdout");

  auto *fixt = app.add_subcommand("fixtures", "write the reference markets to disk");
  fixt->add_option("--output", output, "target directory (default: current)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try
  {
    if (run->parsed())
    {
      return cmd_run(network, mechanism, output, format);
    }
    if (verify->parsed())
    {
      return cmd_verify(network, mechanism, resolution, expect_violation, output, format);
    }
    if (compare->parsed())
    {
      return cmd_compare(network, output, format);
    }
    if (gen->parsed())
    {
      auto bid = parse_rational(max_bid);
      auto cost = parse_rational(max_cost);
      if (!bid.has_value() || !cost.has_value())
      {
        throw io::ParseError("amount bounds must be decimal or p/q strings");
      }
      gen_cfg.max_bid  = *bid;
      gen_cfg.max_cost = *cost;
      return cmd_gen(gen_cfg, output);
    }
    return cmd_fixtures(output);
  }
  catch (const io::ParseError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  catch (const std::invalid_argument &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  catch (const ValidationFailure &)
  {
    return 2;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
