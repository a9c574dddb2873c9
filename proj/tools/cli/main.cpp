#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "campaign.hpp"
#include "gumbelscale/asymptotics.hpp"
#include "gumbelscale/errors.hpp"

namespace {

using gumbelscale::Json;
using gumbelscale::rounded_number;
namespace cli = gumbelscale::cli;

struct ConstantsArgs {
  bool sup_interval = false;
  double p1 = 0, L1 = 0, p2 = 0, L2 = 0;
  double p = 0, L = 0, alpha = 0, C = 0;
};

int run_constants(const ConstantsArgs& a, CLI::App* sub) {
  Json j;
  if (a.sup_interval) {
    for (const char* name : {"--p", "--L", "--alpha", "--C"}) {
      if (sub->count(name) == 0) throw cli::ConfigError(std::string(name) + " is required");
    }
    const auto k = gumbelscale::sup_interval_constants(a.p, a.L, a.alpha, a.C);
    j["p_tilde"] = rounded_number(k.p_tilde);
    j["L_tilde"] = rounded_number(k.L_tilde);
    j["B_tilde"] = rounded_number(k.B_tilde);
  } else {
    for (const char* name : {"--p1", "--L1", "--p2", "--L2"}) {
      if (sub->count(name) == 0) throw cli::ConfigError(std::string(name) + " is required");
    }
    const auto k = gumbelscale::product_constants(a.p1, a.L1, a.p2, a.L2);
    j["A"] = rounded_number(k.A);
    j["B"] = rounded_number(k.B);
    j["p_star"] = rounded_number(k.p_star);
    j["D"] = rounded_number(k.D);
  }
  std::cout << j.dump() << '\n';
  return cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail asymptotics of Gumbel-type products and Gaussian suprema"};
  app.require_subcommand(1);

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Print the product or sup-interval constants as JSON");
  constants->add_flag("--sup-interval", ca.sup_interval, "Constants for the sup over a random interval");
  constants->add_option("--p1", ca.p1, "Exponent of the first factor");
  constants->add_option("--L1", ca.L1, "Rate of the first factor");
  constants->add_option("--p2", ca.p2, "Exponent of the second factor");
  constants->add_option("--L2", ca.L2, "Rate of the second factor");
  constants->add_option("--p", ca.p, "Exponent of the horizon tail");
  constants->add_option("--L", ca.L, "Rate of the horizon tail");
  constants->add_option("--alpha", ca.alpha, "Regular variation index of the variance");
  constants->add_option("--C", ca.C, "Scale of the standard deviation");

  cli::RunOptions opts;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::string campaign;
  std::string input_dir;
  std::string out_dir = ".";

  const auto add_run_flags = [&](CLI::App* sub, bool with_tolerance) {
    sub->add_option("--seed", seed, "Root seed; overrides the file's seed");
    sub->add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
    sub->add_option("--workers", opts.workers, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_tolerance) {
      sub->add_option("--tolerance", tolerance, "Relative tolerance for every case")
          ->check(CLI::PositiveNumber);
    }
  };

  auto* verify = app.add_subcommand("verify", "Compare asymptotic predictions with oracles");
  verify->add_option("campaign", campaign, "Campaign JSON file")->required();
  add_run_flags(verify, true);

  auto* simulate = app.add_subcommand("simulate", "Run Gaussian-process simulations");
  simulate->add_option("campaign", campaign, "Simulation JSON file")->required();
  add_run_flags(simulate, false);

  auto* report = app.add_subcommand("report", "Merge verification CSVs into one table");
  report->add_option("input_dir", input_dir, "Directory holding verification output")->required();
  report->add_option("--out-dir", out_dir, "Directory for report.csv (default: input_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }

  try {
    if (*constants) return run_constants(ca, constants);
    for (auto* sub : {verify, simulate}) {
      if (*sub && sub->count("--seed") > 0) opts.seed = seed;
    }
    if (*verify && verify->count("--tolerance") > 0) opts.tolerance = tolerance;
    opts.out_dir = out_dir;
    if (*verify) return cli::run_verify(campaign, opts);
    if (*simulate) return cli::run_simulate(campaign, opts);
    if (report->count("--out-dir") == 0) opts.out_dir.clear();
    return cli::run_report(input_dir, opts);
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const gumbelscale::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const gumbelscale::UnsupportedVariant& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFailed;
  }
}
