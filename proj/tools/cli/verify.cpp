#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>

#include "campaign.hpp"
#include "gumbelscale/asymptotics.hpp"
#include "gumbelscale/errors.hpp"
#include "gumbelscale/oracle.hpp"
#include "gumbelscale/parallel.hpp"
#include "gumbelscale/quadrature.hpp"
#include "gumbelscale/report.hpp"
#include "gumbelscale/rng.hpp"

namespace gumbelscale::cli {
namespace {

struct OracleValue {
  double log_value;
  double error;  // quadrature log-error estimate or MC relative std error
};

struct VerifyCase {
  std::string id;
  std::string kind;
  std::string method;
  std::vector<double> u;
  double tolerance = 0.0;
  std::optional<std::uint64_t> seed;
  std::function<double(double)> predict;
  std::function<OracleValue(double, std::size_t)> oracle;
  Json echo;  // effective parameters
};

struct CaseResult {
  std::optional<VerificationReport> report;
  std::vector<double> oracle_error;
  std::string error;
  bool config_error = false;
};

double resolve_tolerance(const Json& c, const Json& campaign, const RunOptions& opts,
                         const std::string& where) {
  double tol;
  if (opts.tolerance) {
    tol = *opts.tolerance;
  } else if (c.contains("tolerance")) {
    tol = json_positive(c, "tolerance", where);
  } else if (campaign.contains("tolerance")) {
    tol = json_positive(campaign, "tolerance", "campaign");
  } else {
    throw ConfigError(where + ": no tolerance in the case, the campaign or --tolerance");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError(where + ": tolerance must be positive");
  return tol;
}

// Law of sigma(T) = C T^{alpha/2} when log P(T > t) = log g(t) - L t^p with a
// pure-power g: again Weibullian, with exponent 2p/alpha.
TailModel sigma_of_horizon(const RegVarFn& g, const SupIntervalConstants& k, double alpha,
                           double C) {
  if (!g.is_pure_power()) {
    throw UnsupportedVariant("sup_interval: the horizon prefactor g must be a pure power");
  }
  const double index = 2.0 * g.index() / alpha;
  return TailModel::weibullian(RegVarFn(index, g.scale() * std::pow(C, -index)), k.L_tilde,
                               k.p_tilde);
}

VerifyCase parse_case(const Json& c, const Json& campaign, const RunOptions& opts,
                      std::vector<std::string>& seen, std::uint64_t case_seed) {
  VerifyCase vc;
  vc.id = take_case_id(c, seen);
  const std::string where = "case '" + vc.id + "'";
  reject_unknown_keys(c,
                      {"case_id", "kind", "first", "second", "p", "L", "alpha", "C", "g", "u",
                       "tolerance", "oracle"},
                      where);
  if (!c.contains("kind") || !c.at("kind").is_string()) throw ConfigError(where + ": missing kind");
  vc.kind = c.at("kind").get<std::string>();
  vc.u = increasing_grid(c, "u", where);
  vc.tolerance = resolve_tolerance(c, campaign, opts, where);

  std::optional<TailModel> first, second;
  Json prediction;
  prediction["kind"] = vc.kind;
  if (vc.kind == "product") {
    if (!c.contains("first") || !c.contains("second")) {
      throw ConfigError(where + ": product cases need first and second");
    }
    first = tail_model_from_json(c.at("first"));
    second = tail_model_from_json(c.at("second"));
    const double cutoff = product_validity_cutoff(*first, *second);
    if (!(vc.u.front() > cutoff)) {
      throw PreconditionError(where + ": u-grid starts at or below the validity cutoff", cutoff);
    }
    prediction["first"] = tail_model_to_json(*first);
    prediction["second"] = tail_model_to_json(*second);
    prediction["validity_cutoff"] = json_number(cutoff);
    vc.predict = [f = *first, s = *second](double u) {
      return product_tail_weibullian_log(u, f, s);
    };
  } else if (vc.kind == "sup_interval") {
    const double p = json_positive(c, "p", where);
    const double L = json_positive(c, "L", where);
    const double alpha = json_positive(c, "alpha", where);
    const double C = json_positive(c, "C", where);
    const RegVarFn g = c.contains("g") ? regvar_from_json(c.at("g")) : RegVarFn::unit();
    const auto k = sup_interval_constants(p, L, alpha, C);
    first = sigma_of_horizon(g, k, alpha, C);
    second = TailModel::standard_normal();
    const RegVarFn g_tilde = first->weibullian_params().g;
    prediction["p"] = p;
    prediction["L"] = L;
    prediction["alpha"] = alpha;
    prediction["C"] = C;
    prediction["g"] = regvar_to_json(g);
    prediction["p_tilde"] = json_number(k.p_tilde);
    prediction["L_tilde"] = json_number(k.L_tilde);
    prediction["B_tilde"] = json_number(k.B_tilde);
    prediction["g_tilde"] = regvar_to_json(g_tilde);
    vc.predict = [k, g_tilde](double u) {
      return sup_interval_tail_log(u, k.p_tilde, k.L_tilde, g_tilde);
    };
  } else {
    throw ConfigError(where + ": unknown kind '" + vc.kind + "'");
  }

  if (!c.contains("oracle")) throw ConfigError(where + ": missing oracle");
  const Json& o = c.at("oracle");
  const std::string ow = where + " oracle";
  if (!o.is_object() || !o.contains("method") || !o.at("method").is_string()) {
    throw ConfigError(ow + ": missing method");
  }
  vc.method = o.at("method").get<std::string>();
  // The oracle may integrate exact laws that differ from the Weibullian forms
  // fed to the prediction (e.g. |N| itself against its Mills-ratio form).
  if (o.contains("first")) first = tail_model_from_json(o.at("first"));
  if (o.contains("second")) second = tail_model_from_json(o.at("second"));
  Json oecho;
  oecho["method"] = vc.method;
  if (vc.method == "quadrature") {
    reject_unknown_keys(o, {"method", "first", "second", "abs_tol", "max_panels", "drop_nats"}, ow);
    QuadratureOptions q;
    if (o.contains("abs_tol")) q.abs_tol = json_positive(o, "abs_tol", ow);
    if (o.contains("max_panels")) q.max_panels = static_cast<int>(count_field(o, "max_panels", ow));
    if (o.contains("drop_nats")) q.drop_nats = json_positive(o, "drop_nats", ow);
    oecho["first"] = tail_model_to_json(*first);
    oecho["second"] = tail_model_to_json(*second);
    oecho["abs_tol"] = q.abs_tol;
    oecho["max_panels"] = q.max_panels;
    oecho["drop_nats"] = q.drop_nats;
    vc.oracle = [f = *first, s = *second, q](double u, std::size_t) {
      const auto r = product_tail_quadrature(u, f, s, q);
      return OracleValue{r.log_value, r.abs_log_error_estimate};
    };
  } else if (vc.method == "conditional_mc") {
    reject_unknown_keys(o, {"method", "first", "second", "draws"}, ow);
    const std::size_t draws = count_field(o, "draws", ow);
    oecho["first"] = tail_model_to_json(*first);
    oecho["second"] = tail_model_to_json(*second);
    oecho["draws"] = draws;
    vc.seed = case_seed;
    vc.oracle = [f = *first, s = *second, draws, case_seed](double u, std::size_t row) {
      const std::uint64_t row_seed = Rng::substream(case_seed, row)();
      const auto r = conditional_mc_tail(u, f, s, draws, row_seed, 1);
      if (!r.warning.empty()) throw NumericalError(r.warning);
      return OracleValue{r.log_estimate, r.log_std_error};
    };
  } else if (vc.method == "bessel") {
    // Closed form for |N1 N2|, independent of the quadrature code.
    reject_unknown_keys(o, {"method"}, ow);
    vc.oracle = [](double u, std::size_t) { return OracleValue{normal_product_log_tail(u), 0.0}; };
  } else {
    throw ConfigError(ow + ": unknown method '" + vc.method + "'");
  }

  vc.echo["kind"] = vc.kind;
  vc.echo["prediction"] = std::move(prediction);
  vc.echo["oracle"] = std::move(oecho);
  return vc;
}

CaseResult run_case(const VerifyCase& vc) {
  CaseResult res;
  try {
    VerificationReport report(vc.id, vc.method, vc.tolerance, vc.seed);
    for (std::size_t i = 0; i < vc.u.size(); ++i) {
      const OracleValue o = vc.oracle(vc.u[i], i);
      report.add(vc.u[i], vc.predict(vc.u[i]), o.log_value);
      res.oracle_error.push_back(o.error);
    }
    res.report = std::move(report);
  } catch (const DomainError& e) {
    res.error = e.what();
    res.config_error = true;
  } catch (const UnsupportedVariant& e) {
    res.error = e.what();
    res.config_error = true;
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

}  // namespace

int run_verify(const std::filesystem::path& campaign_path, const RunOptions& opts) {
  const Json campaign = load_campaign(campaign_path);
  reject_unknown_keys(campaign, {"seed", "tolerance", "cases"}, "campaign");
  const SeedChoice seed = choose_seed(campaign, opts.seed);
  const Json& list = case_list(campaign, "cases");

  std::vector<VerifyCase> cases;
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    cases.push_back(parse_case(list[i], campaign, opts, seen, Rng::substream(seed.value, i)()));
  }

  std::vector<CaseResult> results(cases.size());
  parallel_for(cases.size(), opts.workers,
               [&](std::size_t i) { results[i] = run_case(cases[i]); });

  bool all_pass = true;
  bool config_error = false;
  Json summary;
  summary["command"] = "verify";
  summary["campaign"] = campaign_path.filename().string();
  summary["seed"] = seed.value;
  summary["seed_source"] = seed.source;
  Json entries = Json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const VerifyCase& vc = cases[i];
    const CaseResult& r = results[i];
    const std::string stem = vc.id + "_" + vc.method;
    Json j;
    bool pass = false;
    double worst = 0.0;
    if (r.report) {
      j = r.report->to_json();
      pass = r.report->all_pass();
      for (const auto& row : r.report->rows()) worst = std::max(worst, std::abs(row.ratio - 1.0));
      Json err = Json::array();
      for (double e : r.oracle_error) err.push_back(json_number(e));
      j["oracle_error"] = std::move(err);
      write_output(opts, stem + ".csv", r.report->to_csv());
    } else {
      j["case_id"] = vc.id;
      j["method"] = vc.method;
      j["tolerance"] = vc.tolerance;
      j["all_pass"] = false;
      j["error"] = r.error;
      config_error = config_error || r.config_error;
    }
    j["parameters"] = vc.echo;
    write_output(opts, stem + ".json", j.dump(2) + "\n");
    all_pass = all_pass && pass;

    std::cout << vc.id << ' ' << vc.method << ' ' << (pass ? "PASS" : "FAIL");
    if (r.report) {
      std::cout << " rows=" << r.report->rows().size() << " max|ratio-1|=" << format_double(worst);
    } else {
      std::cout << " error: " << r.error;
    }
    std::cout << '\n';
    entries.push_back({{"case_id", vc.id}, {"method", vc.method}, {"all_pass", pass}});
  }
  summary["all_pass"] = all_pass;
  summary["cases"] = std::move(entries);
  write_output(opts, "verify_summary.json", summary.dump(2) + "\n");
  if (config_error) return kExitConfig;
  return all_pass ? kExitOk : kExitFailed;
}

}  // namespace gumbelscale::cli
