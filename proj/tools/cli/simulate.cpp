#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>

#include "campaign.hpp"
#include "gumbelscale/asymptotics.hpp"
#include "gumbelscale/brown_resnick.hpp"
#include "gumbelscale/errors.hpp"
#include "gumbelscale/gof.hpp"
#include "gumbelscale/parallel.hpp"
#include "gumbelscale/report.hpp"
#include "gumbelscale/rng.hpp"
#include "gumbelscale/sup_interval.hpp"
#include "gumbelscale/triangular.hpp"
#include "gumbelscale/variance_model.hpp"

namespace gumbelscale::cli {
namespace {

struct SimOutput {
  std::string samples_csv;
  Json summary;
  bool pass;
};

struct VariogramSpec {
  double scale;
  double alpha;
  Variogram variogram;
};

VariogramSpec variogram_from_json(const Json& c, const std::string& where) {
  if (!c.contains("variogram")) throw ConfigError(where + ": missing variogram");
  const Json& v = c.at("variogram");
  const std::string vw = where + " variogram";
  reject_unknown_keys(v, {"kind", "scale", "alpha"}, vw);
  if (!v.contains("kind") || v.at("kind") != "power") {
    throw ConfigError(vw + ": kind must be \"power\"");
  }
  const double scale = json_positive(v, "scale", vw);
  const double alpha = json_positive(v, "alpha", vw);
  return {scale, alpha, Variogram::power(scale, alpha)};
}

Json variogram_echo(const VariogramSpec& v) {
  return Json{{"kind", "power"}, {"scale", v.scale}, {"alpha", v.alpha}};
}

std::vector<double> time_grid(const Json& c, const std::string& where) {
  auto grid = number_list(c, "grid", where);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError(where + ": grid must be strictly increasing");
  }
  return grid;
}

// Runs body(rng, i) for draws i in [0, draws): chunk k uses substream k of
// `seed`, whichever worker picks it up.
template <class Body>
void chunked(std::size_t draws, std::uint64_t seed, unsigned workers, Body body) {
  parallel_for(chunk_count(draws), workers, [&](std::size_t k) {
    Rng rng = Rng::substream(seed, k);
    const std::size_t end = std::min(draws, (k + 1) * kChunkSize);
    for (std::size_t i = k * kChunkSize; i < end; ++i) body(rng, i);
  });
}

std::string csv_row(std::initializer_list<std::string> lead, const std::vector<double>& xs) {
  std::string line;
  for (const auto& s : lead) {
    if (!line.empty()) line += ',';
    line += s;
  }
  for (double x : xs) {
    line += ',';
    line += format_double(x);
  }
  line += '\n';
  return line;
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t j) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

// Largest KS distance to the standard Gumbel over the grid points.
double worst_ks(const std::vector<std::vector<double>>& rows, std::size_t d, Json& per_point) {
  double worst = 0.0;
  per_point = Json::array();
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = column(rows, j);
    const double ks = ks_statistic(col, gumbel_cdf);
    per_point.push_back(ks);
    worst = std::max(worst, ks);
  }
  return worst;
}

BrownResnickOptions br_options(const Json& c, const std::string& where, Json& echo) {
  BrownResnickOptions o;
  if (c.contains("k_points")) o.k_points = count_field(c, "k_points", where);
  if (c.contains("max_points")) o.max_points = count_field(c, "max_points", where);
  if (c.contains("margin_nats")) o.margin_nats = json_real(c, "margin_nats", where);
  echo["k_points"] = o.k_points;
  echo["max_points"] = o.max_points;
  echo["margin_nats"] = o.margin_nats;
  return o;
}

std::vector<std::vector<double>> br_sample(const BrownResnickSampler& sampler, std::size_t draws,
                                           std::uint64_t seed, unsigned workers,
                                           std::vector<BrownResnickDraw>* raw) {
  std::vector<BrownResnickDraw> out(draws);
  chunked(draws, seed, workers, [&](Rng& rng, std::size_t i) { out[i] = sampler.draw(rng); });
  std::vector<std::vector<double>> values;
  values.reserve(draws);
  for (const auto& d : out) values.push_back(d.values);
  if (raw) *raw = std::move(out);
  return values;
}

SimOutput brown_resnick_case(const Json& c, const std::string& where, std::uint64_t seed,
                             unsigned workers) {
  reject_unknown_keys(c,
                      {"case_id", "kind", "variogram", "grid", "draws", "k_points", "max_points",
                       "margin_nats"},
                      where);
  const auto v = variogram_from_json(c, where);
  const auto grid = time_grid(c, where);
  const std::size_t draws = count_field(c, "draws", where);
  Json params{{"kind", "brown_resnick"}, {"variogram", variogram_echo(v)}, {"grid", grid},
              {"draws", draws}};
  const BrownResnickSampler sampler(v.variogram, grid, br_options(c, where, params));

  std::vector<BrownResnickDraw> raw;
  const auto values = br_sample(sampler, draws, seed, workers, &raw);

  SimOutput out;
  out.samples_csv = "draw,points_used,hit_cap";
  for (std::size_t j = 0; j < grid.size(); ++j) out.samples_csv += ",x" + std::to_string(j);
  out.samples_csv += '\n';
  std::size_t caps = 0, max_points = 0;
  double mean_points = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    out.samples_csv += csv_row({std::to_string(i), std::to_string(raw[i].points_used),
                                raw[i].hit_cap ? "true" : "false"},
                               raw[i].values);
    caps += raw[i].hit_cap ? 1 : 0;
    max_points = std::max(max_points, raw[i].points_used);
    mean_points += static_cast<double>(raw[i].points_used) / static_cast<double>(draws);
  }
  Json ks;
  const double worst = worst_ks(values, grid.size(), ks);
  const double crit = ks_critical_95(draws);
  out.pass = worst <= crit;
  out.summary["parameters"] = std::move(params);
  out.summary["ks"] = std::move(ks);
  out.summary["ks_max"] = worst;
  out.summary["ks_critical_95"] = crit;
  out.summary["mean_points_used"] = mean_points;
  out.summary["max_points_used"] = max_points;
  out.summary["hit_cap_count"] = caps;
  return out;
}

SimOutput triangular_case(const Json& c, const std::string& where, std::uint64_t seed,
                          unsigned workers) {
  reject_unknown_keys(c,
                      {"case_id", "kind", "n", "grid", "variogram", "scaler", "draws", "ks_max",
                       "energy"},
                      where);
  const auto v = variogram_from_json(c, where);
  const auto grid = time_grid(c, where);
  const std::size_t draws = count_field(c, "draws", where);
  const auto n_grid = increasing_grid(c, "n", where);
  if (!c.contains("scaler")) throw ConfigError(where + ": missing scaler");
  const TailModel scaler = tail_model_from_json(c.at("scaler"));
  Json params{{"kind", "triangular"}, {"n", n_grid}, {"grid", grid},
              {"variogram", variogram_echo(v)}, {"scaler", tail_model_to_json(scaler)},
              {"draws", draws}};
  std::optional<double> ks_limit;
  if (c.contains("ks_max")) {
    ks_limit = json_positive(c, "ks_max", where);
    params["ks_max"] = *ks_limit;
  }
  std::size_t energy_draws = 0, reference_draws = 0;
  if (c.contains("energy")) {
    const Json& e = c.at("energy");
    const std::string ew = where + " energy";
    reject_unknown_keys(e, {"draws", "reference_draws"}, ew);
    if (grid.size() < 2) throw ConfigError(ew + ": needs at least two grid points");
    energy_draws = std::min(draws, count_field(e, "draws", ew));
    reference_draws = count_field(e, "reference_draws", ew);
    params["energy"] = {{"draws", energy_draws}, {"reference_draws", reference_draws}};
  }
  for (double n : n_grid) {
    if (n != std::floor(n) || n < 3) throw ConfigError(where + ": n must be integers >= 3");
  }

  std::vector<std::vector<double>> reference;
  if (reference_draws > 0) {
    const BrownResnickSampler br(v.variogram, grid);
    reference = br_sample(br, reference_draws, Rng::substream(seed, n_grid.size())(), workers,
                          nullptr);
  }

  SimOutput out;
  out.samples_csv = "n,draw";
  for (std::size_t j = 0; j < grid.size(); ++j) out.samples_csv += ",x" + std::to_string(j);
  out.samples_csv += '\n';
  Json levels = Json::array();
  std::vector<double> ks_along, energy_along;
  bool any_projected = false;
  for (std::size_t a = 0; a < n_grid.size(); ++a) {
    const auto n = static_cast<std::size_t>(n_grid[a]);
    const TriangularSampler sampler(n, grid, v.variogram, scaler);
    std::vector<std::vector<double>> values(draws);
    chunked(draws, Rng::substream(seed, a)(), workers,
            [&](Rng& rng, std::size_t i) { values[i] = sampler.draw(rng); });
    for (std::size_t i = 0; i < draws; ++i) {
      out.samples_csv += csv_row({std::to_string(n), std::to_string(i)}, values[i]);
    }
    Json ks;
    const double worst = worst_ks(values, grid.size(), ks);
    ks_along.push_back(worst);
    any_projected = any_projected || sampler.projected();
    Json level{{"n", n},
               {"d_n", sampler.norming().d_n},
               {"c_n", sampler.norming().c_n},
               {"projected", sampler.projected()},
               {"ks", std::move(ks)},
               {"ks_max", worst}};
    if (reference_draws > 0) {
      const std::vector<std::vector<double>> head(values.begin(),
                                                  values.begin() + static_cast<long>(energy_draws));
      const double e = energy_distance(head, reference);
      energy_along.push_back(e);
      level["energy_distance"] = e;
    }
    levels.push_back(std::move(level));
  }

  const auto decreasing = [](const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (!(xs[i] < xs[i - 1])) return false;
    }
    return true;
  };
  Json checks;
  checks["ks_decreasing"] = decreasing(ks_along);
  out.pass = checks["ks_decreasing"].get<bool>();
  if (ks_limit) {
    checks["ks_last_within_limit"] = ks_along.back() <= *ks_limit;
    out.pass = out.pass && ks_along.back() <= *ks_limit;
  }
  if (!energy_along.empty()) {
    checks["energy_decreasing"] = decreasing(energy_along);
    out.pass = out.pass && decreasing(energy_along);
  }
  out.summary["parameters"] = std::move(params);
  out.summary["levels"] = std::move(levels);
  out.summary["psd_projection_used"] = any_projected;
  out.summary["checks"] = std::move(checks);
  return out;
}

SimOutput sup_interval_case(const Json& c, const std::string& where, std::uint64_t seed,
                            unsigned workers) {
  reject_unknown_keys(c,
                      {"case_id", "kind", "hurst", "horizon", "draws", "relative_steps",
                       "absolute_step", "coarsen_levels", "max_horizon"},
                      where);
  const double hurst = json_positive(c, "hurst", where);
  if (!c.contains("horizon")) throw ConfigError(where + ": missing horizon");
  const TailModel horizon = tail_model_from_json(c.at("horizon"));
  const std::size_t draws = count_field(c, "draws", where);
  SupGrid g;
  if (c.contains("relative_steps")) g.relative_steps = count_field(c, "relative_steps", where);
  if (c.contains("absolute_step")) g.absolute_step = json_positive(c, "absolute_step", where);
  if (c.contains("coarsen_levels")) {
    g.coarsen_levels = static_cast<int>(count_field(c, "coarsen_levels", where));
  }
  if (c.contains("max_horizon")) g.max_horizon = json_positive(c, "max_horizon", where);
  const VarianceModel model = VarianceModel::fbm(hurst);
  Json params{{"kind", "sup_interval"},
              {"hurst", hurst},
              {"horizon", tail_model_to_json(horizon)},
              {"draws", draws},
              {"relative_steps", g.relative_steps},
              {"absolute_step", g.absolute_step},
              {"coarsen_levels", g.coarsen_levels},
              {"max_horizon", json_number(g.max_horizon)}};
  // Validates the configuration before any work is split out.
  SupIntervalSimulator probe(model, horizon, g);

  std::vector<SupDraw> out_draws(draws);
  const std::size_t chunks = chunk_count(draws);
  std::vector<std::size_t> rejections(chunks, 0);
  parallel_for(chunks, workers, [&](std::size_t k) {
    SupIntervalSimulator sim(model, horizon, g);
    Rng rng = Rng::substream(seed, k);
    const std::size_t end = std::min(draws, (k + 1) * kChunkSize);
    for (std::size_t i = k * kChunkSize; i < end; ++i) out_draws[i] = sim.draw(rng);
    rejections[k] = sim.rejections();
  });

  SimOutput out;
  out.samples_csv = "draw,horizon,sup,endpoint";
  for (int k = 1; k <= g.coarsen_levels; ++k) out.samples_csv += ",sup_coarse" + std::to_string(k);
  out.samples_csv += '\n';
  std::size_t dominated = 0;
  std::vector<double> coarse_gap(static_cast<std::size_t>(g.coarsen_levels), 0.0);
  double mean_sup = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const SupDraw& d = out_draws[i];
    std::vector<double> xs{d.horizon, d.sup, d.endpoint};
    xs.insert(xs.end(), d.coarse_sups.begin(), d.coarse_sups.end());
    out.samples_csv += csv_row({std::to_string(i)}, xs);
    dominated += d.sup >= d.endpoint ? 1 : 0;
    mean_sup += d.sup / static_cast<double>(draws);
    for (std::size_t k = 0; k < coarse_gap.size(); ++k) {
      coarse_gap[k] += (d.sup - d.coarse_sups[k]) / static_cast<double>(draws);
    }
  }
  std::size_t rejected = 0;
  for (auto r : rejections) rejected += r;
  Json refinement = Json::array();
  for (std::size_t k = 0; k < coarse_gap.size(); ++k) {
    refinement.push_back({{"level", k + 1},
                          {"stride", std::size_t{1} << (k + 1)},
                          {"mean_sup_minus_coarse", coarse_gap[k]}});
  }
  const double fraction = static_cast<double>(dominated) / static_cast<double>(draws);
  out.pass = dominated == draws;
  out.summary["parameters"] = std::move(params);
  out.summary["sup_ge_endpoint_fraction"] = fraction;
  out.summary["mean_sup"] = mean_sup;
  out.summary["rejections"] = rejected;
  out.summary["refinement"] = std::move(refinement);
  return out;
}

}  // namespace

int run_simulate(const std::filesystem::path& campaign_path, const RunOptions& opts) {
  const Json campaign = load_campaign(campaign_path);
  reject_unknown_keys(campaign, {"seed", "simulations"}, "campaign");
  const SeedChoice seed = choose_seed(campaign, opts.seed);
  const Json& list = case_list(campaign, "simulations");

  std::vector<std::string> seen;
  for (const auto& c : list) {
    take_case_id(c, seen);
    if (!c.contains("kind") || !c.at("kind").is_string()) {
      throw ConfigError("case '" + seen.back() + "': missing kind");
    }
  }

  // Simulations run one after another; each spreads its chunks over the workers.
  bool all_pass = true;
  Json entries = Json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Json& c = list[i];
    const std::string& id = seen[i];
    const std::string where = "case '" + id + "'";
    const std::string kind = c.at("kind").get<std::string>();
    const std::uint64_t case_seed = Rng::substream(seed.value, i)();
    SimOutput out;
    if (kind == "brown_resnick") {
      out = brown_resnick_case(c, where, case_seed, opts.workers);
    } else if (kind == "triangular") {
      out = triangular_case(c, where, case_seed, opts.workers);
    } else if (kind == "sup_interval") {
      out = sup_interval_case(c, where, case_seed, opts.workers);
    } else {
      throw ConfigError(where + ": unknown kind '" + kind + "'");
    }
    Json summary;
    summary["case_id"] = id;
    summary["seed"] = case_seed;
    summary["pass"] = out.pass;
    for (auto& [k, val] : out.summary.items()) summary[k] = val;
    write_output(opts, id + "_samples.csv", out.samples_csv);
    write_output(opts, id + "_summary.json", summary.dump(2) + "\n");
    std::cout << id << ' ' << kind << ' ' << (out.pass ? "PASS" : "FAIL") << '\n';
    all_pass = all_pass && out.pass;
    entries.push_back({{"case_id", id}, {"kind", kind}, {"pass", out.pass}});
  }

  Json summary;
  summary["command"] = "simulate";
  summary["campaign"] = campaign_path.filename().string();
  summary["seed"] = seed.value;
  summary["seed_source"] = seed.source;
  summary["all_pass"] = all_pass;
  summary["simulations"] = std::move(entries);
  write_output(opts, "simulate_summary.json", summary.dump(2) + "\n");
  return all_pass ? kExitOk : kExitFailed;
}

}  // namespace gumbelscale::cli
