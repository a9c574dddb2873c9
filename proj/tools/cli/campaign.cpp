#include "campaign.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gumbelscale/errors.hpp"
#include "gumbelscale/report.hpp"
#include "gumbelscale/rng.hpp"

namespace gumbelscale::cli {

Json load_campaign(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    Json j = Json::parse(in);
    if (!j.is_object()) throw ConfigError(path.string() + ": top level must be an object");
    return j;
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

SeedChoice choose_seed(const Json& campaign, const std::optional<std::uint64_t>& flag) {
  if (flag) return {*flag, "flag"};
  if (campaign.contains("seed")) {
    const Json& s = campaign.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    return {s.get<std::uint64_t>(), "file"};
  }
  return {entropy_seed(), "entropy"};
}

const Json& case_list(const Json& campaign, const char* key) {
  if (!campaign.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
  const Json& list = campaign.at(key);
  if (!list.is_array()) throw ConfigError(std::string("'") + key + "' must be an array");
  if (list.empty()) throw ConfigError(std::string("'") + key + "' is empty");
  return list;
}

std::string take_case_id(const Json& c, std::vector<std::string>& seen) {
  if (!c.is_object() || !c.contains("case_id") || !c.at("case_id").is_string()) {
    throw ConfigError("every case needs a string case_id");
  }
  std::string id = c.at("case_id").get<std::string>();
  if (id.empty()) throw ConfigError("case_id must be non-empty");
  if (id.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("case_id '" + id + "' must not contain path separators");
  }
  if (std::find(seen.begin(), seen.end(), id) != seen.end()) {
    throw ConfigError("duplicate case_id '" + id + "'");
  }
  seen.push_back(id);
  return id;
}

std::vector<double> number_list(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw ConfigError(where + ": '" + key + "' must be a non-empty array");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<double> increasing_grid(const Json& j, const char* key, const std::string& where) {
  auto out = number_list(j, key, where);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0.0) || !std::isfinite(out[i])) {
      throw ConfigError(where + ": '" + key + "' entries must be positive and finite");
    }
    if (i > 0 && !(out[i] > out[i - 1])) {
      throw ConfigError(where + ": '" + key + "' must be strictly increasing");
    }
  }
  return out;
}

std::size_t count_field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned() || j.at(key).get<std::uint64_t>() == 0) {
    throw ConfigError(where + ": '" + key + "' must be a positive integer");
  }
  return static_cast<std::size_t>(j.at(key).get<std::uint64_t>());
}

Json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

void write_output(const RunOptions& opts, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(opts.out_dir);
  write_file_atomic(opts.out_dir / name, content);
}

}  // namespace gumbelscale::cli
