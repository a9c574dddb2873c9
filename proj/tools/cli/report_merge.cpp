#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "campaign.hpp"

namespace gumbelscale::cli {

namespace {

constexpr const char* kReportHeader = "u,predicted_log,oracle_log,ratio,pass";

}  // namespace

// Joins every verification CSV in the directory into one table keyed by
// (case_id, method), read from the JSON written next to each CSV.
int run_report(const std::filesystem::path& input_dir, const RunOptions& opts) {
  if (!std::filesystem::is_directory(input_dir)) {
    throw ConfigError(input_dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> csvs;
  for (const auto& entry : std::filesystem::directory_iterator(input_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") csvs.push_back(entry.path());
  }
  std::sort(csvs.begin(), csvs.end());

  std::string table = std::string("case_id,method,") + kReportHeader + "\n";
  std::size_t merged = 0;
  for (const auto& csv : csvs) {
    std::ifstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != kReportHeader) continue;
    auto meta_path = csv;
    meta_path.replace_extension(".json");
    std::ifstream meta_in(meta_path);
    if (!meta_in) continue;
    Json meta;
    try {
      meta = Json::parse(meta_in);
    } catch (const Json::parse_error&) {
      throw ConfigError(meta_path.string() + ": not valid JSON");
    }
    const std::string prefix =
        meta.at("case_id").get<std::string>() + "," + meta.at("method").get<std::string>() + ",";
    while (std::getline(in, line)) {
      if (!line.empty()) table += prefix + line + "\n";
    }
    ++merged;
  }
  if (merged == 0) throw ConfigError("no verification CSVs in " + input_dir.string());
  RunOptions out = opts;
  if (out.out_dir.empty()) out.out_dir = input_dir;
  write_output(out, "report.csv", table);
  std::cout << "merged " << merged << " case files into " << (out.out_dir / "report.csv").string()
            << '\n';
  return kExitOk;
}

}  // namespace gumbelscale::cli
