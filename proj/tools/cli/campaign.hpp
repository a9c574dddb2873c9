#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "gumbelscale/json_io.hpp"

namespace gumbelscale::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;

// Bad command line or campaign file; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned workers = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

struct SeedChoice {
  std::uint64_t value;
  std::string source;  // "flag", "file" or "entropy"
};

Json load_campaign(const std::filesystem::path& path);

// --seed wins over the file's "seed"; with neither, a fresh seed is drawn
// and recorded so the run can be repeated.
SeedChoice choose_seed(const Json& campaign, const std::optional<std::uint64_t>& flag);

// Non-empty array under `key`.
const Json& case_list(const Json& campaign, const char* key);

// Checks that case_id is present, non-empty and not seen before.
std::string take_case_id(const Json& c, std::vector<std::string>& seen);

std::vector<double> number_list(const Json& j, const char* key, const std::string& where);
// Strictly increasing, positive entries.
std::vector<double> increasing_grid(const Json& j, const char* key, const std::string& where);
std::size_t count_field(const Json& j, const char* key, const std::string& where);

// Plain number for finite values, "inf"/"-inf"/"nan" otherwise.
Json json_number(double x);

void write_output(const RunOptions& opts, const std::string& name, const std::string& content);

int run_verify(const std::filesystem::path& campaign, const RunOptions& opts);
int run_simulate(const std::filesystem::path& campaign, const RunOptions& opts);
int run_report(const std::filesystem::path& input_dir, const RunOptions& opts);

}  // namespace gumbelscale::cli
