#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gumbelscale {

struct ReportRow {
  double u;
  double predicted_log;
  double oracle_log;
  double ratio;  // exp(predicted_log - oracle_log)
  bool pass;     // |ratio - 1| <= tolerance
};

class VerificationReport {
 public:
  VerificationReport(std::string case_id, std::string method, double tolerance,
                     std::optional<std::uint64_t> seed = std::nullopt);

  const ReportRow& add(double u, double predicted_log, double oracle_log);

  const std::string& case_id() const noexcept { return case_id_; }
  const std::string& method() const noexcept { return method_; }
  double tolerance() const noexcept { return tolerance_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  const std::vector<ReportRow>& rows() const noexcept { return rows_; }
  bool all_pass() const noexcept;

  // Columns: u,predicted_log,oracle_log,ratio,pass
  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
  // "{case_id}_{method}" base name for the csv/json pair.
  std::string file_stem() const;

 private:
  std::string case_id_;
  std::string method_;
  double tolerance_;
  std::optional<std::uint64_t> seed_;
  std::vector<ReportRow> rows_;
};

// Shortest round-trip text for a double ("inf", "-inf", "nan" for specials).
std::string format_double(double x);

// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace gumbelscale
