#include "gumbelscale/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

namespace {

nlohmann::ordered_json json_double(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

VerificationReport::VerificationReport(std::string case_id, std::string method,
                                       double tolerance,
                                       std::optional<std::uint64_t> seed)
    : case_id_(std::move(case_id)),
      method_(std::move(method)),
      tolerance_(tolerance),
      seed_(seed) {
  if (case_id_.empty()) throw DomainError("report: case_id must be nonempty");
  if (!(tolerance_ >= 0.0)) throw DomainError("report: tolerance must be >= 0");
}

const ReportRow& VerificationReport::add(double u, double predicted_log,
                                         double oracle_log) {
  const double ratio = std::exp(predicted_log - oracle_log);
  const bool pass = ratio > 0.0 && std::abs(ratio - 1.0) <= tolerance_;
  rows_.push_back({u, predicted_log, oracle_log, ratio, pass});
  return rows_.back();
}

bool VerificationReport::all_pass() const noexcept {
  for (const auto& r : rows_) {
    if (!r.pass) return false;
  }
  return true;
}

std::string VerificationReport::to_csv() const {
  std::string out = "u,predicted_log,oracle_log,ratio,pass\n";
  for (const auto& r : rows_) {
    out += format_double(r.u) + ',' + format_double(r.predicted_log) + ',' +
           format_double(r.oracle_log) + ',' + format_double(r.ratio) + ',' +
           (r.pass ? "true" : "false") + '\n';
  }
  return out;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["case_id"] = case_id_;
  j["method"] = method_;
  j["tolerance"] = tolerance_;
  j["seed"] = seed_ ? nlohmann::ordered_json(*seed_) : nlohmann::ordered_json();
  j["all_pass"] = all_pass();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    rows.push_back({{"u", json_double(r.u)},
                    {"predicted_log", json_double(r.predicted_log)},
                    {"oracle_log", json_double(r.oracle_log)},
                    {"ratio", json_double(r.ratio)},
                    {"pass", r.pass}});
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string VerificationReport::file_stem() const { return case_id_ + "_" + method_; }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace gumbelscale
