#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <fstream>
#include <sstream>

#include "gumbelscale/errors.hpp"
#include "gumbelscale/json_io.hpp"
#include "gumbelscale/report.hpp"

using namespace gumbelscale;

TEST(JsonIo, ParsesEveryVariant) {
  const auto w = tail_model_from_json(Json::parse(
      R"({"variant":"weibullian","g":{"index":-1,"scale":0.7978845608028654,"slowly_varying":{"kind":"const"}},"L":0.5,"p":2})"));
  EXPECT_NEAR(w.log_tail(10.0), TailModel::abs_normal().log_tail(10.0), 1e-14);
  const auto lp = tail_model_from_json(Json::parse(
      R"({"variant":"weibullian","g":{"index":1,"slowly_varying":{"kind":"logpow","beta":2}},"L":1,"p":1})"));
  EXPECT_NEAR(lp.weibullian_params().g.slowly_varying().beta(), 2.0, 0);
  EXPECT_NO_THROW(tail_model_from_json(Json::parse(
      R"({"variant":"weibullian","g":{"index":0,"slowly_varying":{"kind":"tabulated","knots":[1,10,100],"values":[1,2,1]}},"L":1,"p":1})")));
  EXPECT_EQ(tail_model_from_json(Json::parse(R"({"variant":"logweibullian","family":"normal"})")).variant(),
            TailModel::Variant::kLogWeibullian);
  EXPECT_NO_THROW(tail_model_from_json(Json::parse(R"({"variant":"logweibullian","family":"half_normal"})")));
  EXPECT_NO_THROW(tail_model_from_json(
      Json::parse(R"({"variant":"logweibullian","family":"stretched","L":1,"p":2,"kappa":0.5,"q":1})")));
  for (const char* s : {R"({"variant":"bounded","family":"point_mass"})", R"({"variant":"bounded","family":"uniform"})",
                        R"({"variant":"bounded","family":"beta","a":2,"b":3})",
                        R"({"variant":"bounded","family":"discrete","values":[0.5,1],"probs":[0.5,0.5]})"}) {
    const auto m = tail_model_from_json(Json::parse(s));
    EXPECT_TRUE(m.is_bounded());
    EXPECT_EQ(tail_model_from_json(tail_model_to_json(m)).describe(), m.describe());
  }
}

TEST(JsonIo, StrictParsing) {
  EXPECT_THROW(tail_model_from_json(Json::parse(R"({"variant":"weibullian","L":1,"p":1,"extra":2})")), DomainError);
  EXPECT_THROW(tail_model_from_json(Json::parse(R"({"variant":"weibull","L":1,"p":1})")), DomainError);
  EXPECT_THROW(tail_model_from_json(Json::parse(R"({"variant":"weibullian","L":"1","p":1})")), DomainError);
  EXPECT_THROW(tail_model_from_json(Json::parse(R"({"variant":"weibullian","L":-1,"p":1})")), DomainError);
  EXPECT_THROW(tail_model_from_json(Json::parse(R"({"variant":"bounded","family":"uniform","a":1})")), DomainError);
  EXPECT_THROW(regvar_from_json(Json::parse(R"({"index":1,"slowly_varying":{"kind":"const","beta":1}})")), DomainError);
  EXPECT_THROW(tail_model_from_json(Json::parse(R"([1,2])")), DomainError);
}

TEST(JsonIo, RoundedNumbers) {
  EXPECT_EQ(rounded_number(1.0).dump(), "1");
  EXPECT_EQ(rounded_number(2.0000000000001).dump(), "2");
  EXPECT_EQ(rounded_number(std::sqrt(std::numbers::pi)).dump(), "1.7724538509");
  EXPECT_EQ(rounded_number(0.5).dump(), "0.5");
  EXPECT_EQ(rounded_number(-std::numeric_limits<double>::infinity()).dump(), "\"-inf\"");
}

TEST(Report, RowsCsvAndJson) {
  VerificationReport r("normal_product", "quadrature", 0.05, 42);
  const auto& a = r.add(30.0, -31.926, -31.946);
  EXPECT_NEAR(a.ratio, std::exp(0.02), 1e-12);
  EXPECT_TRUE(a.pass);
  const auto& b = r.add(10.0, -11.0, -11.5);
  EXPECT_FALSE(b.pass);
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.file_stem(), "normal_product_quadrature");
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "u,predicted_log,oracle_log,ratio,pass");
  EXPECT_NE(csv.find("30,-31.926,-31.946,"), std::string::npos);
  const auto j = r.to_json();
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1]["pass"], false);
  EXPECT_THROW(VerificationReport("", "m", 0.1), DomainError);
}

TEST(Report, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "gumbelscale_report_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "x.csv";
  write_file_atomic(path, "a,b\n1,2\n");
  write_file_atomic(path, "a,b\n3,4\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "a,b\n3,4\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "x.csv.tmp"));
  std::filesystem::remove_all(dir);
}
