#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gumbelscale/asymptotics.hpp"
#include "gumbelscale/errors.hpp"
#include "gumbelscale/normal.hpp"

using namespace gumbelscale;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Params {
  double p1, L1, p2, L2;
};

std::vector<Params> random_params(int count, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> p(0.3, 4.0), L(0.1, 3.0);
  std::vector<Params> out;
  for (int i = 0; i < count; ++i) out.push_back({p(gen), L(gen), p(gen), L(gen)});
  return out;
}

}  // namespace

TEST(ProductConstants, Examples) {
  const auto a = product_constants(2, 0.5, 2, 0.5);
  EXPECT_NEAR(a.A, 1.0, 1e-15);
  EXPECT_NEAR(a.B, 1.0, 1e-15);
  EXPECT_NEAR(a.p_star, 1.0, 1e-15);
  EXPECT_NEAR(a.D, std::sqrt(std::numbers::pi / 2), 1e-15);

  const auto b = product_constants(1, 1, 1, 1);
  EXPECT_NEAR(b.A, 1.0, 1e-15);
  EXPECT_NEAR(b.B, 2.0, 1e-15);
  EXPECT_NEAR(b.p_star, 0.5, 1e-15);
  EXPECT_NEAR(b.D, std::sqrt(std::numbers::pi), 1e-15);

  const auto c = product_constants(2, 0.5, 1, 1);
  EXPECT_NEAR(c.A, 1.0, 1e-15);
  EXPECT_NEAR(c.B, 1.5, 1e-15);
  EXPECT_NEAR(c.p_star, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.D, std::sqrt(2 * std::numbers::pi / 3), 1e-15);

  EXPECT_THROW(product_constants(0, 1, 1, 1), DomainError);
  EXPECT_THROW(product_constants(1, -1, 1, 1), DomainError);
}

TEST(ProductConstants, InvariantsAndExchangeSymmetry) {
  for (const auto& q : random_params(200, 1)) {
    const auto k = product_constants(q.p1, q.L1, q.p2, q.L2);
    const auto s = product_constants(q.p2, q.L2, q.p1, q.L1);
    EXPECT_LT(rel(k.B, q.L1 * std::pow(k.A, -q.p1) + q.L2 * std::pow(k.A, q.p2)), 1e-12);
    EXPECT_LT(rel(k.p_star, 1.0 / (1.0 / q.p1 + 1.0 / q.p2)), 1e-12);
    EXPECT_LT(rel(k.B, s.B), 1e-12);
    EXPECT_LT(rel(k.p_star, s.p_star), 1e-12);
    EXPECT_LT(rel(k.D, s.D), 1e-12);
    EXPECT_NEAR(k.A * s.A, 1.0, 1e-12);
    for (double u : {2.0, 50.0, 1e4}) {
      const double cu = k.c(u);
      const double lhs = q.L1 * std::pow(u / cu, q.p1) + q.L2 * std::pow(cu, q.p2);
      EXPECT_LT(rel(lhs, k.B * std::pow(u, k.p_star)), 1e-10);
      // Scaling covariance of B u^{p*}.
      EXPECT_LT(rel(k.B * std::pow(3.0 * u, k.p_star), std::pow(3.0, k.p_star) * k.B * std::pow(u, k.p_star)), 1e-13);
    }
  }
}

TEST(PolynomialLog, Examples) {
  const PowerTail an{std::sqrt(2 / std::numbers::pi), -1, 2, 0.5};
  const double v = product_tail_polynomial_log(30.0, an, an);
  EXPECT_NEAR(v, std::log(std::sqrt(2 / std::numbers::pi) / std::sqrt(30.0)) - 30.0, 1e-12);
  EXPECT_NEAR(v, -31.926, 5e-4);

  const PowerTail ex{1, 0, 1, 1};
  for (double u : {10.0, 1e4}) {
    EXPECT_NEAR(product_tail_polynomial_log(u, ex, ex),
                std::log(std::sqrt(std::numbers::pi) * std::pow(u, 0.25)) - 2 * std::sqrt(u), 1e-11);
  }
}

TEST(PolynomialLog, FactorExchangeSymmetry) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> a(-2.0, 2.0), C(0.2, 5.0);
  for (const auto& q : random_params(100, 2)) {
    const PowerTail f{C(gen), a(gen), q.p1, q.L1}, g{C(gen), a(gen), q.p2, q.L2};
    for (double u : {3.0, 40.0, 1e3}) {
      const double x = product_tail_polynomial_log(u, f, g);
      EXPECT_LT(std::abs(x - product_tail_polynomial_log(u, g, f)), 1e-10 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST(WeibullianProduct, Examples) {
  const auto e = TailModel::exponential();
  const double v = product_tail_weibullian_log(100.0, e, e);
  EXPECT_NEAR(v, 0.5 * std::log(std::numbers::pi) + 0.25 * std::log(100.0) - 20.0, 1e-12);
  EXPECT_NEAR(v, -18.276, 5e-4);
  for (double u : {10.0, 100.0, 1000.0}) {
    const auto r = product_tail_weibullian(u, e, e);
    EXPECT_LT(std::abs(r.log_value - r.log_value_via_tails), 1e-10);
  }
  const auto an = TailModel::abs_normal();
  const PowerTail pt{std::sqrt(2 / std::numbers::pi), -1, 2, 0.5};
  EXPECT_NEAR(product_tail_weibullian_log(30.0, an, an), product_tail_polynomial_log(30.0, pt, pt), 1e-10);
}

TEST(WeibullianProduct, MatchesPolynomialFormForPowerPrefactors) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> a(-1.5, 1.5), C(0.3, 3.0);
  for (const auto& q : random_params(50, 3)) {
    const PowerTail f{C(gen), a(gen), q.p1, q.L1}, g{C(gen), a(gen), q.p2, q.L2};
    const auto m1 = TailModel::weibullian(RegVarFn(f.alpha, f.C), f.L, f.p);
    const auto m2 = TailModel::weibullian(RegVarFn(g.alpha, g.C), g.L, g.p);
    const double u = 10.0 * product_validity_cutoff(m1, m2) + 10.0;
    const double x = product_tail_weibullian_log(u, m1, m2);
    EXPECT_LT(std::abs(x - product_tail_polynomial_log(u, f, g)), 1e-9 * std::max(1.0, std::abs(x)));
  }
}

TEST(WeibullianProduct, BelowCutoffRaisesWithCutoff) {
  const auto m = TailModel::weibullian(RegVarFn(2.0, 50.0), 1.0, 1.0);
  const double cut = product_validity_cutoff(m, m);
  EXPECT_GT(cut, 0.0);
  try {
    product_tail_weibullian_log(0.5 * cut, m, m);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& err) {
    EXPECT_DOUBLE_EQ(err.cutoff(), cut);
  }
  EXPECT_THROW(product_tail_weibullian_log(10.0, TailModel::uniform(), m), UnsupportedVariant);
}

TEST(LogWeibullExponent, Examples) {
  const auto a = log_weibull_exponent(1, 1, 1, 1);
  EXPECT_NEAR(a.B, 2.0, 1e-15);
  EXPECT_NEAR(a.p_star, 0.5, 1e-15);
  const auto b = log_weibull_exponent(2, 0.5, 2, 0.5);
  EXPECT_NEAR(b.B, 1.0, 1e-15);
  EXPECT_NEAR(b.p_star, 1.0, 1e-15);
  for (const auto& q : random_params(100, 4)) {
    const auto e = log_weibull_exponent(q.p1, q.L1, q.p2, q.L2);
    const auto k = product_constants(q.p1, q.L1, q.p2, q.L2);
    EXPECT_LT(rel(e.B, k.B), 1e-12);
    EXPECT_LT(rel(e.p_star, k.p_star), 1e-12);
    const double ps[] = {q.p1, q.p2};
    EXPECT_EQ(nfold_exponent(ps), e.p_star);
  }
}

TEST(NFoldExponent, Examples) {
  const double one[] = {2.5};
  EXPECT_DOUBLE_EQ(nfold_exponent(one), 2.5);
  const double three[] = {1, 1, 1};
  EXPECT_NEAR(nfold_exponent(three), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(nfold_exponent(std::span<const double>{}), DomainError);
  const double bad[] = {1, -1};
  EXPECT_THROW(nfold_exponent(bad), DomainError);
}

TEST(SaddlePoint, Examples) {
  const auto a = saddle_point(1, 1, 1, 1, 1);
  EXPECT_NEAR(a.x_u, 1.0, 1e-14);
  EXPECT_NEAR(a.f_min, 2.0, 1e-14);
  const auto b = saddle_point(16, 1, 1, 1, 1);
  EXPECT_NEAR(b.x_u, 4.0, 1e-13);
  EXPECT_NEAR(b.f_min, 8.0, 1e-13);
}

TEST(SaddlePoint, NumericalMinimizerAgrees) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> lu(0.0, 10.0);
  for (const auto& q : random_params(50, 6)) {
    const double u = std::exp(lu(gen));
    const auto s = saddle_point(u, q.p1, q.L1, q.p2, q.L2);
    EXPECT_LT(rel(s.f_numeric, s.f_min), 1e-8);
    // The argmin of a smooth minimum is resolved only to ~sqrt(eps).
    EXPECT_LT(rel(s.x_numeric, s.x_u), 1e-5);
    const auto k = product_constants(q.p1, q.L1, q.p2, q.L2);
    EXPECT_LT(rel(s.f_min, k.B * std::pow(u, k.p_star)), 1e-12);
    EXPECT_LT(rel(s.x_u, u / k.c(u)), 1e-12);
  }
}

TEST(GumbelNorming, Examples) {
  for (int k : {2, 5, 20}) {
    const auto g = gumbel_norming(std::exp(static_cast<double>(k)), TailModel::exponential());
    EXPECT_NEAR(g.b_n, k, 1e-10 * k);
    EXPECT_DOUBLE_EQ(g.a_bn, 1.0);
  }
  const auto w = gumbel_norming(1e4, TailModel::weibullian(RegVarFn::unit(), 1.0, 2.0));
  EXPECT_NEAR(w.b_n, std::sqrt(std::log(1e4)), 1e-10);
  EXPECT_NEAR(w.a_bn, 1.0 / (2.0 * w.b_n), 1e-12);
  EXPECT_NEAR(w.a_bn, 0.16475, 5e-5);
  double prev = 0.0;
  for (double n : {1e2, 1e3, 1e4}) {
    const double b = gumbel_norming(n, TailModel::abs_normal()).b_n;
    EXPECT_GT(b, prev);
    prev = b;
  }
  EXPECT_THROW(gumbel_norming(1.0, TailModel::exponential()), DomainError);
}

TEST(TriangularNorming, BoundedScaler) {
  const auto t = triangular_norming(1e4, TailModel::point_mass_one());
  // Upper normal quantile at 1e-4 from a closed-form-free inversion of the exact tail.
  EXPECT_NEAR(std::exp(normal_log_sf(t.d_n)), 1e-4, 1e-12);
  EXPECT_NEAR(t.d_n, 3.7190, 5e-5);
  EXPECT_DOUBLE_EQ(t.c_n * t.d_n, 1.0);
  EXPECT_TRUE(t.bounded);
  for (double n : {10.0, 1e3, 1e6}) {
    const auto u = triangular_norming(n, TailModel::uniform());
    EXPECT_NEAR(u.c_n * u.d_n, 1.0, 1e-15);
  }
  EXPECT_THROW(triangular_norming(2.0, TailModel::point_mass_one()), DomainError);
}

TEST(TriangularNorming, WeibullianScalerApproachesAsymptote) {
  const auto s = TailModel::weibullian(RegVarFn::unit(), 0.5, 2.0);
  double prev_gap = 1e9;
  for (double n : {1e3, 1e6, 1e9}) {
    const auto t = triangular_norming(n, s);
    EXPECT_FALSE(t.bounded);
    EXPECT_NEAR(t.c_n, t.d_n * 4.0 / (4.0 * std::log(n)), 1e-12 * t.c_n);
    const double gap = std::abs(t.d_n / t.d_n_asymptotic - 1.0);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
}

TEST(SupInterval, ConstantsExamples) {
  const auto a = sup_interval_constants(1, 1, 2, 1);
  EXPECT_NEAR(a.p_tilde, 1.0, 1e-15);
  EXPECT_NEAR(a.L_tilde, 1.0, 1e-15);
  EXPECT_NEAR(a.B_tilde, 1.5, 1e-15);
  const auto b = sup_interval_constants(2, 1, 2, 1);
  EXPECT_NEAR(b.p_tilde, 2.0, 1e-15);
  EXPECT_NEAR(b.B_tilde, std::sqrt(2.0), 1e-15);
  EXPECT_THROW(sup_interval_constants(1, 1, 1.0, 1), DomainError);
  EXPECT_THROW(sup_interval_constants(1, 1, 2.5, 1), DomainError);

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> p(0.3, 4), L(0.1, 3), al(1.01, 2.0), C(0.2, 3);
  for (int i = 0; i < 100; ++i) {
    const auto k = sup_interval_constants(p(gen), L(gen), al(gen), C(gen));
    EXPECT_LT(rel(k.B_tilde, product_constants(k.p_tilde, k.L_tilde, 2, 0.5).B), 1e-12);
  }
}

TEST(SupInterval, TailExamples) {
  const double v = sup_interval_tail_log(27.0, 1.0, 1.0, RegVarFn::unit());
  EXPECT_NEAR(v, -0.5 * std::log(3.0) - 13.5, 1e-12);
  EXPECT_NEAR(v, -14.049, 5e-4);
  double prev = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double u = std::pow(10.0, 0.5 + i * 0.1);
    const double x = sup_interval_tail_log(u, 1.7, 0.6, RegVarFn(0.3, 2.0));
    if (i > 0) EXPECT_LT(x, prev);
    prev = x;
  }
}

TEST(SupInterval, ConsistentWithProductFormula) {
  const auto normal = TailModel::normal_tail_weibullian();
  for (double pt : {0.7, 1.0, 2.5}) {
    for (double Lt : {0.5, 1.0, 2.0}) {
      const RegVarFn g(0.4, 1.3);
      const auto sigma_t = TailModel::weibullian(g, Lt, pt);
      for (double u : {10.0, 50.0}) {
        const double a = sup_interval_tail_log(u, pt, Lt, g);
        const double b = product_tail_weibullian_log(u, sigma_t, normal);
        EXPECT_LT(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(b))) << pt << " " << Lt << " " << u;
      }
    }
  }
}
