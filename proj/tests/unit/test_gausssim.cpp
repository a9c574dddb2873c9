#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gumbelscale/brown_resnick.hpp"
#include "gumbelscale/errors.hpp"
#include "gumbelscale/fbm.hpp"
#include "gumbelscale/gof.hpp"
#include "gumbelscale/normal.hpp"
#include "gumbelscale/quadrature.hpp"
#include "gumbelscale/sup_interval.hpp"
#include "gumbelscale/triangular.hpp"
#include "gumbelscale/variance_model.hpp"

using namespace gumbelscale;

namespace {

std::vector<double> uniform_grid(double hi, std::size_t steps) {
  std::vector<double> g(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) g[i] = hi * static_cast<double>(i) / static_cast<double>(steps);
  return g;
}

struct Moments {
  double mean = 0, m2 = 0;
  std::size_t n = 0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double se() const { return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)); }
};

}  // namespace

TEST(VarianceModel, FamiliesAndChecks) {
  const auto f = VarianceModel::fbm(0.75);
  EXPECT_DOUBLE_EQ(f.sigma2(0.0), 0.0);
  EXPECT_NEAR(f.sigma2(4.0), 8.0, 1e-12);
  EXPECT_TRUE(f.convex_on(10.0));
  EXPECT_TRUE(f.sup_tail_hypotheses(10.0));
  EXPECT_FALSE(VarianceModel::fbm(0.3).convex_on(10.0));
  EXPECT_FALSE(VarianceModel::fbm(0.3).sup_tail_hypotheses(10.0));
  const auto p = VarianceModel::power_rv(1.5, 2.0, 4.0);
  EXPECT_NEAR(p.sigma2(9.0), 4.0 * 27.0, 1e-12);
  EXPECT_TRUE(p.bound_holds_on(100.0));
  EXPECT_FALSE(VarianceModel::power_rv(1.5, 2.0, 3.0).bound_holds_on(100.0));
  EXPECT_THROW(VarianceModel::fbm(1.0), DomainError);
  EXPECT_THROW(VarianceModel::power_rv(1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(p.hurst(), UnsupportedVariant);
}

TEST(Variogram, Validation) {
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  EXPECT_NO_THROW(Variogram::power(2.0, 1.0).validate_on(grid, true));
  EXPECT_NO_THROW(Variogram::zero().validate_on(grid, false));
  EXPECT_THROW(Variogram::zero().validate_on(grid, true), DomainError);
  const Variogram asym([](double a, double b) { return a > b ? 1.0 : (a < b ? 2.0 : 0.0); });
  EXPECT_THROW(asym.validate_on(grid, false), DomainError);
}

TEST(Fbm, BrownianIncrementVariance) {
  const std::size_t steps = 64;
  const double h = 1.0 / steps;
  FbmSampler sampler(0.5, steps, h);
  Rng rng(11);
  Moments m;
  for (int path = 0; path < 10000; ++path) {
    const auto x = sampler.sample(rng);
    m.add((x[17] - x[16]) * (x[17] - x[16]));
  }
  EXPECT_NEAR(m.mean, h, 3.0 * m.se());
}

TEST(Fbm, MarginalVarianceAndCovariance) {
  for (double H : {0.3, 0.5, 0.75}) {
    const std::size_t steps = 32;
    const auto grid = uniform_grid(2.0, steps);
    FbmSampler sampler(H, steps, grid[1]);
    Rng rng(static_cast<std::uint64_t>(H * 1000));
    const std::size_t idx[] = {8, 16, 32};
    Moments var[3], cov[3][3];
    for (int path = 0; path < 10000; ++path) {
      const auto x = sampler.sample(rng);
      for (int a = 0; a < 3; ++a) {
        var[a].add(x[idx[a]] * x[idx[a]]);
        for (int b = 0; b < 3; ++b) cov[a][b].add(x[idx[a]] * x[idx[b]]);
      }
    }
    for (int a = 0; a < 3; ++a) {
      const double t = grid[idx[a]];
      EXPECT_NEAR(var[a].mean, std::pow(t, 2 * H), 3.0 * var[a].se()) << "H=" << H;
      for (int b = 0; b < 3; ++b) {
        const double s = grid[idx[b]];
        const double target = 0.5 * (std::pow(s, 2 * H) + std::pow(t, 2 * H) - std::pow(std::abs(t - s), 2 * H));
        EXPECT_NEAR(cov[a][b].mean, target, 3.0 * cov[a][b].se()) << "H=" << H;
      }
    }
  }
}

TEST(Fbm, DeterministicAndGridHandling) {
  Rng a(5), b(5);
  const auto grid = uniform_grid(1.0, 256);
  EXPECT_EQ(fbm_sample(0.7, grid, a), fbm_sample(0.7, grid, b));
  const auto x = fbm_sample(0.7, grid, a);
  EXPECT_EQ(x.size(), grid.size());
  EXPECT_EQ(x.front(), 0.0);
  std::vector<double> shifted = {0.5, 0.75, 1.0, 1.25};
  EXPECT_EQ(fbm_sample(0.7, shifted, a).size(), 4u);
  EXPECT_THROW(fbm_sample(0.7, {0.0, 0.1, 0.5}, a), DomainError);
  EXPECT_THROW(fbm_sample(0.7, {0.3, 0.7}, a), DomainError);
  EXPECT_FALSE(FbmSampler(0.9, 1000).uses_cholesky());
}

TEST(SupInterval, ReflectionPrincipleWithRefinement) {
  // Discrete maxima at steps 2^-10 and 2^-8 of the same paths; the bias of
  // the discrete max scales like sqrt(step), so 2 p(2^-10) - p(2^-8)
  // removes its leading term.
  SupGrid grid;
  grid.relative_steps = 1024;
  grid.coarsen_levels = 2;
  SupIntervalSimulator sim(VarianceModel::fbm(0.5), TailModel::point_mass_one(), grid);
  Rng rng(424242);
  const int paths = 100000;
  Moments raw, corrected;
  for (int i = 0; i < paths; ++i) {
    const auto d = sim.draw(rng);
    ASSERT_GE(d.sup, d.endpoint);
    const double fine = d.sup > 1.0 ? 1.0 : 0.0;
    const double coarse = d.coarse_sups[1] > 1.0 ? 1.0 : 0.0;
    raw.add(fine);
    corrected.add(2.0 * fine - coarse);
  }
  const double exact = 2.0 * std::exp(normal_log_sf(1.0));
  EXPECT_NEAR(exact, 0.3173, 1e-4);
  EXPECT_NEAR(corrected.mean, exact, 3.0 * corrected.se());
  // The discrete maximum can only underestimate.
  EXPECT_LT(raw.mean, exact + 3.0 * raw.se());
  EXPECT_EQ(sim.rejections(), 0u);
}

TEST(SupInterval, EndpointDominationAgainstQuadrature) {
  // T Weibullian(L=1, p=2), H = 3/4: sigma(T) = T^{3/4} is Weibullian with p = 8/3.
  const auto horizon = TailModel::weibullian(RegVarFn::unit(), 1.0, 2.0);
  const auto sigma_t = TailModel::weibullian(RegVarFn::unit(), 1.0, 8.0 / 3.0);
  SupIntervalSimulator sim(VarianceModel::fbm(0.75), horizon, SupGrid{256, 0.0, 0, 1e9});
  Rng rng(8);
  const int paths = 20000;
  const double us[] = {0.5, 1.0, 2.0};
  int sup_hits[3] = {0, 0, 0}, end_hits[3] = {0, 0, 0};
  for (int i = 0; i < paths; ++i) {
    const auto d = sim.draw(rng);
    ASSERT_GE(d.sup, d.endpoint);
    for (int k = 0; k < 3; ++k) {
      sup_hits[k] += d.sup > us[k];
      end_hits[k] += d.endpoint > us[k];
    }
  }
  for (int k = 0; k < 3; ++k) {
    const double q = std::exp(product_tail_quadrature(us[k], TailModel::standard_normal(), sigma_t).log_value);
    const double se = std::sqrt(q * (1 - q) / paths);
    EXPECT_NEAR(static_cast<double>(end_hits[k]) / paths, q, 3.0 * se) << "u=" << us[k];
    EXPECT_GE(static_cast<double>(sup_hits[k]) / paths, q - 3.0 * se) << "u=" << us[k];
  }
}

TEST(SupInterval, HorizonRejectionAndVariants) {
  SupGrid grid;
  grid.relative_steps = 16;
  grid.max_horizon = 0.5;
  SupIntervalSimulator sim(VarianceModel::fbm(0.6), TailModel::uniform(), grid);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) EXPECT_LE(sim.draw(rng).horizon, 0.5);
  EXPECT_GT(sim.rejections(), 50u);
  EXPECT_THROW(SupIntervalSimulator(VarianceModel::power_rv(1.5, 1, 1), TailModel::uniform()), UnsupportedVariant);
  const auto d = sup_over_random_interval(VarianceModel::fbm(0.6), TailModel::exponential(), 0.01, rng);
  EXPECT_GE(d.sup, d.endpoint);
  EXPECT_GE(d.sup, 0.0);
}

TEST(BrownResnick, MarginalIsGumbel) {
  BrownResnickSampler br(Variogram::power(2.0, 1.0), {0.0, 1.0});
  std::vector<double> xs;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Rng rng = Rng::substream(12345, i);
    const auto d = br.draw(rng);
    EXPECT_FALSE(d.hit_cap);
    xs.push_back(d.values[1]);
  }
  EXPECT_LE(ks_statistic(xs, gumbel_cdf), ks_critical_95(xs.size()));
}

TEST(BrownResnick, DegenerateKernelIsConstantInT) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto v = brown_resnick_fidi_sample(Variogram::zero(), {0.0, 0.3, 0.9, 2.0}, 10, rng);
    for (double x : v) EXPECT_EQ(x, v[0]);
  }
}

TEST(BrownResnick, TruncationIsSound) {
  const std::vector<double> grid = {0.0, 0.5, 1.0, 1.5};
  const auto vg = Variogram::power(1.0, 1.5);
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng a = Rng::substream(9, i);
    const auto auto_draw = BrownResnickSampler(vg, grid).draw(a);
    BrownResnickOptions more;
    more.k_points = auto_draw.points_used + 1000;
    Rng b = Rng::substream(9, i);
    const auto long_draw = BrownResnickSampler(vg, grid, more).draw(b);
    EXPECT_EQ(auto_draw.values, long_draw.values);
  }
}

TEST(BrownResnick, MaxStability) {
  BrownResnickSampler br(Variogram::power(1.0, 1.0), {0.0, 2.0});
  std::vector<double> xs;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Rng rng = Rng::substream(777, i);
    const double a = br.draw(rng).values[1];
    const double b = br.draw(rng).values[1];
    xs.push_back(std::max(a, b) - std::log(2.0));
  }
  EXPECT_LE(ks_statistic(xs, gumbel_cdf), ks_critical_95(xs.size()));
}

TEST(BrownResnick, RejectsBadInput) {
  EXPECT_THROW(BrownResnickSampler(Variogram::power(1, 1), {}), DomainError);
  BrownResnickOptions few;
  few.k_points = 5;
  EXPECT_THROW(BrownResnickSampler(Variogram::power(1, 1), {0.0, 1.0}, few), DomainError);
  // Not conditionally negative definite: Gamma = |t1 - t2|^3 on three points.
  const Variogram bad([](double a, double b) { return std::pow(std::abs(a - b), 3.0); });
  EXPECT_THROW(BrownResnickSampler(bad, {0.0, 1.0, 2.0}), DomainError);
}

TEST(Triangular, SingleRowIsAffineGaussian) {
  const Norming norming{0.5, 2.0};
  TriangularSampler tri(1, {0.0}, Variogram::power(1, 1), TailModel::point_mass_one(), norming);
  Rng rng(17);
  std::vector<double> xs;
  for (int i = 0; i < 10000; ++i) xs.push_back(tri.draw(rng)[0]);
  // (X - d) / c with X standard normal.
  const auto cdf = [](double y) { return normal_cdf(2.0 * y + 0.5); };
  EXPECT_LE(ks_statistic(xs, cdf), ks_critical_95(xs.size()));
}

TEST(Triangular, NormingAndCorrelation) {
  TriangularSampler tri(1000, {0.0, 1.0}, Variogram::power(2.0, 1.0), TailModel::point_mass_one());
  EXPECT_NEAR(tri.norming().c_n * tri.norming().d_n, 1.0, 1e-15);
  EXPECT_FALSE(tri.projected());
  Rng a(4), b(4);
  EXPECT_EQ(tri.draw(a), tri.draw(b));
  // Nearby points almost perfectly correlated, far points floored at 0: not PSD.
  const Variogram uneven([](double x, double y) {
    const double d = std::abs(x - y);
    return d == 0.0 ? 0.0 : (d < 1.5 ? 0.1 : 100.0);
  });
  TriangularSampler proj(100, {0.0, 1.0, 2.0}, uneven, TailModel::point_mass_one());
  EXPECT_TRUE(proj.projected());
  EXPECT_EQ(proj.draw(a).size(), 3u);
  EXPECT_THROW(TriangularSampler(10, {0.0, 1.0}, Variogram::zero(), TailModel::point_mass_one()), DomainError);
  EXPECT_THROW(TriangularSampler(0, {0.0}, Variogram::zero(), TailModel::point_mass_one(), Norming{1, 1}), DomainError);
}

TEST(Triangular, WeibullianScaler) {
  const auto s = TailModel::weibullian(RegVarFn::unit(), 0.5, 2.0);
  TriangularSampler tri(200, {0.0, 1.0}, Variogram::power(1.0, 1.0), s);
  EXPECT_FALSE(std::abs(tri.norming().c_n * tri.norming().d_n - 1.0) < 1e-9);
  Rng rng(2);
  const auto v = tri.draw(rng);
  EXPECT_EQ(v.size(), 2u);
  EXPECT_TRUE(std::isfinite(v[0]) && std::isfinite(v[1]));
}

TEST(Gof, StatisticsOnKnownSamples) {
  const std::vector<double> xs = {0.1, 0.4, 0.7};
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_NEAR(ks_statistic(xs, uniform), 0.3, 1e-15);
  EXPECT_NEAR(ks_critical_95(10000), 0.0136, 1e-12);
  const std::vector<std::vector<double>> a = {{0.0}, {1.0}};
  const std::vector<std::vector<double>> b = {{0.0}, {1.0}};
  EXPECT_NEAR(energy_distance(a, b), 2.0 * 0.5 - 1.0 - 1.0, 1e-15);
  const std::vector<std::vector<double>> c = {{10.0}, {11.0}};
  EXPECT_NEAR(energy_distance(a, c), 2.0 * 10.0 - 1.0 - 1.0, 1e-12);
}
