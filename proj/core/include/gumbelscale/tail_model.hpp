#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gumbelscale/regvar.hpp"
#include "gumbelscale/rng.hpp"

namespace gumbelscale {

// P(Y > u) = g(u) exp(-L u^p) above the body cutoff u0. Below u0 the model
// is completed with P(Y > u) = 1, where u0 is the first point beyond which
// g(u) exp(-L u^p) is both <= 1 and non-increasing. If the formula is
// strictly below 1 at u0 the completed law has an atom there.
struct WeibullianTail {
  RegVarFn g;
  double L;
  double p;
};

// Only log P(Y > u) ~ -L u^p is assumed. The log-tail is a caller-supplied
// function object; log_density is optional (a central difference of the
// log-tail is used when it is empty).
struct LogWeibullianTail {
  enum class Family { kCustom, kNormal, kHalfNormal, kStretched };

  double L;
  double p;
  std::function<double(double)> log_tail;
  std::function<double(double)> log_density;
  Family family = Family::kCustom;
  // kStretched: log P(Y > u) = -L u^p - kappa u^q, 0 <= q < p.
  double kappa = 0.0;
  double q = 0.0;
};

// A scaler supported in (0, 1] with right endpoint exactly 1.
struct BoundedScaler {
  enum class Family { kPointMass, kUniform, kBeta, kDiscrete };

  explicit BoundedScaler(Family f) : family(f) {}

  Family family;
  double a = 1.0;  // beta shape parameters
  double b = 1.0;
  std::vector<double> values;  // discrete support, ascending, max == 1
  std::vector<double> probs;
  bool atom_at_1 = false;
};

struct Atom {
  double value;
  double mass;
};

class TailModel {
 public:
  enum class Variant { kWeibullian, kLogWeibullian, kBounded };

  static TailModel weibullian(RegVarFn g, double L, double p);
  // Exp(rate): g == 1, L = rate, p = 1.
  static TailModel exponential(double rate = 1.0);
  // |N(0,1)| in Weibullian form: g(u) = sqrt(2/pi) / u, L = 1/2, p = 2.
  static TailModel abs_normal();
  // Upper tail of N(0,1) in Weibullian form: g(u) = 1/(u sqrt(2 pi)).
  static TailModel normal_tail_weibullian();

  static TailModel log_weibullian(double L, double p,
                                  std::function<double(double)> log_tail,
                                  std::function<double(double)> log_density = {});
  // Exact N(0,1) upper tail (log-Weibullian with L = 1/2, p = 2). As a
  // positive risk it is max(N, 0): half of the mass sits at 0.
  static TailModel standard_normal();
  // Exact law of |N(0,1)|.
  static TailModel half_normal();
  static TailModel stretched(double L, double p, double kappa, double q);

  static TailModel point_mass_one();
  static TailModel uniform();
  static TailModel beta(double a, double b);
  static TailModel discrete(std::vector<double> values, std::vector<double> probs);

  Variant variant() const noexcept;
  bool is_weibullian() const noexcept { return variant() == Variant::kWeibullian; }
  bool is_bounded() const noexcept { return variant() == Variant::kBounded; }

  const WeibullianTail& weibullian_params() const;
  const LogWeibullianTail& log_weibullian_params() const;
  const BoundedScaler& bounded_params() const;

  // Leading exponent (L, p) of log P(Y > u) ~ -L u^p; throws for bounded
  // scalers.
  double tail_rate() const;
  double tail_power() const;

  // log P(Y > u) of the completed law; -inf beyond a bounded support.
  double log_tail(double u) const;
  double cdf(double u) const;
  // Log density of the absolutely continuous part; -inf where it vanishes.
  double log_density(double u) const;
  // Point masses with positive value (atoms at 0 are dropped: they never
  // contribute to a product tail).
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  bool has_continuous_part() const noexcept;
  // Support of the continuous part.
  double support_lo() const noexcept;
  double support_hi() const noexcept;

  // Weibullian u0; 0 for the other variants.
  double body_cutoff() const noexcept { return cutoff_; }
  // log g(u) - L u^p without completion (Weibullian only).
  double log_tail_formula(double u) const;

  // Generalized inverse of the completed cdf at 1 - exp(log_survival), i.e.
  // inf{x : log P(Y > x) <= log_survival}. Working from the survival side
  // keeps deep upper quantiles exact.
  double quantile_from_log_survival(double log_survival) const;
  double quantile(double q) const;

  double draw(Rng& rng) const;

  std::string describe() const;

 private:
  using Params = std::variant<WeibullianTail, LogWeibullianTail, BoundedScaler>;
  explicit TailModel(Params params);
  void finish_construction();

  Params params_;
  std::vector<Atom> atoms_;
  double cutoff_ = 0.0;
  bool closed_form_quantile_ = false;
};

// Free-function spellings of the riskdist operations.
double log_tail(const TailModel& model, double u);
std::vector<double> sample(const TailModel& model, std::size_t count, Rng& rng);

// a(u) = u^{1-p} / (L p): the reciprocal hazard rate of a Weibullian tail,
// which makes P(Y > u + a(u) t) / P(Y > u) -> exp(-t).
GumbelAux auxiliary_function(const TailModel& model);
// a(u) = u^{1-p} / L, the form without the factor p. Kept for comparison;
// with it the Gumbel limit is exp(-p t) rather than exp(-t).
GumbelAux auxiliary_function_unscaled(const TailModel& model);

}  // namespace gumbelscale
