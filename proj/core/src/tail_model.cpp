#include "gumbelscale/tail_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "gumbelscale/errors.hpp"
#include "gumbelscale/generalized_inverse.hpp"
#include "gumbelscale/normal.hpp"

namespace gumbelscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void require_argument(double u) {
  if (std::isnan(u) || std::isinf(u)) {
    throw DomainError("tail argument must be finite");
  }
}

double formula_log(const WeibullianTail& w, double u) {
  return w.g.log_eval(u) - w.L * std::pow(u, w.p);
}

double formula_slope(const WeibullianTail& w, double u) {
  return w.g.log_derivative(u) - w.L * w.p * std::pow(u, w.p - 1.0);
}

// First u0 such that g(u)exp(-Lu^p) is <= 1 and non-increasing on [u0, inf).
double weibullian_cutoff(const WeibullianTail& w) {
  double u_big = 1.0;
  for (int i = 0; i < 2000 && (formula_slope(w, u_big) >= 0.0 ||
                               formula_log(w, u_big) > 0.0);
       ++i) {
    u_big *= 2.0;
  }
  const auto& knots = w.g.slowly_varying().knots();
  if (!knots.empty()) u_big = std::max(u_big, 2.0 * knots.back());
  if (!std::isfinite(u_big)) {
    throw NumericalError("Weibullian tail never becomes decreasing");
  }

  // Last sign change of the slope from + to - on a log grid.
  constexpr int kGrid = 4000;
  constexpr double kTiny = 1e-12;
  const double log_lo = std::log(kTiny);
  const double log_hi = std::log(u_big);
  double last_positive = 0.0;
  double next_point = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double u = std::exp(log_lo + (log_hi - log_lo) * i / kGrid);
    if (formula_slope(w, u) > 0.0) {
      last_positive = u;
      next_point = std::exp(log_lo + (log_hi - log_lo) * (i + 1) / kGrid);
    }
  }
  double u_mono = 0.0;
  if (last_positive > 0.0) {
    double lo = last_positive;
    double hi = next_point;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (formula_slope(w, mid) > 0.0 ? lo : hi) = mid;
    }
    u_mono = hi;
  }

  const double start = std::max(u_mono, kTiny);
  if (formula_log(w, start) <= 0.0) return u_mono;
  double lo = start;
  double hi = u_big;
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (formula_log(w, mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

double log_sf_numeric_hazard(const std::function<double(double)>& log_tail,
                             double u) {
  const double h = 1e-6 * std::max(u, 1e-3);
  const double lo = std::max(u - h, 0.5 * u);
  const double hi = u + h;
  return -(log_tail(hi) - log_tail(lo)) / (hi - lo);
}

}  // namespace

TailModel::TailModel(Params params) : params_(std::move(params)) {
  finish_construction();
}

void TailModel::finish_construction() {
  atoms_.clear();
  if (auto* w = std::get_if<WeibullianTail>(&params_)) {
    cutoff_ = weibullian_cutoff(*w);
    if (cutoff_ > 0.0) {
      const double mass = -std::expm1(std::min(0.0, formula_log(*w, cutoff_)));
      if (mass > 1e-12) atoms_.push_back({cutoff_, mass});
    }
    closed_form_quantile_ = w->g.is_pure_power() && w->g.index() == 0.0 &&
                            w->g.scale() == 1.0;
  } else if (auto* b = std::get_if<BoundedScaler>(&params_)) {
    cutoff_ = 0.0;
    switch (b->family) {
      case BoundedScaler::Family::kPointMass:
        atoms_.push_back({1.0, 1.0});
        break;
      case BoundedScaler::Family::kDiscrete:
        for (std::size_t i = 0; i < b->values.size(); ++i) {
          atoms_.push_back({b->values[i], b->probs[i]});
        }
        break;
      default:
        break;
    }
  } else {
    cutoff_ = 0.0;
  }
}

TailModel TailModel::weibullian(RegVarFn g, double L, double p) {
  require_positive(L, "Weibullian L");
  require_positive(p, "Weibullian p");
  return TailModel(WeibullianTail{std::move(g), L, p});
}

TailModel TailModel::exponential(double rate) {
  return weibullian(RegVarFn::unit(), rate, 1.0);
}

TailModel TailModel::abs_normal() {
  return weibullian(RegVarFn(-1.0, std::sqrt(2.0 / std::numbers::pi)), 0.5, 2.0);
}

TailModel TailModel::normal_tail_weibullian() {
  return weibullian(RegVarFn(-1.0, 1.0 / std::sqrt(2.0 * std::numbers::pi)), 0.5,
                    2.0);
}

TailModel TailModel::log_weibullian(double L, double p,
                                    std::function<double(double)> log_tail,
                                    std::function<double(double)> log_density) {
  require_positive(L, "log-Weibullian L");
  require_positive(p, "log-Weibullian p");
  if (!log_tail) throw DomainError("log-Weibullian model needs a log-tail");
  LogWeibullianTail t{L, p, std::move(log_tail), std::move(log_density)};
  return TailModel(std::move(t));
}

TailModel TailModel::standard_normal() {
  LogWeibullianTail t{0.5, 2.0, [](double u) { return normal_log_sf(u); },
                      [](double u) { return normal_log_pdf(u); }};
  t.family = LogWeibullianTail::Family::kNormal;
  return TailModel(std::move(t));
}

TailModel TailModel::half_normal() {
  LogWeibullianTail t{0.5, 2.0,
                      [](double u) { return std::numbers::ln2 + normal_log_sf(u); },
                      [](double u) { return std::numbers::ln2 + normal_log_pdf(u); }};
  t.family = LogWeibullianTail::Family::kHalfNormal;
  return TailModel(std::move(t));
}

TailModel TailModel::stretched(double L, double p, double kappa, double q) {
  require_positive(L, "stretched L");
  require_positive(p, "stretched p");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("stretched kappa must be >= 0");
  }
  if (!(q >= 0.0 && q < p)) throw DomainError("stretched q must lie in [0, p)");
  auto lt = [L, p, kappa, q](double u) {
    if (u <= 0.0) return 0.0;
    return -L * std::pow(u, p) - kappa * std::pow(u, q);
  };
  auto ld = [L, p, kappa, q](double u) {
    if (u <= 0.0) return kNegInf;
    const double hazard =
        L * p * std::pow(u, p - 1.0) + kappa * q * std::pow(u, q - 1.0);
    if (!(hazard > 0.0)) return kNegInf;
    return -L * std::pow(u, p) - kappa * std::pow(u, q) + std::log(hazard);
  };
  LogWeibullianTail t{L, p, lt, ld};
  t.family = LogWeibullianTail::Family::kStretched;
  t.kappa = kappa;
  t.q = q;
  return TailModel(std::move(t));
}

TailModel TailModel::point_mass_one() {
  BoundedScaler s{BoundedScaler::Family::kPointMass};
  s.values = {1.0};
  s.probs = {1.0};
  s.atom_at_1 = true;
  return TailModel(std::move(s));
}

TailModel TailModel::uniform() {
  return TailModel(BoundedScaler{BoundedScaler::Family::kUniform});
}

TailModel TailModel::beta(double a, double b) {
  require_positive(a, "beta a");
  require_positive(b, "beta b");
  BoundedScaler s{BoundedScaler::Family::kBeta};
  s.a = a;
  s.b = b;
  return TailModel(std::move(s));
}

TailModel TailModel::discrete(std::vector<double> values, std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size()) {
    throw DomainError("discrete scaler: values and probs must match and be non-empty");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  BoundedScaler s{BoundedScaler::Family::kDiscrete};
  double total = 0.0;
  for (std::size_t i : order) {
    if (!(values[i] > 0.0 && values[i] <= 1.0)) {
      throw DomainError("discrete scaler: values must lie in (0, 1]");
    }
    if (!(probs[i] > 0.0)) throw DomainError("discrete scaler: probs must be positive");
    if (!s.values.empty() && values[i] == s.values.back()) {
      throw DomainError("discrete scaler: duplicate support value");
    }
    s.values.push_back(values[i]);
    s.probs.push_back(probs[i]);
    total += probs[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("discrete scaler: probs must sum to 1");
  }
  for (double& pr : s.probs) pr /= total;
  if (s.values.back() != 1.0) {
    throw DomainError("discrete scaler: right endpoint must equal 1");
  }
  s.atom_at_1 = true;
  if (s.values.size() == 1) s.family = BoundedScaler::Family::kPointMass;
  return TailModel(std::move(s));
}

TailModel::Variant TailModel::variant() const noexcept {
  return static_cast<Variant>(params_.index());
}

const WeibullianTail& TailModel::weibullian_params() const {
  if (auto* w = std::get_if<WeibullianTail>(&params_)) return *w;
  throw UnsupportedVariant("operation requires a Weibullian tail model");
}

const LogWeibullianTail& TailModel::log_weibullian_params() const {
  if (auto* w = std::get_if<LogWeibullianTail>(&params_)) return *w;
  throw UnsupportedVariant("operation requires a log-Weibullian tail model");
}

const BoundedScaler& TailModel::bounded_params() const {
  if (auto* b = std::get_if<BoundedScaler>(&params_)) return *b;
  throw UnsupportedVariant("operation requires a bounded scaler");
}

double TailModel::tail_rate() const {
  if (auto* w = std::get_if<WeibullianTail>(&params_)) return w->L;
  return log_weibullian_params().L;
}

double TailModel::tail_power() const {
  if (auto* w = std::get_if<WeibullianTail>(&params_)) return w->p;
  return log_weibullian_params().p;
}

double TailModel::log_tail_formula(double u) const {
  require_argument(u);
  if (!(u > 0.0)) throw DomainError("log_tail_formula: u must be positive");
  return formula_log(weibullian_params(), u);
}

double TailModel::log_tail(double u) const {
  require_argument(u);
  if (u <= 0.0) {
    if (auto* lw = std::get_if<LogWeibullianTail>(&params_)) {
      return std::min(0.0, lw->log_tail(0.0));
    }
    return 0.0;
  }
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WeibullianTail>) {
          if (u < cutoff_) return 0.0;
          return std::min(0.0, formula_log(m, u));
        } else if constexpr (std::is_same_v<T, LogWeibullianTail>) {
          return std::min(0.0, m.log_tail(u));
        } else {
          if (u >= 1.0) return kNegInf;
          switch (m.family) {
            case BoundedScaler::Family::kPointMass:
              return 0.0;
            case BoundedScaler::Family::kUniform:
              return std::log1p(-u);
            case BoundedScaler::Family::kBeta:
              return std::log(boost::math::ibetac(m.a, m.b, u));
            case BoundedScaler::Family::kDiscrete: {
              double mass = 0.0;
              for (std::size_t i = 0; i < m.values.size(); ++i) {
                if (m.values[i] > u) mass += m.probs[i];
              }
              return mass > 0.0 ? std::log(std::min(mass, 1.0)) : kNegInf;
            }
          }
          return kNegInf;
        }
      },
      params_);
}

double TailModel::cdf(double u) const { return -std::expm1(log_tail(u)); }

double TailModel::log_density(double u) const {
  require_argument(u);
  if (!(u > 0.0)) return kNegInf;
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WeibullianTail>) {
          if (u <= cutoff_) return kNegInf;
          const double hazard = -formula_slope(m, u);
          if (!(hazard > 0.0)) return kNegInf;
          return log_tail(u) + std::log(hazard);
        } else if constexpr (std::is_same_v<T, LogWeibullianTail>) {
          if (m.log_density) return m.log_density(u);
          const double hazard = log_sf_numeric_hazard(m.log_tail, u);
          if (!(hazard > 0.0)) return kNegInf;
          return log_tail(u) + std::log(hazard);
        } else {
          if (u >= 1.0) return kNegInf;
          switch (m.family) {
            case BoundedScaler::Family::kUniform:
              return 0.0;
            case BoundedScaler::Family::kBeta: {
              const boost::math::beta_distribution<double> dist(m.a, m.b);
              return std::log(boost::math::pdf(dist, u));
            }
            default:
              return kNegInf;
          }
        }
      },
      params_);
}

bool TailModel::has_continuous_part() const noexcept {
  if (auto* b = std::get_if<BoundedScaler>(&params_)) {
    return b->family == BoundedScaler::Family::kUniform ||
           b->family == BoundedScaler::Family::kBeta;
  }
  return true;
}

double TailModel::support_lo() const noexcept { return cutoff_; }

double TailModel::support_hi() const noexcept {
  return is_bounded() ? 1.0 : kInf;
}

double TailModel::quantile_from_log_survival(double log_survival) const {
  if (std::isnan(log_survival) || log_survival > 0.0) {
    throw DomainError("quantile: log survival level must be <= 0");
  }
  if (log_survival == kNegInf) return support_hi();
  if (closed_form_quantile_) {
    const auto& w = std::get<WeibullianTail>(params_);
    return std::pow(-log_survival / w.L, 1.0 / w.p);
  }
  if (auto* b = std::get_if<BoundedScaler>(&params_)) {
    switch (b->family) {
      case BoundedScaler::Family::kPointMass:
        return 1.0;
      case BoundedScaler::Family::kUniform:
        return -std::expm1(log_survival);
      case BoundedScaler::Family::kDiscrete: {
        const double level = std::exp(log_survival);
        double above = 1.0;
        for (std::size_t i = 0; i < b->values.size(); ++i) {
          above -= b->probs[i];
          if (above <= level * (1.0 + 1e-15)) return b->values[i];
        }
        return 1.0;
      }
      case BoundedScaler::Family::kBeta:
        return boost::math::ibetac_inv(b->a, b->b, std::exp(log_survival));
    }
  }
  auto neg_log_tail = [this](double x) { return -log_tail(x); };
  return generalized_inverse(neg_log_tail, -log_survival, 0.0, support_hi());
}

double TailModel::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile: q must lie in [0, 1]");
  return quantile_from_log_survival(std::log1p(-q));
}

double TailModel::draw(Rng& rng) const {
  // P(Y > x) = V with V uniform is the same law as F(x) = U.
  return quantile_from_log_survival(std::log(rng.uniform()));
}

std::string TailModel::describe() const {
  std::ostringstream out;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WeibullianTail>) {
          out << "weibullian(L=" << m.L << ", p=" << m.p << ", g=" << m.g.scale()
              << "*u^" << m.g.index() << ")";
        } else if constexpr (std::is_same_v<T, LogWeibullianTail>) {
          out << "logweibullian(L=" << m.L << ", p=" << m.p << ")";
        } else {
          out << "bounded(";
          switch (m.family) {
            case BoundedScaler::Family::kPointMass: out << "point_mass"; break;
            case BoundedScaler::Family::kUniform: out << "uniform"; break;
            case BoundedScaler::Family::kBeta:
              out << "beta a=" << m.a << " b=" << m.b;
              break;
            case BoundedScaler::Family::kDiscrete:
              out << "discrete n=" << m.values.size();
              break;
          }
          out << ")";
        }
      },
      params_);
  return out.str();
}

double log_tail(const TailModel& model, double u) { return model.log_tail(u); }

std::vector<double> sample(const TailModel& model, std::size_t count, Rng& rng) {
  if (count == 0) throw DomainError("sample: count must be >= 1");
  std::vector<double> out(count);
  for (double& x : out) x = model.draw(rng);
  return out;
}

GumbelAux auxiliary_function(const TailModel& model) {
  const auto& w = model.weibullian_params();
  return GumbelAux(RegVarFn(1.0 - w.p, 1.0 / (w.L * w.p)));
}

GumbelAux auxiliary_function_unscaled(const TailModel& model) {
  const auto& w = model.weibullian_params();
  return GumbelAux(RegVarFn(1.0 - w.p, 1.0 / w.L));
}

}  // namespace gumbelscale
