#include "gumbelscale/regvar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

SlowlyVarying SlowlyVarying::log_power(double beta) {
  if (!std::isfinite(beta)) throw DomainError("log_power: beta not finite");
  SlowlyVarying sv;
  sv.kind_ = Kind::kLogPower;
  sv.beta_ = beta;
  return sv;
}

SlowlyVarying SlowlyVarying::tabulated(std::vector<double> knots,
                                       std::vector<double> values) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    throw DomainError("tabulated: need >= 2 knots with matching values");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i] > 0.0) || !std::isfinite(knots[i])) {
      throw DomainError("tabulated: knots must be positive and finite");
    }
    if (i > 0 && !(knots[i] > knots[i - 1])) {
      throw DomainError("tabulated: knots must be strictly increasing");
    }
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw DomainError("tabulated: values must be positive and finite");
    }
  }
  if (values.front() != 1.0 || values.back() != 1.0) {
    throw DomainError("tabulated: endpoint values must be pinned to 1");
  }
  SlowlyVarying sv;
  sv.kind_ = Kind::kTabulated;
  sv.knots_ = std::move(knots);
  sv.values_ = std::move(values);
  return sv;
}

double SlowlyVarying::log_eval(double u) const {
  switch (kind_) {
    case Kind::kConstant:
      return 0.0;
    case Kind::kLogPower:
      return u > std::numbers::e ? beta_ * std::log(std::log(u)) : 0.0;
    case Kind::kTabulated: {
      if (u <= knots_.front() || u >= knots_.back()) return 0.0;
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
      const std::size_t j = static_cast<std::size_t>(it - knots_.begin());
      const double x0 = std::log(knots_[j - 1]);
      const double x1 = std::log(knots_[j]);
      const double y0 = std::log(values_[j - 1]);
      const double y1 = std::log(values_[j]);
      return y0 + (y1 - y0) * (std::log(u) - x0) / (x1 - x0);
    }
  }
  return 0.0;
}

double SlowlyVarying::log_derivative(double u) const {
  switch (kind_) {
    case Kind::kConstant:
      return 0.0;
    case Kind::kLogPower:
      return u > std::numbers::e ? beta_ / (u * std::log(u)) : 0.0;
    case Kind::kTabulated: {
      if (u < knots_.front() || u >= knots_.back()) return 0.0;
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
      const std::size_t j = static_cast<std::size_t>(it - knots_.begin());
      const double slope = (std::log(values_[j]) - std::log(values_[j - 1])) /
                           (std::log(knots_[j]) - std::log(knots_[j - 1]));
      return slope / u;
    }
  }
  return 0.0;
}

RegVarFn::RegVarFn(double index, double scale, SlowlyVarying slowly_varying)
    : index_(index), scale_(scale), sv_(std::move(slowly_varying)) {
  if (!std::isfinite(index)) throw DomainError("RegVarFn: index not finite");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("RegVarFn: scale must be positive and finite");
  }
}

double RegVarFn::log_eval(double u) const {
  if (!(u > 0.0)) throw DomainError("RegVarFn: argument must be positive");
  return std::log(scale_) + index_ * std::log(u) + sv_.log_eval(u);
}

double RegVarFn::operator()(double u) const { return std::exp(log_eval(u)); }

double RegVarFn::log_derivative(double u) const {
  return index_ / u + sv_.log_derivative(u);
}

GumbelAux::GumbelAux(RegVarFn a) : a_(std::move(a)) {
  if (tau() < -1.0) {
    throw DomainError("GumbelAux: index -tau requires tau >= -1");
  }
}

bool GumbelAux::experimental() const noexcept { return tau() == -1.0; }

}  // namespace gumbelscale
