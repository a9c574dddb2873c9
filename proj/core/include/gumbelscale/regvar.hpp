#pragma once

#include <vector>

namespace gumbelscale {

// Slowly varying part l(u) of a regularly varying function.
//
//   constant   l(u) = 1
//   log_power  l(u) = (log u)^beta for u >= e, and 1 below e so that l stays
//              positive and continuous on (0, inf)
//   tabulated  piecewise linear in (log u, log l) between knots, l = 1 at the
//              first and last knot and outside the table
class SlowlyVarying {
 public:
  enum class Kind { kConstant, kLogPower, kTabulated };

  static SlowlyVarying constant() { return SlowlyVarying(); }
  static SlowlyVarying log_power(double beta);
  static SlowlyVarying tabulated(std::vector<double> knots,
                                 std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double log_eval(double u) const;
  // d/du log l(u); one-sided (right) derivative at table knots.
  double log_derivative(double u) const;

 private:
  SlowlyVarying() = default;

  Kind kind_ = Kind::kConstant;
  double beta_ = 0.0;
  std::vector<double> knots_;
  std::vector<double> values_;
};

// u -> scale * u^index * l(u).
class RegVarFn {
 public:
  RegVarFn(double index, double scale,
           SlowlyVarying slowly_varying = SlowlyVarying::constant());

  static RegVarFn unit() { return RegVarFn(0.0, 1.0); }

  double index() const noexcept { return index_; }
  double scale() const noexcept { return scale_; }
  const SlowlyVarying& slowly_varying() const noexcept { return sv_; }

  double operator()(double u) const;
  double log_eval(double u) const;
  double log_derivative(double u) const;

  // True for c * u^rho with constant slowly varying part.
  bool is_pure_power() const noexcept {
    return sv_.kind() == SlowlyVarying::Kind::kConstant;
  }

 private:
  double index_;
  double scale_;
  SlowlyVarying sv_;
};

// Scaling function a(.) of the Gumbel max-domain condition. Its regular
// variation index is -tau and tau >= -1 is required. tau == -1 is accepted
// but is outside every worked case, so it is flagged experimental.
class GumbelAux {
 public:
  explicit GumbelAux(RegVarFn a);

  double operator()(double u) const { return a_(u); }
  const RegVarFn& function() const noexcept { return a_; }
  double tau() const noexcept { return -a_.index(); }
  bool experimental() const noexcept;

 private:
  RegVarFn a_;
};

}  // namespace gumbelscale
