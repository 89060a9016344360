#pragma once

// Closed-form rate functions for every large/moderate-deviation regime of the
// projected-norm statistics, plus the one-dimensional infimum of the
// intermediate critical regime.
//
// All rates are total functions into [0, +inf]; +inf is returned, never thrown.

#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace ldproj {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Regime {
  CriticalA,        ///< p >= 2, speed k
  CriticalB1,       ///< 1 <= p < 2, k = o(n^{p/2}), speed k
  CriticalB2,       ///< 1 <= p < 2, k ~ n^{p/2}, speed n^{p/2}
  CriticalB3,       ///< 1 <= p < 2, k = omega(n^{p/2}), speed n^{p/2}
  SubcriticalMDP,   ///< p >= 2, speed t^2
  CrosspolytopeLDP  ///< speed sqrt(n)
};

enum class Speed { K, NPowHalfP, TSquared, SqrtN };

std::string_view to_string(Regime r);
std::string_view to_string(Speed s);
Speed expected_speed(Regime r);

/// Numeric speed for a concrete (n, k, t).
double speed_value(Speed s, double p, double n, double k, double t);

struct RegimeSpec {
  double p = 2.0;
  Regime regime = Regime::CriticalA;
  double lambda = 0.0;  ///< SubcriticalMDP only
  Speed speed = Speed::K;
  /// CriticalB1 only: evaluate (x^2 - M)/2 - log(x / sqrt M) instead of the
  /// case-(a) normalization (x^2 - M)/(2M) - log(x / sqrt M).
  bool strict_b1 = false;

  /// Builds a spec with the matching speed and validates it.
  static RegimeSpec make(Regime regime, double p, double lambda = 0.0, bool strict_b1 = false);

  /// Throws UsageError on a p/regime/speed mismatch, DomainError on bad p or lambda.
  void validate() const;
};

/// I_G(x) = (x - 1)/2 - log(x)/2 for x > 0.
double rate_chi(double x);

/// CriticalA, CriticalB1 (default or strict form) and CriticalB3.
double rate_critical(const RegimeSpec& regime, double x);

/// inf_{y >= sqrt(M_p(2))} [((x/y)^2 - 1)/2 - log(x/y) + (y^2 - M_p(2))^{p/2} / p].
/// The minimizer is located to absolute tolerance tol in y.
double rate_critical_b2(double p, double x, double tol = 1e-10);

/// Location of the b2 infimum; NaN for x <= 0.
double rate_critical_b2_argmin(double p, double x, double tol = 1e-10);

/// alpha_{p,lambda} x^2.
double rate_subcritical(double p, double lambda, double x);

/// J(x1, x2) = <x, C^{-1} x> / 2 with C the covariance of (Z^2, |Z|^p); p > 2.
double rate_bivariate(double p, double x1, double x2);

/// sqrt(x^2 - 1) for x >= 1.
double rate_crosspolytope(double x);

/// I_2(x) = (x^p - 1)/p - log x for x > 0.
double rate_pth_power(double p, double x);

struct RateFunction {
  RegimeSpec regime;
  std::function<double(double)> eval;
  double domain_lo = -kInf;  ///< rate is finite on [domain_lo, domain_hi] (or the open variant)
  double domain_hi = kInf;
  bool lo_closed = false;
  double lln_point = 0.0;
  /// False for rates reconstructed from sampled estimates.
  bool closed_form = true;
  std::string name;

  double operator()(double x) const { return eval(x); }
};

RateFunction make_rate_function(const RegimeSpec& regime, double tol = 1e-10);

/// The singular rate: 0 at lln_point and +inf elsewhere.
RateFunction singular_rate(double lln_point = 1.0);

}  // namespace ldproj
