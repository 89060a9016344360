#include "ldproj/rates.hpp"

#include <algorithm>
#include <cmath>

#include "ldproj/errors.hpp"
#include "ldproj/specfun.hpp"

namespace ldproj {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::CriticalA:
      return "critA";
    case Regime::CriticalB1:
      return "critB1";
    case Regime::CriticalB2:
      return "critB2";
    case Regime::CriticalB3:
      return "critB3";
    case Regime::SubcriticalMDP:
      return "subcrit";
    case Regime::CrosspolytopeLDP:
      return "crosspoly";
  }
  return "?";
}

std::string_view to_string(Speed s) {
  switch (s) {
    case Speed::K:
      return "k";
    case Speed::NPowHalfP:
      return "n^(p/2)";
    case Speed::TSquared:
      return "t^2";
    case Speed::SqrtN:
      return "sqrt(n)";
  }
  return "?";
}

Speed expected_speed(Regime r) {
  switch (r) {
    case Regime::CriticalA:
    case Regime::CriticalB1:
      return Speed::K;
    case Regime::CriticalB2:
    case Regime::CriticalB3:
      return Speed::NPowHalfP;
    case Regime::SubcriticalMDP:
      return Speed::TSquared;
    case Regime::CrosspolytopeLDP:
      return Speed::SqrtN;
  }
  return Speed::K;
}

double speed_value(Speed s, double p, double n, double k, double t) {
  switch (s) {
    case Speed::K:
      return k;
    case Speed::NPowHalfP:
      return std::pow(n, p / 2.0);
    case Speed::TSquared:
      return t * t;
    case Speed::SqrtN:
      return std::sqrt(n);
  }
  return k;
}

RegimeSpec RegimeSpec::make(Regime regime, double p, double lambda, bool strict_b1) {
  RegimeSpec spec{p, regime, lambda, expected_speed(regime), strict_b1};
  spec.validate();
  return spec;
}

void RegimeSpec::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("regime: p = " + std::to_string(p) + " must be a finite value >= 1");
  }
  switch (regime) {
    case Regime::CriticalA:
    case Regime::SubcriticalMDP:
      if (p < 2.0) {
        throw UsageError(std::string(to_string(regime)) + " requires p >= 2, got p = " +
                         std::to_string(p));
      }
      break;
    case Regime::CriticalB1:
    case Regime::CriticalB2:
    case Regime::CriticalB3:
      if (p >= 2.0) {
        throw UsageError(std::string(to_string(regime)) + " requires 1 <= p < 2, got p = " +
                         std::to_string(p));
      }
      break;
    case Regime::CrosspolytopeLDP:
      break;
  }
  if (regime == Regime::SubcriticalMDP && !(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("subcritical regime: lambda = " + std::to_string(lambda) +
                      " must lie in [0, 1]");
  }
  if (speed != expected_speed(regime)) {
    throw UsageError(std::string(to_string(regime)) + " runs at speed " +
                     std::string(to_string(expected_speed(regime))) + ", not " +
                     std::string(to_string(speed)));
  }
}

double rate_chi(double x) {
  if (!(x > 0.0) || std::isinf(x)) return kInf;
  return 0.5 * (x - 1.0) - 0.5 * std::log(x);
}

double rate_critical(const RegimeSpec& regime, double x) {
  regime.validate();
  const double m = m_p(regime.p);
  switch (regime.regime) {
    case Regime::CriticalA:
    case Regime::CriticalB1: {
      if (!(x > 0.0) || std::isinf(x)) return kInf;
      const double quad = regime.regime == Regime::CriticalB1 && regime.strict_b1
                              ? 0.5 * (x * x - m)
                              : 0.5 * (x * x - m) / m;
      return quad - std::log(x / std::sqrt(m));
    }
    case Regime::CriticalB3: {
      // Compare against sqrt(m) itself so the closed endpoint stays finite after rounding.
      if (std::isnan(x) || std::isinf(x) || x < std::sqrt(m)) return kInf;
      return std::pow(std::max(x * x - m, 0.0), regime.p / 2.0) / regime.p;
    }
    default:
      throw UsageError("rate_critical: regime " + std::string(to_string(regime.regime)) +
                       " is not one of critA, critB1, critB3");
  }
}

namespace {

double b2_objective(double p, double m, double x, double y) {
  const double ratio = x / y;
  return 0.5 * (ratio * ratio - 1.0) - std::log(ratio) + std::pow(std::max(y * y - m, 0.0), p / 2.0) / p;
}

struct B2Min {
  double y;
  double value;
};

B2Min b2_minimize(double p, double x, double tol) {
  if (!(tol > 0.0)) throw UsageError("rate_critical_b2: tol must be positive");
  if (!(p >= 1.0 && p < 2.0)) {
    throw UsageError("rate_critical_b2 requires 1 <= p < 2, got p = " + std::to_string(p));
  }
  const double m = m_p(p);
  const double lo = std::sqrt(m);
  const auto h = [&](double y) { return b2_objective(p, m, x, y); };

  // For y beyond max(x, sqrt M) both summands increase, so the infimum lies in
  // [sqrt M, max(x, sqrt M)]. The I_Z summand is not convex near sqrt M, so a
  // coarse scan picks the basin before golden-section refinement.
  const double hi = std::max(x, lo);
  B2Min best{lo, h(lo)};
  if (hi == lo) return best;

  constexpr int kScan = 512;
  const double step = (hi - lo) / kScan;
  int best_i = 0;
  for (int i = 1; i <= kScan; ++i) {
    const double y = i == kScan ? hi : lo + step * i;
    const double v = h(y);
    if (v < best.value) {
      best = {y, v};
      best_i = i;
    }
  }

  double a = lo + step * std::max(best_i - 1, 0);
  double b = std::min(lo + step * (best_i + 1), hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double hc = h(c);
  double hd = h(d);
  while (b - a > tol) {
    if (hc < hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - inv_phi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + inv_phi * (b - a);
      hd = h(d);
    }
  }
  const double y = 0.5 * (a + b);
  const double v = h(y);
  if (v < best.value) best = {y, v};
  return best;
}

}  // namespace

double rate_critical_b2(double p, double x, double tol) {
  if (!(tol > 0.0)) throw UsageError("rate_critical_b2: tol must be positive");
  if (!(x > 0.0) || std::isinf(x)) return kInf;
  return std::max(0.0, b2_minimize(p, x, tol).value);
}

double rate_critical_b2_argmin(double p, double x, double tol) {
  if (!(tol > 0.0)) throw UsageError("rate_critical_b2: tol must be positive");
  if (!(x > 0.0) || std::isinf(x)) return std::numeric_limits<double>::quiet_NaN();
  return b2_minimize(p, x, tol).y;
}

double rate_subcritical(double p, double lambda, double x) {
  if (!(p >= 2.0)) throw UsageError("rate_subcritical requires p >= 2");
  if (std::isnan(x)) return kInf;
  if (x == 0.0) return 0.0;
  return alpha(p, lambda) * x * x;
}

double rate_bivariate(double p, double x1, double x2) {
  if (!(p > 2.0)) {
    throw DegeneracyError("rate_bivariate: the covariance of (Z^2, |Z|^p) is singular for p <= 2 (p = " +
                          std::to_string(p) + ")");
  }
  const BivariateCov c = bivariate_cov(p);
  if (!(c.det > 0.0)) throw DegeneracyError("rate_bivariate: covariance determinant vanished");
  return (c.c22 * x1 * x1 - 2.0 * c.c12 * x1 * x2 + c.c11 * x2 * x2) / (2.0 * c.det);
}

double rate_crosspolytope(double x) {
  if (!(x >= 1.0) || std::isinf(x)) return kInf;
  return std::sqrt((x - 1.0) * (x + 1.0));
}

double rate_pth_power(double p, double x) {
  if (!(p >= 1.0)) throw DomainError("rate_pth_power: p must be >= 1");
  if (!(x > 0.0) || std::isinf(x)) return kInf;
  return (std::pow(x, p) - 1.0) / p - std::log(x);
}

RateFunction make_rate_function(const RegimeSpec& regime, double tol) {
  regime.validate();
  RateFunction f;
  f.regime = regime;
  f.name = std::string(to_string(regime.regime));
  const double p = regime.p;
  switch (regime.regime) {
    case Regime::CriticalA:
    case Regime::CriticalB1:
    case Regime::CriticalB3:
      f.eval = [regime](double x) { return rate_critical(regime, x); };
      f.lln_point = std::sqrt(m_p(p));
      if (regime.regime == Regime::CriticalB3) {
        f.domain_lo = f.lln_point;
        f.lo_closed = true;
      } else {
        f.domain_lo = 0.0;
      }
      if (regime.regime == Regime::CriticalB1 && regime.strict_b1) f.name = "critB1-literal";
      break;
    case Regime::CriticalB2:
      f.eval = [p, tol](double x) { return rate_critical_b2(p, x, tol); };
      f.lln_point = std::sqrt(m_p(p));
      f.domain_lo = 0.0;
      break;
    case Regime::SubcriticalMDP: {
      const double a = alpha(p, regime.lambda);
      f.eval = [a](double x) { return std::isnan(x) ? kInf : a * x * x; };
      f.lln_point = 0.0;
      break;
    }
    case Regime::CrosspolytopeLDP:
      f.eval = rate_crosspolytope;
      f.lln_point = 1.0;
      f.domain_lo = 1.0;
      f.lo_closed = true;
      break;
  }
  return f;
}

RateFunction singular_rate(double lln_point) {
  RateFunction f;
  f.regime = RegimeSpec{};
  f.eval = [lln_point](double x) { return x == lln_point ? 0.0 : kInf; };
  f.domain_lo = lln_point;
  f.domain_hi = lln_point;
  f.lo_closed = true;
  f.lln_point = lln_point;
  f.name = "singular";
  return f;
}

}  // namespace ldproj
