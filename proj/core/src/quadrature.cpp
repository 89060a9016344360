#include "ldproj/quadrature.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ldproj/errors.hpp"
#include "ldproj/specfun.hpp"

namespace ldproj {

namespace {
constexpr unsigned kMaxDepth = 15;
constexpr int kMaxSegments = 200;
constexpr double kNegligible = 1e-300;
constexpr double kTailAgreement = 1e-11;
}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
  QuadratureResult r;
  if (a == b) return r;
  double l1 = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, kMaxDepth,
                                                                          rel_tol, &r.error, &l1);
  if (!std::isfinite(r.value)) {
    throw NumericalError("quadrature produced a non-finite value on [" + std::to_string(a) + ", " +
                         std::to_string(b) + "]");
  }
  return r;
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double a,
                                     double initial_length, double rel_tol) {
  if (!(initial_length > 0.0)) throw UsageError("integrate_half_line: initial length must be positive");
  QuadratureResult total = integrate(f, a, a + initial_length, rel_tol);
  total.segments = 1;
  double left = a + initial_length;
  double width = initial_length;
  double scale = std::abs(total.value);
  while (total.segments < kMaxSegments) {
    const QuadratureResult piece = integrate(f, left, left + width, rel_tol);
    total.value += piece.value;
    total.error += piece.error;
    ++total.segments;
    left += width;
    width *= 2.0;
    scale = std::max(scale, std::abs(total.value));
    const double tail = std::abs(f(left));
    if (std::abs(piece.value) <= kTailAgreement * scale && tail <= kNegligible * std::max(scale, 1.0)) {
      return total;
    }
  }
  throw NumericalError("half-line quadrature did not converge after " +
                       std::to_string(kMaxSegments) + " segments (last value " +
                       std::to_string(total.value) + ")");
}

double moment_quadrature(double p, double q) {
  if (!(p >= 1.0)) throw DomainError("moment_quadrature: p must be >= 1");
  // Density of |Z| on [0, inf): exp(-x^p / p) / (p^{1/p} Gamma(1 + 1/p)).
  const double log_norm = std::log(p) / p + log_gamma(1.0 + 1.0 / p);
  const auto integrand = [p, q, log_norm](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(q * std::log(x) - std::pow(x, p) / p - log_norm);
  };
  // Split at the mode of x^q e^{-x^p/p} so the adaptive rule sees the peak.
  const double mode = std::pow(q, 1.0 / p);
  return integrate(integrand, 0.0, mode).value +
         integrate_half_line(integrand, mode, std::max(1.0, mode)).value;
}

}  // namespace ldproj
