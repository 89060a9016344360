#include "ldproj/specfun.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "ldproj/errors.hpp"
#include "ldproj/quadrature.hpp"

namespace ldproj {
namespace {

void require_p(double p, double min_p, const char* what) {
  if (!(p >= min_p) || !std::isfinite(p)) {
    throw DomainError(std::string(what) + ": exponent p = " + std::to_string(p) +
                      " must be >= " + std::to_string(min_p));
  }
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

// Below this distance from p = 2 the Gamma closed form of A_p cancels to noise.
constexpr double kNearGaussian = 0.1;

// A_p = Var(|Z|^p) Var(Z^2 | |Z|^p) = p E[r(Z)^2] with the regression residual
// r(z) = z^2 - M - c (|z|^p - 1), c = 2M/p. Written as
// r = -z^2 expm1(log c + (p - 2) log z) + M (2 - p)/p it is O(|p - 2|) without cancellation.
double constant_a_near_gaussian(double p) {
  const double m = moment(p, 2.0);
  const double log_c = std::log(m) + std::log1p((2.0 - p) / p);
  const double shift = m * (2.0 - p) / p;
  const auto integrand = [=](double z) {
    if (z == 0.0) return shift * shift;
    const double r = -z * z * std::expm1(log_c + (p - 2.0) * std::log(z)) + shift;
    return r * r * std::exp(-std::pow(z, p) / p);
  };
  const double norm = std::exp(std::log(p) / p + log_gamma(1.0 + 1.0 / p));
  return p * integrate_half_line(integrand, 0.0, 1.0).value / norm;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  return boost::math::lgamma(x);
}

double moment(double p, double q) {
  require_p(p, 1.0, "moment");
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError("moment: order q = " + std::to_string(q) + " must be >= 1");
  }
  const double log_m = (q / p) * std::log(p) - std::log(q + 1.0) +
                       log_gamma(1.0 + (q + 1.0) / p) - log_gamma(1.0 + 1.0 / p);
  return std::exp(log_m);
}

double covariance(double p, double r, double s) {
  return moment(p, r + s) - moment(p, r) * moment(p, s);
}

double constant_a(double p) {
  require_p(p, 1.0, "constant_a");
  if (p == 2.0) return 0.0;
  if (std::abs(p - 2.0) < kNearGaussian) return constant_a_near_gaussian(p);
  const double g1 = gamma_fn(1.0 / p);
  const double g3 = gamma_fn(3.0 / p);
  const double g5 = gamma_fn(5.0 / p);
  const double t1 = g5 / gamma_fn(1.0 + 1.0 / p);
  const double t2 = (p + 4.0) * g3 * g3 / (g1 * g1);
  return std::pow(p, 4.0 / p) * (t1 - t2);
}

BivariateCov bivariate_cov(double p) {
  require_p(p, 2.0, "bivariate_cov");
  const double m2 = moment(p, 2.0);
  BivariateCov c;
  c.c11 = moment(p, 4.0) - m2 * m2;
  c.c12 = moment(p, p + 2.0) - m2;
  c.c22 = p;  // M_p(2p) - M_p(p)^2 == p
  const double direct = c.c11 * c.c22 - c.c12 * c.c12;
  const double closed = constant_a(p);
  const double scale = c.c11 * c.c22;
  if (std::abs(direct - closed) > 1e-9 * scale) {
    throw NumericalError("bivariate_cov: determinant cross-check failed at p = " +
                         std::to_string(p) + " (direct " + std::to_string(direct) +
                         ", closed form " + std::to_string(closed) + ")");
  }
  c.det = closed;
  return c;
}

double alpha(double p, double lambda) {
  require_p(p, 2.0, "alpha");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("alpha: lambda = " + std::to_string(lambda) + " outside [0, 1]");
  }
  const double g1 = gamma_fn(1.0 / p);
  const double g3 = gamma_fn(3.0 / p);
  const double g5 = gamma_fn(5.0 / p);
  const double g1p = gamma_fn(1.0 + 1.0 / p);
  const double d1 = (2.0 * p - lambda * (4.0 + 3.0 * p)) * g1p * g3 * g3;
  const double d2 = lambda * g1 * g1 * g5;
  const double denom = d1 + d2;
  if (denom <= 1e-12 * (std::abs(d1) + std::abs(d2))) {
    throw DegeneracyError("alpha: non-positive denominator at p = " + std::to_string(p) +
                          ", lambda = " + std::to_string(lambda) +
                          "; the subcritical limit is deterministic (infinite rate)");
  }
  return 2.0 * g1 * g3 * g3 / denom;
}

double m_p(double p) { return moment(p, 2.0); }

double x_stat_prefactor(double p) {
  require_p(p, 1.0, "x_stat_prefactor");
  const double log_v = log_gamma(1.0 / p) - (2.0 / p) * std::log(p) - log_gamma(3.0 / p);
  return std::exp(0.5 * log_v);
}

double uniform_ball_second_moment(double p, std::int64_t n) {
  require_p(p, 1.0, "uniform_ball_second_moment");
  if (n < 1) throw DomainError("uniform_ball_second_moment: n must be >= 1");
  const double nd = static_cast<double>(n);
  return std::exp(log_gamma(3.0 / p) + log_gamma(1.0 + nd / p) - log_gamma(1.0 / p) -
                  log_gamma(1.0 + (nd + 2.0) / p));
}

PggParams::PggParams(double p) : p_(p) { require_p(p, 1.0, "PggParams"); }

PggParams::PggParams(const PggParams& other) : p_(other.p_) {
  std::shared_lock lock(other.mutex_);
  cache_ = other.cache_;
}

PggParams& PggParams::operator=(const PggParams& other) {
  if (this == &other) return *this;
  std::unordered_map<std::uint64_t, double> copy;
  {
    std::shared_lock lock(other.mutex_);
    copy = other.cache_;
  }
  std::unique_lock lock(mutex_);
  p_ = other.p_;
  cache_ = std::move(copy);
  return *this;
}

double PggParams::moment(double q) const {
  const auto key = std::bit_cast<std::uint64_t>(q);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const double value = ldproj::moment(p_, q);
  std::unique_lock lock(mutex_);
  cache_.emplace(key, value);
  return value;
}

std::size_t PggParams::cached_moments() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

}  // namespace ldproj
