#pragma once

// Gamma-function machinery and closed-form moments of p-generalized Gaussians.
//
// A p-generalized Gaussian Z has density exp(-|x|^p / p) / (2 p^{1/p} Gamma(1 + 1/p)).
// Its absolute moments are
//
//   M_p(q) = E|Z|^q = p^{q/p} / (q + 1) * Gamma(1 + (q + 1)/p) / Gamma(1 + 1/p),
//
// and every constant below is assembled from them. All Gamma expressions are
// evaluated in log space and exponentiated once.

#include <cstdint>
#include <shared_mutex>
#include <unordered_map>

namespace ldproj {

/// log Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// M_p(q) for p >= 1, q >= 1.
double moment(double p, double q);

/// Cov(|Z|^r, |Z|^s) = M_p(r + s) - M_p(r) M_p(s).
double covariance(double p, double r, double s);

/// Covariance matrix of (Z^2 - M_p(2), |Z|^p - 1) for p >= 2.
struct BivariateCov {
  double c11 = 0.0;
  double c12 = 0.0;
  double c22 = 0.0;
  /// c11 * c22 - c12^2, cross-checked against the Gamma closed form A_p.
  double det = 0.0;

  /// True iff the determinant vanishes (p == 2, where Z^2 == |Z|^p).
  [[nodiscard]] bool degenerate() const { return det == 0.0; }
};

BivariateCov bivariate_cov(double p);

/// A_p = p^{4/p} (Gamma(5/p)/Gamma(1+1/p) - (p+4) Gamma(3/p)^2/Gamma(1/p)^2).
/// Exactly zero at p = 2.
double constant_a(double p);

/// alpha_{p,lambda}: the coefficient of the quadratic subcritical MDP rate.
/// Throws DegeneracyError when the denominator is non-positive (p = 2, lambda = 1).
double alpha(double p, double lambda);

/// m_p, the law-of-large-numbers constant of n^{-1} sum Z_i^2; equal to M_p(2).
double m_p(double p);

/// sqrt(Gamma(1/p) / (p^{2/p} Gamma(3/p))) == 1 / sqrt(M_p(2)); the centering
/// prefactor of the subcritical statistic.
double x_stat_prefactor(double p);

/// E X_1^2 for X uniform on the l_p^n ball:
/// Gamma(3/p) Gamma(1 + n/p) / (Gamma(1/p) Gamma(1 + (n + 2)/p)).
double uniform_ball_second_moment(double p, std::int64_t n);

/// Regularized upper incomplete gamma in log space: log Q(a, x), a > 0, x >= 0.
/// Stays finite far into the tail where Q itself underflows.
double log_gamma_q(double a, double x);

/// log P(a, x) = log(1 - Q(a, x)).
double log_gamma_p(double a, double x);

/// p-generalized Gaussian parameters with a per-exponent moment cache.
///
/// The cache is keyed on the exact bit pattern of q and is safe for concurrent
/// readers and writers.
class PggParams {
 public:
  explicit PggParams(double p);

  PggParams(const PggParams& other);
  PggParams& operator=(const PggParams& other);

  [[nodiscard]] double p() const { return p_; }

  /// Cached M_p(q).
  double moment(double q) const;

  [[nodiscard]] std::size_t cached_moments() const;

 private:
  double p_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::uint64_t, double> cache_;
};

}  // namespace ldproj
