#pragma once

// Cumulant generating functions, their Legendre-Fenchel conjugates, and the
// four-variable constrained quadratic behind the quadratic subcritical rate.

#include <array>
#include <functional>
#include <vector>

namespace ldproj {

/// log E exp(theta |Z|^r) for a p-generalized Gaussian Z, by quadrature.
/// Returns +inf where the expectation diverges. Throws NumericalError when
/// quadrature fails inside the finiteness domain.
double cgf_pgg_power(double p, double r, double theta);

/// A convex CGF together with its effective domain and a sampled table used
/// for validation.
struct CgfTable {
  std::function<double(double)> cgf;  ///< Lambda(theta), +inf outside the domain
  double theta_min = 0.0;
  double theta_max = 0.0;
  bool min_closed = false;  ///< Lambda finite at theta_min itself
  bool max_closed = false;
  std::vector<double> theta;
  std::vector<double> values;

  /// Samples `points` equispaced values inside the domain (clipped to
  /// [-span, span] when a side is unbounded).
  static CgfTable build(std::function<double(double)> cgf, double theta_min, double theta_max,
                        bool min_closed, bool max_closed, int points = 201, double span = 8.0);

  /// Lambda(0) == 0 and discrete convexity on the sampled grid. Throws DomainError.
  void validate() const;

  double operator()(double t) const { return cgf(t); }
  [[nodiscard]] bool in_domain(double t) const;
};

CgfTable gaussian_cgf();
/// CGF of a chi-square variable with one degree of freedom: -log(1 - 2 theta)/2.
CgfTable chi_square_cgf();
/// CGF of |Z|^r by quadrature, with the matching finiteness domain.
CgfTable pgg_power_cgf(double p, double r);

/// sup_theta (theta x - Lambda(theta)), solving Lambda'(theta) = x by bisection
/// on central differences to absolute tolerance tol in theta.
double legendre_transform(const CgfTable& cgf, double x, double tol = 1e-12);

/// Minimize
///   G(x) = (a x1^2 + b x2^2 + c x1 x2) / (2A) + (x3^2 + x4^2) / 4
/// subject to alpha x1 + beta x2 + gamma x3 + delta x4 = y.
struct ContractionProblem {
  double A = 1.0;
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double y = 0.0;

  /// A > 0, 4ab - c^2 > 0 and a nonzero constraint direction; DomainError otherwise.
  void validate() const;
  [[nodiscard]] double objective(const std::array<double, 4>& x) const;
  [[nodiscard]] double constraint(const std::array<double, 4>& x) const;
};

struct ContractionSolution {
  double value = 0.0;
  std::array<double, 4> x{};
  double multiplier = 0.0;
};

/// Explicit Lagrange solution.
ContractionSolution contract_min_closed_form(const ContractionProblem& prob);

/// KKT solve of the same problem; throws NumericalError if the relative
/// residual exceeds tol.
double contract_min_numeric(const ContractionProblem& prob, double tol = 1e-10);

/// The problem whose minimum is alpha_{p,lambda} y^2: the bivariate quadratic
/// form of (xi_{p,2}, xi_{p,p}) and two standard Gaussian directions, combined
/// by the linearization of the projected norm.
ContractionProblem subcritical_contraction_problem(double p, double lambda, double y);

}  // namespace ldproj
