#pragma once

// One-dimensional adaptive quadrature (15-point Gauss-Kronrod) on finite
// intervals and on [a, inf).

#include <functional>

namespace ldproj {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;   ///< summed Kronrod error estimates
  int segments = 0;     ///< number of doubling segments on half-line integrals
};

/// Integral of f over [a, b] to relative tolerance rel_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12);

/// Integral of f over [a, inf) for integrands with light tails. The domain
/// is extended by doubling [a, a + L], [a + L, a + 2L], ... until the integrand
/// falls below 1e-300 of its running scale and the last segment changes the
/// total by less than 1e-11 relative. Throws NumericalError if that never happens.
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double a = 0.0,
                                     double initial_length = 1.0, double rel_tol = 1e-12);

/// E|Z|^q for the p-generalized Gaussian, by quadrature of its density.
double moment_quadrature(double p, double q);

}  // namespace ldproj
