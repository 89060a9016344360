#include "ldproj/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "ldproj/errors.hpp"
#include "ldproj/quadrature.hpp"
#include "ldproj/rates.hpp"
#include "ldproj/specfun.hpp"

namespace ldproj {

// ---------------------------------------------------------------- CGFs

double cgf_pgg_power(double p, double r, double theta) {
  if (!(p >= 1.0)) throw DomainError("cgf_pgg_power: p must be >= 1");
  if (!(r > 0.0)) throw DomainError("cgf_pgg_power: r must be positive");
  if (std::isnan(theta)) return kInf;
  if (theta == 0.0) return 0.0;
  if (theta > 0.0 && (r > p || (r == p && theta >= 1.0 / p))) return kInf;
  if (std::isinf(theta)) return theta < 0.0 ? -kInf : kInf;

  // Work with the shifted exponent g(x) - g(x*) so the integrand peaks at 1.
  double x_star = 0.0;
  if (theta > 0.0 && r < p) x_star = std::pow(theta * r, 1.0 / (p - r));
  const auto g = [p, r, theta](double x) { return theta * std::pow(x, r) - std::pow(x, p) / p; };
  const double g_star = g(x_star);
  const auto integrand = [&](double x) { return x <= 0.0 ? std::exp(-g_star) : std::exp(g(x) - g_star); };

  double integral = 0.0;
  try {
    if (x_star > 0.0) integral += integrate(integrand, 0.0, x_star).value;
    double length = std::max(1.0, x_star);
    if (r == p) length = std::max(length, std::pow(1.0 / p - theta, -1.0 / p));
    integral += integrate_half_line(integrand, x_star, length).value;
  } catch (const NumericalError& e) {
    throw NumericalError("cgf_pgg_power(p=" + std::to_string(p) + ", r=" + std::to_string(r) +
                         ", theta=" + std::to_string(theta) + "): " + e.what());
  }
  const double log_norm = std::log(p) / p + log_gamma(1.0 + 1.0 / p);
  return g_star + std::log(integral) - log_norm;
}

CgfTable CgfTable::build(std::function<double(double)> cgf, double theta_min, double theta_max,
                         bool min_closed, bool max_closed, int points, double span) {
  if (!(theta_min <= 0.0 && theta_max >= 0.0)) {
    throw DomainError("CgfTable: the domain must contain 0");
  }
  if (points < 3) throw UsageError("CgfTable: need at least 3 grid points");
  CgfTable t;
  t.cgf = std::move(cgf);
  t.theta_min = theta_min;
  t.theta_max = theta_max;
  t.min_closed = min_closed;
  t.max_closed = max_closed;
  const double lo = std::isinf(theta_min) ? -span : theta_min;
  const double hi = std::isinf(theta_max) ? span : theta_max;
  const double margin = 1e-3 * (hi - lo);
  const double glo = (std::isinf(theta_min) || min_closed) ? lo : lo + margin;
  const double ghi = (std::isinf(theta_max) || max_closed) ? hi : hi - margin;
  t.theta.resize(static_cast<std::size_t>(points));
  t.values.resize(t.theta.size());
  for (int i = 0; i < points; ++i) {
    const double th = glo + (ghi - glo) * i / (points - 1);
    t.theta[static_cast<std::size_t>(i)] = th;
    t.values[static_cast<std::size_t>(i)] = t.cgf(th);
  }
  return t;
}

bool CgfTable::in_domain(double t) const {
  const bool lo_ok = min_closed ? t >= theta_min : t > theta_min;
  const bool hi_ok = max_closed ? t <= theta_max : t < theta_max;
  return lo_ok && hi_ok;
}

void CgfTable::validate() const {
  const double at_zero = cgf(0.0);
  if (!(std::abs(at_zero) <= 1e-12)) {
    throw DomainError("CgfTable: Lambda(0) = " + std::to_string(at_zero) + " is not 0");
  }
  for (std::size_t i = 1; i + 1 < theta.size(); ++i) {
    const double second = values[i + 1] - 2.0 * values[i] + values[i - 1];
    if (second < -1e-9) {
      throw DomainError("CgfTable: convexity violated near theta = " + std::to_string(theta[i]));
    }
  }
}

CgfTable gaussian_cgf() {
  return CgfTable::build([](double t) { return 0.5 * t * t; }, -kInf, kInf, false, false);
}

CgfTable chi_square_cgf() {
  return CgfTable::build(
      [](double t) { return t < 0.5 ? -0.5 * std::log1p(-2.0 * t) : kInf; }, -kInf, 0.5, false,
      false);
}

CgfTable pgg_power_cgf(double p, double r) {
  double hi = kInf;
  bool hi_closed = false;
  if (r > p) {
    hi = 0.0;
    hi_closed = true;
  } else if (r == p) {
    hi = 1.0 / p;
  }
  return CgfTable::build([p, r](double t) { return cgf_pgg_power(p, r, t); }, -kInf, hi, false,
                         hi_closed, 41);
}

// ---------------------------------------------------------------- conjugate

namespace {

class Conjugate {
 public:
  Conjugate(const CgfTable& cgf, double x) : f_(cgf), x_(x) {}

  double objective(double t) const { return t * x_ - f_.cgf(t); }

  // Central difference, pulled inside the domain near a boundary.
  double derivative(double t) const {
    double h = 1e-5 * std::max(1.0, std::abs(t));
    if (std::isfinite(f_.theta_max)) h = std::min(h, 0.5 * (f_.theta_max - t));
    if (std::isfinite(f_.theta_min)) h = std::min(h, 0.5 * (t - f_.theta_min));
    if (!(h > 0.0)) {
      // On a closed boundary: one-sided difference inward.
      const double s = 1e-7 * std::max(1.0, std::abs(t));
      return t >= f_.theta_max ? (f_.cgf(t) - f_.cgf(t - s)) / s : (f_.cgf(t + s) - f_.cgf(t)) / s;
    }
    return (f_.cgf(t + h) - f_.cgf(t - h)) / (2.0 * h);
  }

  double golden_max(double a, double b, double tol) const {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    for (int it = 0; it < 400 && b - a > tol; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = objective(d);
      }
    }
    return std::max({objective(a), objective(b), objective(0.5 * (a + b))});
  }

  // sup over theta on the side `dir` (+1 or -1) of 0, where the derivative at 0
  // is already known to be on the wrong side of x.
  double solve(int dir, double tol) const {
    const double bound = dir > 0 ? f_.theta_max : f_.theta_min;
    const bool closed = dir > 0 ? f_.max_closed : f_.min_closed;
    const auto beyond = [&](double t) { return dir > 0 ? derivative(t) >= x_ : derivative(t) <= x_; };

    double inner = 0.0;
    double outer = 0.0;
    bool bracketed = false;
    if (std::isinf(bound)) {
      double step = 1.0;
      for (int j = 0; j < 200; ++j) {
        const double t = dir * step;
        if (!std::isfinite(f_.cgf(t))) break;
        if (beyond(t)) {
          outer = t;
          bracketed = true;
          break;
        }
        inner = t;
        step *= 2.0;
      }
      if (!bracketed) return kInf;  // Lambda' stays below x: conjugate diverges
    } else {
      if (closed && !beyond(bound)) return std::max(0.0, objective(bound));
      for (int j = 1; j <= 1000; ++j) {
        const double t = bound * (1.0 - std::ldexp(1.0, -j));
        if (beyond(t)) {
          outer = t;
          bracketed = true;
          break;
        }
        inner = t;
        if (bound - t <= std::abs(bound) * 1e-15) break;
      }
      if (!bracketed) return std::max(0.0, objective(inner));
    }

    double lo = std::min(inner, outer);
    double hi = std::max(inner, outer);
    double d_lo = derivative(lo);
    double d_hi = derivative(hi);
    while (hi - lo > tol) {
      if (d_hi - d_lo <= 1e-15 * std::max(1.0, std::abs(x_))) {
        return std::max(0.0, golden_max(lo, hi, tol));  // flat segment
      }
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double d_mid = derivative(mid);
      if (d_mid < x_) {
        lo = mid;
        d_lo = d_mid;
      } else {
        hi = mid;
        d_hi = d_mid;
      }
    }
    return std::max({0.0, objective(lo), objective(hi), objective(0.5 * (lo + hi))});
  }

 private:
  const CgfTable& f_;
  double x_;
};

}  // namespace

double legendre_transform(const CgfTable& cgf, double x, double tol) {
  if (!(tol > 0.0)) throw UsageError("legendre_transform: tol must be positive");
  if (std::isnan(x)) return kInf;
  const Conjugate conj(cgf, x);
  const double mean = conj.derivative(0.0);
  if (x == mean) return 0.0;
  return conj.solve(x > mean ? 1 : -1, tol);
}

// ---------------------------------------------------------------- contraction

void ContractionProblem::validate() const {
  if (!(A > 0.0)) throw DomainError("contraction problem: A must be positive");
  if (!(4.0 * a * b - c * c > 0.0) || !(a > 0.0)) {
    throw DomainError("contraction problem: the (x1, x2) block is not positive definite");
  }
  if (alpha == 0.0 && beta == 0.0 && gamma == 0.0 && delta == 0.0) {
    throw DomainError("contraction problem: constraint direction is zero");
  }
}

double ContractionProblem::objective(const std::array<double, 4>& x) const {
  return (a * x[0] * x[0] + b * x[1] * x[1] + c * x[0] * x[1]) / (2.0 * A) +
         (x[2] * x[2] + x[3] * x[3]) / 4.0;
}

double ContractionProblem::constraint(const std::array<double, 4>& x) const {
  return alpha * x[0] + beta * x[1] + gamma * x[2] + delta * x[3];
}

ContractionSolution contract_min_closed_form(const ContractionProblem& prob) {
  prob.validate();
  const auto& [A, a, b, c, alpha, beta, gamma, delta, y] = prob;
  const double d = 4.0 * a * b - c * c;
  const double q = alpha * alpha * b + beta * beta * a - alpha * beta * c;
  const double gd = delta * delta + gamma * gamma;

  ContractionSolution s;
  s.multiplier = y * (c * c - 4.0 * a * b) / (4.0 * A * q + 2.0 * d * gd);
  const double lam = s.multiplier;
  s.x = {2.0 * A * lam * (beta * c - 2.0 * alpha * b) / d,
         2.0 * A * lam * (alpha * c - 2.0 * beta * a) / d, -2.0 * gamma * lam, -2.0 * delta * lam};
  s.value = y * y * d / (4.0 * (2.0 * A * q + d * gd));
  return s;
}

double contract_min_numeric(const ContractionProblem& prob, double tol) {
  prob.validate();
  if (!(tol > 0.0)) throw UsageError("contract_min_numeric: tol must be positive");
  // Stationarity H x + mu g = 0 with G(x) = x^T H x / 2, plus g^T x = y.
  Eigen::Matrix<double, 5, 5> kkt = Eigen::Matrix<double, 5, 5>::Zero();
  kkt(0, 0) = prob.a / prob.A;
  kkt(1, 1) = prob.b / prob.A;
  kkt(0, 1) = kkt(1, 0) = prob.c / (2.0 * prob.A);
  kkt(2, 2) = 0.5;
  kkt(3, 3) = 0.5;
  const Eigen::Vector4d g(prob.alpha, prob.beta, prob.gamma, prob.delta);
  kkt.block<4, 1>(0, 4) = g;
  kkt.block<1, 4>(4, 0) = g.transpose();
  Eigen::Matrix<double, 5, 1> rhs = Eigen::Matrix<double, 5, 1>::Zero();
  rhs(4) = prob.y;

  const auto solver = kkt.fullPivLu();
  Eigen::Matrix<double, 5, 1> sol = solver.solve(rhs);
  sol += solver.solve(rhs - kkt * sol);  // one step of iterative refinement

  const double scale = kkt.norm() * sol.norm() + std::abs(prob.y);
  const double residual = (kkt * sol - rhs).norm();
  if (scale > 0.0 && residual > tol * scale) {
    throw NumericalError("contract_min_numeric: KKT residual " + std::to_string(residual) +
                         " exceeds tolerance");
  }
  return prob.objective({sol(0), sol(1), sol(2), sol(3)});
}

ContractionProblem subcritical_contraction_problem(double p, double lambda, double y) {
  if (!(p > 2.0)) {
    throw DegeneracyError("subcritical contraction problem needs p > 2 (the bivariate form is singular at p = 2)");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  const BivariateCov cov = bivariate_cov(p);
  ContractionProblem prob;
  prob.A = cov.det;
  prob.a = cov.c22;
  prob.b = cov.c11;
  prob.c = -2.0 * cov.c12;
  const double root = std::sqrt(lambda);
  prob.alpha = root / (2.0 * m_p(p));
  prob.beta = -root / p;
  prob.gamma = (1.0 - lambda) / 2.0;
  prob.delta = -std::sqrt(lambda * (1.0 - lambda)) / 2.0;
  prob.y = y;
  return prob;
}

}  // namespace ldproj
