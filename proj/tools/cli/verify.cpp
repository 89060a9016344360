#include "cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "cli/format.hpp"
#include "ldproj/errors.hpp"
#include "ldproj/legendre.hpp"
#include "ldproj/quadrature.hpp"
#include "ldproj/rates.hpp"
#include "ldproj/sampling.hpp"
#include "ldproj/specfun.hpp"
#include "ldproj/stats.hpp"

namespace ldproj::cli {

namespace {

CheckResult check(std::string suite, std::string name, bool ok, const std::string& detail) {
  return {std::move(suite), std::move(name), ok, detail};
}

std::string kv(std::string_view key, double v) {
  return std::string(key) + "=" + format_sig6(v);
}

std::vector<CheckResult> suite_moments() {
  std::vector<CheckResult> out;
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 7.0}) {
    const double mpp = moment(p, p);
    out.push_back(check("moments", "M_p(p)=1 p=" + format_double(p), std::abs(mpp - 1.0) <= 1e-12,
                        kv("err", std::abs(mpp - 1.0))));
    double worst = 0.0;
    for (double q : {1.0, 2.0, 4.0, p, p + 2.0, 2.0 * p}) {
      const double closed = moment(p, q);
      worst = std::max(worst, std::abs(moment_quadrature(p, q) - closed) / closed);
    }
    out.push_back(check("moments", "closed form vs quadrature p=" + format_double(p), worst <= 1e-9,
                        kv("max_rel_err", worst)));
  }
  for (double p : {2.5, 3.0, 4.0}) {
    const BivariateCov c = bivariate_cov(p);
    out.push_back(check("moments", "c22=p p=" + format_double(p), std::abs(c.c22 - p) <= 1e-12 * p,
                        kv("c22", c.c22)));
  }
  const BivariateCov c2 = bivariate_cov(2.0);
  out.push_back(check("moments", "det(p=2)=0", std::abs(c2.det) <= 1e-10, kv("det", c2.det)));
  return out;
}

std::vector<CheckResult> suite_samplers(std::uint64_t seed, bool quick) {
  std::vector<CheckResult> out;
  const std::int64_t n_draws = quick ? 20000 : 200000;
  const double ks_limit = quick ? 0.03 : 0.01;
  struct Tuple {
    std::int64_t n, k;
    double p;
    WLaw w;
  };
  const Tuple tuples[] = {{15, 4, 1.0, WLaw::exponential()},
                          {15, 4, 2.0, WLaw::exponential()},
                          {20, 7, 3.0, WLaw::dirac0()},
                          {12, 5, 2.0, WLaw::gamma(1.5)}};
  std::uint64_t stream = 0;
  for (const auto& t : tuples) {
    const ProjectionConfig cfg{t.n, t.k, t.p, t.w};
    RngStream a(seed, stream++);
    RngStream b(seed, stream++);
    std::vector<double> direct(static_cast<std::size_t>(n_draws));
    std::vector<double> repr(static_cast<std::size_t>(n_draws));
    for (auto& v : direct) v = project_norm_direct(cfg, a);
    for (auto& v : repr) v = project_norm_repr(cfg, b);
    const double d = ks_two_sample(std::move(direct), std::move(repr));
    std::ostringstream name;
    name << "KS direct vs repr (n=" << t.n << ",k=" << t.k << ",p=" << format_double(t.p)
         << ",W=" << t.w.to_string() << ")";
    out.push_back(check("samplers", name.str(), d <= ks_limit,
                        kv("D", d) + " limit=" + format_sig6(ks_limit)));
  }

  const std::int64_t m_draws = quick ? 100000 : 1000000;
  for (double p : {1.0, 2.0, 3.0}) {
    RngStream rng(seed, stream++);
    const std::vector<double> qs = {1.0, 2.0, 4.0, p, p + 2.0, 2.0 * p};
    std::vector<RunningStats> acc(qs.size());
    for (std::int64_t i = 0; i < m_draws; ++i) {
      const double z = std::abs(sample_pgg(p, rng));
      for (std::size_t j = 0; j < qs.size(); ++j) acc[j].add(std::pow(z, qs[j]));
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < qs.size(); ++j) {
      worst = std::max(worst, std::abs(acc[j].mean() - moment(p, qs[j])) / acc[j].stderr_mean());
    }
    // Six correlated z-scores; 4 keeps the family-wise false alarm rate small.
    out.push_back(check("samplers", "empirical moments p=" + format_double(p), worst <= 4.0,
                        kv("max_z", worst)));
  }

  {
    RngStream rng(seed, stream++);
    const ProjectionConfig cfg{50, 5, 3.0, WLaw::dirac0()};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto x = sample_ball_point(cfg, rng);
      double s = 0.0;
      for (double v : x) s += std::pow(std::abs(v), cfg.p);
      worst = std::max(worst, std::abs(std::pow(s, 1.0 / cfg.p) - 1.0));
    }
    out.push_back(check("samplers", "cone points on the sphere", worst <= 1e-12, kv("max_err", worst)));
  }
  return out;
}

std::vector<CheckResult> suite_alpha() {
  std::vector<CheckResult> out;
  for (double p : {2.5, 3.0, 4.0, 6.0}) {
    double worst = 0.0;
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double a = alpha(p, lambda);
      for (double y : {0.1, 1.0, 2.5, 5.0}) {
        const ContractionProblem prob = subcritical_contraction_problem(p, lambda, y);
        const double closed = contract_min_closed_form(prob).value / (y * y);
        const double numeric = contract_min_numeric(prob) / (y * y);
        worst = std::max({worst, std::abs(closed - a) / a, std::abs(numeric - a) / a});
      }
    }
    out.push_back(check("alpha", "alpha = Lagrange = KKT p=" + format_double(p), worst <= 1e-6,
                        kv("max_rel_err", worst)));
  }
  double worst = 0.0;
  for (double lambda : {0.0, 0.25, 0.5}) {
    worst = std::max(worst, std::abs(alpha(2.0, lambda) * (1.0 - lambda) - 1.0));
  }
  out.push_back(check("alpha", "alpha_{2,lambda} = 1/(1-lambda)", worst <= 1e-12, kv("max_err", worst)));
  return out;
}

double b2_grid_oracle(double p, double x, int points) {
  const double m = m_p(p);
  const double lo = std::sqrt(m);
  const double hi = std::max(x, lo);
  double best = kInf;
  for (int i = 0; i <= points; ++i) {
    const double y = lo + (hi - lo) * i / points;
    const double r = x / y;
    best = std::min(best, 0.5 * (r * r - 1.0) - std::log(r) +
                              std::pow(std::max(y * y - m, 0.0), p / 2.0) / p);
  }
  return best;
}

std::vector<CheckResult> suite_b2(bool quick) {
  std::vector<CheckResult> out;
  const int points = quick ? 100000 : 1000000;
  const double tol = 1e-8;
  for (double p : {1.0, 1.3, 1.7}) {
    double worst = 0.0;
    for (double x : {1.2 * std::sqrt(m_p(p)), 2.0, 3.0, 5.0}) {
      worst = std::max(worst, std::abs(rate_critical_b2(p, x, tol) - b2_grid_oracle(p, x, points)));
    }
    const double limit = quick ? 1e-5 : std::max(tol, 1e-6);
    out.push_back(check("b2", "b2 vs dense grid p=" + format_double(p), worst <= limit,
                        kv("max_abs_err", worst) + " points=" + std::to_string(points)));
  }
  return out;
}

std::vector<CheckResult> suite_legendre() {
  std::vector<CheckResult> out;
  {
    const CgfTable g = gaussian_cgf();
    double worst = 0.0;
    for (int i = 0; i <= 600; ++i) {
      const double x = -3.0 + 0.01 * i;
      worst = std::max(worst, std::abs(legendre_transform(g, x) - 0.5 * x * x));
    }
    out.push_back(check("legendre", "Gaussian conjugate on [-3,3]", worst <= 1e-8, kv("max_err", worst)));
  }
  {
    const CgfTable c = chi_square_cgf();
    double worst = 0.0;
    for (int i = 0; i <= 490; ++i) {
      const double x = 0.1 + 0.01 * i;
      worst = std::max(worst, std::abs(legendre_transform(c, x) - rate_chi(x)));
    }
    out.push_back(check("legendre", "chi-square conjugate on [0.1,5]", worst <= 1e-8, kv("max_err", worst)));
  }
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 7.0}) {
    double worst = 0.0;
    for (double theta : {-2.0, -0.5, 0.1 / p, 0.5 / p, 0.9 / p}) {
      const double closed = -std::log1p(-p * theta) / p;
      worst = std::max(worst, std::abs(cgf_pgg_power(p, p, theta) - closed) / std::abs(closed));
    }
    out.push_back(check("legendre", "CGF of |Z|^p quadrature vs closed form p=" + format_double(p),
                        worst <= 1e-9, kv("max_rel_err", worst)));
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed, bool quick) {
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const auto& s : kSuites) {
      auto part = run_suite(s, seed, quick);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (suite == "moments") return suite_moments();
  if (suite == "samplers") return suite_samplers(seed, quick);
  if (suite == "alpha") return suite_alpha();
  if (suite == "b2") return suite_b2(quick);
  if (suite == "legendre") return suite_legendre();
  throw UsageError("unknown suite '" + std::string(suite) +
                   "' (expected moments, samplers, alpha, b2, legendre or all)");
}

}  // namespace ldproj::cli
