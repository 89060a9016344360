#include "ldproj/sampling.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <string>
#include <system_error>

#include <Eigen/Dense>

#include "ldproj/errors.hpp"

namespace ldproj {

// ---------------------------------------------------------------- WLaw

WLaw WLaw::parse(std::string_view text) {
  if (text == "cone") return dirac0();
  if (text == "uniform") return exponential();
  constexpr std::string_view prefix = "gamma:";
  if (text.starts_with(prefix)) {
    const auto body = text.substr(prefix.size());
    double shape = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), shape);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
      throw UsageError("invalid gamma shape in W law '" + std::string(text) + "'");
    }
    WLaw w = gamma(shape);
    w.validate();
    return w;
  }
  throw UsageError("unknown W law '" + std::string(text) + "' (expected uniform, cone or gamma:ALPHA)");
}

std::string WLaw::to_string() const {
  switch (kind) {
    case Kind::Dirac0:
      return "cone";
    case Kind::Exponential:
      return "uniform";
    case Kind::Gamma: {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof(buf), shape);
      return "gamma:" + std::string(buf, res.ptr);
    }
  }
  return "?";
}

void WLaw::validate() const {
  if (kind == Kind::Gamma && !(shape > 0.0 && std::isfinite(shape))) {
    throw DomainError("W law gamma shape must be positive, got " + std::to_string(shape));
  }
}

double WLaw::mean(double p) const {
  switch (kind) {
    case Kind::Dirac0:
      return 0.0;
    case Kind::Exponential:
      return p;
    case Kind::Gamma:
      return shape * p;
  }
  return 0.0;
}

double WLaw::log_tail(double p, double u) const {
  if (u < 0.0) return 0.0;
  switch (kind) {
    case Kind::Dirac0:
      return -std::numeric_limits<double>::infinity();
    case Kind::Exponential:
      return -u / p;
    case Kind::Gamma:
      return log_gamma_q(shape, u / p);
  }
  return 0.0;
}

// ---------------------------------------------------------------- configs

void ProjectionConfig::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("projection config: p = " + std::to_string(p) + " must be >= 1");
  }
  if (n < 1) throw DomainError("projection config: n must be >= 1");
  if (k < 1 || k > n) {
    throw DomainError("projection config: need 1 <= k <= n, got k = " + std::to_string(k) +
                      ", n = " + std::to_string(n));
  }
  w.validate();
}

void ComponentTilt::validate(double p) const {
  if (!(chi_head < 0.5) || !(chi_tail < 0.5)) {
    throw DomainError("chi-square tilt must be < 1/2");
  }
  if (!(pth < 1.0 / p)) throw DomainError("tilt on sum |Z|^p must be < 1/p");
}

// ---------------------------------------------------------------- scalar samplers

double sample_pgg(double p, RngStream& rng) {
  // |Z|^p / p ~ Gamma(1/p, 1); the sign is an independent fair coin.
  const double g = rng.gamma(1.0 / p);
  const double magnitude = std::pow(p * g, 1.0 / p);
  return (rng.next_u64() >> 63) ? -magnitude : magnitude;
}

double sample_pgg(const PggParams& params, RngStream& rng) { return sample_pgg(params.p(), rng); }

double sample_w(const WLaw& w, double p, RngStream& rng) {
  switch (w.kind) {
    case WLaw::Kind::Dirac0:
      return 0.0;
    case WLaw::Kind::Exponential:
      return p * rng.exponential();
    case WLaw::Kind::Gamma:
      return p * rng.gamma(w.shape);
  }
  return 0.0;
}

// ---------------------------------------------------------------- ball points

void sample_ball_point(const ProjectionConfig& cfg, RngStream& rng, std::span<double> out) {
  cfg.validate();
  if (static_cast<std::int64_t>(out.size()) != cfg.n) {
    throw UsageError("sample_ball_point: output span has wrong length");
  }
  double sum_pth = 0.0;
  for (auto& z : out) {
    z = sample_pgg(cfg.p, rng);
    sum_pth += std::pow(std::abs(z), cfg.p);
  }
  const double w = sample_w(cfg.w, cfg.p, rng);
  const double scale = std::pow(sum_pth + w, -1.0 / cfg.p);
  for (auto& z : out) z *= scale;
}

std::vector<double> sample_ball_point(const ProjectionConfig& cfg, RngStream& rng) {
  std::vector<double> x(static_cast<std::size_t>(cfg.n));
  sample_ball_point(cfg, rng, x);
  return x;
}

// ---------------------------------------------------------------- projections

namespace {

// Orthonormal basis of a Haar-distributed k-dimensional subspace of R^n:
// Gram-Schmidt with one reorthogonalization pass on an i.i.d. Gaussian matrix.
Eigen::MatrixXd haar_basis(std::int64_t n, std::int64_t k, RngStream& rng) {
  Eigen::MatrixXd q(n, k);
  for (;;) {
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index i = 0; i < n; ++i) q(i, j) = rng.normal();

    bool ok = true;
    for (Eigen::Index j = 0; j < k && ok; ++j) {
      const double original = q.col(j).norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i < j; ++i) {
          q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
        }
      }
      const double norm = q.col(j).norm();
      if (!(norm > 1e-10 * original)) {
        ok = false;  // numerically rank deficient; probability zero, redraw
        break;
      }
      q.col(j) /= norm;
    }
    if (ok) return q;
  }
}

}  // namespace

double project_norm_direct(const ProjectionConfig& cfg, RngStream& rng) {
  cfg.validate();
  if (cfg.n > kDirectSamplerMaxDim) {
    throw UsageError("direct projection sampler is limited to n <= " +
                     std::to_string(kDirectSamplerMaxDim) + " (got n = " + std::to_string(cfg.n) +
                     "); use the representation sampler");
  }
  Eigen::VectorXd x(cfg.n);
  sample_ball_point(cfg, rng, std::span<double>(x.data(), static_cast<std::size_t>(cfg.n)));
  const Eigen::MatrixXd basis = haar_basis(cfg.n, cfg.k, rng);
  const double projected = (basis.transpose() * x).norm();
  return std::pow(static_cast<double>(cfg.n), 1.0 / cfg.p) * projected;
}

ReprComponents draw_components(const ProjectionConfig& cfg, RngStream& rng,
                               const ComponentTilt& tilt) {
  cfg.validate();
  tilt.validate(cfg.p);
  const double p = cfg.p;
  const auto n = static_cast<double>(cfg.n);
  const auto k = static_cast<double>(cfg.k);

  ReprComponents c;
  // Tilting a Gamma(shape, scale s) by e^{theta v} gives Gamma(shape, s / (1 - s theta)).
  c.chi_head = 2.0 * rng.gamma(0.5 * k) / (1.0 - 2.0 * tilt.chi_head);
  c.chi_tail = 2.0 * rng.gamma(0.5 * (n - k)) / (1.0 - 2.0 * tilt.chi_tail);

  if (p == 2.0) {
    // Z_i are standard Gaussians, so sum Z_i^2 == sum |Z_i|^p is one chi-square.
    c.sum_pth = 2.0 * rng.gamma(0.5 * n) / (1.0 - 2.0 * tilt.pth);
    c.sum_sq = c.sum_pth;
  } else {
    // Under the tilt each |Z_i|^p / p ~ Gamma(1/p, 1 / (1 - p theta)).
    const double tilt_scale = 1.0 / (1.0 - p * tilt.pth);
    const double inv_p = 1.0 / p;
    const double two_over_p = 2.0 / p;
    double sum_sq = 0.0;
    double sum_pth = 0.0;
    for (std::int64_t i = 0; i < cfg.n; ++i) {
      const double v = p * rng.gamma(inv_p) * tilt_scale;  // |Z_i|^p
      sum_pth += v;
      sum_sq += std::pow(v, two_over_p);
    }
    c.sum_sq = sum_sq;
    c.sum_pth = sum_pth;
  }
  c.w = sample_w(cfg.w, p, rng);

  if (tilt.chi_head != 0.0) {
    c.log_lr += -tilt.chi_head * c.chi_head - 0.5 * k * std::log1p(-2.0 * tilt.chi_head);
  }
  if (tilt.chi_tail != 0.0) {
    c.log_lr += -tilt.chi_tail * c.chi_tail - 0.5 * (n - k) * std::log1p(-2.0 * tilt.chi_tail);
  }
  if (tilt.pth != 0.0) {
    c.log_lr += -tilt.pth * c.sum_pth - (n / p) * std::log1p(-p * tilt.pth);
  }
  return c;
}

double projected_norm(const ProjectionConfig& cfg, const ReprComponents& c) {
  const double n = static_cast<double>(cfg.n);
  const double chi_ratio = std::sqrt(c.chi_head / (c.chi_head + c.chi_tail));
  const double ball_ratio = std::sqrt(c.sum_sq) * std::pow(c.sum_pth + c.w, -1.0 / cfg.p);
  return std::pow(n, 1.0 / cfg.p) * chi_ratio * ball_ratio;
}

double project_norm_repr(const ProjectionConfig& cfg, RngStream& rng) {
  return projected_norm(cfg, draw_components(cfg, rng));
}

double x_statistic_from_norm(const ProjectionConfig& cfg, double t, double projected) {
  if (!(t > 0.0)) throw DomainError("x statistic: scale t must be positive");
  const double centred =
      x_stat_prefactor(cfg.p) * projected - std::sqrt(static_cast<double>(cfg.k));
  return centred / t;
}

double sample_x_statistic(const ProjectionConfig& cfg, double t, RngStream& rng) {
  if (!(t > 0.0)) throw DomainError("x statistic: scale t must be positive");
  return x_statistic_from_norm(cfg, t, project_norm_repr(cfg, rng));
}

StandardizedSums sample_standardized_sums(std::int64_t n, std::int64_t k, double p, double t,
                                          RngStream& rng) {
  if (!(p >= 2.0)) throw DomainError("standardized sums require p >= 2");
  if (!(t > 0.0)) throw DomainError("standardized sums require t > 0");
  ProjectionConfig cfg{n, k, p, WLaw::dirac0()};
  cfg.validate();
  const ReprComponents c = draw_components(cfg, rng);

  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double root_n = std::sqrt(nd);
  StandardizedSums s;
  s.xi_2 = (c.sum_sq - nd * moment(p, 2.0)) / (t * root_n);
  s.xi_p = (c.sum_pth - nd) / (t * root_n);
  s.zeta_1 = (c.chi_head - kd) / (t * std::sqrt(kd));
  if (k < n) s.zeta_2 = (c.chi_tail - (nd - kd)) / (t * std::sqrt(nd - kd));
  s.zeta_3 = (c.chi_head + c.chi_tail - nd) / (t * root_n);
  return s;
}

}  // namespace ldproj
