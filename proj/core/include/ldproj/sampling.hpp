#pragma once

// Exact samplers for p-generalized Gaussians, the W-mixture family P_{W,n,p}
// on the l_p^n ball, Haar-random projections, and the standardized sums used
// by the subcritical analysis.
//
// Ball points use X = Z / (sum |Z_i|^p + W)^{1/p} with i.i.d. p-generalized
// Gaussians Z_i and an independent W. Projected norms come in two flavours:
//
//   * project_norm_direct: orthonormalize an n x k Gaussian matrix and project.
//     O(n k^2); capped at n <= kDirectSamplerMaxDim and used as the oracle.
//   * project_norm_repr: the product representation
//       n^{1/p} sqrt(G_k / (G_k + G_rest)) sqrt(sum Z_i^2) / (sum |Z_i|^p + W)^{1/p}
//     with chi-square sums drawn as Gamma variates. O(n), or O(1) at p = 2.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldproj/rng.hpp"
#include "ldproj/specfun.hpp"

namespace ldproj {

/// Mixing law selecting a member of P_{W,n,p}. Rates are always 1/p of the
/// configuration's exponent, so W never carries its own p.
struct WLaw {
  enum class Kind { Dirac0, Exponential, Gamma };

  Kind kind = Kind::Exponential;
  double shape = 1.0;  ///< Gamma shape alpha; ignored otherwise.

  static WLaw dirac0() { return {Kind::Dirac0, 0.0}; }
  static WLaw exponential() { return {Kind::Exponential, 1.0}; }
  static WLaw gamma(double shape) { return {Kind::Gamma, shape}; }

  /// Accepts "cone", "uniform" and "gamma:ALPHA".
  static WLaw parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;

  void validate() const;
  [[nodiscard]] double mean(double p) const;
  /// log P[W > u] in closed form (log of the regularized upper incomplete gamma).
  [[nodiscard]] double log_tail(double p, double u) const;

  friend bool operator==(const WLaw&, const WLaw&) = default;
};

struct ProjectionConfig {
  std::int64_t n = 1;
  std::int64_t k = 1;
  double p = 2.0;
  WLaw w = WLaw::exponential();

  void validate() const;
  [[nodiscard]] double lambda() const { return static_cast<double>(k) / static_cast<double>(n); }
};

inline constexpr std::int64_t kDirectSamplerMaxDim = 200;

/// Exponential tilts of the components that have closed-form normalizers.
/// Zero means untilted.
struct ComponentTilt {
  double chi_head = 0.0;  ///< on sum_{i<=k} g_i^2, must be < 1/2
  double chi_tail = 0.0;  ///< on sum_{k<i<=n} g_i^2, must be < 1/2
  double pth = 0.0;       ///< on sum_{i<=n} |Z_i|^p, must be < 1/p

  [[nodiscard]] bool active() const { return chi_head != 0.0 || chi_tail != 0.0 || pth != 0.0; }
  void validate(double p) const;
};

/// The independent ingredients of the product representation.
struct ReprComponents {
  double chi_head = 0.0;  ///< sum_{i<=k} g_i^2
  double chi_tail = 0.0;  ///< sum_{k<i<=n} g_i^2
  double sum_sq = 0.0;    ///< sum_{i<=n} Z_i^2
  double sum_pth = 0.0;   ///< sum_{i<=n} |Z_i|^p
  double w = 0.0;
  /// log dP/dQ of the drawn components; 0 when untilted.
  double log_lr = 0.0;
};

double sample_pgg(const PggParams& params, RngStream& rng);
double sample_pgg(double p, RngStream& rng);

double sample_w(const WLaw& w, double p, RngStream& rng);

void sample_ball_point(const ProjectionConfig& cfg, RngStream& rng, std::span<double> out);
std::vector<double> sample_ball_point(const ProjectionConfig& cfg, RngStream& rng);

/// Projected norm n^{1/p} ||P_E X||_2 via an explicit Haar subspace. Throws
/// UsageError for n > kDirectSamplerMaxDim.
double project_norm_direct(const ProjectionConfig& cfg, RngStream& rng);

/// Same law as project_norm_direct, via the product representation.
double project_norm_repr(const ProjectionConfig& cfg, RngStream& rng);

ReprComponents draw_components(const ProjectionConfig& cfg, RngStream& rng,
                               const ComponentTilt& tilt = {});

/// n^{1/p} ||P_E X||_2 assembled from representation components.
double projected_norm(const ProjectionConfig& cfg, const ReprComponents& c);

/// One draw of t^{-1} (n^{1/p} sqrt(Gamma(1/p)/(p^{2/p} Gamma(3/p))) ||P_E X||_2 - sqrt(k)).
double sample_x_statistic(const ProjectionConfig& cfg, double t, RngStream& rng);

/// Centered subcritical statistic from a projected norm value.
double x_statistic_from_norm(const ProjectionConfig& cfg, double t, double projected);

/// (xi_{p,2}, xi_{p,p}, zeta_1, zeta_2, zeta_3). zeta_2 is absent when k == n.
struct StandardizedSums {
  double xi_2 = 0.0;
  double xi_p = 0.0;
  double zeta_1 = 0.0;
  std::optional<double> zeta_2;
  double zeta_3 = 0.0;
};

StandardizedSums sample_standardized_sums(std::int64_t n, std::int64_t k, double p, double t,
                                          RngStream& rng);

}  // namespace ldproj
