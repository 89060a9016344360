#pragma once

// Parallel tail-probability estimation for projected-norm statistics and
// their chi-square / p-th power ingredients, with optional exponential
// tilting of the components whose normalizers are known in closed form.
//
// A query with budget N is cut into ceil(N / batch_size) batches; batch b
// draws from RngStream(seed, first_stream + b). Batch results are reduced in
// batch order, so the estimate does not depend on the number of workers.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ldproj/sampling.hpp"

namespace ldproj {

enum class Statistic {
  ZOverSqrtK,     ///< k^{-1/2} n^{1/p} ||P_E X||_2
  XOverT,         ///< t^{-1} (n^{1/p} ||P_E X||_2 / sqrt(M_p(2)) - sqrt k)
  ChiSquareMean,  ///< k^{-1} sum_{i<=k} g_i^2
  ChiNorm,        ///< (k^{-1} sum_{i<=k} g_i^2)^{1/2}
  PthPowerMean,   ///< n^{-1} sum_{i<=n} |Z_i|^p
  IsotropicNorm   ///< ||xi||_2 / sqrt k for the isotropic rescaling xi of P_E X (uniform ball only)
};

enum class Direction { Upper, Lower, TwoSided };
enum class Sampler { Repr, Direct };

std::string_view to_string(Statistic s);
std::string_view to_string(Direction d);
std::string_view to_string(Sampler s);
Statistic parse_statistic(std::string_view text);
Direction parse_direction(std::string_view text);
Sampler parse_sampler(std::string_view text);

struct TailQuery {
  ProjectionConfig cfg;
  Statistic statistic = Statistic::ZOverSqrtK;
  double threshold = 0.0;
  Direction direction = Direction::Upper;
  double center = 0.0;  ///< TwoSided: event |stat - center| > threshold
  double t = 1.0;       ///< scale of XOverT
  double speed = 1.0;
  std::int64_t budget = 1;
  ComponentTilt tilt;  ///< inactive tilt = plain estimator
  Sampler sampler = Sampler::Repr;
  std::int64_t batch_size = 1 << 16;

  void validate() const;
  [[nodiscard]] bool tilted() const { return tilt.active(); }
};

struct TailEstimate {
  TailQuery query;
  std::uint64_t seed = 0;
  std::uint64_t first_stream = 0;
  std::uint64_t streams = 0;
  std::int64_t samples = 0;
  std::int64_t hits = 0;
  double weight_sum = 0.0;    ///< sum of likelihood-ratio weights over hits (tilted)
  double weight_sq_sum = 0.0;
  double p_hat = 0.0;
  double std_error = 0.0;
  double r_hat = 0.0;         ///< -log(p_hat) / speed; +inf when budget-limited
  double r_std_error = 0.0;   ///< delta method
  double ci_lower = 0.0;      ///< 95% interval for p (Clopper-Pearson when plain)
  double ci_upper = 1.0;
  bool budget_limited = false;
  double wall_seconds = 0.0;  ///< not part of any reproducible payload
};

/// Draw of sum_{i<=k} g_i^2 under the tilt exp(theta v), with log dP/dQ.
struct TiltedDraw {
  double value = 0.0;
  double log_lr = 0.0;
};
TiltedDraw tilt_chi_square(double dof, double theta, RngStream& rng);

/// One sample of the query statistic and its log likelihood ratio.
TiltedDraw sample_statistic(const TailQuery& q, RngStream& rng);

[[nodiscard]] bool in_event(const TailQuery& q, double value);

TailEstimate estimate_tail(const TailQuery& q, std::uint64_t seed, unsigned workers = 1,
                           std::uint64_t first_stream = 0);

/// Combines estimates of the same query and seed over disjoint stream ranges.
TailEstimate merge(const TailEstimate& a, const TailEstimate& b);

/// Chi-square tilts that move the mean of k^{-1/2} Z to x for the upper or
/// lower tail (k < n); the ball factor is taken at its limit.
ComponentTilt suggest_chi_tilts(std::int64_t n, std::int64_t k, double p, double x);

struct RateScanRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double x = 0.0;
  double r_hat = 0.0;
  double r_std_error = 0.0;
  double p_hat = 0.0;
  double ci_upper = 1.0;
  bool budget_limited = false;
  double theory = 0.0;
};

std::vector<RateScanRow> rate_scan(const std::vector<TailQuery>& queries, std::uint64_t seed,
                                   unsigned workers,
                                   const std::function<double(double)>& theory = {});

/// True when |r_hat - theory| is non-increasing along rows sharing the same x,
/// ordered by n (budget-limited rows count as failures).
bool error_trend_nonincreasing(const std::vector<RateScanRow>& rows);

}  // namespace ldproj
