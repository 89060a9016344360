#pragma once

// Streaming moments and Kolmogorov-Smirnov statistics.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ldproj {

/// Welford accumulator. merge() is exact in the count and numerically stable
/// in the moments (Chan et al. pairwise update).
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  [[nodiscard]] std::int64_t count() const { return n_; }
  [[nodiscard]] double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two observations.
  [[nodiscard]] double variance() const;
  /// Standard error of the mean.
  [[nodiscard]] double stderr_mean() const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Running co-moment of two coordinates.
class RunningCovariance {
 public:
  void add(double x, double y);
  [[nodiscard]] std::int64_t count() const { return n_; }
  [[nodiscard]] double covariance() const;
  [[nodiscard]] double mean_x() const { return mx_; }
  [[nodiscard]] double mean_y() const { return my_; }

 private:
  std::int64_t n_ = 0;
  double mx_ = 0.0;
  double my_ = 0.0;
  double cxy_ = 0.0;
};

/// sup_x |F_a(x) - F_b(x)| of two empirical distributions. Inputs need not be sorted.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// sup_x |F_n(x) - F(x)| against a continuous CDF.
double ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov tail P[K > lambda], K the limiting KS variable.
double kolmogorov_tail(double lambda);

}  // namespace ldproj
