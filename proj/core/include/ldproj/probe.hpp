#pragma once

// Numerical checks of the two sufficient conditions under which a deviation
// principle for projected norms would contradict the KLS conjecture, and a fit
// of the concentration constant C in P[| ||xi||_2 / sqrt k - 1 | > t] <= 2 exp(-C t sqrt k).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ldproj/mc.hpp"
#include "ldproj/rates.hpp"

namespace ldproj {

enum class KlsCondition { ASingularity, BInfCriterion };
enum class Verdict { WouldDisprove, Consistent, Inconclusive };

std::string_view to_string(KlsCondition c);
std::string_view to_string(Verdict v);

struct KlsVerdict {
  KlsCondition condition = KlsCondition::ASingularity;
  Verdict verdict = Verdict::Inconclusive;
  std::string rate_name;
  std::string speed_class;
  double t0 = 0.0;
  double t_max = 0.0;
  double tol = 0.0;
  /// Condition (a): sampled (x, I(x)). Condition (b): (t, g(t)).
  std::vector<std::pair<double, double>> samples;
  /// Condition (b): inf over the t-grid of g(t) = inf_{x > t} I(x) / t.
  double infimum = 0.0;
  /// Condition (b): whether the inner infimum used I(t+) (monotone tail) or a grid search.
  bool monotone_tail = false;
  std::string note;
};

/// Condition (a): with a speed declared o(sqrt k), a rate that is finite and
/// positive somewhere off its LLN point is non-singular.
KlsVerdict check_condition_a(const RateFunction& rate, bool declared_sub_sqrt_k,
                             const std::vector<double>& grid, double tol = 1e-9);

/// Condition (b): g(t) on a logarithmic grid of `points` values in [t0, t_max].
/// Throws UsageError for t0 <= 1.
KlsVerdict check_condition_b(const RateFunction& rate, double t0, double t_max = 1e8,
                             double tol = 1e-3, int points = 400);

struct ConcentrationCell {
  std::int64_t k = 0;
  double t = 0.0;
  double p_hat = 0.0;
  double ci_lower = 0.0;
  bool budget_limited = false;
};

ConcentrationCell to_cell(const TailEstimate& e);

struct ConcentrationFit {
  double c_hat = 0.0;
  double residual_rms = 0.0;
  std::vector<double> residuals;  ///< log p_hat - (log 2 - c_hat t sqrt k), usable cells
  std::size_t cells_used = 0;
  /// Cells whose lower confidence bound exceeds 2 exp(-c_hat t sqrt k).
  std::vector<std::size_t> violations_at_fit;
  /// Largest C for which no cell's lower bound exceeds 2 exp(-C t sqrt k).
  double c_admissible = 0.0;
  /// No positive C is compatible with the data.
  bool violates_every_positive_c = false;
};

/// Least squares for log p_hat = log 2 - C t sqrt k. Needs 3 usable cells.
ConcentrationFit fit_concentration_constant(const std::vector<ConcentrationCell>& cells);
ConcentrationFit fit_concentration_constant(const std::vector<TailEstimate>& estimates);

}  // namespace ldproj
