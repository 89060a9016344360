#include "ldproj/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ldproj/errors.hpp"

namespace ldproj {

std::string_view to_string(KlsCondition c) {
  return c == KlsCondition::ASingularity ? "a_singularity" : "b_inf_criterion";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::WouldDisprove:
      return "would-disprove-KLS";
    case Verdict::Consistent:
      return "consistent-with-KLS";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

void downgrade_if_sampled(const RateFunction& rate, KlsVerdict& v) {
  if (v.verdict == Verdict::WouldDisprove && !rate.closed_form) {
    v.verdict = Verdict::Inconclusive;
    v.note += (v.note.empty() ? "" : "; ");
    v.note += "rate is estimated, not closed-form; a finite sample cannot certify a limit";
  }
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] = i == 0 ? lo : i == points - 1 ? hi : std::exp(a + (b - a) * i / (points - 1));
  }
  return g;
}

}  // namespace

KlsVerdict check_condition_a(const RateFunction& rate, bool declared_sub_sqrt_k,
                             const std::vector<double>& grid, double tol) {
  if (grid.empty()) throw UsageError("check_condition_a: empty x-grid");
  if (!declared_sub_sqrt_k) {
    throw UsageError("check_condition_a: condition (a) needs a speed declared o(sqrt k)");
  }
  KlsVerdict v;
  v.condition = KlsCondition::ASingularity;
  v.rate_name = rate.name;
  v.speed_class = "o(sqrt k)";
  v.tol = tol;
  bool finite_positive = false;
  bool finite_small = false;
  for (double x : grid) {
    const double value = rate(x);
    v.samples.emplace_back(x, value);
    if (x == rate.lln_point || !std::isfinite(value)) continue;
    if (value > tol) {
      finite_positive = true;
    } else {
      finite_small = true;
    }
  }
  if (finite_positive) {
    v.verdict = Verdict::WouldDisprove;
    v.note = "rate is finite and positive away from its LLN point (non-singular)";
  } else if (finite_small) {
    v.verdict = Verdict::Inconclusive;
    v.note = "finite rate values off the LLN point are all below tol";
  } else {
    v.verdict = Verdict::Consistent;
    v.note = "rate is +inf at every sampled point off its LLN point (singular)";
  }
  downgrade_if_sampled(rate, v);
  return v;
}

KlsVerdict check_condition_b(const RateFunction& rate, double t0, double t_max, double tol,
                             int points) {
  if (!(t0 > 1.0)) {
    throw UsageError("check_condition_b: t0 must be > 1 (the criterion cannot be relaxed to t0 = 1)");
  }
  if (!(t_max > t0)) throw UsageError("check_condition_b: t_max must exceed t0");
  if (points < 3) throw UsageError("check_condition_b: need at least 3 grid points");

  KlsVerdict v;
  v.condition = KlsCondition::BInfCriterion;
  v.rate_name = rate.name;
  v.t0 = t0;
  v.t_max = t_max;
  v.tol = tol;

  // Is I nondecreasing on [max(lln, t0), 4 t_max]? Then inf_{x > t} I(x) = I(t+).
  const double start = std::max(rate.lln_point, t0);
  const std::vector<double> check = log_grid(start, 4.0 * t_max, 4 * points);
  v.monotone_tail = true;
  double previous = rate(check.front());
  for (std::size_t i = 1; i < check.size(); ++i) {
    const double value = rate(check[i]);
    if (value < previous) {
      v.monotone_tail = false;
      break;
    }
    previous = value;
  }

  const auto inner_inf = [&](double t) {
    if (v.monotone_tail) return rate(t);
    double best = kInf;
    for (double x : log_grid(t * (1.0 + 1e-12), 4.0 * t_max, 200)) best = std::min(best, rate(x));
    return best;
  };

  v.infimum = kInf;
  for (double t : log_grid(t0, t_max, points)) {
    const double g = inner_inf(t) / t;
    v.samples.emplace_back(t, g);
    v.infimum = std::min(v.infimum, g);
  }

  const double last = v.samples.back().second;
  bool decreasing = true;
  for (std::size_t i = v.samples.size() / 2 + 1; i < v.samples.size(); ++i) {
    if (v.samples[i].second > v.samples[i - 1].second) decreasing = false;
  }
  if (last < tol && decreasing && last < v.samples.front().second) {
    v.verdict = Verdict::WouldDisprove;
    v.note = "inf_{x>t} I(x) / t tends to 0 along the grid";
  } else {
    v.verdict = Verdict::Consistent;
    v.note = "inf_{x>t} I(x) / t stays bounded away from 0 on the grid";
  }
  downgrade_if_sampled(rate, v);
  return v;
}

ConcentrationCell to_cell(const TailEstimate& e) {
  return {e.query.cfg.k, e.query.threshold, e.p_hat, e.ci_lower, e.budget_limited};
}

ConcentrationFit fit_concentration_constant(const std::vector<ConcentrationCell>& cells) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (!c.budget_limited && c.p_hat > 0.0 && c.k > 0 && c.t > 0.0) usable.push_back(i);
  }
  if (usable.size() < 3) {
    throw UsageError("fit_concentration_constant: need at least 3 usable cells, got " +
                     std::to_string(usable.size()));
  }
  const double log2 = std::numbers::ln2;
  const auto u_of = [](const ConcentrationCell& c) { return c.t * std::sqrt(static_cast<double>(c.k)); };

  double num = 0.0;
  double den = 0.0;
  for (std::size_t i : usable) {
    const double u = u_of(cells[i]);
    num += u * (log2 - std::log(cells[i].p_hat));
    den += u * u;
  }
  ConcentrationFit fit;
  fit.cells_used = usable.size();
  fit.c_hat = num / den;
  double ss = 0.0;
  for (std::size_t i : usable) {
    const double r = std::log(cells[i].p_hat) - (log2 - fit.c_hat * u_of(cells[i]));
    fit.residuals.push_back(r);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(usable.size()));

  fit.c_admissible = kInf;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (!(c.ci_lower > 0.0) || !(c.t > 0.0) || c.k <= 0) continue;
    const double u = u_of(c);
    if (c.ci_lower > 2.0 * std::exp(-fit.c_hat * u)) fit.violations_at_fit.push_back(i);
    fit.c_admissible = std::min(fit.c_admissible, std::log(2.0 / c.ci_lower) / u);
  }
  fit.violates_every_positive_c = !(fit.c_admissible > 0.0);
  return fit;
}

ConcentrationFit fit_concentration_constant(const std::vector<TailEstimate>& estimates) {
  std::vector<ConcentrationCell> cells;
  cells.reserve(estimates.size());
  for (const auto& e : estimates) cells.push_back(to_cell(e));
  return fit_concentration_constant(cells);
}

}  // namespace ldproj
