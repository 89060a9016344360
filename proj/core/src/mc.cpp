#include "ldproj/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "ldproj/errors.hpp"
#include "ldproj/rates.hpp"
#include "ldproj/specfun.hpp"

namespace ldproj {

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::ZOverSqrtK:
      return "znorm";
    case Statistic::XOverT:
      return "xstat";
    case Statistic::ChiSquareMean:
      return "chisq";
    case Statistic::ChiNorm:
      return "chinorm";
    case Statistic::PthPowerMean:
      return "pth";
    case Statistic::IsotropicNorm:
      return "isonorm";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Upper:
      return "upper";
    case Direction::Lower:
      return "lower";
    case Direction::TwoSided:
      return "two-sided";
  }
  return "?";
}

std::string_view to_string(Sampler s) { return s == Sampler::Repr ? "repr" : "direct"; }

Statistic parse_statistic(std::string_view text) {
  for (auto s : {Statistic::ZOverSqrtK, Statistic::XOverT, Statistic::ChiSquareMean,
                 Statistic::ChiNorm, Statistic::PthPowerMean, Statistic::IsotropicNorm}) {
    if (text == to_string(s)) return s;
  }
  throw UsageError("unknown statistic '" + std::string(text) +
                   "' (expected znorm, xstat, chisq, chinorm, pth or isonorm)");
}

Direction parse_direction(std::string_view text) {
  if (text == "upper") return Direction::Upper;
  if (text == "lower") return Direction::Lower;
  if (text == "two-sided") return Direction::TwoSided;
  throw UsageError("unknown direction '" + std::string(text) + "' (expected upper, lower or two-sided)");
}

Sampler parse_sampler(std::string_view text) {
  if (text == "repr") return Sampler::Repr;
  if (text == "direct") return Sampler::Direct;
  throw UsageError("unknown sampler '" + std::string(text) + "' (expected repr or direct)");
}

void TailQuery::validate() const {
  cfg.validate();
  if (budget < 1) throw UsageError("tail query: budget must be >= 1");
  if (batch_size < 1) throw UsageError("tail query: batch size must be >= 1");
  if (!(speed > 0.0) || !std::isfinite(speed)) throw UsageError("tail query: speed must be positive");
  if (!std::isfinite(threshold)) throw UsageError("tail query: threshold must be finite");
  if (statistic == Statistic::XOverT && !(t > 0.0)) throw UsageError("tail query: t must be positive");
  if (direction == Direction::TwoSided && !(threshold >= 0.0)) {
    throw UsageError("tail query: two-sided threshold must be nonnegative");
  }
  if (tilt.active()) {
    tilt.validate(cfg.p);
    if (sampler == Sampler::Direct) {
      throw UsageError("tilting needs the representation sampler");
    }
    const bool chi_only = statistic == Statistic::ChiSquareMean || statistic == Statistic::ChiNorm;
    if (chi_only && (tilt.chi_tail != 0.0 || tilt.pth != 0.0)) {
      throw UsageError("statistic " + std::string(to_string(statistic)) +
                       " only uses the head chi-square; other tilts do not apply");
    }
    if (statistic == Statistic::PthPowerMean && (tilt.chi_head != 0.0 || tilt.chi_tail != 0.0)) {
      throw UsageError("statistic pth only uses sum |Z_i|^p; chi-square tilts do not apply");
    }
  }
  if (sampler == Sampler::Direct) {
    if (statistic == Statistic::ChiSquareMean || statistic == Statistic::ChiNorm ||
        statistic == Statistic::PthPowerMean) {
      throw UsageError("the direct sampler only produces projected norms");
    }
    if (cfg.n > kDirectSamplerMaxDim) {
      throw UsageError("direct projection sampler is limited to n <= " +
                       std::to_string(kDirectSamplerMaxDim));
    }
  }
  if (statistic == Statistic::IsotropicNorm && cfg.w.kind != WLaw::Kind::Exponential) {
    throw UsageError("isonorm is defined for the uniform ball (W uniform) only");
  }
}

TiltedDraw tilt_chi_square(double dof, double theta, RngStream& rng) {
  if (!(theta < 0.5)) throw DomainError("chi-square tilt must be < 1/2");
  if (!(dof > 0.0)) throw DomainError("chi-square degrees of freedom must be positive");
  TiltedDraw d;
  d.value = 2.0 * rng.gamma(0.5 * dof) / (1.0 - 2.0 * theta);
  if (theta != 0.0) d.log_lr = -theta * d.value - 0.5 * dof * std::log1p(-2.0 * theta);
  return d;
}

namespace {

// Query with its per-draw constants hoisted.
class StatSampler {
 public:
  explicit StatSampler(const TailQuery& q) : q_(q) {
    const double n = static_cast<double>(q.cfg.n);
    root_k_ = std::sqrt(static_cast<double>(q.cfg.k));
    if (q.statistic == Statistic::IsotropicNorm) {
      iso_scale_ = std::pow(n, 1.0 / q.cfg.p) *
                   std::sqrt(uniform_ball_second_moment(q.cfg.p, q.cfg.n)) * root_k_;
    }
    if (q.statistic == Statistic::XOverT) prefactor_ = x_stat_prefactor(q.cfg.p);
  }

  TiltedDraw draw(RngStream& rng) const {
    const auto& cfg = q_.cfg;
    switch (q_.statistic) {
      case Statistic::ChiSquareMean:
      case Statistic::ChiNorm: {
        const double k = static_cast<double>(cfg.k);
        TiltedDraw d = tilt_chi_square(k, q_.tilt.chi_head, rng);
        d.value /= k;
        if (q_.statistic == Statistic::ChiNorm) d.value = std::sqrt(d.value);
        return d;
      }
      case Statistic::PthPowerMean: {
        const double n = static_cast<double>(cfg.n);
        const double theta = q_.tilt.pth;
        // sum |Z_i|^p / p ~ Gamma(n/p).
        TiltedDraw d;
        const double s = cfg.p * rng.gamma(n / cfg.p) / (1.0 - cfg.p * theta);
        if (theta != 0.0) d.log_lr = -theta * s - (n / cfg.p) * std::log1p(-cfg.p * theta);
        d.value = s / n;
        return d;
      }
      default:
        break;
    }
    TiltedDraw d;
    double projected = 0.0;
    if (q_.sampler == Sampler::Direct) {
      projected = project_norm_direct(cfg, rng);
    } else {
      const ReprComponents c = draw_components(cfg, rng, q_.tilt);
      projected = projected_norm(cfg, c);
      d.log_lr = c.log_lr;
    }
    switch (q_.statistic) {
      case Statistic::ZOverSqrtK:
        d.value = projected / root_k_;
        break;
      case Statistic::XOverT:
        d.value = (prefactor_ * projected - root_k_) / q_.t;
        break;
      case Statistic::IsotropicNorm:
        d.value = projected / iso_scale_;
        break;
      default:
        break;
    }
    return d;
  }

 private:
  const TailQuery& q_;
  double root_k_ = 1.0;
  double iso_scale_ = 1.0;
  double prefactor_ = 1.0;
};

struct BatchResult {
  std::int64_t samples = 0;
  std::int64_t hits = 0;
  double weight_sum = 0.0;
  double weight_sq_sum = 0.0;
};

constexpr double kZ975 = 1.959963984540054;

void finalize(TailEstimate& e) {
  const auto n = static_cast<double>(e.samples);
  const double s = e.query.speed;
  if (!e.query.tilted()) {
    e.weight_sum = static_cast<double>(e.hits);
    e.weight_sq_sum = static_cast<double>(e.hits);
    e.p_hat = static_cast<double>(e.hits) / n;
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / n);
    const auto h = static_cast<double>(e.hits);
    if (e.hits == 0) {
      e.ci_lower = 0.0;
      e.ci_upper = 1.0 - std::pow(0.05, 1.0 / n);  // one-sided 95%
    } else {
      e.ci_lower = boost::math::ibeta_inv(h, n - h + 1.0, 0.025);
      e.ci_upper = e.hits == e.samples ? 1.0 : boost::math::ibeta_inv(h + 1.0, n - h, 0.975);
    }
  } else {
    e.p_hat = e.weight_sum / n;
    const double second = e.weight_sq_sum / n;
    const double var = n > 1.0 ? std::max(0.0, second - e.p_hat * e.p_hat) * n / (n - 1.0) : 0.0;
    e.std_error = std::sqrt(var / n);
    e.ci_lower = std::max(0.0, e.p_hat - kZ975 * e.std_error);
    e.ci_upper = e.hits == 0 ? std::numeric_limits<double>::quiet_NaN()
                             : std::min(1.0, e.p_hat + kZ975 * e.std_error);
  }
  e.p_hat = std::min(e.p_hat, 1.0);
  e.budget_limited = e.hits == 0 || !(e.p_hat > 0.0);
  if (e.budget_limited) {
    e.r_hat = kInf;
    e.r_std_error = kInf;
  } else {
    e.r_hat = std::max(0.0, -std::log(e.p_hat) / s);
    e.r_std_error = e.std_error / (e.p_hat * s);
  }
}

bool same_experiment(const TailQuery& a, const TailQuery& b) {
  return a.cfg.n == b.cfg.n && a.cfg.k == b.cfg.k && a.cfg.p == b.cfg.p && a.cfg.w == b.cfg.w &&
         a.statistic == b.statistic && a.threshold == b.threshold && a.direction == b.direction &&
         a.center == b.center && a.t == b.t && a.speed == b.speed &&
         a.tilt.chi_head == b.tilt.chi_head && a.tilt.chi_tail == b.tilt.chi_tail &&
         a.tilt.pth == b.tilt.pth && a.sampler == b.sampler && a.batch_size == b.batch_size;
}

}  // namespace

bool in_event(const TailQuery& q, double value) {
  switch (q.direction) {
    case Direction::Upper:
      return value > q.threshold;
    case Direction::Lower:
      return value < q.threshold;
    case Direction::TwoSided:
      return std::abs(value - q.center) > q.threshold;
  }
  return false;
}

TiltedDraw sample_statistic(const TailQuery& q, RngStream& rng) {
  q.validate();
  return StatSampler(q).draw(rng);
}

TailEstimate estimate_tail(const TailQuery& q, std::uint64_t seed, unsigned workers,
                           std::uint64_t first_stream) {
  q.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t batches = (q.budget + q.batch_size - 1) / q.batch_size;
  std::vector<BatchResult> results(static_cast<std::size_t>(batches));
  const StatSampler sampler(q);
  const bool tilted = q.tilted();

  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    try {
      for (std::int64_t b = next++; b < batches; b = next++) {
        RngStream rng(seed, first_stream + static_cast<std::uint64_t>(b));
        const std::int64_t count = std::min(q.batch_size, q.budget - b * q.batch_size);
        BatchResult r;
        r.samples = count;
        for (std::int64_t i = 0; i < count; ++i) {
          const TiltedDraw d = sampler.draw(rng);
          if (!in_event(q, d.value)) continue;
          ++r.hits;
          if (tilted) {
            const double w = std::exp(d.log_lr);
            r.weight_sum += w;
            r.weight_sq_sum += w * w;
          }
        }
        results[static_cast<std::size_t>(b)] = r;
      }
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = batches;
    }
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::clamp<std::int64_t>(workers == 0 ? 1 : workers, 1, batches));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  TailEstimate e;
  e.query = q;
  e.seed = seed;
  e.first_stream = first_stream;
  e.streams = static_cast<std::uint64_t>(batches);
  for (const auto& r : results) {
    e.samples += r.samples;
    e.hits += r.hits;
    e.weight_sum += r.weight_sum;
    e.weight_sq_sum += r.weight_sq_sum;
  }
  finalize(e);
  e.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return e;
}

TailEstimate merge(const TailEstimate& a, const TailEstimate& b) {
  if (!same_experiment(a.query, b.query) || a.seed != b.seed) {
    throw UsageError("merge: estimates come from different queries or seeds");
  }
  const TailEstimate& lo = a.first_stream <= b.first_stream ? a : b;
  const TailEstimate& hi = a.first_stream <= b.first_stream ? b : a;
  if (lo.first_stream + lo.streams > hi.first_stream) {
    throw UsageError("merge: stream ranges overlap");
  }
  TailEstimate e;
  e.query = lo.query;
  e.query.budget = lo.query.budget + hi.query.budget;
  e.seed = lo.seed;
  e.first_stream = lo.first_stream;
  e.streams = hi.first_stream + hi.streams - lo.first_stream;
  e.samples = lo.samples + hi.samples;
  e.hits = lo.hits + hi.hits;
  e.weight_sum = lo.weight_sum + hi.weight_sum;
  e.weight_sq_sum = lo.weight_sq_sum + hi.weight_sq_sum;
  finalize(e);
  e.wall_seconds = lo.wall_seconds + hi.wall_seconds;
  return e;
}

ComponentTilt suggest_chi_tilts(std::int64_t n, std::int64_t k, double p, double x) {
  if (!(k >= 1 && k <= n)) throw DomainError("suggest_chi_tilts: need 1 <= k <= n");
  if (!(x > 0.0)) throw DomainError("suggest_chi_tilts: x must be positive");
  if (k == n) return {};
  const double lambda = static_cast<double>(k) / static_cast<double>(n);
  // Per-degree-of-freedom means (a, b) of the head and tail chi-squares that
  // reach n G_head / (k (G_head + G_tail)) = x^2 / M_p(2) at least cost:
  // a = rho, b = (1 - lambda rho) / (1 - lambda).
  const double rho = x * x / m_p(p);
  if (!(rho * lambda < 1.0)) {
    throw DomainError("suggest_chi_tilts: threshold lies outside the support of the statistic");
  }
  const double a = rho;
  const double b = (1.0 - lambda * rho) / (1.0 - lambda);
  return {0.5 * (1.0 - 1.0 / a), 0.5 * (1.0 - 1.0 / b), 0.0};
}

std::vector<RateScanRow> rate_scan(const std::vector<TailQuery>& queries, std::uint64_t seed,
                                   unsigned workers, const std::function<double(double)>& theory) {
  if (queries.empty()) return {};
  std::vector<RateScanRow> rows;
  rows.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const TailQuery& q = queries[i];
    if (q.statistic != queries.front().statistic) {
      throw UsageError("rate_scan: all queries must share one statistic");
    }
    const TailEstimate e = estimate_tail(q, seed, workers, static_cast<std::uint64_t>(i) << 32);
    RateScanRow r;
    r.n = q.cfg.n;
    r.k = q.cfg.k;
    r.x = q.threshold;
    r.r_hat = e.r_hat;
    r.r_std_error = e.r_std_error;
    r.p_hat = e.p_hat;
    r.ci_upper = e.ci_upper;
    r.budget_limited = e.budget_limited;
    r.theory = theory ? theory(q.threshold) : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(r);
  }
  return rows;
}

bool error_trend_nonincreasing(const std::vector<RateScanRow>& rows) {
  std::map<double, std::vector<const RateScanRow*>> by_x;
  for (const auto& r : rows) by_x[r.x].push_back(&r);
  for (auto& [x, seq] : by_x) {
    std::sort(seq.begin(), seq.end(), [](auto* l, auto* r) { return l->n < r->n; });
    double previous = kInf;
    for (const auto* r : seq) {
      if (r->budget_limited) return false;
      const double err = std::abs(r->r_hat - r->theory);
      if (err > previous) return false;
      previous = err;
    }
  }
  return true;
}

}  // namespace ldproj
