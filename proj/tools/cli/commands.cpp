#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "cli/format.hpp"
#include "cli/record_store.hpp"
#include "cli/verify.hpp"
#include "ldproj/errors.hpp"
#include "ldproj/mc.hpp"
#include "ldproj/probe.hpp"
#include "ldproj/rates.hpp"
#include "ldproj/sampling.hpp"
#include "ldproj/specfun.hpp"

namespace ldproj::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- shared options

struct ProjectionFlags {
  double p = 2.0;
  std::int64_t n = 100;
  std::int64_t k = 10;
  std::string w = "uniform";
  std::string sampler = "repr";

  void add(CLI::App* app) {
    app->add_option("--p", p, "Exponent p >= 1")->capture_default_str();
    app->add_option("--n", n, "Ambient dimension")->capture_default_str();
    app->add_option("--k", k, "Subspace dimension")->capture_default_str();
    app->add_option("--w", w, "W law: uniform, cone or gamma:ALPHA")->capture_default_str();
    app->add_option("--sampler", sampler, "repr or direct")->capture_default_str();
  }

  [[nodiscard]] ProjectionConfig config() const {
    ProjectionConfig cfg{n, k, p, WLaw::parse(w)};
    cfg.validate();
    return cfg;
  }

  [[nodiscard]] json to_json() const {
    return {{"p", json_number(p)}, {"n", n}, {"k", k}, {"w", w}, {"sampler", sampler}};
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StoreError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Regime parse_regime(const std::string& name, bool& strict) {
  strict = false;
  if (name == "critA") return Regime::CriticalA;
  if (name == "critB1") return Regime::CriticalB1;
  if (name == "critB1-literal") {
    strict = true;
    return Regime::CriticalB1;
  }
  if (name == "critB2") return Regime::CriticalB2;
  if (name == "critB3") return Regime::CriticalB3;
  if (name == "subcrit") return Regime::SubcriticalMDP;
  if (name == "crosspoly") return Regime::CrosspolytopeLDP;
  throw UsageError("unknown regime '" + name +
                   "' (expected critA, critB1, critB1-literal, critB2, critB3, subcrit or crosspoly)");
}

// ---------------------------------------------------------------- sample

struct SampleCmd {
  ProjectionFlags proj;
  std::int64_t count = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string stat = "znorm";
  double t = 1.0;

  int exec(std::ostream& out) const {
    if (count < 0) throw UsageError("--count must be nonnegative");
    const Sampler sampler = parse_sampler(proj.sampler);
    RngStream rng(seed, stream);
    if (stat == "sums") {
      for (std::int64_t i = 0; i < count; ++i) {
        const StandardizedSums s = sample_standardized_sums(proj.n, proj.k, proj.p, t, rng);
        out << format_double(s.xi_2) << ',' << format_double(s.xi_p) << ','
            << format_double(s.zeta_1) << ','
            << format_double(s.zeta_2.value_or(std::numeric_limits<double>::quiet_NaN())) << ','
            << format_double(s.zeta_3) << '\n';
      }
      return kOk;
    }
    const ProjectionConfig cfg = proj.config();
    if (sampler == Sampler::Direct && cfg.n > kDirectSamplerMaxDim) {
      throw UsageError("--sampler direct is limited to n <= " + std::to_string(kDirectSamplerMaxDim) +
                       " (got n = " + std::to_string(cfg.n) + "); use --sampler repr");
    }
    const auto norm = [&] {
      return sampler == Sampler::Direct ? project_norm_direct(cfg, rng) : project_norm_repr(cfg, rng);
    };
    const double root_k = std::sqrt(static_cast<double>(cfg.k));
    for (std::int64_t i = 0; i < count; ++i) {
      if (stat == "znorm") {
        out << format_double(norm() / root_k) << '\n';
      } else if (stat == "xstat") {
        if (!(t > 0.0)) throw UsageError("--t must be positive");
        out << format_double(x_statistic_from_norm(cfg, t, norm())) << '\n';
      } else if (stat == "point") {
        const auto x = sample_ball_point(cfg, rng);
        for (std::size_t j = 0; j < x.size(); ++j) out << (j ? "," : "") << format_double(x[j]);
        out << '\n';
      } else {
        throw UsageError("unknown --stat '" + stat + "' (expected znorm, xstat, sums or point)");
      }
    }
    return kOk;
  }
};

// ---------------------------------------------------------------- rate

struct RateCmd {
  std::string regime = "critA";
  double p = 2.0;
  double lambda = 0.0;
  std::string grid = "0.5:3:11";
  double tol = 1e-10;
  bool record = false;
  std::string store;

  int exec(std::ostream& out) const {
    bool strict = false;
    const Regime r = parse_regime(regime, strict);
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");
    const RateFunction f = make_rate_function(RegimeSpec::make(r, p, lambda, strict), tol);
    const std::vector<double> xs = parse_grid(grid);
    out << "x,rate,regime,p,lambda\n";
    json rows = json::array();
    for (double x : xs) {
      const double v = f(x);
      out << format_double(x) << ',' << format_double(v) << ',' << regime << ',' << format_double(p)
          << ',' << format_double(lambda) << '\n';
      rows.push_back({{"x", json_number(x)}, {"rate", json_number(v)}});
    }
    if (record) {
      const json config = {{"regime", regime}, {"p", json_number(p)}, {"lambda", json_number(lambda)},
                           {"x_grid", grid}, {"tol", json_number(tol)}};
      const json payload = {{"regime", regime}, {"lln_point", json_number(f.lln_point)},
                            {"closed_form", f.closed_form}, {"rows", rows}};
      append_record(resolve_store_path(store), make_record("rate", config, 0, payload));
    }
    return kOk;
  }
};

// ---------------------------------------------------------------- mc

json estimate_payload(const TailEstimate& e) {
  const TailQuery& q = e.query;
  return {{"statistic", std::string(to_string(q.statistic))},
          {"direction", std::string(to_string(q.direction))},
          {"threshold", json_number(q.threshold)},
          {"center", json_number(q.center)},
          {"t", json_number(q.t)},
          {"speed", json_number(q.speed)},
          {"budget", q.budget},
          {"batch_size", q.batch_size},
          {"tilt", {{"chi_head", json_number(q.tilt.chi_head)},
                    {"chi_tail", json_number(q.tilt.chi_tail)},
                    {"pth", json_number(q.tilt.pth)}}},
          {"sampler", std::string(to_string(q.sampler))},
          {"n", q.cfg.n},
          {"k", q.cfg.k},
          {"p", json_number(q.cfg.p)},
          {"w", q.cfg.w.to_string()},
          {"seed", e.seed},
          {"first_stream", e.first_stream},
          {"streams", e.streams},
          {"samples", e.samples},
          {"hits", e.hits},
          {"weight_sum", json_number(e.weight_sum)},
          {"weight_sq_sum", json_number(e.weight_sq_sum)},
          {"p_hat", json_number(e.p_hat)},
          {"std_error", json_number(e.std_error)},
          {"r_hat", json_number(e.r_hat)},
          {"r_std_error", json_number(e.r_std_error)},
          {"ci_lower", json_number(e.ci_lower)},
          {"ci_upper", json_number(e.ci_upper)},
          {"budget_limited", e.budget_limited}};
}

struct McCmd {
  ProjectionFlags proj;
  std::string stat = "znorm";
  double x = 1.0;
  std::string direction = "upper";
  double center = 0.0;
  double t = 1.0;
  std::string speed = "k";
  std::int64_t budget = 100000;
  std::int64_t batch = 1 << 16;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string tilt;
  double tilt_head = 0.0;
  double tilt_tail = 0.0;
  double tilt_pth = 0.0;
  std::string store;
  std::string config_file;

  [[nodiscard]] double resolve_speed(const ProjectionConfig& cfg) const {
    const auto n = static_cast<double>(cfg.n);
    const auto k = static_cast<double>(cfg.k);
    if (speed == "k") return speed_value(Speed::K, cfg.p, n, k, t);
    if (speed == "n^(p/2)") return speed_value(Speed::NPowHalfP, cfg.p, n, k, t);
    if (speed == "t^2") return speed_value(Speed::TSquared, cfg.p, n, k, t);
    if (speed == "sqrt(n)") return speed_value(Speed::SqrtN, cfg.p, n, k, t);
    return parse_double(speed);
  }

  [[nodiscard]] TailQuery query() const {
    if (budget < 1) throw UsageError("--budget must be >= 1");
    TailQuery q;
    q.cfg = proj.config();
    q.statistic = parse_statistic(stat);
    q.threshold = x;
    q.direction = parse_direction(direction);
    q.center = center;
    q.t = t;
    q.speed = resolve_speed(q.cfg);
    q.budget = budget;
    q.batch_size = batch;
    q.sampler = parse_sampler(proj.sampler);
    q.tilt = {tilt_head, tilt_tail, tilt_pth};
    if (!tilt.empty()) {
      const bool chi_stat = q.statistic == Statistic::ChiSquareMean || q.statistic == Statistic::ChiNorm;
      if (tilt == "auto") {
        if (q.statistic == Statistic::ZOverSqrtK) {
          q.tilt = suggest_chi_tilts(q.cfg.n, q.cfg.k, q.cfg.p, x);
        } else if (q.statistic == Statistic::XOverT) {
          const double root_k = std::sqrt(static_cast<double>(q.cfg.k));
          q.tilt = suggest_chi_tilts(q.cfg.n, q.cfg.k, q.cfg.p,
                                     (root_k + t * x) / (root_k * x_stat_prefactor(q.cfg.p)));
        } else {
          throw UsageError("--tilt auto is available for znorm and xstat only");
        }
      } else {
        const double theta = parse_double(tilt);
        if (q.statistic == Statistic::PthPowerMean) {
          q.tilt.pth = theta;
        } else if (chi_stat || q.statistic == Statistic::ZOverSqrtK || q.statistic == Statistic::XOverT ||
                   q.statistic == Statistic::IsotropicNorm) {
          q.tilt.chi_head = theta;
        }
      }
    }
    q.validate();
    return q;
  }

  [[nodiscard]] json config_json() const {
    json c = proj.to_json();
    c["stat"] = stat;
    c["x"] = json_number(x);
    c["direction"] = direction;
    c["center"] = json_number(center);
    c["t"] = json_number(t);
    c["speed"] = speed;
    c["budget"] = budget;
    c["batch_size"] = batch;
    c["workers"] = workers;
    c["seed"] = seed;
    c["stream"] = stream;
    c["tilt"] = tilt;
    c["tilt_head"] = json_number(tilt_head);
    c["tilt_tail"] = json_number(tilt_tail);
    c["tilt_pth"] = json_number(tilt_pth);
    if (!config_file.empty()) c["config_file"] = read_file(config_file);
    return c;
  }

  int exec(std::ostream& out) const {
    const TailQuery q = query();
    const std::string path = resolve_store_path(store);
    const TailEstimate e = estimate_tail(q, seed, workers, stream);
    const RunRecord rec = make_record("mc", config_json(), seed, estimate_payload(e));
    append_record(path, rec);
    out << "p_hat=" << format_sig6(e.p_hat) << " stderr=" << format_sig6(e.std_error)
        << " r_hat=" << format_sig6(e.r_hat) << " hits=" << e.hits << '/' << e.samples;
    if (e.budget_limited) out << " budget-limited p_upper=" << format_sig6(e.ci_upper);
    out << " id=" << rec.id << '\n';
    return kOk;
  }
};

// ---------------------------------------------------------------- verify

struct VerifyCmd {
  std::string suite = "all";
  std::uint64_t seed = 1;
  bool quick = false;

  int exec(std::ostream& out, std::ostream& err) const {
    const auto results = run_suite(suite, seed, quick);
    std::size_t width = 5;
    for (const auto& r : results) width = std::max(width, r.suite.size() + r.name.size() + 3);
    int failed = 0;
    json checks = json::array();
    for (const auto& r : results) {
      const std::string label = r.suite + " / " + r.name;
      out << (r.passed ? "PASS  " : "FAIL  ") << label << std::string(width - label.size() + 2, ' ')
          << r.detail << '\n';
      if (!r.passed) {
        ++failed;
        err << "FAILED: " << label << " (" << r.detail << ")\n";
      }
      checks.push_back({{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    const json summary = {{"suite", suite}, {"seed", seed}, {"quick", quick},
                          {"total", results.size()}, {"failed", failed}, {"checks", checks}};
    out << summary.dump() << '\n';
    return failed == 0 ? kOk : kVerifyFailed;
  }
};

// ---------------------------------------------------------------- probe

RateFunction tabulated_rate(const json& rows, double lln, bool closed_form, const std::string& name) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) pts.emplace_back(from_json_number(r.at("x")), from_json_number(r.at("rate")));
  std::sort(pts.begin(), pts.end());
  if (pts.empty()) throw UsageError("stored rate table is empty");
  RateFunction f;
  f.eval = [pts](double x) {
    if (pts.size() == 1) return x == pts.front().first ? pts.front().second : kInf;
    if (x < pts.front().first || x > pts.back().first) return kInf;
    const auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, -kInf));
    if (it->first == x) return it->second;
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *std::prev(it);
    if (!std::isfinite(y0) || !std::isfinite(y1)) return kInf;
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  };
  f.domain_lo = pts.front().first;
  f.domain_hi = pts.back().first;
  f.lo_closed = true;
  f.lln_point = lln;
  f.closed_form = closed_form;
  f.name = name;
  return f;
}

struct ProbeCmd {
  std::string condition = "b";
  std::string rate;
  std::string rate_from_run;
  double p = 2.0;
  double lambda = 0.0;
  double t0 = 2.0;
  double tmax = 1e8;
  double tol = -1.0;
  int points = 400;
  std::string grid;
  bool sub_sqrt_k = true;
  std::string store;

  [[nodiscard]] RateFunction build_rate(std::string& caveat) const {
    if (!rate_from_run.empty()) {
      const auto rec = find_record(resolve_store_path(store), rate_from_run);
      if (!rec) throw UsageError("no stored run with id '" + rate_from_run + "'");
      if (rec->command == "rate") {
        return tabulated_rate(rec->payload.at("rows"), from_json_number(rec->payload.at("lln_point")),
                              rec->payload.value("closed_form", true),
                              "run:" + rec->id + ":" + rec->payload.value("regime", std::string("?")));
      }
      if (rec->command == "mc") {
        const json row = {{"x", rec->payload.at("threshold")}, {"rate", rec->payload.at("r_hat")}};
        caveat = "rate reconstructed from one Monte-Carlo estimate";
        return tabulated_rate(json::array({row}), std::numeric_limits<double>::quiet_NaN(), false,
                              "run:" + rec->id + ":mc");
      }
      throw UsageError("stored run '" + rec->id + "' carries no rate");
    }
    if (rate.empty()) throw UsageError("probe needs --rate or --rate-from-run");
    if (rate == "singular") return singular_rate(1.0);
    if (rate == "sqrt") {
      RateFunction f;
      f.eval = [](double x) { return x >= 0.0 ? std::sqrt(x) : kInf; };
      f.domain_lo = 0.0;
      f.lo_closed = true;
      f.lln_point = 0.0;
      f.name = "sqrt";
      return f;
    }
    bool strict = false;
    const Regime r = parse_regime(rate, strict);
    const RegimeSpec spec = RegimeSpec::make(r, r == Regime::CrosspolytopeLDP ? 1.0 : p, lambda, strict);
    if (condition == "a") {
      caveat = "speed declared o(sqrt k) by the caller; the natural speed of " + rate + " is " +
               std::string(to_string(spec.speed));
    }
    return make_rate_function(spec);
  }

  int exec(std::ostream& out) const {
    if (condition != "a" && condition != "b") throw UsageError("--condition must be a or b");
    if (condition == "b" && !(t0 > 1.0)) {
      throw UsageError("--t0 must be > 1 for condition b: the infimum over t > t0 cannot be "
                       "relaxed to t0 = 1");
    }
    std::string caveat;
    const RateFunction f = build_rate(caveat);
    KlsVerdict v;
    if (condition == "a") {
      std::vector<double> xs;
      if (!grid.empty()) {
        xs = parse_grid(grid);
      } else if (std::isnan(f.lln_point) || f.lln_point == 0.0) {
        xs = parse_grid("-3:3:61");
        if (std::isnan(f.lln_point)) xs.push_back(f.domain_lo);
      } else {
        xs = parse_grid(format_double(0.1 * f.lln_point) + ":" + format_double(4.0 * f.lln_point) + ":40");
        xs.push_back(f.lln_point);
      }
      v = check_condition_a(f, sub_sqrt_k, xs, tol > 0.0 ? tol : 1e-9);
    } else {
      v = check_condition_b(f, t0, tmax, tol > 0.0 ? tol : 1e-3, points);
    }
    out << "verdict: " << to_string(v.verdict) << '\n';
    out << "condition: " << to_string(v.condition) << '\n';
    out << "rate: " << v.rate_name << '\n';
    if (v.condition == KlsCondition::BInfCriterion) {
      out << "t0: " << format_double(v.t0) << '\n';
      out << "infimum: " << format_double(v.infimum) << '\n';
      out << "inner_inf: " << (v.monotone_tail ? "I(t+) (monotone tail)" : "grid search") << '\n';
    }
    out << "note: " << v.note << '\n';
    if (!caveat.empty()) out << "caveat: " << caveat << '\n';
    out << (v.condition == KlsCondition::BInfCriterion ? "t,g\n" : "x,rate\n");
    for (const auto& [a, b] : v.samples) out << format_double(a) << ',' << format_double(b) << '\n';
    return kOk;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deviation rates of random projections of l_p balls", "ldproj"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file; keys in [sample], [rate], [mc], [verify] or [probe] sections");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());

  SampleCmd sample;
  auto* s = app.add_subcommand("sample", "Draw projected norms, statistics or ball points");
  sample.proj.add(s);
  s->add_option("--count", sample.count, "Number of draws")->capture_default_str();
  s->add_option("--seed", sample.seed, "Stream seed")->capture_default_str();
  s->add_option("--stream", sample.stream, "Stream index")->capture_default_str();
  s->add_option("--stat", sample.stat, "znorm, xstat, sums or point")->capture_default_str();
  s->add_option("--t", sample.t, "Scale t for xstat and sums")->capture_default_str();

  RateCmd rate;
  auto* r = app.add_subcommand("rate", "Tabulate a rate function as CSV");
  r->add_option("--regime", rate.regime,
                "critA, critB1, critB1-literal, critB2, critB3, subcrit or crosspoly")
      ->capture_default_str();
  r->add_option("--p", rate.p, "Exponent p")->capture_default_str();
  r->add_option("--lambda", rate.lambda, "Aspect ratio (subcrit)")->capture_default_str();
  r->add_option("--x-grid", rate.grid, "min:max:steps")->capture_default_str();
  r->add_option("--tol", rate.tol, "Argument tolerance of the critB2 minimization")->capture_default_str();
  r->add_flag("--record", rate.record, "Also append the table to the record store");
  r->add_option("--store", rate.store, "Record store path");

  McCmd mc;
  auto* m = app.add_subcommand("mc", "Estimate a tail probability and store the run");
  mc.proj.add(m);
  m->add_option("--stat", mc.stat, "znorm, xstat, chisq, chinorm, pth or isonorm")->capture_default_str();
  m->add_option("--x", mc.x, "Threshold")->capture_default_str();
  m->add_option("--direction", mc.direction, "upper, lower or two-sided")->capture_default_str();
  m->add_option("--center", mc.center, "Center of a two-sided event")->capture_default_str();
  m->add_option("--t", mc.t, "Scale t of xstat")->capture_default_str();
  m->add_option("--speed", mc.speed, "Number, or one of k, n^(p/2), t^2, sqrt(n)")->capture_default_str();
  m->add_option("--budget", mc.budget, "Sample budget")->capture_default_str();
  m->add_option("--batch-size", mc.batch, "Draws per stream")->capture_default_str();
  m->add_option("--workers", mc.workers, "Worker threads")->capture_default_str();
  m->add_option("--seed", mc.seed, "Seed")->capture_default_str();
  m->add_option("--stream", mc.stream, "First stream index")->capture_default_str();
  m->add_option("--tilt", mc.tilt, "THETA for the statistic's main component, or auto");
  m->add_option("--tilt-head", mc.tilt_head, "Tilt of the head chi-square");
  m->add_option("--tilt-tail", mc.tilt_tail, "Tilt of the tail chi-square");
  m->add_option("--tilt-pth", mc.tilt_pth, "Tilt of sum |Z_i|^p");
  m->add_option("--store", mc.store, "Record store path (default $LDPROJ_STORE or ./runs.ndjson)");

  VerifyCmd verify;
  auto* v = app.add_subcommand("verify", "Run cross-module verification suites");
  v->add_option("--suite", verify.suite, "moments, samplers, alpha, b2, legendre or all")
      ->capture_default_str();
  v->add_option("--seed", verify.seed, "Seed")->capture_default_str();
  v->add_flag("--quick", verify.quick, "Reduced sample sizes");

  ProbeCmd probe;
  auto* pr = app.add_subcommand("probe", "Check the KLS conditions on a rate function");
  pr->add_option("--condition", probe.condition, "a or b")->capture_default_str();
  pr->add_option("--rate", probe.rate,
                 "critA, critB1, critB1-literal, critB2, critB3, subcrit, crosspoly, singular or sqrt");
  pr->add_option("--rate-from-run", probe.rate_from_run, "Id of a stored rate or mc run");
  pr->add_option("--p", probe.p, "Exponent p")->capture_default_str();
  pr->add_option("--lambda", probe.lambda, "Aspect ratio (subcrit)")->capture_default_str();
  pr->add_option("--t0", probe.t0, "Condition b: t0 > 1")->capture_default_str();
  pr->add_option("--tmax", probe.tmax, "Condition b: largest t")->capture_default_str();
  pr->add_option("--tol", probe.tol, "Tolerance (default 1e-9 for a, 1e-3 for b)");
  pr->add_option("--points", probe.points, "Condition b: grid size")->capture_default_str();
  pr->add_option("--x-grid", probe.grid, "Condition a: min:max:steps");
  pr->add_option("--sub-sqrt-k", probe.sub_sqrt_k, "Condition a: speed declared o(sqrt k)")
      ->capture_default_str();
  pr->add_option("--store", probe.store, "Record store path");

  // --config may follow the subcommand; it belongs to the top-level app.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      std::rotate(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i),
                  args.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else if (args[i].starts_with("--config=")) {
      std::rotate(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i),
                  args.begin() + static_cast<std::ptrdiff_t>(i + 1));
    }
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (auto* cfg = app.get_config_ptr(); cfg != nullptr && cfg->count() > 0) {
    mc.config_file = cfg->as<std::string>();
  }

  try {
    if (s->parsed()) return sample.exec(out);
    if (r->parsed()) return rate.exec(out);
    if (m->parsed()) return mc.exec(out);
    if (v->parsed()) return verify.exec(out, err);
    if (pr->parsed()) return probe.exec(out);
  } catch (const DegeneracyError& e) {
    err << "degenerate: " << e.what() << '\n';
    return kDegenerate;
  } catch (const StoreError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ldproj");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ldproj::cli
