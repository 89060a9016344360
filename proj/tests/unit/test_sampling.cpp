#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ldproj/errors.hpp"
#include "ldproj/sampling.hpp"
#include "ldproj/stats.hpp"

using namespace ldproj;

namespace {

double lp_norm(const std::vector<double>& x, double p) {
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

TEST(WLaw, ParseAndPrint) {
  EXPECT_EQ(WLaw::parse("cone"), WLaw::dirac0());
  EXPECT_EQ(WLaw::parse("uniform"), WLaw::exponential());
  EXPECT_EQ(WLaw::parse("gamma:1.5"), WLaw::gamma(1.5));
  for (const char* s : {"cone", "uniform", "gamma:2.5"}) {
    EXPECT_EQ(WLaw::parse(WLaw::parse(s).to_string()), WLaw::parse(s));
  }
  EXPECT_THROW(WLaw::parse("gamma:"), UsageError);
  EXPECT_THROW(WLaw::parse("gamma:abc"), UsageError);
  EXPECT_THROW(WLaw::parse("beta"), UsageError);
  EXPECT_THROW(WLaw::parse("gamma:-1"), std::exception);
}

TEST(WLaw, Means) {
  EXPECT_EQ(WLaw::dirac0().mean(3.0), 0.0);
  EXPECT_NEAR(WLaw::exponential().mean(3.0), 3.0, 1e-15);
  EXPECT_NEAR(WLaw::gamma(1.5).mean(2.0), 3.0, 1e-15);
}

// t_n^{-2} log P[W > delta t_n sqrt n] must diverge to -inf along n for t_n = n^a, a < 1/2.
TEST(WLaw, TailConditionOnGrid) {
  for (const WLaw& w : {WLaw::exponential(), WLaw::gamma(0.5), WLaw::gamma(4.0)}) {
    for (double p : {1.0, 2.0, 3.0}) {
      for (double a : {0.0, 0.25, 0.4}) {
        for (double delta : {0.1, 1.0}) {
          double prev = 0.0;
          for (double n : {1e2, 1e4, 1e6, 1e8, 1e10}) {
            const double t = std::pow(n, a);
            const double u = delta * t * std::sqrt(n);
            const double lt = w.log_tail(p, u);
            if (w.kind == WLaw::Kind::Exponential) EXPECT_NEAR(lt, -u / p, 1e-12 * u);
            const double scaled = lt / (t * t);
            EXPECT_LT(scaled, prev) << w.to_string() << " p=" << p << " a=" << a << " n=" << n;
            prev = scaled;
          }
          // Linear-in-u decay: the last rung is far below the first.
          EXPECT_LT(prev, -0.5 * delta * std::pow(1e10, 0.5 - a) / p) << w.to_string();
        }
      }
    }
  }
  EXPECT_EQ(WLaw::dirac0().log_tail(2.0, 1.0), -INFINITY);
}

TEST(ProjectionConfig, Validation) {
  EXPECT_NO_THROW((ProjectionConfig{10, 10, 2.0, WLaw::exponential()}.validate()));
  EXPECT_THROW((ProjectionConfig{10, 11, 2.0, WLaw::exponential()}.validate()), std::exception);
  EXPECT_THROW((ProjectionConfig{10, 0, 2.0, WLaw::exponential()}.validate()), std::exception);
  EXPECT_THROW((ProjectionConfig{10, 3, 0.5, WLaw::exponential()}.validate()), DomainError);
}

class PggMoments : public ::testing::TestWithParam<double> {};

TEST_P(PggMoments, EmpiricalMatchesClosedForm) {
  const double p = GetParam();
  PggParams params(p);
  RngStream rng(17, static_cast<std::uint64_t>(p));
  const std::vector<double> qs = {1.0, 2.0, 4.0, p, p + 2.0, 2.0 * p};
  std::vector<RunningStats> st(qs.size());
  for (int i = 0; i < 400000; ++i) {
    const double a = std::abs(sample_pgg(params, rng));
    for (std::size_t j = 0; j < qs.size(); ++j) st[j].add(std::pow(a, qs[j]));
  }
  for (std::size_t j = 0; j < qs.size(); ++j) {
    EXPECT_NEAR(st[j].mean(), moment(p, qs[j]), 3.0 * st[j].stderr_mean())
        << "p=" << p << " q=" << qs[j];
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, PggMoments, ::testing::Values(1.0, 2.0, 3.0));

TEST(PggSampler, Symmetric) {
  RngStream rng(2, 2);
  int pos = 0;
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) pos += sample_pgg(1.5, rng) > 0.0;
  EXPECT_NEAR(pos, kN / 2, 4.0 * std::sqrt(kN / 4.0));
}

TEST(BallPoint, ConeDrawsLieOnSphere) {
  for (double p : {1.0, 1.5, 3.0, 8.0}) {
    ProjectionConfig cfg{25, 3, p, WLaw::dirac0()};
    RngStream rng(9, 0);
    for (int i = 0; i < 500; ++i) {
      ASSERT_NEAR(lp_norm(sample_ball_point(cfg, rng), p), 1.0, 1e-12) << p;
    }
  }
}

TEST(BallPoint, UniformDrawsInsideBall) {
  ProjectionConfig cfg{3, 1, 1.0, WLaw::exponential()};
  RngStream rng(9, 1);
  RunningStats norm;
  for (int i = 0; i < 100000; ++i) {
    const double r = lp_norm(sample_ball_point(cfg, rng), 1.0);
    ASSERT_LT(r, 1.0);
    norm.add(r);
  }
  // Radius of a uniform point in a 3-dimensional ball has density 3 r^2: mean 3/4.
  EXPECT_NEAR(norm.mean(), 0.75, 4.0 * norm.stderr_mean());
}

TEST(BallPoint, SpanOverloadChecksSize) {
  ProjectionConfig cfg{4, 2, 2.0, WLaw::exponential()};
  RngStream rng(1, 1);
  std::vector<double> out(3);
  EXPECT_THROW(sample_ball_point(cfg, rng, out), UsageError);
}

TEST(ProjectedNorm, DirectSamplerCap) {
  ProjectionConfig cfg{kDirectSamplerMaxDim + 1, 2, 2.0, WLaw::exponential()};
  RngStream rng(1, 1);
  EXPECT_THROW(project_norm_direct(cfg, rng), UsageError);
}

TEST(ProjectedNorm, FullProjectionIsTheScaledEuclideanNorm) {
  // k = n: P_E is the identity, so the cone draw has n^{1/2} ||X||_2 computed from the same law.
  ProjectionConfig cfg{6, 6, 2.0, WLaw::dirac0()};
  RngStream rng(4, 4);
  for (int i = 0; i < 200; ++i) ASSERT_NEAR(project_norm_direct(cfg, rng), std::sqrt(6.0), 1e-12);
  RngStream rng2(4, 5);
  for (int i = 0; i < 200; ++i) ASSERT_NEAR(project_norm_repr(cfg, rng2), std::sqrt(6.0), 1e-12);
}

TEST(ProjectedNorm, DirectMatchesReprInDistribution) {
  // Reduced-budget version of the acceptance tuples; KS limit at the 0.1% level.
  const std::vector<ProjectionConfig> tuples = {{15, 4, 1.0, WLaw::exponential()},
                                                {15, 4, 2.0, WLaw::exponential()},
                                                {20, 7, 3.0, WLaw::dirac0()},
                                                {12, 5, 2.0, WLaw::gamma(1.5)}};
  constexpr int kN = 20000;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    RngStream a(31, 2 * i), b(31, 2 * i + 1);
    std::vector<double> d(kN), r(kN);
    for (int j = 0; j < kN; ++j) {
      d[j] = project_norm_direct(tuples[i], a);
      r[j] = project_norm_repr(tuples[i], b);
    }
    const double ks = ks_two_sample(d, r);
    EXPECT_GT(kolmogorov_tail(ks * std::sqrt(kN / 2.0)), 1e-3) << "tuple " << i << " ks=" << ks;
  }
}

TEST(ProjectedNorm, ReprReplaysAndAssemblesFromComponents) {
  ProjectionConfig cfg{300, 30, 3.0, WLaw::gamma(2.0)};
  RngStream a(8, 8), b(8, 8);
  for (int i = 0; i < 100; ++i) {
    const double direct = project_norm_repr(cfg, a);
    const auto c = draw_components(cfg, b);
    ASSERT_EQ(direct, projected_norm(cfg, c));
    ASSERT_EQ(c.log_lr, 0.0);
  }
}

TEST(ProjectedNorm, GaussianShortcutAgreesWithGeneralPath) {
  // At p = 2 sum Z_i^2 and sum |Z_i|^p coincide.
  ProjectionConfig cfg{50, 5, 2.0, WLaw::exponential()};
  RngStream rng(3, 3);
  for (int i = 0; i < 100; ++i) {
    const auto c = draw_components(cfg, rng);
    ASSERT_EQ(c.sum_sq, c.sum_pth);
  }
}

TEST(XStatistic, ConsistentWithNorm) {
  ProjectionConfig cfg{400, 40, 3.0, WLaw::exponential()};
  RngStream a(5, 5), b(5, 5);
  for (int i = 0; i < 50; ++i) {
    const double x = sample_x_statistic(cfg, 0.5, a);
    const double z = project_norm_repr(cfg, b);
    ASSERT_NEAR(x, x_statistic_from_norm(cfg, 0.5, z), 1e-12);
    ASSERT_NEAR(x, (z * x_stat_prefactor(3.0) - std::sqrt(40.0)) / 0.5, 1e-9);
  }
}

TEST(Tilt, LikelihoodRatioIntegratesToOne) {
  ProjectionConfig cfg{60, 6, 3.0, WLaw::exponential()};
  ComponentTilt tilt{0.2, -0.1, 0.15};
  RngStream rng(12, 0);
  RunningStats lr;
  for (int i = 0; i < 200000; ++i) lr.add(std::exp(draw_components(cfg, rng, tilt).log_lr));
  EXPECT_NEAR(lr.mean(), 1.0, 4.0 * lr.stderr_mean());
}

TEST(Tilt, Validation) {
  EXPECT_THROW((ComponentTilt{0.5, 0.0, 0.0}.validate(2.0)), std::exception);
  EXPECT_THROW((ComponentTilt{0.0, 0.6, 0.0}.validate(2.0)), std::exception);
  EXPECT_THROW((ComponentTilt{0.0, 0.0, 1.0 / 3.0}.validate(3.0)), std::exception);
  EXPECT_NO_THROW((ComponentTilt{0.49, -5.0, 0.3}.validate(3.0)));
  EXPECT_FALSE(ComponentTilt{}.active());
}

TEST(StandardizedSums, PerDrawIdentity) {
  RngStream rng(21, 0);
  const std::int64_t n = 500, k = 120;
  const double lam = static_cast<double>(k) / n;
  for (int i = 0; i < 2000; ++i) {
    const auto s = sample_standardized_sums(n, k, 3.0, 0.7, rng);
    ASSERT_TRUE(s.zeta_2.has_value());
    ASSERT_NEAR(s.zeta_3, std::sqrt(lam) * s.zeta_1 + std::sqrt(1.0 - lam) * *s.zeta_2, 1e-12);
  }
}

TEST(StandardizedSums, ZetaTwoAbsentAtFullRank) {
  RngStream rng(21, 1);
  const auto s = sample_standardized_sums(40, 40, 2.0, 1.0, rng);
  EXPECT_FALSE(s.zeta_2.has_value());
  EXPECT_NEAR(s.zeta_3, s.zeta_1, 1e-12);
  EXPECT_THROW(sample_standardized_sums(40, 10, 1.5, 1.0, rng), DomainError);
  EXPECT_THROW(sample_standardized_sums(40, 10, 3.0, 0.0, rng), DomainError);
}

TEST(StandardizedSums, CenteredWithBivariateCovariance) {
  const double p = 3.0, t = 2.0;
  const auto cov = bivariate_cov(p);
  RngStream rng(22, 0);
  constexpr int kN = 200000;
  RunningStats m2, mp, z1;
  RunningStats s11, s12, s22;
  for (int i = 0; i < kN; ++i) {
    const auto s = sample_standardized_sums(30, 10, p, t, rng);
    m2.add(s.xi_2);
    mp.add(s.xi_p);
    z1.add(s.zeta_1);
    // Means are exactly zero, so products estimate covariances without centering bias.
    s11.add(s.xi_2 * s.xi_2);
    s12.add(s.xi_2 * s.xi_p);
    s22.add(s.xi_p * s.xi_p);
  }
  EXPECT_NEAR(m2.mean(), 0.0, 3.0 * m2.stderr_mean());
  EXPECT_NEAR(mp.mean(), 0.0, 3.0 * mp.stderr_mean());
  EXPECT_NEAR(z1.mean(), 0.0, 3.0 * z1.stderr_mean());
  EXPECT_NEAR(s11.mean(), cov.c11 / (t * t), 3.0 * s11.stderr_mean());
  EXPECT_NEAR(s12.mean(), cov.c12 / (t * t), 3.0 * s12.stderr_mean());
  EXPECT_NEAR(s22.mean(), cov.c22 / (t * t), 3.0 * s22.stderr_mean());
}
