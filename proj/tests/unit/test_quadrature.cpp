#include <gtest/gtest.h>

#include <cmath>

#include "ldproj/errors.hpp"
#include "ldproj/quadrature.hpp"

using namespace ldproj;

TEST(Quadrature, FiniteInterval) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value, 2.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return x * x; }, -1.0, 2.0).value, 3.0, 1e-13);
}

TEST(Quadrature, HalfLine) {
  EXPECT_NEAR(integrate_half_line([](double x) { return std::exp(-x); }).value, 1.0, 1e-12);
  const auto g = integrate_half_line([](double x) { return std::exp(-x * x / 2.0); });
  EXPECT_NEAR(g.value, std::sqrt(M_PI / 2.0), 1e-12);
  EXPECT_GT(g.segments, 0);
  // Slow decay needs many doubling segments: x^4 e^{-x/10} integrates to 24e5.
  EXPECT_NEAR(integrate_half_line([](double x) { return std::pow(x, 4) * std::exp(-x / 10.0); })
                  .value,
              2.4e6, 2.4e6 * 1e-11);
}

TEST(Quadrature, HalfLineDivergenceIsReported) {
  EXPECT_THROW(integrate_half_line([](double) { return 1.0; }), NumericalError);
}

TEST(Quadrature, MomentQuadrature) {
  EXPECT_NEAR(moment_quadrature(2.0, 2.0), 1.0, 1e-12);
  EXPECT_NEAR(moment_quadrature(1.0, 3.0), 6.0, 1e-11);
  EXPECT_NEAR(moment_quadrature(7.0, 7.0), 1.0, 1e-12);
}
