#include <cmath>

#include <gtest/gtest.h>

#include "pdmwell/special_functions.hpp"
#include "property.hpp"

using namespace pdmwell::special;

TEST(Sinc, ValueAndLimit) {
  EXPECT_EQ(sinc(0.0), 1.0);
  EXPECT_NEAR(sinc(1.0), std::sin(1.0), 1e-16);
  EXPECT_NEAR(sinc(std::numbers::pi), 0.0, 1e-16);
}

TEST(AtanhRatio, ValuesAndLimit) {
  EXPECT_EQ(atanh_ratio(0.0), 1.0);
  EXPECT_NEAR(atanh_ratio(0.5), 1.0986122886681098, 1e-15);
  EXPECT_NEAR(atanh_ratio(1e-9), 1.0, 1e-16);
}

TEST(AtanhRatioExcess, ValuesAndLimit) {
  EXPECT_NEAR(atanh_ratio_excess(0.0), 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(atanh_ratio_excess(0.5), (std::atanh(0.5) / 0.5 - 1.0) / 0.25, 1e-14);
  EXPECT_NEAR(atanh_ratio_excess(0.9), (std::atanh(0.9) / 0.9 - 1.0) / 0.81, 1e-14);
}

TEST(LogExpRatios, ValuesAndLimits) {
  EXPECT_EQ(log1p_ratio(0.0), 1.0);
  EXPECT_EQ(expm1_ratio(0.0), 1.0);
  EXPECT_NEAR(log1p_ratio(0.5), std::log(1.5) / 0.5, 1e-15);
  EXPECT_NEAR(expm1_ratio(-0.7), std::expm1(-0.7) / -0.7, 1e-15);
}

TEST(SpecialProperty, SmoothAcrossSeriesCrossovers) {
  // Each helper agrees with a high-order reference series just either side of
  // its switch point.
  for (double x : {0.9e-4, 1.1e-4}) {
    const double x2 = x * x;
    EXPECT_NEAR(sinc(x), 1.0 - x2 / 6.0 + x2 * x2 / 120.0, 4e-16);
  }
  for (double x : {0.9e-3, 1.1e-3}) {
    const double x2 = x * x;
    EXPECT_NEAR(atanh_ratio(x), 1.0 + x2 / 3.0 + x2 * x2 / 5.0, 1e-15);
  }
  for (double x : {0.249, 0.251}) {
    double sum = 0.0;
    for (int k = 0; k < 80; ++k) sum += std::pow(x * x, k) / (2.0 * k + 3.0);
    EXPECT_NEAR(atanh_ratio_excess(x), sum, 2e-14);
  }
  for (double y : {0.9e-8, 1.1e-8}) {
    EXPECT_NEAR(log1p_ratio(y), 1.0 - y / 2.0, 1e-15);
    EXPECT_NEAR(expm1_ratio(y), 1.0 + y / 2.0, 1e-15);
  }
}

TEST(SpecialProperty, EvenFunctions) {
  proptest::for_all(200, 3, [](proptest::Gen& g) {
    const double x = g.uniform(-0.999, 0.999);
    EXPECT_EQ(atanh_ratio(x), atanh_ratio(-x));
    EXPECT_EQ(atanh_ratio_excess(x), atanh_ratio_excess(-x));
    EXPECT_EQ(sinc(10.0 * x), sinc(-10.0 * x));
  });
}

TEST(SpecialProperty, InversePairOfLogAndExpRatios) {
  // y = log1p(z): z = y * expm1_ratio(y) and y = z * log1p_ratio(z)
  proptest::for_all(200, 5, [](proptest::Gen& g) {
    const double z = g.uniform(-0.9, 4.0) * std::pow(10.0, g.integer(-12, 0));
    const double y = z * log1p_ratio(z);
    EXPECT_NEAR(y * expm1_ratio(y), z, 4e-16 * std::max(1.0, std::abs(z)) + 1e-16 * std::abs(z));
  });
}
