#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "barypoly/complement_pair.hpp"
#include "barypoly/extended_real.hpp"

using barypoly::ComplementPair;
using barypoly::ExtendedReal;

TEST(ExtendedReal, MatchesDoubleArithmeticInRange) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double a = dist(rng);
    const double b = dist(rng);
    EXPECT_EQ((ExtendedReal(a) * ExtendedReal(b)).to_double(), a * b);
    EXPECT_EQ((ExtendedReal(a) / ExtendedReal(b)).to_double(), a / b);
    EXPECT_NEAR((ExtendedReal(a) + ExtendedReal(b)).to_double(), a + b,
                1e-15 * (std::abs(a) + std::abs(b)));
    EXPECT_NEAR((ExtendedReal(a) - ExtendedReal(b)).to_double(), a - b,
                1e-15 * (std::abs(a) + std::abs(b)));
    EXPECT_EQ(ExtendedReal(a) < ExtendedReal(b), a < b);
  }
}

TEST(ExtendedReal, KeepsPrecisionFarBelowDoubleRange) {
  // (1e-200)^10 = 1e-2000, then back up by the same factors.
  ExtendedReal x(1.0);
  for (int i = 0; i < 10; ++i) x *= ExtendedReal(1e-200);
  EXPECT_FALSE(x.is_zero());
  EXPECT_EQ(x.to_double(), 0.0);
  EXPECT_NEAR(x.log(), -2000.0 * std::log(10.0), 1e-9);
  for (int i = 0; i < 10; ++i) x /= ExtendedReal(1e-200);
  EXPECT_NEAR(x.to_double(), 1.0, 1e-14);
}

TEST(ExtendedReal, ParsesDecimalExponentsOutsideDoubleRange) {
  const ExtendedReal x = ExtendedReal::parse("4.5e-1098");
  EXPECT_NEAR(x.log(), std::log(4.5) - 1098.0 * std::log(10.0), 1e-9);
  EXPECT_EQ(ExtendedReal::parse("0.25").to_double(), 0.25);
  EXPECT_THROW(ExtendedReal::parse("abc"), std::invalid_argument);
  EXPECT_THROW(ExtendedReal::parse(""), std::invalid_argument);
}

TEST(ExtendedReal, ExactStringRoundTrips) {
  const std::vector<ExtendedReal> values = {
      ExtendedReal(0.1), ExtendedReal(1.0 - 1e-16), ExtendedReal(-3.25e-300),
      ExtendedReal::from_parts(0.7853981633974483, -10806475000LL),
      ExtendedReal::from_parts(-0.5, 5000), ExtendedReal::from_parts(0.999, -1030)};
  for (const auto& x : values) {
    EXPECT_EQ(ExtendedReal::parse(x.to_exact_string()), x) << x.to_exact_string();
  }
}

TEST(ExtendedReal, PowAndRootAreInverse) {
  const ExtendedReal x = ExtendedReal::from_parts(0.6, -5000);
  const ExtendedReal y = barypoly::pow(x, 7);
  EXPECT_LT(barypoly::relative_difference(barypoly::root(y, 7), x), 1e-13);
  EXPECT_EQ(barypoly::pow(ExtendedReal(3.0), 4).to_double(), 81.0);
}

TEST(ComplementPair, ProductKeepsDistanceToOne) {
  // Three factors at 1 - 1e-20: product 1 - 3e-20, not representable as u.
  const ComplementPair near_one = ComplementPair::from_complement(1e-20);
  const std::vector<ComplementPair> factors(3, near_one);
  const ComplementPair prod = barypoly::product(factors);
  EXPECT_EQ(prod.value.to_double(), 1.0);
  EXPECT_NEAR(prod.complement.to_double(), 3e-20, 1e-34);
}

TEST(ComplementPair, ProductSkipsIndex) {
  const std::vector<ComplementPair> factors = {ComplementPair::from_value(0.2),
                                               ComplementPair::from_value(0.3),
                                               ComplementPair::from_value(0.4)};
  EXPECT_NEAR(barypoly::product(factors, 1).value.to_double(), 0.08, 4e-17);
  EXPECT_NEAR(barypoly::product(factors, 1).complement.to_double(), 0.92, 3e-16);
}

TEST(ComplementPair, CompareUsesComplementsNearOne) {
  const ComplementPair a = ComplementPair::from_complement(2e-20);
  const ComplementPair b = ComplementPair::from_complement(1e-20);
  EXPECT_EQ(barypoly::compare(a, b), -1);
  EXPECT_EQ(barypoly::compare(b, a), 1);
  EXPECT_EQ(barypoly::compare(a, a), 0);
  EXPECT_EQ(barypoly::compare(ComplementPair::from_value(0.1), b), -1);
}
