#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "barypoly/geometry.hpp"
#include "barypoly/stationary.hpp"
#include "oracles.hpp"

using namespace barypoly;

namespace {

void expect_point_near(const Point& a, const Point& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "coord " << i;
}

}  // namespace

TEST(PointSet, RejectsInvalidInput) {
  EXPECT_THROW(PointSet({{0.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(PointSet({{0.0, 0.0}, {1.0}}), std::invalid_argument);
  EXPECT_THROW(PointSet({{0.0, 0.0}, {0.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(PointSet({{0.0, 0.0}, {INFINITY, 0.0}}), std::invalid_argument);
  EXPECT_THROW(PointSet(std::vector<Point>{Point{}, Point{}}), std::invalid_argument);
}

TEST(Centroid, Examples) {
  expect_point_near(centroid(PointSet({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), {0.5, 0.5}, 1e-16);
  expect_point_near(centroid(PointSet({{0, 0}, {1, 0}, {0, 1}})), {1.0 / 3, 1.0 / 3}, 1e-16);
  const Point shifted = centroid(PointSet({{2, -1}, {3, -1}, {2, 0}}));
  expect_point_near(shifted, {2.0 + 1.0 / 3, -1.0 + 1.0 / 3}, 1e-15);
}

TEST(RegularPolygon, OnUnitCircle) {
  const PointSet pentagon = regular_polygon(5);
  EXPECT_EQ(pentagon.size(), 5u);
  expect_point_near(pentagon[0], {1.0, 0.0}, 1e-16);
  for (const auto& pt : pentagon.points()) EXPECT_NEAR(std::hypot(pt[0], pt[1]), 1.0, 1e-15);
  expect_point_near(centroid(pentagon), {0.0, 0.0}, 1e-15);
}

TEST(LimitWeights, HandEvaluated) {
  const auto w = limit_weights(WeightTuple({0.5, 0.5, 0.9}));
  EXPECT_NEAR(w[0], 1.0 / 7, 1e-15);
  EXPECT_NEAR(w[1], 1.0 / 7, 1e-15);
  EXPECT_NEAR(w[2], 5.0 / 7, 1e-15);
}

TEST(LimitPoint, EqualWeightsGiveCentroid) {
  std::mt19937_64 rng(4);
  const PointSet a(oracle::random_points(rng, 6, 3));
  expect_point_near(limit_point(a, WeightTuple(std::vector<double>(6, 0.37))), centroid(a),
                    1e-15);
}

TEST(LimitPoint, MatchesMatrixPowerOracle) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t p = 3 + i % 5;
    const std::vector<double> t = oracle::uniform_tuple(rng, p, 0.02, 0.98);
    const std::vector<double> w = oracle::polygon_limit_weights(t);
    const auto ours = limit_weights(WeightTuple(t));
    for (std::size_t k = 0; k < p; ++k) EXPECT_NEAR(ours[k], w[k], 1e-10) << "case " << i;
  }
}

TEST(LimitPoint, AffineEquivariance) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    const std::size_t p = 3 + i % 4;
    const auto pts = oracle::random_points(rng, p, 2);
    const WeightTuple t(oracle::uniform_tuple(rng, p, 0.05, 0.95));
    // L(x) = M x + b with M well conditioned.
    const double m00 = 1.0 + oracle::uniform(rng, 0, 1), m01 = oracle::uniform(rng, -0.5, 0.5);
    const double m10 = oracle::uniform(rng, -0.5, 0.5), m11 = 1.0 + oracle::uniform(rng, 0, 1);
    const double b0 = oracle::uniform(rng, -3, 3), b1 = oracle::uniform(rng, -3, 3);
    auto map = [&](const Point& x) {
      return Point{m00 * x[0] + m01 * x[1] + b0, m10 * x[0] + m11 * x[1] + b1};
    };
    std::vector<Point> mapped;
    for (const auto& x : pts) mapped.push_back(map(x));
    expect_point_near(limit_point(PointSet(mapped), t), map(limit_point(PointSet(pts), t)),
                      1e-10);
  }
}

TEST(PolygonStep, HalfWeightsGiveEdgeMidpoints) {
  const PointSet square({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  const PointSet next = polygon_step(square, WeightTuple(std::vector<double>(4, 0.5)));
  expect_point_near(next[0], {1, 0}, 0);
  expect_point_near(next[1], {2, 1}, 0);
  expect_point_near(next[2], {1, 2}, 0);
  expect_point_near(next[3], {0, 1}, 0);
}

TEST(PolygonStep, CentroidMovesForUnequalWeights) {
  const PointSet two(std::vector<Point>{Point{0.0}, Point{1.0}});
  const PointSet next = polygon_step(two, WeightTuple({0.1, 0.9}));
  // 0.1*0 + 0.9*1 and 0.9*1 + 0.1*0.
  expect_point_near(next[0], {0.9}, 1e-16);
  expect_point_near(next[1], {0.9}, 1e-16);
  EXPECT_NE(centroid(next)[0], centroid(two)[0]);
}

TEST(PolygonStep, IteratesCollapseToLimitPoint) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const std::size_t p = 3 + i % 5;
    const std::size_t dim = 1 + i % 3;
    const PointSet a(oracle::random_points(rng, p, dim));
    const WeightTuple t(oracle::uniform_tuple(rng, p, 0.05, 0.95));
    PointSet b = a;
    for (int n = 0; n < 500; ++n) b = polygon_step(b, t);
    const Point g = limit_point(a, t);
    for (const auto& pt : b.points()) EXPECT_LT(distance(pt, g), 1e-8) << "case " << i;
    EXPECT_LT(vertex_diameter(b), 1e-8);
  }
}

TEST(DualSequence, RegularWeightsStayAtCentroid) {
  const PointSet pentagon = regular_polygon(5);
  for (const WeightTuple& t : {WeightTuple(std::vector<double>(5, 0.2)), stationary_point(5)}) {
    const DualSequenceRecord rec = dual_sequence(pentagon, t, 30);
    for (double d : rec.distances_to_centroid) EXPECT_LE(d, 1e-14);
  }
}

TEST(DualSequence, ReferenceSeedConvergesToCentroid) {
  const DualSequenceRecord rec =
      dual_sequence(regular_polygon(5), WeightTuple({0.3, 0.08, 0.06, 0.04, 0.01}), 60);
  EXPECT_FALSE(rec.saturation_step.has_value());
  ASSERT_EQ(rec.distances_to_centroid.size(), 61u);
  EXPECT_LT(rec.distances_to_centroid.back(), 1e-8);
  EXPECT_LT(rec.distances_to_centroid[59], 1e-8);
  ASSERT_TRUE(rec.fitted_rate.has_value());
  EXPECT_LT(*rec.fitted_rate, 0.0);
}

TEST(DualSequence, WeightsSumToOneThroughSaturation) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const std::size_t p = 3 + i % 6;
    const DualSequenceRecord rec = dual_sequence(
        regular_polygon(p), WeightTuple(oracle::uniform_tuple(rng, p, 0.01, 0.99)), 300);
    for (const auto& w : rec.weights) {
      EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-14);
      for (double x : w) EXPECT_TRUE(std::isfinite(x));
    }
  }
}

TEST(DualSequence, RejectsMismatchedInput) {
  EXPECT_THROW(dual_sequence(regular_polygon(4), WeightTuple({0.1, 0.2, 0.3}), 5),
               std::invalid_argument);
}

TEST(FitLogRate, RecoversExactSlope) {
  std::vector<double> d;
  for (int m = 0; m < 40; ++m) d.push_back(std::exp(-0.3 * m));
  ASSERT_TRUE(fit_log_rate(d).has_value());
  EXPECT_NEAR(*fit_log_rate(d), -0.3, 1e-12);
  EXPECT_FALSE(fit_log_rate(std::vector<double>(20, 0.0)).has_value());
}
