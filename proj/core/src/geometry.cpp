#include "barypoly/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace barypoly {

PointSet::PointSet(std::vector<Point> points) : PointSet(std::move(points), true) {}

PointSet PointSet::iterate(std::vector<Point> points) {
  return PointSet(std::move(points), false);
}

PointSet::PointSet(std::vector<Point> points, bool require_distinct)
    : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("PointSet: need at least 2 points");
  const std::size_t d = points_.front().size();
  if (d == 0) throw std::invalid_argument("PointSet: dimension must be at least 1");
  for (const auto& pt : points_) {
    if (pt.size() != d) throw std::invalid_argument("PointSet: mixed dimensions");
    for (double x : pt) {
      if (!std::isfinite(x)) throw std::invalid_argument("PointSet: non-finite coordinate");
    }
  }
  if (!require_distinct) return;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (distance(points_[i], points_[j]) <= kDistinctTolerance) {
        throw std::invalid_argument("PointSet: points " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
      }
    }
  }
}

PointSet regular_polygon(std::size_t p) {
  std::vector<Point> pts;
  pts.reserve(p);
  for (std::size_t k = 0; k < p; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(p);
    pts.push_back({std::cos(angle), std::sin(angle)});
  }
  return PointSet(std::move(pts));
}

double distance(const Point& a, const Point& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double vertex_diameter(const PointSet& points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, distance(points[i], points[j]));
    }
  }
  return best;
}

Point centroid(const PointSet& points) {
  Point c(points.dim(), 0.0);
  for (const auto& pt : points.points()) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += pt[i];
  }
  for (double& x : c) x /= static_cast<double>(points.size());
  return c;
}

std::vector<double> limit_weights(const WeightTuple& t) {
  // prod_{i != k} u_i = pi / u_k, so the weights are proportional to
  // u_min / u_k, which stays in (0, 1] even when pi underflows.
  const ConjugateTuple u = t.conjugate();
  ExtendedReal smallest = u.pair(0).value;
  for (std::size_t k = 1; k < u.size(); ++k) {
    if (u.pair(k).value < smallest) smallest = u.pair(k).value;
  }
  std::vector<double> w;
  w.reserve(u.size());
  double total = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    w.push_back((smallest / u.pair(k).value).to_double());
    total += w.back();
  }
  for (double& x : w) x /= total;
  return w;
}

Point barycenter(const PointSet& points, std::span<const double> weights) {
  if (weights.size() != points.size()) {
    throw std::invalid_argument("barycenter: weight count does not match point count");
  }
  Point g(points.dim(), 0.0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += weights[k] * points[k][i];
  }
  return g;
}

Point limit_point(const PointSet& points, const WeightTuple& t) {
  if (points.size() != t.size()) {
    throw std::invalid_argument("limit_point: point count does not match weight count");
  }
  return barycenter(points, limit_weights(t));
}

PointSet polygon_step(const PointSet& polygon, const WeightTuple& t) {
  const std::size_t p = polygon.size();
  if (t.size() != p) {
    throw std::invalid_argument("polygon_step: point count does not match weight count");
  }
  std::vector<Point> next(p, Point(polygon.dim(), 0.0));
  for (std::size_t k = 0; k < p; ++k) {
    const Point& here = polygon[k];
    const Point& ahead = polygon[(k + 1) % p];
    const double tk = t[k];
    const double rest = t.complement(k);
    for (std::size_t i = 0; i < polygon.dim(); ++i) {
      next[k][i] = tk * here[i] + rest * ahead[i];
    }
  }
  return PointSet::iterate(std::move(next));
}

std::optional<double> fit_log_rate(std::span<const double> distances) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t m = 0; m < distances.size(); ++m) {
    if (distances[m] > kRateFitFloor) {
      xs.push_back(static_cast<double>(m));
      ys.push_back(std::log(distances[m]));
    }
  }
  const std::size_t start = xs.size() / 2;
  const std::size_t n = xs.size() - start;
  if (n < kRateFitMinSamples) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = start; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = start; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

DualSequenceRecord dual_sequence(const PointSet& points, const WeightTuple& t0,
                                 std::size_t steps) {
  if (points.size() != t0.size()) {
    throw std::invalid_argument("dual_sequence: point count does not match weight count");
  }
  if (t0.size() < 3) throw std::invalid_argument("dual_sequence: p must be at least 3");

  DualSequenceRecord rec;
  const Point target = centroid(points);
  ConjugateTuple u = t0.conjugate();
  for (std::size_t m = 0;; ++m) {
    rec.weights.push_back(limit_weights(u.conjugate()));
    rec.points.push_back(barycenter(points, rec.weights.back()));
    rec.distances_to_centroid.push_back(distance(rec.points.back(), target));
    if (m == steps) break;
    auto next = try_conjugate_step(u);
    if (!next) {
      rec.saturation_step = m + 1;
      break;
    }
    u = *std::move(next);
  }
  rec.fitted_rate = fit_log_rate(rec.distances_to_centroid);
  return rec;
}

}  // namespace barypoly
