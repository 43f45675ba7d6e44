#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "barypoly/dynamics.hpp"

namespace barypoly {

using Point = std::vector<double>;

// An ordered family of p >= 2 points in a dim >= 1 real affine space.
class PointSet {
 public:
  // Input point sets: finite coordinates, equal dimension, and pairwise
  // distances above kDistinctTolerance. Throws std::invalid_argument.
  explicit PointSet(std::vector<Point> points);

  // Iterates of polygon_step may collapse; only shape is checked here.
  static PointSet iterate(std::vector<Point> points);

  static constexpr double kDistinctTolerance = 1e-12;

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.front().size(); }
  const Point& operator[](std::size_t k) const { return points_[k]; }
  const std::vector<Point>& points() const { return points_; }

 private:
  PointSet(std::vector<Point> points, bool require_distinct);

  std::vector<Point> points_;
};

// Regular p-gon inscribed in the unit circle, vertex 0 at (1, 0).
PointSet regular_polygon(std::size_t p);

double distance(const Point& a, const Point& b);
// Largest pairwise vertex distance.
double vertex_diameter(const PointSet& points);

Point centroid(const PointSet& points);

// Barycentric weights of the limit point of the t-barypolygonal sequence,
// proportional to prod_{i != k} (1 - t_i) and summing to 1.
std::vector<double> limit_weights(const WeightTuple& t);

Point barycenter(const PointSet& points, std::span<const double> weights);
Point limit_point(const PointSet& points, const WeightTuple& t);

// New vertex k = t_k B_k + (1 - t_k) B_{k+1}, indices cyclic.
PointSet polygon_step(const PointSet& polygon, const WeightTuple& t);

struct DualSequenceRecord {
  std::vector<Point> points;                  // G_0 .. G_M
  std::vector<double> distances_to_centroid;
  std::vector<std::vector<double>> weights;   // barycentric weights of G_m
  std::optional<double> fitted_rate;          // d ln(distance) / dm
  std::optional<std::size_t> saturation_step;
};

// Least-squares slope of ln(distance) against m over the final half of the
// samples with distance > kRateFitFloor; nullopt with fewer than
// kRateFitMinSamples such samples in that window.
inline constexpr double kRateFitFloor = 1e-13;
inline constexpr std::size_t kRateFitMinSamples = 5;
std::optional<double> fit_log_rate(std::span<const double> distances);

// G_m = limit_point(A, t^(m)) for m = 0 .. steps along the derived system.
// Stops early if the weights leave the representable range.
DualSequenceRecord dual_sequence(const PointSet& points, const WeightTuple& t0,
                                 std::size_t steps);

}  // namespace barypoly
