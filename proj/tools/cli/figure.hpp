#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "barypoly/geometry.hpp"

namespace barypoly::cli {

// Without a fixed step count, iterate until the vertex diameter drops below
// kFigureShrink times the initial one, or kFigureIterationCap steps.
inline constexpr double kFigureShrink = 1e-3;
inline constexpr std::size_t kFigureIterationCap = 5000;

struct FigureLayer {
  int order = 0;
  std::vector<double> weights;    // t^(order)
  std::vector<PointSet> iterates;  // initial polygon first
  Point limit;
};

struct Figure {
  std::vector<FigureLayer> layers;
  Point centroid;
};

// One layer per derivative order. Throws std::invalid_argument unless the
// points are planar and orders are non-negative.
Figure build_figure(const PointSet& points, const WeightTuple& t, std::span<const int> orders,
                    std::optional<std::size_t> steps);

// 1000 x 1000 viewBox, 5% margin. Byte-identical for identical figures.
std::string render_svg(const Figure& figure);

}  // namespace barypoly::cli
