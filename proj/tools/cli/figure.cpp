#include "figure.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "barypoly/dynamics.hpp"

namespace barypoly::cli {
namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 0.05 * kCanvas;
constexpr const char* kColors[] = {"#1f4e79", "#b03a2e", "#2e7d32", "#6a1b9a"};

struct Frame {
  double min_x, min_y, scale, offset_x, offset_y;

  double x(double v) const { return offset_x + (v - min_x) * scale; }
  // SVG y grows downwards.
  double y(double v) const { return kCanvas - (offset_y + (v - min_y) * scale); }
};

Frame fit(const Figure& figure) {
  double lo_x = figure.centroid[0], hi_x = lo_x;
  double lo_y = figure.centroid[1], hi_y = lo_y;
  for (const auto& layer : figure.layers) {
    for (const auto& pt : layer.iterates.front().points()) {
      lo_x = std::min(lo_x, pt[0]);
      hi_x = std::max(hi_x, pt[0]);
      lo_y = std::min(lo_y, pt[1]);
      hi_y = std::max(hi_y, pt[1]);
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
  const double scale = (kCanvas - 2.0 * kMargin) / span;
  return {lo_x, lo_y, scale, kMargin + 0.5 * (span - (hi_x - lo_x)) * scale,
          kMargin + 0.5 * (span - (hi_y - lo_y)) * scale};
}

void append(std::string& out, const char* fmt, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  out += buf;
}

}  // namespace

Figure build_figure(const PointSet& points, const WeightTuple& t, std::span<const int> orders,
                    std::optional<std::size_t> steps) {
  if (points.dim() != 2) {
    throw std::invalid_argument("figure: points must be 2-dimensional, got dimension " +
                                std::to_string(points.dim()));
  }
  if (points.size() != t.size()) {
    throw std::invalid_argument("figure: point count does not match weight count");
  }
  Figure figure;
  figure.centroid = centroid(points);
  const double initial = vertex_diameter(points);
  for (int order : orders) {
    if (order < 0) throw std::invalid_argument("figure: order must be non-negative");
    WeightTuple weights = t;
    for (int j = 0; j < order; ++j) weights = derived_step(weights);

    FigureLayer layer;
    layer.order = order;
    layer.weights = weights.values();
    layer.limit = limit_point(points, weights);
    layer.iterates.push_back(points);
    const std::size_t cap = steps.value_or(kFigureIterationCap);
    while (layer.iterates.size() <= cap) {
      if (!steps && vertex_diameter(layer.iterates.back()) < kFigureShrink * initial) break;
      layer.iterates.push_back(polygon_step(layer.iterates.back(), weights));
    }
    figure.layers.push_back(std::move(layer));
  }
  return figure;
}

std::string render_svg(const Figure& figure) {
  const Frame frame = fit(figure);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" "
         "width=\"1000\" height=\"1000\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";

  for (std::size_t l = 0; l < figure.layers.size(); ++l) {
    const FigureLayer& layer = figure.layers[l];
    const char* color = kColors[l % std::size(kColors)];
    out += "<g class=\"order-" + std::to_string(layer.order) + "\" stroke=\"" + color +
           "\" fill=\"none\">\n";
    const double n = static_cast<double>(layer.iterates.size());
    for (std::size_t i = 0; i < layer.iterates.size(); ++i) {
      const PointSet& poly = layer.iterates[i];
      const double opacity = 0.1 + 0.9 * (1.0 - static_cast<double>(i) / n);
      append(out, "<polyline stroke-width=\"%.1f\" stroke-opacity=\"%.3f\" points=\"",
             i == 0 ? 2.0 : 1.0, opacity);
      for (std::size_t k = 0; k <= poly.size(); ++k) {
        const Point& pt = poly[k % poly.size()];
        if (k > 0) out += ' ';
        append(out, "%.3f,%.3f", frame.x(pt[0]), frame.y(pt[1]));
      }
      out += "\"/>\n";
    }
    append(out, "<circle class=\"limit\" cx=\"%.3f\" cy=\"%.3f\" r=\"6\" ",
           frame.x(layer.limit[0]), frame.y(layer.limit[1]));
    out += std::string("fill=\"") + color + "\"/>\n";
    out += "</g>\n";
  }

  const double cx = frame.x(figure.centroid[0]);
  const double cy = frame.y(figure.centroid[1]);
  out += "<g class=\"centroid\" stroke=\"black\" stroke-width=\"2\">\n";
  append(out, "<line x1=\"%.3f\" y1=\"%.3f\" ", cx - 8.0, cy - 8.0);
  append(out, "x2=\"%.3f\" y2=\"%.3f\"/>\n", cx + 8.0, cy + 8.0);
  append(out, "<line x1=\"%.3f\" y1=\"%.3f\" ", cx - 8.0, cy + 8.0);
  append(out, "x2=\"%.3f\" y2=\"%.3f\"/>\n", cx + 8.0, cy - 8.0);
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace barypoly::cli
