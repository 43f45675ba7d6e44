#include "barypoly/stationary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace barypoly {
namespace {

void require_theorem_order(int p, const char* what) {
  if (p < 3) {
    throw std::invalid_argument(std::string(what) +
                                ": p must be at least 3 (got " +
                                std::to_string(p) + ")");
  }
}

double theta_derivative(int p, double x) {
  if (p == 2) return 2.0;
  return (p - 1) * std::exp((p - 2) * std::log(x)) + 1.0;
}

}  // namespace

double theta(int p, double x) {
  if (x <= 0.0) return -1.0;
  return std::exp((p - 1) * std::log(x)) + x - 1.0;
}

double solve_alpha(int p, double tol) {
  if (p < 2) {
    throw std::invalid_argument("solve_alpha: p must be at least 2 (got " +
                                std::to_string(p) + ")");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("solve_alpha: tol must be positive");

  // theta is strictly increasing on [0, 1] with theta(0) = -1, theta(1) = 1.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (theta(p, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double next = x - theta(p, x) / theta_derivative(p, x);
    if (!(next > 0.0 && next < 1.0)) break;
    if (std::abs(theta(p, next)) > std::abs(theta(p, x))) break;
    x = next;
  }
  if (std::abs(theta(p, x)) > tol) {
    throw std::domain_error("solve_alpha: tolerance not reachable in binary64");
  }
  return x;
}

StationaryCertificate certificate(int p) {
  require_theorem_order(p, "certificate");
  StationaryCertificate c;
  c.p = p;
  c.alpha = solve_alpha(p);
  c.beta = std::exp((p - 2) * std::log(c.alpha));
  c.lambda_repulsive = (1 - p) * c.beta;
  c.lambda_contractive = c.beta;
  c.instability_margin = std::abs(c.lambda_repulsive) - 1.0;
  return c;
}

WeightTuple stationary_point(int p) {
  return stationary_conjugate(p).conjugate();
}

ConjugateTuple stationary_conjugate(int p) {
  require_theorem_order(p, "stationary_point");
  const double alpha = solve_alpha(p);
  return ConjugateTuple(std::vector<ComplementPair>(
      static_cast<std::size_t>(p), ComplementPair::from_value(alpha)));
}

}  // namespace barypoly
