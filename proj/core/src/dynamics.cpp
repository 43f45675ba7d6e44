#include "barypoly/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace barypoly {
namespace {

std::vector<ComplementPair> pairs_from_values(const std::vector<double>& values,
                                              const char* what) {
  std::vector<ComplementPair> pairs;
  pairs.reserve(values.size());
  for (double x : values) {
    if (!(x > 0.0 && x < 1.0)) {
      throw std::invalid_argument(std::string(what) +
                                  ": every coordinate must lie in (0, 1), got " +
                                  std::to_string(x));
    }
    pairs.push_back(ComplementPair::from_value(x));
  }
  return pairs;
}

// Products over i != k for every k, or nullopt if any leaves the range.
std::optional<std::vector<ComplementPair>> excluded_products(
    std::span<const ComplementPair> factors) {
  std::vector<ComplementPair> out;
  out.reserve(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    ComplementPair pk = product(factors, k);
    if (pk.saturated()) return std::nullopt;
    out.push_back(pk);
  }
  return out;
}

bool is_sorted_pairs(std::span<const ComplementPair> pairs) {
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    if (compare(pairs[k - 1], pairs[k]) > 0) return false;
  }
  return true;
}

}  // namespace

UnitTuple::UnitTuple(std::vector<double> values, const char* what)
    : UnitTuple(pairs_from_values(values, what), what) {}

UnitTuple::UnitTuple(std::vector<ComplementPair> pairs, const char* what)
    : pairs_(std::move(pairs)) {
  if (pairs_.size() < 2) {
    throw std::invalid_argument(std::string(what) + ": need at least 2 coordinates");
  }
  for (const auto& x : pairs_) {
    if (x.saturated()) {
      throw std::invalid_argument(std::string(what) +
                                  ": coordinate outside the open unit interval");
    }
  }
}

std::vector<double> UnitTuple::values() const {
  std::vector<double> out;
  out.reserve(pairs_.size());
  for (const auto& x : pairs_) out.push_back(x.to_double());
  return out;
}

WeightTuple::WeightTuple(std::vector<double> weights)
    : UnitTuple(std::move(weights), "WeightTuple") {}

WeightTuple::WeightTuple(std::vector<ComplementPair> pairs)
    : UnitTuple(std::move(pairs), "WeightTuple") {}

ConjugateTuple WeightTuple::conjugate() const {
  std::vector<ComplementPair> flipped;
  flipped.reserve(pairs_.size());
  for (const auto& x : pairs_) flipped.push_back(x.flipped());
  return ConjugateTuple(std::move(flipped));
}

ConjugateTuple::ConjugateTuple(std::vector<double> values)
    : UnitTuple(std::move(values), "ConjugateTuple"),
      sorted_(is_sorted_pairs(pairs_)) {}

ConjugateTuple::ConjugateTuple(std::vector<ComplementPair> pairs)
    : UnitTuple(std::move(pairs), "ConjugateTuple"),
      sorted_(is_sorted_pairs(pairs_)) {}

WeightTuple ConjugateTuple::conjugate() const {
  std::vector<ComplementPair> flipped;
  flipped.reserve(pairs_.size());
  for (const auto& x : pairs_) flipped.push_back(x.flipped());
  return WeightTuple(std::move(flipped));
}

std::optional<ConjugateTuple> try_conjugate_step(const ConjugateTuple& u) {
  auto products = excluded_products(u.pairs());
  if (!products) return std::nullopt;
  for (auto& x : *products) x = x.flipped();
  return ConjugateTuple(std::move(*products));
}

ConjugateTuple conjugate_step(const ConjugateTuple& u) {
  auto next = try_conjugate_step(u);
  if (!next) throw SaturationError("conjugate_step: state saturated");
  return *std::move(next);
}

WeightTuple derived_step(const WeightTuple& t) {
  // prod_{i != k} (1 - t_i) is the product over the conjugate coordinates.
  const ConjugateTuple u = t.conjugate();
  auto products = excluded_products(u.pairs());
  if (!products) throw SaturationError("derived_step: state saturated");
  return WeightTuple(std::move(*products));
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::kBelow:
      return "BELOW";
    case Phase::kAbove:
      return "ABOVE";
    case Phase::kMixed:
      return "MIXED";
  }
  return "MIXED";
}

Phase classify_phase(const ConjugateTuple& u, double alpha) {
  bool all_below = true;
  bool all_above = true;
  for (std::size_t k = 0; k < u.size(); ++k) {
    // Near 1 the complement carries the digits; alpha > 1/2 for p >= 3.
    const double gap = u.pair(k).value > ExtendedReal(0.5)
                           ? (1.0 - alpha) - u.complement(k)
                           : u[k] - alpha;
    if (std::abs(gap) <= kPhaseBoundaryTolerance) return Phase::kMixed;
    all_below = all_below && gap < 0.0;
    all_above = all_above && gap > 0.0;
  }
  if (all_below) return Phase::kBelow;
  if (all_above) return Phase::kAbove;
  return Phase::kMixed;
}

double spread(const ConjugateTuple& u) {
  std::size_t lo_index = 0;
  std::size_t hi_index = 0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    if (compare(u.pair(k), u.pair(lo_index)) < 0) lo_index = k;
    if (compare(u.pair(k), u.pair(hi_index)) > 0) hi_index = k;
  }
  const ComplementPair& lo = u.pair(lo_index);
  const ComplementPair& hi = u.pair(hi_index);
  const ExtendedReal gap = lo.value > ExtendedReal(0.5)
                               ? lo.complement - hi.complement
                               : hi.value - lo.value;
  return (gap / lo.value).to_double();
}

TrajectoryRecord run_trajectory(const ConjugateTuple& u0, std::size_t max_steps,
                                double alpha) {
  TrajectoryRecord rec{u0, {}, alpha, {}, {}, {}, {}, std::nullopt};
  rec.permutation.resize(u0.size());
  std::iota(rec.permutation.begin(), rec.permutation.end(), std::size_t{0});
  std::stable_sort(rec.permutation.begin(), rec.permutation.end(),
                   [&](std::size_t a, std::size_t b) {
                     return compare(u0.pair(a), u0.pair(b)) < 0;
                   });
  std::vector<ComplementPair> sorted;
  sorted.reserve(u0.size());
  for (std::size_t j : rec.permutation) sorted.push_back(u0.pair(j));

  ConjugateTuple current(std::move(sorted));
  rec.states.reserve(max_steps + 1);
  for (std::size_t m = 0;; ++m) {
    std::vector<double> logs;
    logs.reserve(current.size());
    for (std::size_t k = 0; k < current.size(); ++k) {
      logs.push_back(product(current.pairs(), k).value.log());
    }
    rec.log_products.push_back(std::move(logs));
    rec.spread.push_back(spread(current));
    rec.phase.push_back(classify_phase(current, alpha));
    rec.states.push_back(current);
    if (m == max_steps) break;
    auto next = try_conjugate_step(current);
    if (!next) {
      rec.saturation_step = m + 1;
      break;
    }
    current = *std::move(next);
  }
  return rec;
}

ComplementPair comparison_map(const ComplementPair& x, int p) {
  const std::vector<ComplementPair> factors(static_cast<std::size_t>(p - 1), x);
  return product(factors).flipped();
}

ComplementPair comparison_map_inverse(const ComplementPair& y, int p) {
  // f^{-1}(y) = (1 - y)^(1/(p-1))
  const unsigned n = static_cast<unsigned>(p - 1);
  const ExtendedReal value = root(y.complement, n);
  if (value <= ExtendedReal(0.5)) {
    return {value, ExtendedReal(1.0 - value.to_double())};
  }
  const ExtendedReal log_value = log1m(y.value) / ExtendedReal(static_cast<double>(n));
  return {value, one_minus_exp(log_value)};
}

std::vector<ComplementPair> comparison_sequence(const ComplementPair& tau0, int p,
                                                std::size_t steps) {
  if (p < 3) throw std::invalid_argument("comparison_sequence: p must be at least 3");
  std::vector<ComplementPair> out;
  out.reserve(steps + 1);
  out.push_back(tau0);
  for (std::size_t m = 0; m < steps; ++m) out.push_back(comparison_map(out.back(), p));
  return out;
}

std::vector<double> comparison_sequence(double tau0, int p, std::size_t steps) {
  if (!(tau0 > 0.0 && tau0 < 1.0)) {
    throw std::invalid_argument("comparison_sequence: tau0 must lie in (0, 1)");
  }
  std::vector<double> out;
  for (const auto& x : comparison_sequence(ComplementPair::from_value(tau0), p, steps)) {
    out.push_back(x.to_double());
  }
  return out;
}

}  // namespace barypoly
