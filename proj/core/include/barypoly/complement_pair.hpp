#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "barypoly/extended_real.hpp"

namespace barypoly {

// A number x in [0, 1] carried together with 1 - x, each to full relative
// precision. Conjugation u = 1 - t is then exact (swap the two halves), and
// a coordinate at 1 - 1e-40 keeps its distance to 1.
struct ComplementPair {
  ExtendedReal value;
  ExtendedReal complement;

  static ComplementPair from_value(double x);
  static ComplementPair from_complement(double c);

  ComplementPair flipped() const { return {complement, value}; }
  double to_double() const { return value.to_double(); }
  // True once either half has left the representable range.
  bool saturated() const;
};

// min(x, 1 - x), the distance to the nearer end of [0, 1].
ExtendedReal distance_to_boundary(const ComplementPair& x);

// log(1 - c) for c in [0, 1).
ExtendedReal log1m(const ExtendedReal& c);
// 1 - e^s for s <= 0.
ExtendedReal one_minus_exp(const ExtendedReal& s);

inline constexpr std::size_t kNoSkip = std::numeric_limits<std::size_t>::max();

// prod_{i != skip} factors[i].value, with its complement computed without
// cancellation when the product is close to 1.
ComplementPair product(std::span<const ComplementPair> factors,
                       std::size_t skip = kNoSkip);

// Three-way comparison by value (-1, 0, 1). Above 1/2 the complements are
// compared, since the values may all round to 1.
int compare(const ComplementPair& a, const ComplementPair& b);

// Same ordering as compare(); true when a <= b allowing a relative slack on
// the compared half.
bool less_equal_with_slack(const ComplementPair& a, const ComplementPair& b,
                           double relative_slack);

}  // namespace barypoly
