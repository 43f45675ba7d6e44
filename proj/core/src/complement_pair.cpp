#include "barypoly/complement_pair.hpp"

#include <cmath>

namespace barypoly {
namespace {

// Below this magnitude log(1 - c) = -c and 1 - e^s = -s to binary64 precision.
const ExtendedReal kLinearRegime(1e-300);

}  // namespace

ComplementPair ComplementPair::from_value(double x) {
  return {ExtendedReal(x), ExtendedReal(1.0 - x)};
}

ComplementPair ComplementPair::from_complement(double c) {
  return {ExtendedReal(1.0 - c), ExtendedReal(c)};
}

bool ComplementPair::saturated() const {
  return !(value.sign() > 0 && complement.sign() > 0 && value.is_finite() &&
           complement.is_finite());
}

ExtendedReal distance_to_boundary(const ComplementPair& x) {
  return x.value < x.complement ? x.value : x.complement;
}

ExtendedReal log1m(const ExtendedReal& c) {
  if (abs(c) < kLinearRegime) return -c;
  return ExtendedReal(std::log1p(-c.to_double()));
}

ExtendedReal one_minus_exp(const ExtendedReal& s) {
  if (abs(s) < kLinearRegime) return -s;
  return ExtendedReal(-std::expm1(s.to_double()));
}

ComplementPair product(std::span<const ComplementPair> factors, std::size_t skip) {
  ExtendedReal value(1.0);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i != skip) value *= factors[i].value;
  }
  if (value <= ExtendedReal(0.5)) {
    return {value, ExtendedReal(1.0 - value.to_double())};
  }
  // Every factor exceeds 1/2 here, so each complement is below 1/2 and
  // log(1 - complement) is well conditioned.
  ExtendedReal log_sum;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i != skip) log_sum += log1m(factors[i].complement);
  }
  return {value, one_minus_exp(log_sum)};
}

int compare(const ComplementPair& a, const ComplementPair& b) {
  const ExtendedReal half(0.5);
  if (a.value > half && b.value > half) {
    if (a.complement > b.complement) return -1;
    return a.complement < b.complement ? 1 : 0;
  }
  if (a.value < b.value) return -1;
  return a.value > b.value ? 1 : 0;
}

bool less_equal_with_slack(const ComplementPair& a, const ComplementPair& b,
                           double relative_slack) {
  const ExtendedReal half(0.5);
  if (a.value <= half && b.value <= half) {
    return a.value <= b.value * ExtendedReal(1.0 + relative_slack);
  }
  if (a.value > half && b.value > half) {
    return b.complement <= a.complement * ExtendedReal(1.0 + relative_slack);
  }
  return a.value <= b.value;
}

}  // namespace barypoly
