#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace barypoly {

// A binary64 mantissa paired with a 64-bit binary exponent.
//
// The derived system drives coordinates towards 0 and 1 doubly
// exponentially, so products such as prod_{i!=k} u_i leave the binary64
// range within a dozen steps while the ratios between coordinates are
// still the quantities of interest. This type keeps 53 bits of relative
// precision down to 2^(-2^60); it is not an arbitrary-precision type.
//
// Invariant: the value is zero, non-finite, or 0.5 <= |mantissa| < 1.
class ExtendedReal {
 public:
  // Magnitudes below 2^-kExponentLimit flush to zero, above overflow to inf.
  static constexpr std::int64_t kExponentLimit = std::int64_t{1} << 60;

  constexpr ExtendedReal() = default;
  ExtendedReal(double x);  // NOLINT(google-explicit-constructor)

  static ExtendedReal from_parts(double mantissa, std::int64_t exponent);
  // e^x, for any finite x (including ones far outside the binary64 range).
  static ExtendedReal exp(double x);
  // Parses decimal text, including exponents outside the binary64 range
  // such as "4.5335e-1098", and the hexadecimal form of to_exact_string().
  static ExtendedReal parse(std::string_view text);

  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  bool is_zero() const { return mantissa_ == 0.0; }
  bool is_finite() const;
  int sign() const { return (mantissa_ > 0.0) - (mantissa_ < 0.0); }

  // Nearest binary64 value; flushes to 0 or overflows to inf as needed.
  double to_double() const;
  // Natural logarithm as a binary64 value; requires a positive value.
  double log() const;

  // Shortest-form text with `digits` significant digits; uses a decimal
  // exponent outside the binary64 range.
  std::string to_string(int digits = 17) const;
  // Lossless text: 17 significant digits inside the binary64 range,
  // hexadecimal significand with a binary exponent outside it
  // ("0x1.8p-4000000"). parse() reads both.
  std::string to_exact_string() const;

  ExtendedReal operator-() const { return from_parts(-mantissa_, exponent_); }

  friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b);

  ExtendedReal& operator*=(const ExtendedReal& o) { return *this = *this * o; }
  ExtendedReal& operator/=(const ExtendedReal& o) { return *this = *this / o; }
  ExtendedReal& operator+=(const ExtendedReal& o) { return *this = *this + o; }
  ExtendedReal& operator-=(const ExtendedReal& o) { return *this = *this - o; }

  friend std::partial_ordering operator<=>(const ExtendedReal& a,
                                           const ExtendedReal& b);
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b);

 private:
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

ExtendedReal abs(const ExtendedReal& x);
ExtendedReal pow(const ExtendedReal& base, unsigned n);
// x^(1/n) for positive x.
ExtendedReal root(const ExtendedReal& x, unsigned n);

// |a - b| / max(|a|, |b|), or 0 when both are zero.
double relative_difference(const ExtendedReal& a, const ExtendedReal& b);

}  // namespace barypoly
