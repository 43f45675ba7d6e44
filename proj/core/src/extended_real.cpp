#include "barypoly/extended_real.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace barypoly {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Exponents (of a [0.5, 1) mantissa) for which ldexp yields a normal double.
constexpr std::int64_t kMinNormalExponent = -1021;
constexpr std::int64_t kMaxNormalExponent = 1024;

}  // namespace

ExtendedReal::ExtendedReal(double x) { *this = from_parts(x, 0); }

ExtendedReal ExtendedReal::from_parts(double mantissa, std::int64_t exponent) {
  ExtendedReal r;
  if (mantissa == 0.0 || !std::isfinite(mantissa)) {
    r.mantissa_ = mantissa;
    return r;
  }
  int shift = 0;
  const double m = std::frexp(mantissa, &shift);
  // Callers keep |exponent| <= 2^61, so this cannot overflow.
  const std::int64_t e = exponent + shift;
  if (e < -kExponentLimit) return r;
  if (e > kExponentLimit) {
    r.mantissa_ = std::copysign(kInf, m);
    return r;
  }
  r.mantissa_ = m;
  r.exponent_ = e;
  return r;
}

ExtendedReal ExtendedReal::exp(double x) {
  if (std::isnan(x)) return from_parts(x, 0);
  const double scaled = x / std::numbers::ln2;
  if (scaled < -static_cast<double>(kExponentLimit)) return {};
  if (scaled > static_cast<double>(kExponentLimit)) return from_parts(kInf, 0);
  const double whole = std::floor(scaled);
  const double rest = x - whole * std::numbers::ln2;
  return from_parts(std::exp(rest), static_cast<std::int64_t>(whole));
}

ExtendedReal ExtendedReal::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  const auto fail = [&] {
    throw std::invalid_argument("malformed number: " + std::string(text));
  };

  {
    std::string_view body = text;
    const bool negative = !body.empty() && body.front() == '-';
    if (negative) body.remove_prefix(1);
    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
      body.remove_prefix(2);
      const std::size_t p_pos = body.find_first_of("pP");
      if (p_pos == std::string_view::npos) fail();
      double mant = 0.0;
      const auto [mp, mec] = std::from_chars(body.data(), body.data() + p_pos, mant,
                                             std::chars_format::hex);
      if (mec != std::errc() || mp != body.data() + p_pos) fail();
      std::string_view exp_text = body.substr(p_pos + 1);
      if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
      std::int64_t binary_exponent = 0;
      const auto [ep, eec] = std::from_chars(
          exp_text.data(), exp_text.data() + exp_text.size(), binary_exponent);
      if (eec != std::errc() || ep != exp_text.data() + exp_text.size()) fail();
      return from_parts(negative ? -mant : mant, binary_exponent);
    }
  }

  const std::size_t e_pos = text.find_first_of("eE");
  std::int64_t decimal_exponent = 0;
  if (e_pos != std::string_view::npos) {
    std::string_view exp_text = text.substr(e_pos + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(
        exp_text.data(), exp_text.data() + exp_text.size(), decimal_exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) fail();
  }

  {
    // Anything representable as a normal double parses exactly.
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ptr != text.data() + text.size()) fail();
    if (ec == std::errc() && (std::isnormal(value) || value == 0.0)) {
      if (value != 0.0 || std::abs(decimal_exponent) <= 290) return ExtendedReal(value);
    }
    if (ec != std::errc() && ec != std::errc::result_out_of_range) fail();
  }

  const std::string_view mant_text = text.substr(0, e_pos);
  double mant = 0.0;
  const auto [ptr, ec] = std::from_chars(
      mant_text.data(), mant_text.data() + mant_text.size(), mant);
  if (ec != std::errc() || ptr != mant_text.data() + mant_text.size()) fail();
  if (mant == 0.0) return {};

  // mant * 10^E = sign * 2^(log2|mant| + E log2 10)
  const double lg2 = std::log2(std::abs(mant)) +
                     static_cast<double>(decimal_exponent) * std::numbers::log2e /
                         std::numbers::log10e;
  const double whole = std::floor(lg2);
  if (whole < -static_cast<double>(kExponentLimit)) return {};
  if (whole > static_cast<double>(kExponentLimit)) {
    return from_parts(std::copysign(kInf, mant), 0);
  }
  return from_parts(std::copysign(std::exp2(lg2 - whole), mant),
                    static_cast<std::int64_t>(whole));
}

bool ExtendedReal::is_finite() const { return std::isfinite(mantissa_); }

double ExtendedReal::to_double() const {
  if (is_zero() || !is_finite()) return mantissa_;
  const std::int64_t e = std::clamp<std::int64_t>(exponent_, -2000, 2000);
  return std::ldexp(mantissa_, static_cast<int>(e));
}

double ExtendedReal::log() const {
  if (mantissa_ <= 0.0) {
    return mantissa_ == 0.0 ? -kInf : std::numeric_limits<double>::quiet_NaN();
  }
  return std::log(mantissa_) +
         static_cast<double>(exponent_) * std::numbers::ln2;
}

std::string ExtendedReal::to_string(int digits) const {
  digits = std::clamp(digits, 1, 17);
  char buf[64];
  if (is_zero() || !is_finite() ||
      (exponent_ >= kMinNormalExponent && exponent_ <= kMaxNormalExponent)) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, to_double());
    return buf;
  }
  // Outside binary64: print through the decimal logarithm.
  const double lg = std::log10(std::abs(mantissa_)) +
                    static_cast<double>(exponent_) * std::log10(2.0);
  double decade = std::floor(lg);
  double lead = std::pow(10.0, lg - decade);
  if (lead >= 10.0) {
    lead /= 10.0;
    decade += 1.0;
  }
  std::snprintf(buf, sizeof buf, "%s%.*fe%lld", mantissa_ < 0 ? "-" : "",
                digits - 1, lead, static_cast<long long>(decade));
  return buf;
}

std::string ExtendedReal::to_exact_string() const {
  if (is_zero() || !is_finite() ||
      (exponent_ >= kMinNormalExponent && exponent_ <= kMaxNormalExponent)) {
    return to_string(17);
  }
  // 2 * mantissa lies in [1, 2), so %a prints it with a zero exponent.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", 2.0 * mantissa_);
  std::string out(buf);
  out.resize(out.find('p'));
  return out + "p" + std::to_string(exponent_ - 1);
}

ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
  return ExtendedReal::from_parts(a.mantissa_ * b.mantissa_,
                                  a.exponent_ + b.exponent_);
}

ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b) {
  return ExtendedReal::from_parts(a.mantissa_ / b.mantissa_,
                                  a.exponent_ - b.exponent_);
}

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  if (!a.is_finite() || !b.is_finite()) {
    return ExtendedReal::from_parts(a.mantissa_ + b.mantissa_, 0);
  }
  const ExtendedReal& big = a.exponent_ >= b.exponent_ ? a : b;
  const ExtendedReal& small = a.exponent_ >= b.exponent_ ? b : a;
  const std::int64_t gap = big.exponent_ - small.exponent_;
  if (gap > 64) return big;
  return ExtendedReal::from_parts(
      big.mantissa_ + std::ldexp(small.mantissa_, -static_cast<int>(gap)),
      big.exponent_);
}

ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) {
  return a + (-b);
}

std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
  if (std::isnan(a.mantissa_) || std::isnan(b.mantissa_)) {
    return std::partial_ordering::unordered;
  }
  const double diff = (a - b).mantissa_;
  if (diff < 0.0) return std::partial_ordering::less;
  if (diff > 0.0) return std::partial_ordering::greater;
  // inf - inf is NaN; treat same-signed infinities as equal.
  if (std::isnan(diff)) {
    return a.mantissa_ == b.mantissa_ ? std::partial_ordering::equivalent
                                      : std::partial_ordering::unordered;
  }
  return std::partial_ordering::equivalent;
}

bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
  return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
}

ExtendedReal abs(const ExtendedReal& x) { return x.sign() < 0 ? -x : x; }

ExtendedReal pow(const ExtendedReal& base, unsigned n) {
  ExtendedReal result(1.0);
  ExtendedReal factor = base;
  while (n > 0) {
    if (n & 1u) result *= factor;
    n >>= 1u;
    if (n > 0) factor *= factor;
  }
  return result;
}

ExtendedReal root(const ExtendedReal& x, unsigned n) {
  if (n == 0) throw std::invalid_argument("root: n must be positive");
  if (x.sign() < 0) throw std::domain_error("root: negative argument");
  if (x.is_zero() || n == 1) return x;
  // Split the exponent so the binary64 logarithm stays small.
  const std::int64_t e = x.exponent();
  const std::int64_t whole = (e >= 0 ? e : e - static_cast<std::int64_t>(n) + 1) /
                             static_cast<std::int64_t>(n);
  const std::int64_t rest = e - whole * static_cast<std::int64_t>(n);
  const double reduced = std::ldexp(x.mantissa(), static_cast<int>(rest));
  return ExtendedReal::from_parts(std::pow(reduced, 1.0 / n), whole);
}

double relative_difference(const ExtendedReal& a, const ExtendedReal& b) {
  const ExtendedReal scale = std::max(abs(a), abs(b), [](const auto& x, const auto& y) {
    return x < y;
  });
  if (scale.is_zero()) return 0.0;
  return (abs(a - b) / scale).to_double();
}

}  // namespace barypoly
