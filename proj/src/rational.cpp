#include "ucvrp/rational.hpp"

#include <charconv>
#include <limits>

namespace ucvrp {

namespace {

wide_int gcd128(wide_int a, wide_int b) {
  if (a < 0) {
    a = -a;
  }
  if (b < 0) {
    b = -b;
  }
  while (b != 0) {
    const wide_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t parse_int(std::string_view s, const std::string& original) {
  std::int64_t value = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (first != last && *first == '+') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("not a rational number: '" + original + "'");
  }
  return value;
}

} // namespace

Rational Rational::from_wide(wide_int num, wide_int den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const wide_int g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) {
    throw std::overflow_error("rational overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(const std::string& text) {
  const std::string_view s(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(s.substr(0, slash), text),
                    parse_int(s.substr(slash + 1), text));
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if (frac_part.size() > 15) {
      throw std::invalid_argument("too many decimal digits: '" + text + "'");
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) {
      den *= 10;
    }
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const std::int64_t whole =
        int_part.empty() || int_part == "-" || int_part == "+"
            ? 0
            : parse_int(int_part, text);
    const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
    if (frac < 0) {
      throw std::invalid_argument("not a rational number: '" + text + "'");
    }
    const std::int64_t magnitude = (whole < 0 ? -whole : whole) * den + frac;
    return Rational(negative ? -magnitude : magnitude, den);
  }
  return Rational(parse_int(s, text));
}

} // namespace ucvrp
