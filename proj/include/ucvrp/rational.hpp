#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ucvrp {

__extension__ typedef __int128 wide_int;

// Exact rational with 64-bit numerator/denominator, always normalized
// (gcd 1, positive denominator). Intermediate products go through
// __int128 so comparisons never overflow for the magnitudes used here
// (demands and thresholds with small denominators).
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) {
      throw std::domain_error("rational with zero denominator");
    }
    normalize();
  }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Parses "p/q", an integer, or a terminating decimal such as "0.49".
  static Rational parse(const std::string& text);

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<wide_int>(a.num_) * b.den_ +
                         static_cast<wide_int>(b.num_) * a.den_,
                     static_cast<wide_int>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<wide_int>(a.num_) * b.den_ -
                         static_cast<wide_int>(b.num_) * a.den_,
                     static_cast<wide_int>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<wide_int>(a.num_) * b.num_,
                     static_cast<wide_int>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) {
      throw std::domain_error("rational division by zero");
    }
    return from_wide(static_cast<wide_int>(a.num_) * b.den_,
                     static_cast<wide_int>(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const wide_int lhs = static_cast<wide_int>(a.num_) * b.den_;
    const wide_int rhs = static_cast<wide_int>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  // Normalizes num/den computed in 128-bit; throws std::overflow_error if
  // the reduced value does not fit in 64 bits.
  static Rational from_wide(wide_int num, wide_int den);

private:

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace ucvrp
