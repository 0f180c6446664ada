#pragma once

/*
 * Exact rationals over int64_t.
 *
 * Always normalized: gcd(num, den) == 1, den > 0, zero is 0/1. Products are
 * formed in __int128 and reduced before narrowing; a result that does not
 * fit in int64_t raises std::overflow_error rather than wrapping.
 */

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <charconv>
#include <limits>

namespace majority {

class Rational {
public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  constexpr Rational(int_type n) : num_(n), den_(1) {}  // NOLINT: implicit from integers is intended
  Rational(int_type n, int_type d) { assign(n, d); }

  constexpr int_type numerator() const noexcept { return num_; }
  constexpr int_type denominator() const noexcept { return den_; }

  constexpr bool is_integer() const noexcept { return den_ == 1; }
  constexpr bool is_negative() const noexcept { return num_ < 0; }

  explicit operator double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational operator-() const { return from_wide(-wide(num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                     wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_,
                     wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const __int128 lhs = wide(a.num_) * b.den_;
    const __int128 rhs = wide(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "num/den", or just "num" for integers.
  std::string to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // Accepts "n", "n/d" with optional leading '-'. Throws std::invalid_argument.
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = parse_int(text.substr(0, slash));
    if (slash == std::string_view::npos) return Rational(num);
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

private:
  static constexpr __int128 wide(int_type v) noexcept { return static_cast<__int128>(v); }

  static __int128 abs128(__int128 v) noexcept { return v < 0 ? -v : v; }

  static __int128 gcd128(__int128 a, __int128 b) noexcept {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lo = std::numeric_limits<int_type>::min() + 1;
    constexpr __int128 hi = std::numeric_limits<int_type>::max();
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<int_type>(n);
    r.den_ = n == 0 ? 1 : static_cast<int_type>(d);
    return r;
  }

  void assign(int_type n, int_type d) { *this = from_wide(n, d); }

  static int_type parse_int(std::string_view s) {
    int_type v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last)
      throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
  }

  int_type num_ = 0;
  int_type den_ = 1;
};

}  // namespace majority
