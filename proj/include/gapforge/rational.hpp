#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "gapforge/error.hpp"

namespace gapforge {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (den > 0, gcd(num, den) = 1). Intermediate products use 128-bit arithmetic;
/// results that do not fit throw Overflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) { assign(num, den); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) fail(ErrorKind::DivisionByZero, "rational division by zero");
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::int64_t floor() const noexcept {
    std::int64_t f = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --f;
    return f;
  }
  std::int64_t ceil() const noexcept {
    std::int64_t c = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++c;
    return c;
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Accepts "a/b", "a" or a finite decimal such as "0.25"; conversion is exact.
  static Rational parse(std::string_view text) {
    auto bad = [&] { fail(ErrorKind::InvalidArgument, "not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    auto parse_int = [&](std::string_view s) -> std::int64_t {
      if (s.empty()) bad();
      bool neg = false;
      std::size_t i = 0;
      if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
      }
      if (i == s.size()) bad();
      __int128 v = 0;
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') bad();
        v = v * 10 + (s[i] - '0');
        if (v > INT64_MAX) fail(ErrorKind::Overflow, "rational literal too large");
      }
      return static_cast<std::int64_t>(neg ? -v : v);
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string digits(text.substr(0, dot));
      std::string_view frac = text.substr(dot + 1);
      if (frac.size() > 17) fail(ErrorKind::Overflow, "too many decimal digits");
      digits += frac;
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      if (digits.empty() || digits == "-" || digits == "+") bad();
      return Rational(parse_int(digits), den);
    }
    return Rational(parse_int(text));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational make(__int128 num, __int128 den) {
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX) fail(ErrorKind::Overflow, "rational out of range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) { *this = make(num, den); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace gapforge
