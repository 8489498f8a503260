#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "prob/errors.hpp"

namespace prob {

using BigInt = boost::multiprecision::cpp_int;

// The sole scalar type of the engine: an exact rational with arbitrary
// precision integer parts. Always stored reduced with positive denominator,
// so equality, ordering and hashing are structural.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // NOLINT: implicit by design
  explicit Rational(const BigInt& n) : v_(n) {}

  Rational(const BigInt& num, const BigInt& den) {
    require(den != 0, errc::division_by_zero, "rational with zero denominator");
    if (den < 0)
      v_ = Impl(-num, -den);
    else
      v_ = Impl(num, den);
  }

  Rational(long long num, long long den)
      : Rational(BigInt(num), BigInt(den)) {}

  // Accepts "p", "-p", "p/q" with optional sign on p; nothing else.
  static Rational parse(std::string_view text) {
    auto bad = [&] {
      fail(errc::bad_rational, "cannot parse rational '" + std::string(text) + "'");
    };
    std::size_t slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    if (!is_integer_text(num_part)) bad();
    if (num_part[0] == '+') num_part.remove_prefix(1);  // cpp_int rejects '+'
    if (slash == std::string_view::npos)
      return Rational(BigInt(std::string(num_part)));
    std::string_view den_part = text.substr(slash + 1);
    if (den_part.empty() || den_part[0] == '-' || den_part[0] == '+' ||
        !is_integer_text(den_part))
      bad();
    BigInt den{std::string(den_part)};
    if (den == 0) fail(errc::bad_rational, "zero denominator in '" + std::string(text) + "'");
    return Rational(BigInt(std::string(num_part)), den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  Rational operator-() const { return Rational(Impl(-v_)); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(Impl(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(Impl(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(Impl(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    require(!b.is_zero(), errc::division_by_zero, "division by zero");
    return Rational(Impl(a.v_ / b.v_));
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    require(!o.is_zero(), errc::division_by_zero, "division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend Rational abs(const Rational& a) { return a < 0 ? -a : a; }

  // "p" for integers, "p/q" otherwise; never decimal.
  std::string str() const { return v_.str(); }

  std::size_t hash() const {
    return std::hash<boost::multiprecision::cpp_rational>{}(v_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  using Impl = boost::multiprecision::cpp_rational;
  explicit Rational(Impl v) : v_(std::move(v)) {}

  static bool is_integer_text(std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  }

  Impl v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace prob

template <>
struct std::hash<prob::Rational> {
  std::size_t operator()(const prob::Rational& r) const { return r.hash(); }
};
