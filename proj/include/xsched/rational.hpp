#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "xsched/ints.hpp"

namespace xsched {

/// Exact rational number, always stored in lowest terms with positive denominator.
/// The solver path never touches floating point; all comparisons cross-multiply
/// with checked 128-bit arithmetic.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(Int num) : num_(num), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num) : num_(num), den_(1) {}  // NOLINT: implicit by design
  Rational(Int num, Int den) : num_(num), den_(den) { reduce(); }

  Int num() const { return num_; }
  Int den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ArithmeticOverflowError("rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <= b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  /// floor(s * this), exact.
  Int floor_scaled(Int s) const { return floor_div(s * num_, den_); }

  bool is_integer() const { return den_ == Int(1); }

  /// Serialized as "numerator/denominator", lowest terms, e.g. "2/1".
  std::string str() const { return num_.str() + "/" + den_.str(); }

  /// Accepts "n/d" or a bare integer "n".
  static std::optional<Rational> parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
      auto n = Int::parse(s);
      if (!n) return std::nullopt;
      return Rational(*n);
    }
    auto n = Int::parse(s.substr(0, slash));
    auto d = Int::parse(s.substr(slash + 1));
    if (!n || !d || *d == Int(0)) return std::nullopt;
    return Rational(*n, *d);
  }

 private:
  void reduce() {
    if (den_ == Int(0)) throw ArithmeticOverflowError("rational with zero denominator");
    if (den_ < Int(0)) {
      num_ = -num_;
      den_ = -den_;
    }
    Int g = gcd(num_, den_);
    if (g > Int(1)) {
      num_ /= g;
      den_ /= g;
    }
  }

  Int num_;
  Int den_;
};

}  // namespace xsched
