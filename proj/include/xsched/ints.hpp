#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "xsched/errors.hpp"

namespace xsched {

/// 128-bit signed integer with overflow-checked arithmetic.
///
/// Loads, targets and ILP state must never overflow silently; every operation
/// that could wrap throws ArithmeticOverflowError instead. Values up to
/// |v| < 2^127 are representable, which covers all sums and cross-multiplied
/// comparisons arising from 64-bit instance data.
class Int {
 public:
  constexpr Int() : v_(0) {}
  constexpr Int(long long v) : v_(v) {}   // NOLINT: implicit by design
  constexpr Int(int v) : v_(v) {}         // NOLINT: implicit by design
  constexpr Int(unsigned long long v) : v_(static_cast<__int128>(v)) {}
  constexpr Int(std::size_t v) : v_(static_cast<__int128>(v)) {}

  static constexpr Int raw(__int128 v) {
    Int r;
    r.v_ = v;
    return r;
  }
  constexpr __int128 value() const { return v_; }

  friend Int operator+(Int a, Int b) {
    __int128 r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflowError("integer addition overflow");
    return raw(r);
  }
  friend Int operator-(Int a, Int b) {
    __int128 r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflowError("integer subtraction overflow");
    return raw(r);
  }
  friend Int operator*(Int a, Int b) {
    __int128 r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflowError("integer multiplication overflow");
    return raw(r);
  }
  /// Truncating division, as in C.
  friend Int operator/(Int a, Int b) {
    if (b.v_ == 0) throw ArithmeticOverflowError("integer division by zero");
    if (a.v_ == min_raw() && b.v_ == -1) throw ArithmeticOverflowError("integer division overflow");
    return raw(a.v_ / b.v_);
  }
  friend Int operator%(Int a, Int b) {
    if (b.v_ == 0) throw ArithmeticOverflowError("integer modulo by zero");
    if (a.v_ == min_raw() && b.v_ == -1) return raw(0);
    return raw(a.v_ % b.v_);
  }
  friend Int operator-(Int a) {
    if (a.v_ == min_raw()) throw ArithmeticOverflowError("integer negation overflow");
    return raw(-a.v_);
  }

  Int& operator+=(Int o) { return *this = *this + o; }
  Int& operator-=(Int o) { return *this = *this - o; }
  Int& operator*=(Int o) { return *this = *this * o; }
  Int& operator/=(Int o) { return *this = *this / o; }
  Int& operator%=(Int o) { return *this = *this % o; }
  Int& operator++() { return *this += 1; }
  Int& operator--() { return *this -= 1; }

  friend bool operator==(Int a, Int b) { return a.v_ == b.v_; }
  friend bool operator!=(Int a, Int b) { return a.v_ != b.v_; }
  friend bool operator<(Int a, Int b) { return a.v_ < b.v_; }
  friend bool operator<=(Int a, Int b) { return a.v_ <= b.v_; }
  friend bool operator>(Int a, Int b) { return a.v_ > b.v_; }
  friend bool operator>=(Int a, Int b) { return a.v_ >= b.v_; }

  /// Floor division; differs from operator/ on negative operands.
  friend Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b).v_ != 0 && ((a.v_ < 0) != (b.v_ < 0))) q -= 1;
    return q;
  }
  /// Nonnegative residue in [0, |b|).
  friend Int floor_mod(Int a, Int b) { return a - floor_div(a, b) * b; }

  friend Int abs(Int a) { return a.v_ < 0 ? -a : a; }
  friend Int min(Int a, Int b) { return a < b ? a : b; }
  friend Int max(Int a, Int b) { return a < b ? b : a; }

  friend Int gcd(Int a, Int b) {
    a = abs(a);
    b = abs(b);
    while (b.v_ != 0) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  bool fits_int64() const {
    return v_ >= std::numeric_limits<long long>::min() && v_ <= std::numeric_limits<long long>::max();
  }
  long long to_int64() const {
    if (!fits_int64()) throw ArithmeticOverflowError("value does not fit in 64 bits: " + str());
    return static_cast<long long>(v_);
  }
  std::size_t to_size() const {
    if (v_ < 0 || v_ > static_cast<__int128>(std::numeric_limits<std::size_t>::max() / 2))
      throw ArithmeticOverflowError("value is not a valid size: " + str());
    return static_cast<std::size_t>(v_);
  }

  std::string str() const {
    if (v_ == 0) return "0";
    unsigned __int128 u = v_ < 0 ? -static_cast<unsigned __int128>(v_) : static_cast<unsigned __int128>(v_);
    char buf[48];
    int pos = 48;
    while (u > 0) {
      buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
      u /= 10;
    }
    std::string s(buf + pos, buf + 48);
    return v_ < 0 ? "-" + s : s;
  }

  /// Parses an optionally signed decimal string. Rejects anything else,
  /// including out-of-range values.
  static std::optional<Int> parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) return std::nullopt;
    unsigned __int128 u = 0;
    constexpr unsigned __int128 limit = static_cast<unsigned __int128>(1) << 127;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      int digit = s[i] - '0';
      if (u > (limit - digit) / 10) return std::nullopt;
      u = u * 10 + digit;
    }
    if (neg) {
      if (u > limit) return std::nullopt;
      if (u == 0) return raw(0);
      return raw(-static_cast<__int128>(u - 1) - 1);
    }
    if (u >= limit) return std::nullopt;
    return raw(static_cast<__int128>(u));
  }

 private:
  static constexpr __int128 min_raw() { return static_cast<__int128>(1) << 127; }
  __int128 v_;
};

inline std::size_t hash_value(Int v) {
  auto mix = [](std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
  };
  auto u = static_cast<unsigned __int128>(v.value());
  std::uint64_t lo = static_cast<std::uint64_t>(u);
  std::uint64_t hi = static_cast<std::uint64_t>(u >> 64);
  return static_cast<std::size_t>(mix(lo) ^ (mix(hi) * 0x9e3779b97f4a7c15ULL));
}

}  // namespace xsched

template <>
struct std::hash<xsched::Int> {
  std::size_t operator()(xsched::Int v) const noexcept { return xsched::hash_value(v); }
};
