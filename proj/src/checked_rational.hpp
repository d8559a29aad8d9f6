#pragma once

// Exact rational on 64-bit numerator/denominator. Every operation is carried
// out in 128-bit intermediates and throws CheckedRational::Overflow instead of
// wrapping, so a computation that finishes is exact; callers rerun with GMP
// rationals when it does not.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <numeric>

namespace cvp::detail {

class CheckedRational {
 public:
  struct Overflow {};

  CheckedRational() = default;
  CheckedRational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  bool is_zero() const { return num_ == 0; }

  mpq_class to_mpq() const {
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  }

  friend CheckedRational operator+(const CheckedRational& x, const CheckedRational& y) {
    if (x.den_ == 1 && y.den_ == 1) return from_wide(I128(x.num_) + y.num_, 1);
    return from_wide(I128(x.num_) * y.den_ + I128(y.num_) * x.den_, I128(x.den_) * y.den_);
  }
  friend CheckedRational operator-(const CheckedRational& x, const CheckedRational& y) {
    if (x.den_ == 1 && y.den_ == 1) return from_wide(I128(x.num_) - y.num_, 1);
    return from_wide(I128(x.num_) * y.den_ - I128(y.num_) * x.den_, I128(x.den_) * y.den_);
  }
  friend CheckedRational operator*(const CheckedRational& x, const CheckedRational& y) {
    return from_wide(I128(x.num_) * y.num_, I128(x.den_) * y.den_);
  }
  friend CheckedRational operator/(const CheckedRational& x, const CheckedRational& y) {
    if (y.num_ == 0) throw Overflow{};
    return from_wide(I128(x.num_) * y.den_, I128(x.den_) * y.num_);
  }
  CheckedRational operator-() const {
    if (num_ == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    CheckedRational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  CheckedRational& operator+=(const CheckedRational& y) { return *this = *this + y; }
  CheckedRational& operator-=(const CheckedRational& y) { return *this = *this - y; }
  CheckedRational& operator*=(const CheckedRational& y) { return *this = *this * y; }
  CheckedRational& operator/=(const CheckedRational& y) { return *this = *this / y; }

  friend bool operator==(const CheckedRational& x, const CheckedRational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator<(const CheckedRational& x, const CheckedRational& y) {
    return I128(x.num_) * y.den_ < I128(y.num_) * x.den_;
  }
  friend bool operator>(const CheckedRational& x, const CheckedRational& y) { return y < x; }
  friend bool operator<=(const CheckedRational& x, const CheckedRational& y) { return !(y < x); }

 private:
  using I128 = __int128;
  using U128 = unsigned __int128;

  static U128 gcd_wide(U128 a, U128 b) {
    if ((a >> 64) == 0 && (b >> 64) == 0)
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    while (b != 0) {
      const U128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static CheckedRational from_wide(I128 n, I128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return CheckedRational(0);
    if (d != 1) {
      const U128 g = gcd_wide(static_cast<U128>(n < 0 ? -n : n), static_cast<U128>(d));
      if (g > 1) {
        n /= static_cast<I128>(g);
        d /= static_cast<I128>(g);
      }
    }
    constexpr I128 kMax = std::numeric_limits<std::int64_t>::max();
    if (n > kMax || n < -kMax || d > kMax) throw Overflow{};
    CheckedRational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline int sign_of(const CheckedRational& x) { return x.sign(); }
inline int sign_of(const mpq_class& x) { return sgn(x); }
inline mpq_class to_mpq(const CheckedRational& x) { return x.to_mpq(); }
inline mpq_class to_mpq(const mpq_class& x) { return x; }

}  // namespace cvp::detail
