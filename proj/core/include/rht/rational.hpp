#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rht {

/// Exact rational number over arbitrary-precision integers.
///
/// Values whose reduced numerator and denominator fit in 64 bits are kept
/// inline; anything larger is promoted to a heap-allocated GMP rational.
/// The representation is always canonical: gcd(num, den) = 1, den > 0, and
/// zero is 0/1. Small values never live in the big representation, so
/// equality can compare representations directly.
class Rational {
 public:
  Rational() noexcept : num_(0), den_(1) {}
  Rational(int64_t n) : num_(n), den_(1) {  // NOLINT(google-explicit-constructor)
    if (n == INT64_MIN) assign_wide(n, 1);
  }
  Rational(int n) : Rational(static_cast<int64_t>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(int64_t n, int64_t d);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept : num_(other.num_), den_(other.den_) {
    other.den_ = 1;
    other.num_ = 0;
  }
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept;
  ~Rational();

  /// Parses "[-]uint[/uint]".
  static Rational parse(std::string_view text);

  bool is_zero() const noexcept { return den_ == 1 && num_ == 0; }
  bool is_one() const noexcept { return den_ == 1 && num_ == 1; }
  bool is_integer() const;
  int sign() const noexcept;
  /// Bits of numerator plus bits of denominator; the pivoting cost measure.
  unsigned bit_length() const noexcept;

  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Numerator/denominator as decimal strings (exact for any size).
  std::string numerator_string() const;
  std::string denominator_string() const;

 private:
  struct Big;
  bool is_big() const noexcept { return den_ == 0; }
  Big* big() const noexcept { return reinterpret_cast<Big*>(static_cast<intptr_t>(num_)); }
  void set_big(Big* b) noexcept {
    num_ = static_cast<int64_t>(reinterpret_cast<intptr_t>(b));
    den_ = 0;
  }
  void release() noexcept;
  void assign_wide(__int128 n, __int128 d);
  void assign_big(const Big& value);

  // Small: num_/den_ with den_ > 0. Big: den_ == 0 and num_ stores a Big*.
  int64_t num_;
  int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace rht
