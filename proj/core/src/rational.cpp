#include "rht/rational.hpp"

#include <gmpxx.h>

#include <bit>
#include <ostream>
#include <stdexcept>

#include "rht/errors.hpp"

namespace rht {

struct Rational::Big {
  mpq_class value;
};

namespace {

using u128 = unsigned __int128;

u128 abs128(__int128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) { return v > INT64_MIN && v <= INT64_MAX; }

mpz_class mpz_from128(__int128 v) {
  bool neg = v < 0;
  u128 a = abs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(a >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(a)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpq_class to_mpq(int64_t n, int64_t d) {
  mpq_class q(mpz_from128(n), mpz_from128(d));
  q.canonicalize();
  return q;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) : num_(0), den_(1) {
  if (d == 0) throw Error("Rational: zero denominator");
  assign_wide(n, d);
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.is_big()) set_big(new Big{other.big()->value});
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  if (other.is_big()) {
    if (is_big()) {
      big()->value = other.big()->value;
    } else {
      set_big(new Big{other.big()->value});
    }
  } else {
    release();
    num_ = other.num_;
    den_ = other.den_;
  }
  return *this;
}

Rational& Rational::operator=(Rational&& other) noexcept {
  if (this == &other) return *this;
  release();
  num_ = other.num_;
  den_ = other.den_;
  other.num_ = 0;
  other.den_ = 1;
  return *this;
}

Rational::~Rational() { release(); }

void Rational::release() noexcept {
  if (is_big()) {
    delete big();
    num_ = 0;
    den_ = 1;
  }
}

void Rational::assign_wide(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    release();
    num_ = 0;
    den_ = 1;
    return;
  }
  u128 g = gcd128(abs128(n), u128(d));
  if (g > 1) {
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
  }
  if (fits64(n) && fits64(d)) {
    release();
    num_ = static_cast<int64_t>(n);
    den_ = static_cast<int64_t>(d);
    return;
  }
  mpq_class q(mpz_from128(n), mpz_from128(d));
  assign_big(Big{q});
}

void Rational::assign_big(const Big& value) {
  const mpq_class& q = value.value;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() &&
      q.get_num() != mpz_class(INT64_MIN)) {
    int64_t n = q.get_num().get_si();
    int64_t d = q.get_den().get_si();
    release();
    num_ = n;
    den_ = d;
    return;
  }
  if (is_big()) {
    big()->value = q;
  } else {
    set_big(new Big{q});
  }
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw Error("invalid rational literal: " + s);
  if (q.get_den() == 0) throw Error("Rational: zero denominator");
  q.canonicalize();
  Rational r;
  r.assign_big(Big{q});
  return r;
}

bool Rational::is_integer() const {
  if (!is_big()) return den_ == 1;
  return big()->value.get_den() == 1;
}

int Rational::sign() const noexcept {
  if (!is_big()) return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
  return sgn(big()->value);
}

unsigned Rational::bit_length() const noexcept {
  if (!is_big()) {
    uint64_t a = num_ < 0 ? uint64_t(0) - uint64_t(num_) : uint64_t(num_);
    return static_cast<unsigned>(std::bit_width(a) + std::bit_width(uint64_t(den_)));
  }
  const mpq_class& q = big()->value;
  return static_cast<unsigned>(mpz_sizeinbase(q.get_num_mpz_t(), 2) +
                               mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

std::string Rational::to_string() const {
  if (!is_big()) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  return big()->value.get_str(10);
}

std::string Rational::numerator_string() const {
  if (!is_big()) return std::to_string(num_);
  return big()->value.get_num().get_str(10);
}

std::string Rational::denominator_string() const {
  if (!is_big()) return std::to_string(den_);
  return big()->value.get_den().get_str(10);
}

Rational Rational::operator-() const {
  Rational r(*this);
  if (!r.is_big()) {
    r.num_ = -r.num_;  // num_ > INT64_MIN by invariant
  } else {
    r.big()->value = -r.big()->value;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!is_big() && !o.is_big()) {
    if (den_ == 1 && o.den_ == 1) {
      __int128 n = __int128(num_) + o.num_;
      if (fits64(n)) {
        num_ = static_cast<int64_t>(n);
        return *this;
      }
    }
    assign_wide(__int128(num_) * o.den_ + __int128(o.num_) * den_, __int128(den_) * o.den_);
    return *this;
  }
  mpq_class a = is_big() ? big()->value : to_mpq(num_, den_);
  const mpq_class b = o.is_big() ? o.big()->value : to_mpq(o.num_, o.den_);
  a += b;
  assign_big(Big{a});
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!is_big() && !o.is_big()) {
    if (den_ == 1 && o.den_ == 1) {
      __int128 n = __int128(num_) * o.num_;
      if (fits64(n)) {
        num_ = static_cast<int64_t>(n);
        return *this;
      }
    }
    assign_wide(__int128(num_) * o.num_, __int128(den_) * o.den_);
    return *this;
  }
  mpq_class a = is_big() ? big()->value : to_mpq(num_, den_);
  const mpq_class b = o.is_big() ? o.big()->value : to_mpq(o.num_, o.den_);
  a *= b;
  assign_big(Big{a});
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("Rational: division by zero");
  if (!is_big() && !o.is_big()) {
    assign_wide(__int128(num_) * o.den_, __int128(den_) * o.num_);
    return *this;
  }
  mpq_class a = is_big() ? big()->value : to_mpq(num_, den_);
  const mpq_class b = o.is_big() ? o.big()->value : to_mpq(o.num_, o.den_);
  a /= b;
  assign_big(Big{a});
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (a.is_big() != b.is_big()) return false;
  if (!a.is_big()) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.big()->value == b.big()->value;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.is_big() && !b.is_big()) {
    __int128 l = __int128(a.num_) * b.den_;
    __int128 r = __int128(b.num_) * a.den_;
    return l <=> r;
  }
  const mpq_class x = a.is_big() ? a.big()->value : to_mpq(a.num_, a.den_);
  const mpq_class y = b.is_big() ? b.big()->value : to_mpq(b.num_, b.den_);
  int c = cmp(x, y);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace rht
