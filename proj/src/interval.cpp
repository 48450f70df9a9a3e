#include "pisot/interval.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace pisot {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  assert(lo <= hi);
}

Rational Interval::mid() const {
  Rational m = (lo + hi) / 2;
  m.canonicalize();
  return m;
}

BigInt floor_of(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

static BigInt ceil_of(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational floor_dyadic(const Rational& x, long bits) {
  BigInt scaled_num = x.get_num() << bits;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den_mpz_t());
  Rational r(q, BigInt(1) << bits);
  r.canonicalize();
  return r;
}

Rational ceil_dyadic(const Rational& x, long bits) {
  BigInt scaled_num = x.get_num() << bits;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den_mpz_t());
  Rational r(q, BigInt(1) << bits);
  r.canonicalize();
  return r;
}

Interval Interval::round_outward(long bits) const {
  return Interval(floor_dyadic(lo, bits), ceil_dyadic(hi, bits));
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(Rational(a.lo + b.lo), Rational(a.hi + b.hi));
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(Rational(a.lo - b.hi), Rational(a.hi - b.lo));
}

Interval operator-(const Interval& a) { return Interval(Rational(-a.hi), Rational(-a.lo)); }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rational lo = std::min({p1, p2, p3, p4});
  Rational hi = std::max({p1, p2, p3, p4});
  return Interval(std::move(lo), std::move(hi));
}

Interval operator*(const Interval& a, const Rational& s) {
  if (sgn(s) >= 0) return Interval(Rational(a.lo * s), Rational(a.hi * s));
  return Interval(Rational(a.hi * s), Rational(a.lo * s));
}

Interval square(const Interval& a) {
  Rational l2 = a.lo * a.lo, h2 = a.hi * a.hi;
  if (a.contains_zero()) return Interval(Rational(0), std::max(l2, h2));
  return Interval(std::min(l2, h2), std::max(l2, h2));
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Interval sqrt_outward(const Interval& a, long bits) {
  // floor(sqrt(floor(x 4^b))) / 2^b <= sqrt(x) <= ceil(sqrt(ceil(x 4^b))) / 2^b
  Rational lo_in = sgn(a.lo) > 0 ? a.lo : Rational(0);
  Rational hi_in = sgn(a.hi) > 0 ? a.hi : Rational(0);
  BigInt lo_scaled = floor_of(lo_in * Rational(BigInt(1) << (2 * bits)));
  BigInt hi_scaled = ceil_of(hi_in * Rational(BigInt(1) << (2 * bits)));
  BigInt lo_root, hi_root;
  mpz_sqrt(lo_root.get_mpz_t(), lo_scaled.get_mpz_t());
  mpz_sqrt(hi_root.get_mpz_t(), hi_scaled.get_mpz_t());
  if (hi_root * hi_root < hi_scaled) hi_root += 1;
  Rational lo(lo_root, BigInt(1) << bits), hi(hi_root, BigInt(1) << bits);
  lo.canonicalize();
  hi.canonicalize();
  return Interval(std::move(lo), std::move(hi));
}

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re + b.re, a.im + b.im}; }

ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re - b.re, a.im - b.im}; }

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

std::string to_decimal(const Rational& x, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt v = floor_of(x * Rational(scale));
  bool neg = sgn(v) < 0;
  if (neg) v = -v;
  std::string s = v.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), 1, '.');
  }
  return neg ? "-" + s : s;
}

}  // namespace pisot
