#pragma once

// Closed intervals with exact rational endpoints. No floating point is
// involved, so every enclosure is rigorous; `round_outward` keeps the
// endpoint sizes bounded by snapping them onto a dyadic grid.

#include <gmpxx.h>

#include <string>

namespace pisot {

using BigInt = mpz_class;
using Rational = mpq_class;

struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h);
  explicit Interval(const Rational& point) : lo(point), hi(point) {}

  static Interval point(const BigInt& v) { return Interval(Rational(v)); }

  Rational width() const { return hi - lo; }
  Rational mid() const;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  bool positive() const { return sgn(lo) > 0; }
  bool negative() const { return sgn(hi) < 0; }

  // Widens the interval to endpoints that are multiples of 2^-bits.
  Interval round_outward(long bits) const;

  double mid_double() const { return mid().get_d(); }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Rational& s);

// Enclosure of [a.lo^2, a.hi^2] taking sign changes into account.
Interval square(const Interval& a);
Interval hull(const Interval& a, const Interval& b);

// Outward-rounded square root of a non-negative interval.
Interval sqrt_outward(const Interval& a, long bits);

Rational floor_dyadic(const Rational& x, long bits);
Rational ceil_dyadic(const Rational& x, long bits);
BigInt floor_of(const Rational& x);

// Axis-aligned complex box; products are rigorous enclosures.
struct ComplexBox {
  Interval re;
  Interval im;

  ComplexBox() : re(Rational(0)), im(Rational(0)) {}
  ComplexBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexBox real(const BigInt& v) { return {Interval::point(v), Interval(Rational(0))}; }

  // |z|^2 enclosure
  Interval norm2() const { return square(re) + square(im); }
  Interval modulus(long bits) const { return sqrt_outward(norm2(), bits); }
  ComplexBox round_outward(long bits) const { return {re.round_outward(bits), im.round_outward(bits)}; }
};

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);

// Decimal rendering of a rational with a fixed number of fractional digits
// (truncated toward -infinity); used for byte-stable reports.
std::string to_decimal(const Rational& x, int digits);

}  // namespace pisot
