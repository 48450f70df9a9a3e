#pragma once

#include "pisot/interval.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pisot {

// Dense polynomial with coefficients in ascending order of degree.
template <class Coeff>
struct Poly {
  std::vector<Coeff> coef;

  Poly() = default;
  explicit Poly(std::vector<Coeff> c) : coef(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(coef.size()) - 1; }
  bool is_zero() const { return coef.empty(); }
  const Coeff& lead() const { return coef.back(); }

  void trim() {
    while (!coef.empty() && sgn(coef.back()) == 0) coef.pop_back();
  }

  friend bool operator==(const Poly&, const Poly&) = default;
};

using IntPoly = Poly<BigInt>;
using RatPoly = Poly<Rational>;

// Accepts "x^2-x-1", "3*x^2 + 2x - 1", "x" or an ascending coefficient list
// "[-1,-1,1]". Throws Error(ParseError) on malformed input.
IntPoly parse_polynomial(std::string_view text);

// Canonical text form, e.g. "x^3-x^2-x-1".
std::string to_string(const IntPoly& p);

RatPoly to_rational(const IntPoly& p);
RatPoly derivative(const RatPoly& p);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);

// Euclidean division over Q; returns (quotient, remainder).
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly gcd(RatPoly a, RatPoly b);

// True iff b divides a exactly over Z (b monic or content allowing exact quotient).
bool divides(const IntPoly& b, const IntPoly& a);

Rational eval(const RatPoly& p, const Rational& x);
BigInt eval(const IntPoly& p, const BigInt& x);
int sign_at(const IntPoly& p, const Rational& x);

// Number of distinct real roots in the half-open interval (a, b], via a
// Sturm sequence. p must be squarefree.
int sturm_count(const IntPoly& p, const Rational& a, const Rational& b);
// Roots in (a, +infinity).
int sturm_count_above(const IntPoly& p, const Rational& a);

// Upper bound on the modulus of every complex root (Cauchy bound).
Rational cauchy_root_bound(const IntPoly& p);

}  // namespace pisot
