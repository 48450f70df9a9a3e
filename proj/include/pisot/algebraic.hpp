#pragma once

// Verified Pisot bases and exact arithmetic in Z[beta].
//
// A PisotNumber owns certified enclosures of its dominant root and all of
// its conjugates. Enclosures are produced by Newton refinement on exact
// dyadic rationals followed by a Smith-disk inclusion test, so every disk is
// proven to contain exactly one root. Higher precisions are computed on
// demand and cached; the cache is internal and thread-safe, the observable
// value is immutable.

#include "pisot/interval.hpp"
#include "pisot/polynomial.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

namespace pisot {

// Monic x^d - c_{d-1} x^{d-1} - ... - c_1 x - c_0, stored as (c_0..c_{d-1}).
struct PisotCandidate {
  std::vector<BigInt> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()); }
  IntPoly polynomial() const;

  // Throws Error(InvalidArgument) if p is not monic of degree >= 1.
  static PisotCandidate from_polynomial(const IntPoly& p);
};

// a_0 + a_1 beta + ... + a_{d-1} beta^{d-1}
struct FieldElement {
  std::vector<BigInt> coords;

  FieldElement() = default;
  explicit FieldElement(std::vector<BigInt> c) : coords(std::move(c)) {}

  static FieldElement zero(int degree) { return FieldElement(std::vector<BigInt>(static_cast<std::size_t>(degree), BigInt(0))); }
  static FieldElement integer(const BigInt& k, int degree);

  int degree() const { return static_cast<int>(coords.size()); }
  bool is_zero() const;
  // True iff the element is a rational integer (all coordinates but the
  // first vanish).
  bool is_integer() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

struct PrecisionPolicy {
  long initial_bits = 64;
  long max_bits = 4096;
};

// Certified disk |z - center| <= radius around one root.
struct RootDisk {
  Rational center_re;
  Rational center_im;
  Rational radius;

  ComplexBox box() const;
};

namespace detail {
struct PisotData;
}

class PisotNumber {
public:
  const PisotCandidate& candidate() const;
  int degree() const;
  const PrecisionPolicy& policy() const;

  // Enclosure of beta with width <= the tolerance requested at verification.
  const Interval& beta_enclosure() const;
  // Conjugates beta_2..beta_d, ordered by decreasing modulus; conjugate
  // pairs are adjacent with the positive imaginary part first.
  const std::vector<RootDisk>& conjugate_enclosures() const;

  // Refined enclosures at a given working precision. Throws
  // Error(PrecisionExhausted) if bits exceeds policy().max_bits.
  Interval beta_at(long bits) const;
  RootDisk conjugate_at(int j, long bits) const;

  // max_j 1 / log(1/|beta_j|); 0 for integer bases.
  double delta() const;
  // |beta_j| for j = 2..d, as doubles (index 0 holds beta_2).
  std::vector<double> conjugate_moduli() const;

  const BigInt& floor_beta() const;
  // ceil(beta); the digit alphabet is {0, ..., alphabet_size() - 1}.
  int alphabet_size() const;
  double beta_double() const;

  // Midpoints and rigorous error bounds for beta^i, i < d, used by the
  // floating-point fast path of sign determination.
  const std::vector<double>& power_mid() const;
  const std::vector<double>& power_err() const;

private:
  friend PisotNumber verify_pisot(const PisotCandidate&, const Rational&, const PrecisionPolicy&);
  explicit PisotNumber(std::shared_ptr<const detail::PisotData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::PisotData> data_;
};

// Throws Error with kind NotPisot, Reducible or PrecisionExhausted.
PisotNumber verify_pisot(const PisotCandidate& candidate, const Rational& tolerance,
                         const PrecisionPolicy& policy = {});

enum class ArithOp { Add, Sub, Mul };

FieldElement elem_arith(const FieldElement& a, const FieldElement& b, ArithOp op, const PisotNumber& base);
FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement multiply(const FieldElement& a, const FieldElement& b, const PisotNumber& base);
FieldElement times_beta(const FieldElement& a, const PisotNumber& base);
FieldElement beta_power(int k, const PisotNumber& base);

// Sign of the real value, decided exactly for zero and by adaptive interval
// refinement otherwise.
int certified_sign(const FieldElement& a, const PisotNumber& base);
std::strong_ordering certified_compare(const FieldElement& a, const FieldElement& b, const PisotNumber& base);
// Throws Error(NegativeValue) if the value is certified negative.
BigInt certified_floor(const FieldElement& a, const PisotNumber& base);

// Interval of width <= tolerance around the real value.
Interval real_value(const FieldElement& a, const PisotNumber& base, const Rational& tolerance);
// Enclosure of |sigma_j(a)|, 2 <= j <= d. Throws Error(BadIndex).
Interval conjugate_modulus(const FieldElement& a, int j, const PisotNumber& base, const Rational& tolerance);
// Enclosure of sigma_j(a) at the given precision.
ComplexBox conjugate_value(const FieldElement& a, int j, const PisotNumber& base, long bits);

}  // namespace pisot
