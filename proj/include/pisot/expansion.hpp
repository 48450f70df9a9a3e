#pragma once

// Greedy beta-expansions of positive integers, the beta-transformation on
// Z[beta] cap [0,1), the expansion of 1, and the finite set Y that bounds
// the tails of integer expansions.

#include "pisot/algebraic.hpp"
#include "pisot/word.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace pisot {

struct BetaExpansion {
  BigInt n;
  Word digits_int;   // eps_L .. eps_0
  Word digits_frac;  // eps_{-1} .. eps_{-R}
  int L = 0;
  int R = 0;
  bool finite = true;

  // Integer and fractional digits in one block, radix point dropped.
  Word word() const;
  std::size_t length() const { return digits_int.size() + digits_frac.size(); }
};

// "10.01" style text; digits comma-separated for alphabets above 10.
std::string expansion_text(const BetaExpansion& e, int alphabet_size);

struct ExpansionOfOne {
  // d_beta(1) = greedy_prefix (greedy_period)^omega; the period is empty
  // when the expansion is finite.
  Word greedy_prefix;
  Word greedy_period;
  // d*_beta(1) = quasi_preperiod (quasi_period)^omega, canonical: the
  // period is primitive and the preperiod is as short as possible.
  Word quasi_preperiod;
  Word quasi_period;
  bool is_simple = false;

  // i-th symbol (0-based) of d*_beta(1).
  Digit quasi_at(std::size_t i) const;
};

struct OrbitBoundCertificate {
  BigInt n;
  int L = 0;
  int R = 0;
  // Index from which the orbit T^k(n / beta^{L+1}) is proven to stay in Y.
  long k_star = 0;
  // Smallest index from which the computed orbit actually stays in Y.
  long first_entry = 0;
  std::vector<double> y_bounds;  // per conjugate j = 2..d
  int max_tail = 0;              // W
  bool vacuous = false;          // k_star beyond the last nonzero orbit point
  bool verified = false;
};

struct YSet {
  std::vector<FieldElement> elements;  // sorted by real value
  int max_tail = 0;                    // longest finite T_beta orbit
  std::size_t non_finite = 0;          // elements whose orbit cycles
  std::size_t boundary_ties = 0;       // candidates undecided at the cap
  std::vector<BigInt> box;             // coordinate search half-widths
};

// Greedy expander bound to one base. Holds a table of beta-powers and the
// fast-path constants; immutable after construction and safe to share
// between threads.
class Expander {
public:
  explicit Expander(PisotNumber base);

  const PisotNumber& base() const { return base_; }

  // Throws NonFiniteExpansion (remainder cycle) or StepBudgetExceeded.
  BetaExpansion expand(const BigInt& n, std::size_t max_steps = 100000) const;

  // (L, R) without materialising digits; same errors as expand().
  std::pair<int, int> lengths(const BigInt& n, std::size_t max_steps = 100000) const;

  // Remainders T^k(n / beta^{L+1}) for k = L+1 .. L+1+R, i.e. the exact
  // orbit once it has entered Z[beta]. The last one is zero.
  std::vector<FieldElement> tail_orbit(const BigInt& n, std::size_t max_steps = 100000) const;

  struct Impl;  // defined in expansion.cpp

private:
  PisotNumber base_;
  std::shared_ptr<const Impl> impl_;
};

BetaExpansion expand_integer(const BigInt& n, const PisotNumber& base, std::size_t max_steps = 100000);

// One step of T_beta on r in [0,1): (floor(beta r), beta r - floor(beta r)).
// Throws Error(OutOfRange) when r is not certified to lie in [0,1).
std::pair<Digit, FieldElement> t_beta_step(const FieldElement& r, const PisotNumber& base);

ExpansionOfOne expansion_of_one(const PisotNumber& base, std::size_t max_steps = 100000);

// Sufficient condition c_{d-1} >= ... >= c_0 >= 1 for every positive
// integer to have a finite expansion.
bool finiteness_fast_accept(const PisotNumber& base);
// First n in [1, n_max] whose expansion is not finite, if any.
std::optional<BigInt> first_non_finite(const PisotNumber& base, long n_max);

// Throws Error(DegreeOne) for integer bases.
YSet enumerate_Y(const PisotNumber& base);
std::vector<double> y_bounds(const PisotNumber& base);

OrbitBoundCertificate orbit_certificate(const BigInt& n, const PisotNumber& base);
OrbitBoundCertificate orbit_certificate(const BigInt& n, const Expander& expander, const YSet* y);

}  // namespace pisot
