#include <doctest.h>

#include "pisot/error.hpp"
#include "pisot/expansion.hpp"

#include <mpfr.h>

#include <cmath>
#include <random>
#include <set>

using namespace pisot;

namespace {

PisotNumber base_of(const char* text) {
  return verify_pisot(PisotCandidate::from_polynomial(parse_polynomial(text)), Rational(1, 1000000000));
}

FieldElement fe(std::initializer_list<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return FieldElement(std::move(v));
}

// Floating-point greedy at 1024 bits, independent of the exact machinery.
// Digits after the remainder drops below 2^-900 are not produced.
class MpfrGreedy {
public:
  explicit MpfrGreedy(const IntPoly& p) {
    mpfr_inits2(kBits, beta_, x_, t_, static_cast<mpfr_ptr>(nullptr));
    // Newton from a point above the dominant root
    mpfr_set_d(beta_, 3.0 + std::abs(p.coef[0].get_d()), MPFR_RNDN);
    mpfr_t f, df;
    mpfr_inits2(kBits, f, df, static_cast<mpfr_ptr>(nullptr));
    for (int it = 0; it < 400; ++it) {
      mpfr_set_zero(f, 1);
      mpfr_set_zero(df, 1);
      for (int k = p.degree(); k >= 0; --k) {
        mpfr_mul(df, df, beta_, MPFR_RNDN);
        mpfr_add(df, df, f, MPFR_RNDN);
        mpfr_mul(f, f, beta_, MPFR_RNDN);
        mpfr_add_si(f, f, p.coef[static_cast<std::size_t>(k)].get_si(), MPFR_RNDN);
      }
      mpfr_div(f, f, df, MPFR_RNDN);
      mpfr_sub(beta_, beta_, f, MPFR_RNDN);
    }
    mpfr_clears(f, df, static_cast<mpfr_ptr>(nullptr));
  }
  ~MpfrGreedy() { mpfr_clears(beta_, x_, t_, static_cast<mpfr_ptr>(nullptr)); }

  // Returns (int digits, frac digits)
  std::pair<Word, Word> expand(long n) {
    mpfr_set_si(x_, n, MPFR_RNDN);
    // L with beta^L <= n < beta^{L+1}
    int L = 0;
    mpfr_set_si(t_, 1, MPFR_RNDN);
    for (;;) {
      mpfr_mul(t_, t_, beta_, MPFR_RNDN);
      if (mpfr_cmp(t_, x_) > 0) break;
      ++L;
    }
    mpfr_div(x_, x_, t_, MPFR_RNDN);  // z = n / beta^{L+1}
    Word ip, fp;
    for (int k = 0; k < L + 1 + 400; ++k) {
      if (k > L && mpfr_cmp_d(x_, 0x1p-900) < 0) break;
      mpfr_mul(x_, x_, beta_, MPFR_RNDN);
      // values landing within rounding error of an integer are that integer
      mpfr_add_d(t_, x_, 0x1p-900, MPFR_RNDN);
      mpfr_floor(t_, t_);
      long digit = mpfr_get_si(t_, MPFR_RNDN);
      mpfr_sub(x_, x_, t_, MPFR_RNDN);
      if (mpfr_sgn(x_) < 0) mpfr_set_zero(x_, 1);
      (k <= L ? ip : fp).push_back(static_cast<Digit>(digit));
    }
    return {ip, fp};
  }

private:
  static constexpr mpfr_prec_t kBits = 1024;
  mpfr_t beta_, x_, t_;
};

// sum eps_i beta^{i+R}, evaluated exactly
FieldElement reconstruct(const BetaExpansion& e, const PisotNumber& base) {
  FieldElement acc = FieldElement::zero(base.degree());
  for (Digit dgt : e.word()) {
    acc = times_beta(acc, base);
    acc.coords[0] += dgt;
  }
  return acc;
}

FieldElement n_beta_r(const BigInt& n, int R, const PisotNumber& base) {
  FieldElement target = FieldElement::integer(n, base.degree());
  for (int i = 0; i < R; ++i) target = times_beta(target, base);
  return target;
}

}  // namespace

TEST_CASE("expand_integer examples") {
  PisotNumber phi = base_of("x^2-x-1");
  BetaExpansion e2 = expand_integer(2, phi);
  CHECK(expansion_text(e2, 2) == "10.01");
  CHECK(e2.L == 1);
  CHECK(e2.R == 2);
  CHECK(e2.finite);
  BetaExpansion e3 = expand_integer(3, phi);
  CHECK(expansion_text(e3, 2) == "100.01");
  CHECK((e3.L == 2 && e3.R == 2));
  BetaExpansion e5 = expand_integer(5, phi);
  CHECK(expansion_text(e5, 2) == "1000.1001");
  CHECK((e5.L == 3 && e5.R == 4));
  CHECK(expansion_text(expand_integer(1, phi), 2) == "1");

  PisotNumber two = base_of("x-2");
  BetaExpansion e13 = expand_integer(13, two);
  CHECK(expansion_text(e13, 2) == "1101");
  CHECK(e13.R == 0);
  CHECK(e13.L == 3);

  PisotNumber ten = base_of("x-10");
  CHECK(expansion_text(expand_integer(90210, ten), 10) == "90210");
  CHECK_THROWS_AS(expand_integer(0, phi), Error);
}

TEST_CASE("expansions match a high-precision floating greedy") {
  for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^2-2x-1", "x^3-2x^2-x-1", "x^4-x^3-x^2-x-1"}) {
    CAPTURE(std::string(text));
    PisotNumber base = base_of(text);
    Expander ex(base);
    MpfrGreedy oracle(base.candidate().polynomial());
    for (long n = 1; n <= 400; ++n) {
      CAPTURE(n);
      BetaExpansion e = ex.expand(n);
      auto [ip, fp] = oracle.expand(n);
      CHECK(e.digits_int == ip);
      CHECK(e.digits_frac == fp);
    }
  }
}

TEST_CASE("reconstruction and greedy invariants") {
  std::mt19937_64 rng(3);
  for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^2-2x-1"}) {
    CAPTURE(std::string(text));
    PisotNumber base = base_of(text);
    Expander ex(base);
    std::uniform_int_distribution<long> pick(1, 1000000000000L);
    for (int i = 0; i < 300; ++i) {
      BigInt n = pick(rng);
      BetaExpansion e = ex.expand(n);
      CHECK(reconstruct(e, base) == n_beta_r(n, e.R, base));
      CHECK(e.digits_int.front() >= 1);
      CHECK(static_cast<int>(e.digits_int.size()) == e.L + 1);
      CHECK(static_cast<int>(e.digits_frac.size()) == e.R);
      for (Digit dgt : e.word()) CHECK(dgt < base.alphabet_size());
      // L = floor(log n / log beta) away from exact powers
      double ratio = std::log(n.get_d()) / std::log(base.beta_double());
      if (std::abs(ratio - std::round(ratio)) > 1e-9) CHECK(e.L == static_cast<int>(std::floor(ratio)));
    }
  }
}

TEST_CASE("big-integer path agrees with the int64 kernel") {
  PisotNumber phi = base_of("x^2-x-1");
  Expander ex(phi);
  BigInt huge("123456789012345678901234567890123");
  BetaExpansion e = ex.expand(huge);
  CHECK(reconstruct(e, phi) == n_beta_r(huge, e.R, phi));
  CHECK(e.R % 2 == 0);
  CHECK((e.R == e.L || e.R == e.L + 1));
  // same n through both paths: 2^61 + 1 fits int64 but the orbit overflows
  BigInt mid = (BigInt(1) << 61) + 1;
  BetaExpansion m = ex.expand(mid);
  CHECK(reconstruct(m, phi) == n_beta_r(mid, m.R, phi));
}

TEST_CASE("lengths and tail orbit agree with expand") {
  PisotNumber trib = base_of("x^3-x^2-x-1");
  Expander ex(trib);
  for (long n = 1; n < 300; n += 7) {
    BetaExpansion e = ex.expand(n);
    auto [L, R] = ex.lengths(n);
    CHECK(L == e.L);
    CHECK(R == e.R);
    auto orbit = ex.tail_orbit(n);
    CHECK(static_cast<int>(orbit.size()) == e.R + 1);
    CHECK(orbit.back().is_zero());
    for (std::size_t k = 0; k + 1 < orbit.size(); ++k) {
      auto [digit, next] = t_beta_step(orbit[k], trib);
      CHECK(digit == e.digits_frac[k]);
      CHECK(next == orbit[k + 1]);
    }
  }
}

TEST_CASE("t_beta_step examples") {
  PisotNumber phi = base_of("x^2-x-1");
  auto [d0, r0] = t_beta_step(fe({0, 0}), phi);
  CHECK(d0 == 0);
  CHECK(r0.is_zero());
  auto [d1, r1] = t_beta_step(fe({2, -1}), phi);
  CHECK(d1 == 0);
  CHECK(r1 == fe({-1, 1}));
  auto [d2, r2] = t_beta_step(fe({-1, 1}), phi);
  CHECK(d2 == 1);
  CHECK(r2.is_zero());
  CHECK_THROWS_AS(t_beta_step(fe({1, 0}), phi), Error);
  CHECK_THROWS_AS(t_beta_step(fe({1, -1}), phi), Error);
}

TEST_CASE("expansion_of_one") {
  auto one = expansion_of_one(base_of("x^2-x-1"));
  CHECK(one.is_simple);
  CHECK(one.greedy_prefix == Word{1, 1});
  CHECK(one.quasi_preperiod.empty());
  CHECK(one.quasi_period == Word{1, 0});

  auto trib = expansion_of_one(base_of("x^3-x^2-x-1"));
  CHECK(trib.is_simple);
  CHECK(trib.greedy_prefix == Word{1, 1, 1});
  CHECK(trib.quasi_period == Word{1, 1, 0});

  auto two = expansion_of_one(base_of("x-2"));
  CHECK(two.greedy_prefix == Word{2});
  CHECK(two.quasi_period == Word{1});
  CHECK(two.quasi_preperiod.empty());

  // beta = phi^2: d(1) = 2 1^omega is not finite
  auto sq = expansion_of_one(base_of("x^2-3x+1"));
  CHECK_FALSE(sq.is_simple);
  CHECK(sq.greedy_prefix == Word{2});
  CHECK(sq.greedy_period == Word{1});
  CHECK(sq.quasi_preperiod == Word{2});
  CHECK(sq.quasi_period == Word{1});

  auto silver = expansion_of_one(base_of("x^2-2x-1"));
  CHECK(silver.greedy_prefix == Word{2, 1});
  CHECK(silver.quasi_period == Word{2, 0});

  // d*(1) dominates all of its shifts
  for (const auto& e : {one, trib, two, sq, silver}) {
    std::size_t span = e.quasi_preperiod.size() + 2 * e.quasi_period.size() + 4;
    for (std::size_t s = 1; s < span; ++s) {
      int cmp = 0;
      for (std::size_t i = 0; i < 64 && cmp == 0; ++i) cmp = int(e.quasi_at(s + i)) - int(e.quasi_at(i));
      CHECK(cmp <= 0);
    }
  }
}

TEST_CASE("non-finite expansions and budgets") {
  PisotNumber sq = base_of("x^2-3x+1");
  CHECK_FALSE(finiteness_fast_accept(sq));
  CHECK_FALSE(first_non_finite(sq, 300).has_value());

  PisotNumber b4 = base_of("x^4-x^3-1");
  CHECK_FALSE(finiteness_fast_accept(b4));
  auto bad = first_non_finite(b4, 100);
  REQUIRE(bad.has_value());
  CHECK(*bad == 2);
  try {
    expand_integer(2, b4);
    FAIL("expected a non-finite expansion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteExpansion);
  }
  // the floating greedy never terminates either
  MpfrGreedy oracle(b4.candidate().polynomial());
  CHECK(oracle.expand(2).second.size() == 400);

  PisotNumber phi = base_of("x^2-x-1");
  CHECK(finiteness_fast_accept(phi));
  CHECK(finiteness_fast_accept(base_of("x^3-x^2-x-1")));
  CHECK(finiteness_fast_accept(base_of("x^2-2x-1")));
  CHECK_FALSE(first_non_finite(phi, 2000).has_value());
  try {
    expand_integer(1000000, phi, 10);
    FAIL("expected a step budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepBudgetExceeded);
  }
}

TEST_CASE("enumerate_Y for the golden ratio matches brute force") {
  PisotNumber phi = base_of("x^2-x-1");
  YSet y = enumerate_Y(phi);
  std::set<std::vector<BigInt>> got;
  for (const auto& e : y.elements) got.insert(e.coords);
  CHECK(got.count(fe({0, 0}).coords));
  CHECK(got.count(fe({2, -1}).coords));
  CHECK(got.count(fe({-1, 1}).coords));

  const long double g = (1 + std::sqrt(5.0L)) / 2, conj = 1 - g, bound = 1 + 1 / (1 - (g - 1));
  std::set<std::vector<BigInt>> expected;
  for (long a0 = -40; a0 <= 40; ++a0)
    for (long a1 = -40; a1 <= 40; ++a1) {
      long double v = a0 + a1 * g, c = std::abs(a0 + a1 * conj);
      if (v >= 0 && v < 1 && c < bound) expected.insert(fe({a0, a1}).coords);
    }
  CHECK(got == expected);
  CHECK(y.non_finite == 0);
  CHECK(y.boundary_ties == 0);
  CHECK(y.max_tail > 0);
  CHECK_THROWS_AS(enumerate_Y(base_of("x-3")), Error);
}

TEST_CASE("enumerate_Y for Tribonacci") {
  PisotNumber trib = base_of("x^3-x^2-x-1");
  YSet y = enumerate_Y(trib);
  CHECK(y.elements.size() > 3);
  CHECK(y.non_finite == 0);
  CHECK(y.elements.front().is_zero());
  // the tail orbit of every integer lands in Y after k* steps
  Expander ex(trib);
  for (long n : {5L, 100L, 12345L}) {
    auto cert = orbit_certificate(n, ex, &y);
    CHECK(cert.verified);
    CHECK(cert.R <= cert.max_tail + cert.k_star - cert.L);
  }
}

TEST_CASE("orbit certificates") {
  PisotNumber phi = base_of("x^2-x-1");
  auto c5 = orbit_certificate(5, phi);
  REQUIRE(c5.y_bounds.size() == 1);
  CHECK(c5.y_bounds[0] == doctest::Approx(1 + 1 / (1 - 0.6180339887498949)));
  CHECK(c5.verified);
  CHECK(c5.L == 3);
  CHECK(c5.R == 4);

  auto c2 = orbit_certificate(13, base_of("x-2"));
  CHECK(c2.vacuous);
  CHECK(c2.max_tail == 0);
  CHECK(c2.y_bounds.empty());

  PisotNumber trib = base_of("x^3-x^2-x-1");
  auto c100 = orbit_certificate(100, trib);
  REQUIRE(c100.y_bounds.size() == 2);
  CHECK(c100.y_bounds[0] == doctest::Approx(1 + 1 / (1 - 0.7373527)).epsilon(1e-6));
  CHECK(c100.verified);
}
