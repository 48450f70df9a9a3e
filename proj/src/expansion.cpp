#include "pisot/expansion.hpp"

#include "pisot/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <set>

namespace pisot {

Word BetaExpansion::word() const {
  Word w = digits_int;
  w.insert(w.end(), digits_frac.begin(), digits_frac.end());
  return w;
}

std::string expansion_text(const BetaExpansion& e, int alphabet_size) {
  std::string s = word_to_text(e.digits_int, alphabet_size);
  if (!e.digits_frac.empty()) s += "." + word_to_text(e.digits_frac, alphabet_size);
  return s;
}

Digit ExpansionOfOne::quasi_at(std::size_t i) const {
  if (i < quasi_preperiod.size()) return quasi_preperiod[i];
  return quasi_period[(i - quasi_preperiod.size()) % quasi_period.size()];
}

namespace {

constexpr int kMaxFastDegree = 16;
constexpr std::int64_t kFastLimit = std::int64_t(1) << 62;

struct Overflow {};

long double log_of(const BigInt& n) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(static_cast<long double>(mant)) + static_cast<long double>(exp) * std::log(2.0L);
}

// Certified double evaluation: value in [s - err, s + err]. w[i] bounds
// the error contributed per unit of |a_i| (power enclosure, conversion of
// a_i to double and the summation).
template <int D>
inline void fast_eval(const std::int64_t* a, int d, const double* mid, const double* w, double& s, double& err) {
  const int n = D > 0 ? D : d;
  double sum = 0, bound = 0;
  for (int i = 0; i < n; ++i) {
    double x = static_cast<double>(a[i]);
    sum += x * mid[i];
    bound += std::abs(x) * w[i];
  }
  s = sum;
  err = bound * (1 + 0x1p-40) + std::numeric_limits<double>::denorm_min();
}

}  // namespace

struct Expander::Impl {
  PisotNumber base;
  int d = 0;
  int alphabet = 0;
  long double log_beta = 0;
  bool fast_ok = false;
  std::vector<std::int64_t> c64;
  std::vector<FieldElement> powers;                              // beta^i
  std::vector<std::array<std::int64_t, kMaxFastDegree>> powers64;  // prefix that fits
  std::vector<double> power_approx;
  std::array<double, kMaxFastDegree> mid{}, weight{};

  explicit Impl(PisotNumber b) : base(std::move(b)) {
    d = base.degree();
    alphabet = base.alphabet_size();
    log_beta = std::log(static_cast<long double>(base.beta_double()));
    fast_ok = d <= kMaxFastDegree;
    for (const auto& c : base.candidate().coeffs) {
      if (!c.fits_slong_p() || abs(c) >= BigInt(1L << 31)) fast_ok = false;
      c64.push_back(c.fits_slong_p() ? c.get_si() : 0);
    }
    const double gamma = static_cast<double>(d + 4) * 0x1p-52;
    for (int i = 0; i < d && i < kMaxFastDegree; ++i) {
      mid[static_cast<std::size_t>(i)] = base.power_mid()[static_cast<std::size_t>(i)];
      weight[static_cast<std::size_t>(i)] = (base.power_err()[static_cast<std::size_t>(i)] * 1.0000001 +
                                             std::abs(mid[static_cast<std::size_t>(i)]) * gamma) *
                                            (1 + 0x1p-30);
    }
    FieldElement p = FieldElement::integer(1, d);
    bool fits = fast_ok;
    for (int i = 0; i < 128; ++i) {
      powers.push_back(p);
      power_approx.push_back(std::pow(static_cast<double>(base.beta_double()), i));
      if (fits) {
        std::array<std::int64_t, kMaxFastDegree> a{};
        for (int k = 0; k < d; ++k) {
          const BigInt& v = p.coords[static_cast<std::size_t>(k)];
          if (!v.fits_slong_p() || abs(v) >= BigInt(kFastLimit)) fits = false;
          else a[static_cast<std::size_t>(k)] = v.get_si();
        }
        if (fits) powers64.push_back(a);
      }
      p = times_beta(p, base);
    }
  }
};

namespace {

// Arithmetic policy on int64 coordinates; every operation is overflow
// checked and throws Overflow so the caller can redo the work exactly.
template <int D>
class FastArith {
public:
  static constexpr std::size_t kWidth = D > 0 ? D : kMaxFastDegree;
  using Elem = std::array<std::int64_t, kWidth>;

  explicit FastArith(const Expander::Impl& impl) : impl_(impl), dyn_(impl.d) {}

  Elem from_int(const BigInt& n) const {
    if (!n.fits_slong_p()) throw Overflow{};
    const long v = n.get_si();
    if (v >= kFastLimit || v <= -kFastLimit) throw Overflow{};
    Elem e{};
    e[0] = v;
    return e;
  }

  bool is_zero(const Elem& e) const {
    for (int i = 0; i < dim(); ++i)
      if (e[static_cast<std::size_t>(i)] != 0) return false;
    return true;
  }

  const std::int64_t* power(int i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= impl_.powers64.size()) throw Overflow{};
    return impl_.powers64[static_cast<std::size_t>(i)].data();
  }

  // e - m * beta^i
  Elem sub_scaled_power(const Elem& e, long m, int i) const {
    const std::int64_t* p = power(i);
    Elem r{};
    for (int k = 0; k < dim(); ++k) {
      std::int64_t prod;
      if (__builtin_mul_overflow(p[k], m, &prod)) throw Overflow{};
      if (__builtin_sub_overflow(e[static_cast<std::size_t>(k)], prod, &r[static_cast<std::size_t>(k)])) throw Overflow{};
    }
    return r;
  }

  Elem times_beta(const Elem& a) const {
    Elem r{};
    const std::int64_t top = a[static_cast<std::size_t>(dim() - 1)];
    for (int i = dim() - 1; i >= 1; --i) r[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i - 1)];
    if (top != 0)
      for (int i = 0; i < dim(); ++i) {
        std::int64_t prod;
        if (__builtin_mul_overflow(top, impl_.c64[static_cast<std::size_t>(i)], &prod)) throw Overflow{};
        if (__builtin_add_overflow(r[static_cast<std::size_t>(i)], prod, &r[static_cast<std::size_t>(i)])) throw Overflow{};
      }
    for (int i = 0; i < dim(); ++i)
      if (r[static_cast<std::size_t>(i)] >= kFastLimit || r[static_cast<std::size_t>(i)] <= -kFastLimit) throw Overflow{};
    return r;
  }

  Elem sub_int(Elem e, long k) const {
    if (__builtin_sub_overflow(e[0], k, &e[0])) throw Overflow{};
    return e;
  }

  double approx(const Elem& e) const {
    double s, err;
    fast_eval<D>(e.data(), dim(), impl_.mid.data(), impl_.weight.data(), s, err);
    return s;
  }

  int sign(const Elem& e) const {
    double s, err;
    fast_eval<D>(e.data(), dim(), impl_.mid.data(), impl_.weight.data(), s, err);
    if (s - err > 0) return 1;
    if (s + err < 0) return -1;
    return certified_sign(to_field(e), impl_.base);
  }

  long floor(const Elem& e) const {
    double s, err;
    fast_eval<D>(e.data(), dim(), impl_.mid.data(), impl_.weight.data(), s, err);
    const double lo = s - err, hi = s + err;
    // truncation is floor on [0, 2^40)
    if (lo >= 0 && hi < 0x1p40) {
      const long a = static_cast<long>(lo);
      if (a == static_cast<long>(hi)) return a;
    }
    return certified_floor(to_field(e), impl_.base).get_si();
  }

  FieldElement to_field(const Elem& e) const {
    FieldElement f = FieldElement::zero(dim());
    for (int i = 0; i < dim(); ++i) f.coords[static_cast<std::size_t>(i)] = static_cast<long>(e[static_cast<std::size_t>(i)]);
    return f;
  }

private:
  int dim() const { return D > 0 ? D : dyn_; }

  const Expander::Impl& impl_;
  int dyn_;
};

class BigArith {
public:
  using Elem = FieldElement;

  explicit BigArith(const Expander::Impl& impl) : impl_(impl) {}

  Elem from_int(const BigInt& n) const { return FieldElement::integer(n, impl_.d); }
  bool is_zero(const Elem& e) const { return e.is_zero(); }

  const Elem& power(int i) const {
    if (static_cast<std::size_t>(i) < impl_.powers.size()) return impl_.powers[static_cast<std::size_t>(i)];
    if (extra_.empty()) extra_.push_back(pisot::times_beta(impl_.powers.back(), impl_.base));
    while (impl_.powers.size() + extra_.size() <= static_cast<std::size_t>(i))
      extra_.push_back(pisot::times_beta(extra_.back(), impl_.base));
    return extra_[static_cast<std::size_t>(i) - impl_.powers.size()];
  }

  Elem sub_scaled_power(const Elem& e, long m, int i) const {
    const Elem& p = power(i);
    Elem r = e;
    for (int k = 0; k < impl_.d; ++k) r.coords[static_cast<std::size_t>(k)] -= p.coords[static_cast<std::size_t>(k)] * m;
    return r;
  }

  Elem times_beta(const Elem& a) const { return pisot::times_beta(a, impl_.base); }

  Elem sub_int(Elem e, long k) const {
    e.coords[0] -= k;
    return e;
  }

  double approx(const Elem& e) const {
    double s = 0;
    for (int i = 0; i < impl_.d; ++i) s += e.coords[static_cast<std::size_t>(i)].get_d() * impl_.base.power_mid()[static_cast<std::size_t>(i)];
    return s;
  }

  int sign(const Elem& e) const { return certified_sign(e, impl_.base); }
  long floor(const Elem& e) const { return certified_floor(e, impl_.base).get_si(); }
  FieldElement to_field(const Elem& e) const { return e; }

private:
  const Expander::Impl& impl_;
  mutable std::vector<FieldElement> extra_;
};

struct GreedyResult {
  int L = 0;
  int R = 0;
};

// Greedy expansion of n. The sink sees every digit (in order, with a flag
// for the fractional part) and every remainder of the tail orbit.
template <class Arith, class Sink>
GreedyResult run_greedy(const Arith& ar, const Expander::Impl& impl, const BigInt& n, std::size_t max_steps, Sink& sink) {
  using Elem = typename Arith::Elem;
  if (sgn(n) <= 0) throw Error(ErrorKind::InvalidArgument, "expand_integer needs n >= 1");
  const Elem n_elem = ar.from_int(n);

  // beta^L <= n < beta^{L+1}
  int L = static_cast<int>(std::floor(log_of(n) / impl.log_beta));
  if (L < 0) L = 0;
  auto below = [&](int k) { return ar.sign(ar.sub_scaled_power(n_elem, 1, k)) >= 0; };  // beta^k <= n
  while (L > 0 && !below(L)) --L;
  while (below(L + 1)) ++L;

  Elem u = n_elem;
  std::size_t steps = 0;
  for (int i = L; i >= 0; --i) {
    long m = 0;
    if (i < static_cast<int>(impl.power_approx.size())) {
      double est = ar.approx(u) / impl.power_approx[static_cast<std::size_t>(i)];
      m = std::clamp(static_cast<long>(std::floor(est)), 0L, static_cast<long>(impl.alphabet - 1));
    }
    while (m > 0 && ar.sign(ar.sub_scaled_power(u, m, i)) < 0) --m;
    while (m + 1 < impl.alphabet && ar.sign(ar.sub_scaled_power(u, m + 1, i)) >= 0) ++m;
    u = ar.sub_scaled_power(u, m, i);
    sink.digit(static_cast<Digit>(m), false);
    ++steps;
  }

  // Tail orbit in Z[beta] cap [0,1); Brent cycle detection (T(0) = 0 ends it).
  sink.remainder(ar, u);
  Elem saved = u;
  std::size_t power = 1, lam = 0;
  int R = 0;
  while (!ar.is_zero(u)) {
    if (++steps > max_steps)
      throw Error(ErrorKind::StepBudgetExceeded, "expansion of " + n.get_str() + " exceeded " + std::to_string(max_steps) + " steps");
    Elem scaled = ar.times_beta(u);
    long digit = ar.floor(scaled);
    u = ar.sub_int(scaled, digit);
    sink.digit(static_cast<Digit>(digit), true);
    sink.remainder(ar, u);
    ++R;
    if (ar.is_zero(u)) break;
    if (u == saved)
      throw Error(ErrorKind::NonFiniteExpansion,
                  "expansion of " + n.get_str() + " is eventually periodic (remainder cycle after " + std::to_string(R) + " fractional digits)");
    if (++lam == power) {
      saved = u;
      power *= 2;
      lam = 0;
    }
  }
  return {L, R};
}

struct DigitSink {
  Word int_part, frac_part;
  void digit(Digit d, bool frac) { (frac ? frac_part : int_part).push_back(d); }
  template <class Arith, class Elem>
  void remainder(const Arith&, const Elem&) {}
};

struct CountSink {
  void digit(Digit, bool) {}
  template <class Arith, class Elem>
  void remainder(const Arith&, const Elem&) {}
};

struct OrbitSink {
  std::vector<FieldElement> orbit;
  void digit(Digit, bool) {}
  template <class Arith, class Elem>
  void remainder(const Arith& ar, const Elem& e) { orbit.push_back(ar.to_field(e)); }
};

template <class Sink>
GreedyResult greedy(const Expander::Impl& impl, const BigInt& n, std::size_t max_steps, Sink& sink) {
  if (impl.fast_ok) {
    try {
      Sink attempt = sink;
      GreedyResult r;
      switch (impl.d) {
        case 1: r = run_greedy(FastArith<1>(impl), impl, n, max_steps, attempt); break;
        case 2: r = run_greedy(FastArith<2>(impl), impl, n, max_steps, attempt); break;
        case 3: r = run_greedy(FastArith<3>(impl), impl, n, max_steps, attempt); break;
        case 4: r = run_greedy(FastArith<4>(impl), impl, n, max_steps, attempt); break;
        default: r = run_greedy(FastArith<0>(impl), impl, n, max_steps, attempt); break;
      }
      sink = std::move(attempt);
      return r;
    } catch (const Overflow&) {
    }
  }
  return run_greedy(BigArith(impl), impl, n, max_steps, sink);
}

}  // namespace

Expander::Expander(PisotNumber base) : base_(base), impl_(std::make_shared<const Impl>(std::move(base))) {
  if (impl_->alphabet > 256) throw Error(ErrorKind::InvalidArgument, "digit alphabet larger than 256 symbols");
}

BetaExpansion Expander::expand(const BigInt& n, std::size_t max_steps) const {
  DigitSink sink;
  GreedyResult r = greedy(*impl_, n, max_steps, sink);
  BetaExpansion e;
  e.n = n;
  e.L = r.L;
  e.R = r.R;
  e.digits_int = std::move(sink.int_part);
  e.digits_frac = std::move(sink.frac_part);
  e.finite = true;
  return e;
}

std::pair<int, int> Expander::lengths(const BigInt& n, std::size_t max_steps) const {
  CountSink sink;
  GreedyResult r = greedy(*impl_, n, max_steps, sink);
  return {r.L, r.R};
}

std::vector<FieldElement> Expander::tail_orbit(const BigInt& n, std::size_t max_steps) const {
  OrbitSink sink;
  greedy(*impl_, n, max_steps, sink);
  return std::move(sink.orbit);
}

BetaExpansion expand_integer(const BigInt& n, const PisotNumber& base, std::size_t max_steps) {
  return Expander(base).expand(n, max_steps);
}

std::pair<Digit, FieldElement> t_beta_step(const FieldElement& r, const PisotNumber& base) {
  if (r.degree() != base.degree()) throw Error(ErrorKind::InvalidArgument, "element degree does not match the base");
  if (certified_sign(r, base) < 0 || certified_sign(r - FieldElement::integer(1, base.degree()), base) >= 0)
    throw Error(ErrorKind::OutOfRange, "T_beta is defined on [0,1)");
  FieldElement scaled = times_beta(r, base);
  BigInt digit = certified_floor(scaled, base);
  scaled.coords[0] -= digit;
  return {static_cast<Digit>(digit.get_si()), std::move(scaled)};
}

// ---------------------------------------------------------------------------
// Expansion of 1
// ---------------------------------------------------------------------------

namespace {

// Shortest period p dividing the word length such that w is a power of its
// length-p prefix.
Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return Word(w.begin(), w.begin() + static_cast<long>(p));
  }
  return w;
}

void canonicalize(Word& pre, Word& period) {
  period = primitive_root(period);
  while (!pre.empty() && pre.back() == period.back()) {
    std::rotate(period.begin(), period.end() - 1, period.end());
    pre.pop_back();
  }
}

}  // namespace

ExpansionOfOne expansion_of_one(const PisotNumber& base, std::size_t max_steps) {
  const int d = base.degree();
  ExpansionOfOne out;
  // beta * 1 = beta: first digit floor(beta), remainder beta - floor(beta)
  FieldElement r = FieldElement::zero(d);
  if (d == 1) {
    out.greedy_prefix.push_back(static_cast<Digit>(base.candidate().coeffs[0].get_si()));
  } else {
    r.coords[1] = 1;
    r.coords[0] = -base.floor_beta();
    out.greedy_prefix.push_back(static_cast<Digit>(base.floor_beta().get_si()));
  }
  std::map<std::vector<BigInt>, std::size_t> seen;  // remainder -> digits emitted so far
  Word digits = out.greedy_prefix;
  while (!r.is_zero()) {
    auto [it, fresh] = seen.emplace(r.coords, digits.size());
    if (!fresh) {
      std::size_t start = it->second;
      out.greedy_prefix.assign(digits.begin(), digits.begin() + static_cast<long>(start));
      out.greedy_period.assign(digits.begin() + static_cast<long>(start), digits.end());
      canonicalize(out.greedy_prefix, out.greedy_period);
      out.quasi_preperiod = out.greedy_prefix;
      out.quasi_period = out.greedy_period;
      out.is_simple = false;
      return out;
    }
    if (digits.size() > max_steps)
      throw Error(ErrorKind::StepBudgetExceeded, "expansion of 1 did not become periodic within " + std::to_string(max_steps) + " digits");
    auto [digit, next] = t_beta_step(r, base);
    digits.push_back(digit);
    r = std::move(next);
  }
  out.greedy_prefix = digits;
  out.is_simple = true;
  // d*(1) = (t_1 ... t_{m-1} (t_m - 1))^omega
  Word period = digits;
  period.back() = static_cast<Digit>(period.back() - 1);
  out.quasi_period = period;
  canonicalize(out.quasi_preperiod, out.quasi_period);
  return out;
}

// ---------------------------------------------------------------------------
// Property (F) helpers
// ---------------------------------------------------------------------------

bool finiteness_fast_accept(const PisotNumber& base) {
  const auto& c = base.candidate().coeffs;
  if (c.empty() || c[0] < 1) return false;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] < c[i - 1]) return false;
  return true;
}

std::optional<BigInt> first_non_finite(const PisotNumber& base, long n_max) {
  Expander ex(base);
  for (long n = 1; n <= n_max; ++n) {
    try {
      ex.lengths(BigInt(n));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NonFiniteExpansion) return BigInt(n);
      throw;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The finite set Y and orbit certificates
// ---------------------------------------------------------------------------

std::vector<double> y_bounds(const PisotNumber& base) {
  std::vector<double> out;
  const double fb = base.floor_beta().get_d();
  for (double m : base.conjugate_moduli()) out.push_back(1 + fb / (1 - m));
  return out;
}

namespace {

// Rigorous lower bound of 1 + floor(beta) / (1 - |beta_j|).
Rational y_bound_lower(const PisotNumber& base, int j) {
  FieldElement beta = FieldElement::zero(base.degree());
  beta.coords[1] = 1;
  Interval m = conjugate_modulus(beta, j, base, Rational(1, BigInt(1) << 80));
  return Rational(1) + Rational(base.floor_beta()) / (Rational(1) - m.lo);
}

Rational y_bound_upper(const PisotNumber& base, int j) {
  FieldElement beta = FieldElement::zero(base.degree());
  beta.coords[1] = 1;
  Interval m = conjugate_modulus(beta, j, base, Rational(1, BigInt(1) << 80));
  return Rational(1) + Rational(base.floor_beta()) / (Rational(1) - m.hi);
}

enum class Bound { Inside, Outside, Undecided };

// |sigma_j(y)| < bound_j for all j, with the bound itself only known to
// lie in [lower_j, upper_j].
Bound check_conjugates(const FieldElement& y, const PisotNumber& base, const std::vector<Rational>& lower,
                       const std::vector<Rational>& upper, long max_bits) {
  bool all_inside = true;
  for (int j = 2; j <= base.degree(); ++j) {
    bool decided = false;
    for (long bits = 64; bits <= max_bits; bits *= 2) {
      Interval m = conjugate_value(y, j, base, bits).modulus(bits + 8);
      if (m.hi < lower[static_cast<std::size_t>(j - 2)]) {
        decided = true;
        break;
      }
      if (m.lo >= upper[static_cast<std::size_t>(j - 2)]) return Bound::Outside;
    }
    if (!decided) all_inside = false;
  }
  return all_inside ? Bound::Inside : Bound::Undecided;
}

// T_beta orbit length of y to 0, or -1 if it cycles.
int tail_length(FieldElement y, const PisotNumber& base, std::size_t max_steps) {
  std::set<std::vector<BigInt>> seen;
  int len = 0;
  while (!y.is_zero()) {
    if (!seen.insert(y.coords).second) return -1;
    if (static_cast<std::size_t>(len) > max_steps)
      throw Error(ErrorKind::StepBudgetExceeded, "orbit of a Y element exceeded the step budget");
    y = t_beta_step(y, base).second;
    ++len;
  }
  return len;
}

}  // namespace

YSet enumerate_Y(const PisotNumber& base) {
  const int d = base.degree();
  if (d == 1) throw Error(ErrorKind::DegreeOne, "Y is only defined for bases of degree >= 2");

  // Embedding matrix V[j][i] = beta_j^i (row 0 is beta itself). Coordinates
  // satisfy a = V^{-1} e with |e_0| < 1 and |e_j| < bound_j.
  using C = std::complex<long double>;
  std::vector<C> roots;
  roots.emplace_back(static_cast<long double>(base.beta_double()), 0.0L);
  for (const auto& D : base.conjugate_enclosures()) roots.emplace_back(D.center_re.get_d(), D.center_im.get_d());
  const std::size_t n = static_cast<std::size_t>(d);
  std::vector<std::vector<C>> aug(n, std::vector<C>(2 * n));
  for (std::size_t j = 0; j < n; ++j) {
    C p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      aug[j][i] = p;
      p *= roots[j];
    }
    aug[j][n + j] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
    std::swap(aug[col], aug[piv]);
    C inv = C(1) / aug[col][col];
    for (auto& v : aug[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      C f = aug[r][col];
      for (std::size_t k = 0; k < 2 * n; ++k) aug[r][k] -= f * aug[col][k];
    }
  }
  std::vector<double> bounds = y_bounds(base);
  std::vector<long double> emb_bound{1.0L};
  for (double b : bounds) emb_bound.push_back(b);

  YSet out;
  std::vector<long> half;
  for (std::size_t i = 0; i < n; ++i) {
    long double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += std::abs(aug[i][n + j]) * emb_bound[j];
    // generous margin: the search box only has to contain Y
    long h = static_cast<long>(std::ceil(s * 1.01L + 1));
    half.push_back(h);
    out.box.emplace_back(h);
  }

  std::vector<Rational> lower, upper;
  for (int j = 2; j <= d; ++j) {
    lower.push_back(y_bound_lower(base, j));
    upper.push_back(y_bound_upper(base, j));
  }
  const FieldElement one = FieldElement::integer(1, d);

  std::vector<long> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = -half[i];
  for (;;) {
    FieldElement y = FieldElement::zero(d);
    for (std::size_t i = 0; i < n; ++i) y.coords[i] = a[i];
    // cheap rejection: real value far outside [0,1)
    long double v = 0;
    for (std::size_t i = 0; i < n; ++i) v += static_cast<long double>(a[i]) * std::real(std::pow(roots[0], static_cast<int>(i)));
    if (v > -0.5L && v < 1.5L && certified_sign(y, base) >= 0 && certified_sign(y - one, base) < 0) {
      switch (check_conjugates(y, base, lower, upper, 1024)) {
        case Bound::Inside: out.elements.push_back(y); break;
        case Bound::Undecided: ++out.boundary_ties; break;
        case Bound::Outside: break;
      }
    }
    std::size_t k = 0;
    while (k < n && a[k] == half[k]) {
      a[k] = -half[k];
      ++k;
    }
    if (k == n) break;
    ++a[k];
  }

  std::sort(out.elements.begin(), out.elements.end(), [&](const FieldElement& x, const FieldElement& y) {
    return certified_compare(x, y, base) == std::strong_ordering::less;
  });
  for (const auto& y : out.elements) {
    int len = tail_length(y, base, 100000);
    if (len < 0)
      ++out.non_finite;
    else
      out.max_tail = std::max(out.max_tail, len);
  }
  return out;
}

OrbitBoundCertificate orbit_certificate(const BigInt& n, const PisotNumber& base) {
  Expander ex(base);
  if (base.degree() == 1) return orbit_certificate(n, ex, nullptr);
  YSet y = enumerate_Y(base);
  return orbit_certificate(n, ex, &y);
}

OrbitBoundCertificate orbit_certificate(const BigInt& n, const Expander& expander, const YSet* y) {
  const PisotNumber& base = expander.base();
  OrbitBoundCertificate cert;
  cert.n = n;
  std::vector<FieldElement> orbit = expander.tail_orbit(n);
  auto [L, R] = expander.lengths(n);
  cert.L = L;
  cert.R = R;
  const long last = L + 1 + R;  // index of the zero remainder
  if (base.degree() == 1) {
    cert.k_star = L + 1;
    cert.first_entry = L + 1;
    cert.max_tail = 0;
    cert.vacuous = true;
    cert.verified = true;
    return cert;
  }
  cert.y_bounds = y_bounds(base);
  cert.max_tail = y ? y->max_tail : 0;

  // k = L + 1 + max_j ceil(log n / log |sigma_j(beta)|^{-1})
  long extra = 0;
  const long double logn = log_of(n);
  for (double m : base.conjugate_moduli())
    extra = std::max(extra, static_cast<long>(std::ceil(logn / std::log(1.0L / static_cast<long double>(m)))));
  cert.k_star = L + 1 + extra;
  cert.vacuous = cert.k_star >= last;

  std::vector<Rational> lower, upper;
  for (int j = 2; j <= base.degree(); ++j) {
    lower.push_back(y_bound_lower(base, j));
    upper.push_back(y_bound_upper(base, j));
  }
  // orbit[m] = T^{L+1+m}(z)
  std::vector<bool> in_y(orbit.size());
  for (std::size_t m = 0; m < orbit.size(); ++m)
    in_y[m] = check_conjugates(orbit[m], base, lower, upper, 1024) == Bound::Inside;
  long entry = last;
  for (long m = static_cast<long>(orbit.size()) - 1; m >= 0 && in_y[static_cast<std::size_t>(m)]; --m) entry = L + 1 + m;
  cert.first_entry = entry;
  cert.verified = cert.k_star >= entry;
  return cert;
}

}  // namespace pisot
