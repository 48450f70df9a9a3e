#include "pisot/algebraic.hpp"

#include "pisot/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>

namespace pisot {

// ---------------------------------------------------------------------------
// Exact complex rationals for root refinement
// ---------------------------------------------------------------------------

namespace {

struct CRat {
  Rational re;
  Rational im;
};

CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
CRat operator*(const CRat& a, const CRat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rational norm2(const CRat& a) { return a.re * a.re + a.im * a.im; }

CRat divide(const CRat& a, const CRat& b) {
  Rational n = norm2(b);
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

CRat horner(const IntPoly& p, const CRat& z) {
  CRat acc{Rational(0), Rational(0)};
  for (auto it = p.coef.rbegin(); it != p.coef.rend(); ++it) {
    acc = acc * z;
    acc.re += *it;
  }
  return acc;
}

CRat horner_derivative(const IntPoly& p, const CRat& z) {
  CRat acc{Rational(0), Rational(0)};
  for (int k = p.degree(); k >= 1; --k) {
    acc = acc * z;
    acc.re += p.coef[static_cast<std::size_t>(k)] * k;
  }
  return acc;
}

CRat round_to(const CRat& z, long bits) { return {floor_dyadic(z.re, bits), floor_dyadic(z.im, bits)}; }

Rational rational_from_double(long double v) {
  // long double -> exact rational through its binary expansion
  if (v == 0) return Rational(0);
  int exp = 0;
  long double mant = std::frexp(v, &exp);
  auto scaled = static_cast<long>(std::ldexp(mant, 62));
  Rational r(scaled);
  int shift = exp - 62;
  if (shift >= 0)
    r *= Rational(BigInt(1) << shift);
  else
    r /= Rational(BigInt(1) << (-shift));
  r.canonicalize();
  return r;
}

// Aberth-Ehrlich iteration in long double; only a starting point for the
// exact refinement below.
std::vector<std::complex<long double>> approximate_roots(const IntPoly& p) {
  using C = std::complex<long double>;
  const int d = p.degree();
  std::vector<long double> a(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) a[static_cast<std::size_t>(k)] = p.coef[static_cast<std::size_t>(k)].get_d();
  auto eval = [&](C z, C& dz) {
    C v = 0;
    dz = 0;
    for (int k = d; k >= 0; --k) {
      dz = dz * z + v;
      v = v * z + a[static_cast<std::size_t>(k)];
    }
    return v;
  };
  long double radius = std::pow(std::abs(a[0]), 1.0L / d) + 0.5L;
  std::vector<C> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2 * std::numbers::pi_v<long double> * k / d + 0.4L);
  for (int iter = 0; iter < 1000; ++iter) {
    long double max_step = 0;
    for (int k = 0; k < d; ++k) {
      C dz;
      C v = eval(z[static_cast<std::size_t>(k)], dz);
      if (v == C(0)) continue;
      C ratio = v / dz;
      C sum = 0;
      for (int j = 0; j < d; ++j)
        if (j != k) sum += C(1) / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
      C w = ratio / (C(1) - ratio * sum);
      z[static_cast<std::size_t>(k)] -= w;
      max_step = std::max(max_step, std::abs(w) / (1 + std::abs(z[static_cast<std::size_t>(k)])));
    }
    if (max_step < 1e-19L) break;
  }
  return z;
}

CRat newton_refine(const IntPoly& p, CRat z, long bits) {
  Rational tol2 = Rational(1, 1) / Rational(BigInt(1) << (2 * bits + 4));
  for (int iter = 0; iter < 200; ++iter) {
    CRat dp = horner_derivative(p, z);
    if (sgn(dp.re) == 0 && sgn(dp.im) == 0) break;
    CRat step = divide(horner(p, z), dp);
    z = round_to(z - step, bits + 8);
    if (norm2(step) < tol2) break;
  }
  return z;
}

Rational upper_sqrt(const Rational& x, long bits) { return sqrt_outward(Interval(x), bits).hi; }

// Smith's inclusion theorem: every root of the monic p lies in the union of
// the disks D(z_i, d |p(z_i)| / prod_{j != i} |z_i - z_j|), and each connected
// component of m disks holds exactly m roots. With pairwise disjoint disks
// each disk isolates exactly one root.
std::optional<std::vector<RootDisk>> certify(const IntPoly& p, const std::vector<CRat>& centers, long bits) {
  const std::size_t d = centers.size();
  std::vector<RootDisk> disks(d);
  for (std::size_t i = 0; i < d; ++i) {
    Rational denom = 1;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      Rational n2 = norm2(centers[i] - centers[j]);
      if (sgn(n2) == 0) return std::nullopt;
      denom *= n2;
    }
    Rational r2 = Rational(static_cast<long>(d * d)) * norm2(horner(p, centers[i])) / denom;
    disks[i] = RootDisk{centers[i].re, centers[i].im, upper_sqrt(r2, bits + 24)};
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Rational sum_r = disks[i].radius + disks[j].radius;
      if (norm2(centers[i] - centers[j]) <= sum_r * sum_r) return std::nullopt;
    }
  return disks;
}

bool disk_inside(const RootDisk& D, const Rational& outer_radius, const Rational& slack = 0) {
  // D subset of the open disk |z - c| < outer_radius, c = 0
  Rational room = outer_radius - D.radius - slack;
  if (sgn(room) <= 0) return false;
  return D.center_re * D.center_re + D.center_im * D.center_im < room * room;
}

bool disk_outside_unit(const RootDisk& D) {
  Rational reach = D.radius + 1;
  return D.center_re * D.center_re + D.center_im * D.center_im > reach * reach;
}

bool disk_within(const RootDisk& inner, const RootDisk& outer) {
  if (inner.radius > outer.radius) return false;
  Rational room = outer.radius - inner.radius;
  Rational dx = inner.center_re - outer.center_re, dy = inner.center_im - outer.center_im;
  return dx * dx + dy * dy <= room * room;
}

}  // namespace

ComplexBox RootDisk::box() const {
  return {Interval(Rational(center_re - radius), Rational(center_re + radius)),
          Interval(Rational(center_im - radius), Rational(center_im + radius))};
}

// ---------------------------------------------------------------------------
// PisotCandidate / FieldElement basics
// ---------------------------------------------------------------------------

IntPoly PisotCandidate::polynomial() const {
  std::vector<BigInt> c;
  c.reserve(coeffs.size() + 1);
  for (const auto& v : coeffs) c.push_back(-v);
  c.emplace_back(1);
  return IntPoly(std::move(c));
}

PisotCandidate PisotCandidate::from_polynomial(const IntPoly& p) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "base polynomial must have degree >= 1");
  if (p.lead() != 1) throw Error(ErrorKind::InvalidArgument, "base polynomial must be monic: " + to_string(p));
  PisotCandidate c;
  for (int k = 0; k < p.degree(); ++k) c.coeffs.push_back(-p.coef[static_cast<std::size_t>(k)]);
  return c;
}

FieldElement FieldElement::integer(const BigInt& k, int degree) {
  FieldElement e = zero(degree);
  e.coords[0] = k;
  return e;
}

bool FieldElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const BigInt& v) { return sgn(v) == 0; });
}

bool FieldElement::is_integer() const {
  return std::all_of(coords.begin() + (coords.empty() ? 0 : 1), coords.end(),
                     [](const BigInt& v) { return sgn(v) == 0; });
}

// ---------------------------------------------------------------------------
// PisotNumber state
// ---------------------------------------------------------------------------

namespace detail {

struct PisotData {
  PisotCandidate candidate;
  IntPoly poly;
  PrecisionPolicy policy;
  int degree = 0;
  std::size_t beta_index = 0;
  std::vector<std::size_t> conj_order;  // root indices for beta_2..beta_d
  Interval beta_enclosure;
  std::vector<RootDisk> conj_enclosures;
  double delta = 0;
  std::vector<double> conj_moduli;
  BigInt floor_beta;
  int alphabet_size = 0;
  double beta_double = 0;
  std::vector<double> pow_mid;
  std::vector<double> pow_err;

  mutable std::mutex cache_mutex;
  mutable std::map<long, std::vector<RootDisk>> root_cache;

  // Certified disks for all roots (original Aberth order) at `bits`.
  std::vector<RootDisk> roots_at(long bits) const;
};

std::vector<RootDisk> PisotData::roots_at(long bits) const {
  if (bits > policy.max_bits)
    throw Error(ErrorKind::PrecisionExhausted,
                "requested " + std::to_string(bits) + " bits, cap is " + std::to_string(policy.max_bits));
  std::unique_lock lock(cache_mutex);
  auto hit = root_cache.lower_bound(bits);
  if (hit != root_cache.end()) return hit->second;
  auto prev = std::prev(root_cache.end());
  std::vector<RootDisk> seed = prev->second;
  lock.unlock();

  std::vector<CRat> centers;
  for (const auto& D : seed) centers.push_back(newton_refine(poly, CRat{D.center_re, D.center_im}, bits));
  auto disks = certify(poly, centers, bits);
  if (!disks)
    throw Error(ErrorKind::PrecisionExhausted, "root disks failed to separate at " + std::to_string(bits) + " bits");
  for (std::size_t i = 0; i < disks->size(); ++i)
    if (!disk_within((*disks)[i], seed[i]))
      throw Error(ErrorKind::PrecisionExhausted, "refined root disk escaped its parent enclosure");

  lock.lock();
  root_cache.emplace(bits, *disks);
  return *disks;
}

}  // namespace detail

const PisotCandidate& PisotNumber::candidate() const { return data_->candidate; }
int PisotNumber::degree() const { return data_->degree; }
const PrecisionPolicy& PisotNumber::policy() const { return data_->policy; }
const Interval& PisotNumber::beta_enclosure() const { return data_->beta_enclosure; }
const std::vector<RootDisk>& PisotNumber::conjugate_enclosures() const { return data_->conj_enclosures; }
double PisotNumber::delta() const { return data_->delta; }
std::vector<double> PisotNumber::conjugate_moduli() const { return data_->conj_moduli; }
const BigInt& PisotNumber::floor_beta() const { return data_->floor_beta; }
int PisotNumber::alphabet_size() const { return data_->alphabet_size; }
double PisotNumber::beta_double() const { return data_->beta_double; }
const std::vector<double>& PisotNumber::power_mid() const { return data_->pow_mid; }
const std::vector<double>& PisotNumber::power_err() const { return data_->pow_err; }

Interval PisotNumber::beta_at(long bits) const {
  if (data_->degree == 1) return data_->beta_enclosure;
  RootDisk D = data_->roots_at(bits)[data_->beta_index];
  return Interval(Rational(D.center_re - D.radius), Rational(D.center_re + D.radius));
}

RootDisk PisotNumber::conjugate_at(int j, long bits) const {
  if (j < 2 || j > data_->degree)
    throw Error(ErrorKind::BadIndex, "conjugate index " + std::to_string(j) + " outside 2.." + std::to_string(data_->degree));
  return data_->roots_at(bits)[data_->conj_order[static_cast<std::size_t>(j - 2)]];
}

// ---------------------------------------------------------------------------
// verify_pisot
// ---------------------------------------------------------------------------

namespace {

bool is_reciprocal(const IntPoly& p) {
  const int d = p.degree();
  bool plus = true, minus = true;
  for (int k = 0; k <= d; ++k) {
    const BigInt& a = p.coef[static_cast<std::size_t>(k)];
    const BigInt& b = p.coef[static_cast<std::size_t>(d - k)];
    if (a != b) plus = false;
    if (a != -b) minus = false;
  }
  return plus || minus;
}

enum class FactorSearch { Irreducible, Reducible, NeedPrecision };

// Every monic integer factor of p is prod_{i in S}(x - beta_i) for some root
// subset S. Enumerate subsets of size <= d/2, enclose the product's
// coefficients, and test the unique integer candidate by exact division.
FactorSearch search_factors(const IntPoly& p, const std::vector<RootDisk>& disks, IntPoly& factor) {
  const int d = p.degree();
  std::vector<ComplexBox> boxes;
  for (const auto& D : disks) boxes.push_back(D.box());
  bool need_precision = false;
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    int size = __builtin_popcount(mask);
    if (size > d / 2) continue;
    std::vector<ComplexBox> prod{ComplexBox::real(1)};
    for (int i = 0; i < d; ++i) {
      if (!(mask & (1u << i))) continue;
      std::vector<ComplexBox> next(prod.size() + 1);
      for (std::size_t k = 0; k < prod.size(); ++k) {
        next[k + 1] = next[k + 1] + prod[k];
        next[k] = next[k] - prod[k] * boxes[static_cast<std::size_t>(i)];
      }
      prod = std::move(next);
    }
    std::vector<BigInt> coef;
    bool candidate = true;
    for (const auto& c : prod) {
      if (!c.im.contains_zero()) {
        candidate = false;
        break;
      }
      BigInt lo = floor_of(c.re.lo);
      if (lo < c.re.lo) lo += 1;
      BigInt hi = floor_of(c.re.hi);
      if (lo > hi) {
        candidate = false;
        break;
      }
      if (lo != hi || c.re.width() >= 1 || c.im.width() >= 1) {
        need_precision = true;
        candidate = false;
        break;
      }
      coef.push_back(lo);
    }
    if (!candidate) continue;
    IntPoly q(std::move(coef));
    if (divides(q, p)) {
      factor = q;
      return FactorSearch::Reducible;
    }
  }
  return need_precision ? FactorSearch::NeedPrecision : FactorSearch::Irreducible;
}

void fill_fast_eval(detail::PisotData& data, const Interval& beta) {
  Interval power(Rational(1));
  for (int i = 0; i < data.degree; ++i) {
    double m = power.mid().get_d();
    Rational mr(m);
    Rational dev = std::max(abs(power.hi - mr), abs(power.lo - mr));
    double e = dev.get_d();
    e = e * (1 + 0x1p-40) + std::numeric_limits<double>::denorm_min();
    data.pow_mid.push_back(m);
    data.pow_err.push_back(e);
    power = (power * beta).round_outward(200);
  }
}

}  // namespace

PisotNumber verify_pisot(const PisotCandidate& candidate, const Rational& tolerance, const PrecisionPolicy& policy) {
  const int d = candidate.degree();
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "empty candidate");
  if (sgn(tolerance) <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const IntPoly p = candidate.polynomial();

  if (d == 1) {
    if (candidate.coeffs[0] < 2) throw Error(ErrorKind::NotPisot, to_string(p) + " has no root > 1");
    auto data = std::make_shared<detail::PisotData>();
    data->candidate = candidate;
    data->poly = p;
    data->policy = policy;
    data->degree = 1;
    data->beta_enclosure = Interval::point(candidate.coeffs[0]);
    data->floor_beta = candidate.coeffs[0];
    data->alphabet_size = static_cast<int>(candidate.coeffs[0].get_si());
    data->beta_double = candidate.coeffs[0].get_d();
    data->pow_mid = {1.0};
    data->pow_err = {0.0};
    return PisotNumber(std::move(data));
  }

  if (sgn(candidate.coeffs[0]) == 0) throw Error(ErrorKind::Reducible, to_string(p) + " is divisible by x");
  RatPoly rp = to_rational(p);
  if (gcd(rp, derivative(rp)).degree() >= 1) throw Error(ErrorKind::Reducible, to_string(p) + " has a repeated factor");

  int above_one = sturm_count_above(p, Rational(1));
  if (above_one == 0) throw Error(ErrorKind::NotPisot, to_string(p) + " has no real root > 1");

  std::vector<CRat> centers;
  for (auto z : approximate_roots(p)) centers.push_back({rational_from_double(z.real()), rational_from_double(z.imag())});

  long bits = policy.initial_bits;
  std::optional<std::vector<RootDisk>> disks;
  bool irreducible_known = false;
  bool classified = false;
  std::size_t beta_index = 0;
  for (;; bits *= 2) {
    if (bits > policy.max_bits)
      throw Error(ErrorKind::PrecisionExhausted, "could not certify the roots of " + to_string(p) + " within " +
                                                     std::to_string(policy.max_bits) + " bits");
    for (auto& z : centers) z = newton_refine(p, z, bits);
    disks = certify(p, centers, bits);
    if (!disks) continue;

    if (!irreducible_known) {
      IntPoly factor;
      auto verdict = search_factors(p, *disks, factor);
      if (verdict == FactorSearch::Reducible)
        throw Error(ErrorKind::Reducible, to_string(p) + " has the factor " + to_string(factor));
      if (verdict == FactorSearch::NeedPrecision) continue;
      irreducible_known = true;
      // An irreducible polynomial with a root on the unit circle is
      // self-reciprocal; of those only quadratics can be Pisot.
      if (d > 2 && is_reciprocal(p))
        throw Error(ErrorKind::NotPisot, to_string(p) + " is reciprocal of degree > 2");
      if (above_one > 1) throw Error(ErrorKind::NotPisot, to_string(p) + " has several real roots > 1");
    }

    if (!classified) {
      std::vector<std::size_t> outside;
      bool ambiguous = false;
      for (std::size_t i = 0; i < disks->size(); ++i) {
        const RootDisk& D = (*disks)[i];
        if (disk_outside_unit(D))
          outside.push_back(i);
        else if (!disk_inside(D, Rational(1)))
          ambiguous = true;
      }
      if (outside.size() > 1)
        throw Error(ErrorKind::NotPisot, to_string(p) + " has a conjugate of modulus > 1");
      if (ambiguous) continue;
      if (outside.size() != 1)
        throw Error(ErrorKind::NotPisot, to_string(p) + " has no root outside the unit disk");
      beta_index = outside[0];
      classified = true;
    }

    bool narrow = std::all_of(disks->begin(), disks->end(),
                              [&](const RootDisk& D) { return 2 * D.radius <= tolerance; });
    if (narrow) break;
  }

  auto data = std::make_shared<detail::PisotData>();
  data->candidate = candidate;
  data->poly = p;
  data->policy = policy;
  data->degree = d;
  data->beta_index = beta_index;
  const RootDisk& B = (*disks)[beta_index];
  data->beta_enclosure = Interval(Rational(B.center_re - B.radius), Rational(B.center_re + B.radius));
  data->root_cache.emplace(bits, *disks);

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < disks->size(); ++i)
    if (i != beta_index) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const RootDisk& A = (*disks)[a];
    const RootDisk& C = (*disks)[b];
    Rational na = A.center_re * A.center_re + A.center_im * A.center_im;
    Rational nc = C.center_re * C.center_re + C.center_im * C.center_im;
    // conjugate pairs have moduli equal to within the disk radii
    Rational eps = 4 * (A.radius + C.radius) * (Rational(2) + abs(A.center_re) + abs(A.center_im));
    if (abs(na - nc) > eps) return na > nc;
    if (A.center_re != C.center_re && abs(A.center_re - C.center_re) > 2 * (A.radius + C.radius))
      return A.center_re > C.center_re;
    return A.center_im > C.center_im;
  });
  data->conj_order = order;
  double max_modulus = 0;
  for (std::size_t idx : order) {
    const RootDisk& D = (*disks)[idx];
    data->conj_enclosures.push_back(D);
    double m = std::hypot(D.center_re.get_d(), D.center_im.get_d());
    data->conj_moduli.push_back(m);
    max_modulus = std::max(max_modulus, m);
  }
  data->delta = 1.0 / std::log(1.0 / max_modulus);

  data->floor_beta = floor_of(data->beta_enclosure.lo);
  if (floor_of(data->beta_enclosure.hi) != data->floor_beta) {
    // beta is irrational for d >= 2, so refinement separates it from integers
    for (long b = bits * 2;; b *= 2) {
      Interval e = PisotNumber(data).beta_at(b);
      if (floor_of(e.lo) == floor_of(e.hi)) {
        data->floor_beta = floor_of(e.lo);
        break;
      }
    }
  }
  data->alphabet_size = static_cast<int>(data->floor_beta.get_si()) + 1;
  data->beta_double = data->beta_enclosure.mid().get_d();
  fill_fast_eval(*data, PisotNumber(data).beta_at(std::max(bits, 256L)));
  return PisotNumber(std::move(data));
}

// ---------------------------------------------------------------------------
// Arithmetic in Z[beta]
// ---------------------------------------------------------------------------

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

FieldElement times_beta(const FieldElement& a, const PisotNumber& base) {
  const int d = base.degree();
  const auto& c = base.candidate().coeffs;
  FieldElement r = FieldElement::zero(d);
  const BigInt& top = a.coords[static_cast<std::size_t>(d - 1)];
  for (int i = d - 1; i >= 1; --i) r.coords[static_cast<std::size_t>(i)] = a.coords[static_cast<std::size_t>(i - 1)];
  for (int i = 0; i < d; ++i) r.coords[static_cast<std::size_t>(i)] += top * c[static_cast<std::size_t>(i)];
  return r;
}

FieldElement multiply(const FieldElement& a, const FieldElement& b, const PisotNumber& base) {
  const int d = base.degree();
  // schoolbook product of length 2d-1, then fold high powers with
  // beta^d = c_{d-1} beta^{d-1} + ... + c_0
  std::vector<BigInt> full(static_cast<std::size_t>(2 * d - 1), BigInt(0));
  for (int i = 0; i < d; ++i) {
    if (sgn(a.coords[static_cast<std::size_t>(i)]) == 0) continue;
    for (int j = 0; j < d; ++j)
      full[static_cast<std::size_t>(i + j)] += a.coords[static_cast<std::size_t>(i)] * b.coords[static_cast<std::size_t>(j)];
  }
  const auto& c = base.candidate().coeffs;
  for (int k = 2 * d - 2; k >= d; --k) {
    BigInt top = full[static_cast<std::size_t>(k)];
    if (sgn(top) == 0) continue;
    full[static_cast<std::size_t>(k)] = 0;
    for (int i = 0; i < d; ++i) full[static_cast<std::size_t>(k - d + i)] += top * c[static_cast<std::size_t>(i)];
  }
  full.resize(static_cast<std::size_t>(d));
  return FieldElement(std::move(full));
}

FieldElement elem_arith(const FieldElement& a, const FieldElement& b, ArithOp op, const PisotNumber& base) {
  if (a.degree() != base.degree() || b.degree() != base.degree())
    throw Error(ErrorKind::InvalidArgument, "field elements do not match the base degree");
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return multiply(a, b, base);
  }
  return a;
}

FieldElement beta_power(int k, const PisotNumber& base) {
  FieldElement r = FieldElement::integer(1, base.degree());
  for (int i = 0; i < k; ++i) r = times_beta(r, base);
  return r;
}

// ---------------------------------------------------------------------------
// Certified evaluation
// ---------------------------------------------------------------------------

namespace {

// value ~ s with |value - s| <= err. Returns false when a coordinate is too
// large to convert to double exactly.
bool fast_value(const FieldElement& a, const PisotNumber& base, double& s, double& err) {
  const auto& mid = base.power_mid();
  const auto& e = base.power_err();
  double sum = 0, abs_sum = 0, coeff_err = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const BigInt& v = a.coords[i];
    if (sgn(v) == 0) continue;
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 53) return false;
    double x = v.get_d();
    double term = x * mid[i];
    sum += term;
    abs_sum += std::abs(term);
    coeff_err += std::abs(x) * e[i];
  }
  const double gamma = static_cast<double>(a.coords.size() + 2) * 0x1p-52;
  s = sum;
  err = (coeff_err + gamma * abs_sum) * (1 + 0x1p-30) + std::numeric_limits<double>::denorm_min();
  return true;
}

Interval interval_value(const FieldElement& a, const Interval& beta, long bits) {
  Interval acc(Rational(0));
  for (auto it = a.coords.rbegin(); it != a.coords.rend(); ++it) {
    acc = acc * beta + Interval::point(*it);
    acc = acc.round_outward(bits);
  }
  return acc;
}

}  // namespace

Interval real_value(const FieldElement& a, const PisotNumber& base, const Rational& tolerance) {
  if (a.is_integer()) return Interval::point(a.coords[0]);
  for (long bits = base.policy().initial_bits;; bits *= 2) {
    Interval v = interval_value(a, base.beta_at(bits), bits + 8);
    if (v.width() <= tolerance) return v;
  }
}

int certified_sign(const FieldElement& a, const PisotNumber& base) {
  if (a.is_zero()) return 0;
  if (a.is_integer()) return sgn(a.coords[0]);
  double s, err;
  if (fast_value(a, base, s, err)) {
    if (s - err > 0) return 1;
    if (s + err < 0) return -1;
  }
  // a != 0 and 1, beta, ..., beta^{d-1} are linearly independent over Q, so
  // the value is nonzero and refinement terminates short of the cap.
  for (long bits = base.policy().initial_bits;; bits *= 2) {
    Interval v = interval_value(a, base.beta_at(bits), bits + 8);
    if (v.positive()) return 1;
    if (v.negative()) return -1;
  }
}

std::strong_ordering certified_compare(const FieldElement& a, const FieldElement& b, const PisotNumber& base) {
  if (a == b) return std::strong_ordering::equal;
  int s = certified_sign(a - b, base);
  return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

BigInt certified_floor(const FieldElement& a, const PisotNumber& base) {
  if (a.is_integer()) return a.coords[0];
  double s, err;
  if (fast_value(a, base, s, err)) {
    if (s + err < 0) throw Error(ErrorKind::NegativeValue, "floor of a negative element");
    double lo = std::floor(s - err), hi = std::floor(s + err);
    if (lo == hi && lo >= 0 && lo < 0x1p52) return BigInt(static_cast<long>(lo));
  }
  for (long bits = base.policy().initial_bits;; bits *= 2) {
    Interval v = interval_value(a, base.beta_at(bits), bits + 8);
    if (v.negative()) throw Error(ErrorKind::NegativeValue, "floor of a negative element");
    BigInt lo = floor_of(v.lo), hi = floor_of(v.hi);
    if (lo == hi) {
      if (sgn(lo) < 0) throw Error(ErrorKind::NegativeValue, "floor of a negative element");
      return lo;
    }
  }
}

ComplexBox conjugate_value(const FieldElement& a, int j, const PisotNumber& base, long bits) {
  ComplexBox z = base.conjugate_at(j, bits).box();
  ComplexBox acc;
  for (auto it = a.coords.rbegin(); it != a.coords.rend(); ++it) {
    acc = acc * z + ComplexBox::real(*it);
    acc = acc.round_outward(bits + 8);
  }
  return acc;
}

Interval conjugate_modulus(const FieldElement& a, int j, const PisotNumber& base, const Rational& tolerance) {
  if (j < 2 || j > base.degree())
    throw Error(ErrorKind::BadIndex, "conjugate index " + std::to_string(j) + " outside 2.." + std::to_string(base.degree()));
  if (a.is_integer()) return Interval::point(abs(a.coords[0]));
  for (long bits = base.policy().initial_bits;; bits *= 2) {
    Interval m = conjugate_value(a, j, base, bits).modulus(bits + 8);
    if (m.width() <= tolerance) return m;
  }
}

}  // namespace pisot
