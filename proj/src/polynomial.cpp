#include "pisot/polynomial.hpp"

#include "pisot/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace pisot {

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw Error(ErrorKind::ParseError, "cannot parse polynomial '" + std::string(text) + "': " + why);
}

IntPoly parse_list(std::string_view original, const std::string& s) {
  if (s.size() < 2 || s.back() != ']') parse_fail(original, "unterminated coefficient list");
  std::vector<BigInt> coef;
  std::size_t pos = 1;
  const std::size_t end = s.size() - 1;
  if (pos == end) parse_fail(original, "empty coefficient list");
  while (pos <= end) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos || comma > end) comma = end;
    std::string tok = s.substr(pos, comma - pos);
    if (tok.empty()) parse_fail(original, "empty coefficient");
    std::size_t digits_from = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (digits_from == tok.size() ||
        !std::all_of(tok.begin() + static_cast<long>(digits_from), tok.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      parse_fail(original, "non-integer coefficient '" + tok + "'");
    if (tok[0] == '+') tok.erase(0, 1);
    coef.emplace_back(tok);
    pos = comma + 1;
  }
  IntPoly p(std::move(coef));
  if (p.is_zero()) parse_fail(original, "zero polynomial");
  return p;
}

}  // namespace

IntPoly parse_polynomial(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) parse_fail(text, "empty input");
  if (s[0] == '[') return parse_list(text, s);

  std::map<int, BigInt> terms;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      parse_fail(text, "expected '+' or '-' at position " + std::to_string(i));
    }
    first = false;
    std::size_t digits_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    BigInt coeff = 1;
    bool has_coeff = i > digits_start;
    if (has_coeff) coeff = BigInt(s.substr(digits_start, i - digits_start));
    if (i < s.size() && s[i] == '*') {
      if (!has_coeff) parse_fail(text, "dangling '*'");
      ++i;
      if (i >= s.size() || (s[i] != 'x' && s[i] != 'X')) parse_fail(text, "expected x after '*'");
    }
    int power = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t exp_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == exp_start) parse_fail(text, "missing exponent");
        if (i - exp_start > 4) parse_fail(text, "exponent too large");
        power = std::stoi(s.substr(exp_start, i - exp_start));
      }
    } else if (!has_coeff) {
      parse_fail(text, "unexpected character at position " + std::to_string(i));
    }
    terms[power] += sign * coeff;
  }
  int deg = terms.empty() ? 0 : terms.rbegin()->first;
  std::vector<BigInt> coef(static_cast<std::size_t>(deg) + 1, BigInt(0));
  for (auto& [k, v] : terms) coef[static_cast<std::size_t>(k)] = v;
  IntPoly p(std::move(coef));
  if (p.is_zero()) parse_fail(text, "zero polynomial");
  return p;
}

std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const BigInt& c = p.coef[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    BigInt mag = abs(c);
    if (sgn(c) < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (k == 0 || mag != 1) out += mag.get_str();
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.coef.size());
  for (const auto& v : p.coef) c.emplace_back(v);
  return RatPoly(std::move(c));
}

RatPoly derivative(const RatPoly& p) {
  if (p.degree() < 1) return RatPoly();
  std::vector<Rational> c;
  for (std::size_t k = 1; k < p.coef.size(); ++k) c.emplace_back(p.coef[k] * static_cast<long>(k));
  return RatPoly(std::move(c));
}

template <class C>
static Poly<C> multiply(const Poly<C>& a, const Poly<C>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<C>();
  std::vector<C> c(a.coef.size() + b.coef.size() - 1, C(0));
  for (std::size_t i = 0; i < a.coef.size(); ++i)
    for (std::size_t j = 0; j < b.coef.size(); ++j) c[i + j] += a.coef[i] * b.coef[j];
  return Poly<C>(std::move(c));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) { return multiply(a, b); }
IntPoly operator*(const IntPoly& a, const IntPoly& b) { return multiply(a, b); }

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> rem = a.coef;
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {RatPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(da - db) + 1, Rational(0));
  for (int k = da; k >= db; --k) {
    Rational factor = rem[static_cast<std::size_t>(k)] / b.lead();
    quo[static_cast<std::size_t>(k - db)] = factor;
    if (sgn(factor) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= factor * b.coef[static_cast<std::size_t>(j)];
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    Rational l = a.lead();
    for (auto& c : a.coef) c /= l;
  }
  return a;
}

bool divides(const IntPoly& b, const IntPoly& a) {
  auto [q, r] = divmod(to_rational(a), to_rational(b));
  if (!r.is_zero()) return false;
  return std::all_of(q.coef.begin(), q.coef.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Rational eval(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.coef.rbegin(); it != p.coef.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigInt eval(const IntPoly& p, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = p.coef.rbegin(); it != p.coef.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const IntPoly& p, const Rational& x) { return sgn(eval(to_rational(p), x)); }

namespace {

std::vector<RatPoly> sturm_sequence(const IntPoly& p) {
  std::vector<RatPoly> seq;
  seq.push_back(to_rational(p));
  seq.push_back(derivative(seq[0]));
  while (!seq.back().is_zero()) {
    auto r = divmod(seq[seq.size() - 2], seq.back()).second;
    for (auto& c : r.coef) c = -c;
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int variations_at(const std::vector<RatPoly>& seq, const Rational& x) {
  std::vector<int> signs;
  for (const auto& q : seq) signs.push_back(sgn(eval(q, x)));
  return sign_changes(signs);
}

int variations_at_infinity(const std::vector<RatPoly>& seq) {
  std::vector<int> signs;
  for (const auto& q : seq) signs.push_back(sgn(q.lead()));
  return sign_changes(signs);
}

}  // namespace

int sturm_count(const IntPoly& p, const Rational& a, const Rational& b) {
  auto seq = sturm_sequence(p);
  return variations_at(seq, a) - variations_at(seq, b);
}

int sturm_count_above(const IntPoly& p, const Rational& a) {
  auto seq = sturm_sequence(p);
  return variations_at(seq, a) - variations_at_infinity(seq);
}

Rational cauchy_root_bound(const IntPoly& p) {
  Rational m = 0;
  Rational lead_abs = Rational(abs(p.lead()));
  for (int k = 0; k < p.degree(); ++k) {
    Rational q = Rational(abs(p.coef[static_cast<std::size_t>(k)])) / lead_abs;
    if (q > m) m = q;
  }
  return m + 1;
}

}  // namespace pisot
