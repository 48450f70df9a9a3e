#include "pisot/shift.hpp"

#include "pisot/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pisot {

int ShiftAutomaton::step(int state, Digit digit) const {
  if (state < 0 || digit >= alphabet_size) return kReject;
  return transitions[static_cast<std::size_t>(state)][digit];
}

ShiftAutomaton build_automaton(const ExpansionOfOne& one) {
  if (one.quasi_period.empty()) throw Error(ErrorKind::InvalidArgument, "quasi-greedy expansion has no period");
  ShiftAutomaton a;
  a.preperiod = static_cast<int>(one.quasi_preperiod.size());
  a.period = static_cast<int>(one.quasi_period.size());
  const int states = a.preperiod + a.period;
  a.alphabet_size = one.quasi_at(0) + 1;
  a.transitions.assign(static_cast<std::size_t>(states), std::vector<int>(static_cast<std::size_t>(a.alphabet_size)));
  for (int q = 0; q < states; ++q) {
    const int next = one.quasi_at(static_cast<std::size_t>(q));
    for (int e = 0; e < a.alphabet_size; ++e) {
      int to;
      if (e < next)
        to = 0;
      else if (e == next)
        to = q + 1 == states ? a.preperiod : q + 1;
      else
        to = ShiftAutomaton::kReject;
      a.transitions[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] = to;
    }
  }
  return a;
}

bool is_admissible(const Word& word, const ShiftAutomaton& automaton) {
  int q = automaton.initial;
  for (Digit e : word) {
    if (e >= automaton.alphabet_size)
      throw Error(ErrorKind::AlphabetViolation,
                  "digit " + std::to_string(e) + " outside alphabet of size " + std::to_string(automaton.alphabet_size));
    if (q == ShiftAutomaton::kReject) continue;
    q = automaton.step(q, e);
  }
  return q != ShiftAutomaton::kReject;
}

std::vector<WordCounts> count_words_upto(const ShiftAutomaton& automaton, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "word length must be >= 1");
  const std::size_t s = static_cast<std::size_t>(automaton.num_states());
  std::vector<BigInt> ways(s, BigInt(0)), next(s);
  ways[static_cast<std::size_t>(automaton.initial)] = 1;
  std::vector<WordCounts> out;
  BigInt cumulative = 0;
  for (int len = 1; len <= n; ++len) {
    for (auto& v : next) v = 0;
    for (std::size_t q = 0; q < s; ++q) {
      if (sgn(ways[q]) == 0) continue;
      for (int to : automaton.transitions[q])
        if (to != ShiftAutomaton::kReject) next[static_cast<std::size_t>(to)] += ways[q];
    }
    std::swap(ways, next);
    BigInt total = 0;
    for (const auto& v : ways) total += v;
    cumulative += total;
    out.push_back({total, cumulative});
  }
  return out;
}

WordCounts count_words(const ShiftAutomaton& automaton, int n) { return count_words_upto(automaton, n).back(); }

GrowthConstants growth_constants(const ShiftAutomaton& automaton, const PisotNumber& base, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorKind::InvalidArgument, "bad growth range");
  auto counts = count_words_upto(automaton, n_hi);
  const long double lb = std::log(static_cast<long double>(base.beta_double()));
  GrowthConstants g{n_lo, n_hi, 0, 0};
  for (int n = n_lo; n <= n_hi; ++n) {
    long exp = 0;
    long double mant = mpz_get_d_2exp(&exp, counts[static_cast<std::size_t>(n - 1)].words.get_mpz_t());
    double ratio =
        static_cast<double>(std::exp(std::log(mant) + static_cast<long double>(exp) * std::log(2.0L) - n * lb));
    if (n == n_lo || ratio < g.c1) g.c1 = ratio;
    if (n == n_lo || ratio > g.c2) g.c2 = ratio;
  }
  return g;
}

int connecting_order(const ShiftAutomaton& automaton) {
  int j = 0;
  for (int q = 0; q < automaton.num_states(); ++q) {
    int state = q, steps = 0;
    while (state != automaton.initial) {
      state = automaton.step(state, 0);
      ++steps;
      // 0 is the smallest digit, so it is never rejected; a cycle
      // avoiding the initial state would need d* = ...0^omega
      if (state == ShiftAutomaton::kReject || steps > automaton.num_states())
        throw Error(ErrorKind::InvalidArgument, "automaton has no 0-path back to the initial state");
    }
    j = std::max(j, steps);
  }
  return j;
}

namespace {

using Matrix = std::vector<std::vector<long double>>;

// Power iteration; returns eigenvalue, writes the normalised vector.
long double perron(const Matrix& m, std::vector<long double>& v, double tol, long max_it) {
  const std::size_t s = m.size();
  v.assign(s, 1.0L / static_cast<long double>(s));
  long double lambda = 0;
  int polish = 0;
  for (long it = 0; it < max_it; ++it) {
    std::vector<long double> w(s, 0.0L);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) w[i] += m[i][j] * v[j];
    long double norm = 0;
    for (auto x : w) norm += x;
    if (!(norm > 0)) break;
    long double diff = 0;
    for (std::size_t i = 0; i < s; ++i) {
      w[i] /= norm;
      diff = std::max(diff, std::abs(w[i] - v[i]));
    }
    v = std::move(w);
    lambda = norm;  // v had unit 1-norm
    if (diff < tol) {
      // polish to long double precision so printed digits are stable
      if (diff <= 64 * std::numeric_limits<long double>::epsilon() || ++polish > 10000) return lambda;
    }
  }
  throw Error(ErrorKind::EigenFailure, "power iteration did not converge");
}

}  // namespace

ParryChain::ParryChain(const ShiftAutomaton& automaton, const PisotNumber& base, double tolerance, long max_iterations)
    : automaton_(automaton) {
  const std::size_t s = static_cast<std::size_t>(automaton.num_states());
  Matrix a(s, std::vector<long double>(s, 0.0L)), at(s, std::vector<long double>(s, 0.0L));
  for (std::size_t q = 0; q < s; ++q)
    for (int to : automaton.transitions[q])
      if (to != ShiftAutomaton::kReject) {
        a[q][static_cast<std::size_t>(to)] += 1;
        at[static_cast<std::size_t>(to)][q] += 1;
      }
  std::vector<long double> r, l;
  long double lr = perron(a, r, tolerance, max_iterations);
  long double ll = perron(at, l, tolerance, max_iterations);
  const double beta = base.beta_double();
  if (std::abs(static_cast<double>(lr) - beta) > 1e-9 || std::abs(static_cast<double>(ll) - beta) > 1e-9)
    throw Error(ErrorKind::EigenFailure, "Perron eigenvalue does not match beta");
  lambda_ = static_cast<double>(lr);
  long double total = 0;
  for (std::size_t q = 0; q < s; ++q) total += l[q] * r[q];
  for (std::size_t q = 0; q < s; ++q) {
    right_.push_back(static_cast<double>(r[q]));
    left_.push_back(static_cast<double>(l[q]));
    pi_.push_back(static_cast<double>(l[q] * r[q] / total));
  }
}

double ParryChain::edge_probability(int state, Digit digit) const {
  int to = automaton_.step(state, digit);
  if (to == ShiftAutomaton::kReject) return 0;
  return right_[static_cast<std::size_t>(to)] / (lambda_ * right_[static_cast<std::size_t>(state)]);
}

double ParryChain::mu(const Word& word) const {
  long double total = 0;
  for (int q0 = 0; q0 < automaton_.num_states(); ++q0) {
    long double p = pi_[static_cast<std::size_t>(q0)];
    int q = q0;
    for (Digit e : word) {
      int to = automaton_.step(q, e);
      if (to == ShiftAutomaton::kReject) {
        p = 0;
        break;
      }
      p *= right_[static_cast<std::size_t>(to)] / (lambda_ * right_[static_cast<std::size_t>(q)]);
      q = to;
    }
    total += p;
  }
  return static_cast<double>(total);
}

MeasureTable parry_measure(const ParryChain& chain, const std::vector<Word>& words) {
  MeasureTable t;
  t.eigenvalue = chain.eigenvalue();
  std::map<std::size_t, double> sums;
  for (const Word& w : words) {
    if (!is_admissible(w, chain.automaton()))
      throw Error(ErrorKind::Inadmissible, "word " + word_to_text(w, chain.automaton().alphabet_size) +
                                                " is not admissible");
    double m = chain.mu(w);
    if (t.values.emplace(w, m).second) sums[w.size()] += m;
  }
  // normalisation is only meaningful for lengths fully covered
  for (auto [k, sum] : sums) {
    if (k == 0) continue;
    std::size_t covered = 0;
    for (const auto& [w, m] : t.values) covered += w.size() == k;
    if (covered == admissible_words(chain.automaton(), static_cast<int>(k)).size())
      t.normalization_error = std::max(t.normalization_error, std::abs(sum - 1.0));
  }
  return t;
}

MeasureTable parry_measure(const ShiftAutomaton& automaton, const PisotNumber& base, const std::vector<Word>& words) {
  return parry_measure(ParryChain(automaton, base), words);
}

std::vector<Word> admissible_words(const ShiftAutomaton& automaton, int k) {
  std::vector<Word> out;
  if (k < 0) return out;
  Word w;
  // depth-first in digit order yields lexicographic output
  auto rec = [&](auto&& self, int q) -> void {
    if (static_cast<int>(w.size()) == k) {
      out.push_back(w);
      return;
    }
    for (int e = 0; e < automaton.alphabet_size; ++e) {
      int to = automaton.step(q, static_cast<Digit>(e));
      if (to == ShiftAutomaton::kReject) continue;
      w.push_back(static_cast<Digit>(e));
      self(self, to);
      w.pop_back();
    }
  };
  rec(rec, automaton.initial);
  return out;
}

std::vector<Word> admissible_words_upto(const ShiftAutomaton& automaton, int k_max) {
  std::vector<Word> out;
  for (int k = 1; k <= k_max; ++k) {
    auto words = admissible_words(automaton, k);
    out.insert(out.end(), words.begin(), words.end());
  }
  return out;
}

double entropy(const ShiftAutomaton& automaton, const PisotNumber& base) {
  return std::log(ParryChain(automaton, base).eigenvalue());
}

std::string automaton_json(const ShiftAutomaton& automaton) {
  nlohmann::ordered_json j;
  j["states"] = automaton.num_states();
  j["initial"] = automaton.initial;
  j["alphabet_size"] = automaton.alphabet_size;
  j["preperiod"] = automaton.preperiod;
  j["period"] = automaton.period;
  j["transitions"] = automaton.transitions;
  return j.dump(2);
}

std::string measure_csv(const MeasureTable& table, int alphabet_size) {
  std::vector<std::pair<Word, double>> rows(table.values.begin(), table.values.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
  std::string out = "word,mu\n";
  char buf[64];
  for (const auto& [w, m] : rows) {
    std::snprintf(buf, sizeof buf, "%.15f", m);
    std::string text = word_to_text(w, alphabet_size);
    if (text.find(',') != std::string::npos) text = "\"" + text + "\"";
    out += text + "," + buf + "\n";
  }
  return out;
}

}  // namespace pisot
