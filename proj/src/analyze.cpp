#include "pisot/analyze.hpp"

#include "pisot/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace pisot {

namespace {

long double log_big(const BigInt& n) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(static_cast<long double>(mant)) + static_cast<long double>(exp) * std::log(2.0L);
}

// Runs body(i) for i in [0, count) on up to `threads` workers; the first
// exception is rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

// ---------------------------------------------------------------------------
// Block counting
// ---------------------------------------------------------------------------

BlockCounter::BlockCounter(int alphabet_size, int k_max) : alphabet_(alphabet_size), k_max_(k_max) {
  if (k_max < 1 || alphabet_size < 1) throw Error(ErrorKind::InvalidArgument, "k_max and alphabet must be >= 1");
  std::size_t size = 1;
  for (int k = 1; k <= k_max; ++k) {
    size *= static_cast<std::size_t>(alphabet_size);
    if (size > (std::size_t(1) << 26)) throw Error(ErrorKind::InvalidArgument, "too many blocks for k_max");
    counts_.emplace_back(size, 0);
  }
}

std::size_t BlockCounter::index(const Digit* block, int k) const {
  std::size_t code = 0;
  for (int i = 0; i < k; ++i) code = code * static_cast<std::size_t>(alphabet_) + block[i];
  return code;
}

void BlockCounter::feed(const Digit* digits, std::size_t n) {
  const std::size_t keep = static_cast<std::size_t>(k_max_ - 1);
  // window = previous tail followed by the new digits
  Word window = tail_;
  window.insert(window.end(), digits, digits + n);
  const std::size_t offset = tail_.size();
  for (std::size_t i = offset; i < window.size(); ++i) {
    if (window[i] >= alphabet_)
      throw Error(ErrorKind::AlphabetViolation, "digit " + std::to_string(window[i]) + " outside alphabet");
    // blocks ending at i
    std::size_t code = 0, scale = 1;
    for (int k = 1; k <= k_max_ && static_cast<std::size_t>(k) <= i + 1; ++k) {
      code += window[i + 1 - static_cast<std::size_t>(k)] * scale;
      scale *= static_cast<std::size_t>(alphabet_);
      ++counts_[static_cast<std::size_t>(k - 1)][code];
    }
  }
  if (head_.size() < keep)
    head_.insert(head_.end(), digits, digits + std::min(n, keep - head_.size()));
  tail_.assign(window.end() - static_cast<long>(std::min(keep, window.size())), window.end());
  n_ += n;
}

void BlockCounter::merge(const BlockCounter& other) {
  if (other.alphabet_ != alphabet_ || other.k_max_ != k_max_)
    throw Error(ErrorKind::InvalidArgument, "merging incompatible counters");
  for (std::size_t k = 0; k < counts_.size(); ++k)
    for (std::size_t c = 0; c < counts_[k].size(); ++c) counts_[k][c] += other.counts_[k][c];
  // blocks that start in our tail and end in the other's head
  Word seam = tail_;
  seam.insert(seam.end(), other.head_.begin(), other.head_.end());
  for (std::size_t start = 0; start < tail_.size(); ++start)
    for (int k = 1; k <= k_max_; ++k) {
      std::size_t end = start + static_cast<std::size_t>(k);
      if (end <= tail_.size() || end > seam.size()) continue;
      ++counts_[static_cast<std::size_t>(k - 1)][index(seam.data() + start, k)];
    }
  const std::size_t keep = static_cast<std::size_t>(k_max_ - 1);
  if (head_.size() < keep)
    head_.insert(head_.end(), other.head_.begin(), other.head_.begin() + static_cast<long>(std::min(other.head_.size(), keep - head_.size())));
  Word joined_tail = tail_;
  joined_tail.insert(joined_tail.end(), other.tail_.begin(), other.tail_.end());
  tail_.assign(joined_tail.end() - static_cast<long>(std::min(keep, joined_tail.size())), joined_tail.end());
  n_ += other.n_;
}

std::uint64_t BlockCounter::count(const Word& block) const {
  if (block.empty() || static_cast<int>(block.size()) > k_max_)
    throw Error(ErrorKind::InvalidArgument, "block length outside 1..k_max");
  for (Digit e : block)
    if (e >= alphabet_) return 0;
  return counts_[block.size() - 1][index(block.data(), static_cast<int>(block.size()))];
}

std::uint64_t BlockCounter::total(int k) const {
  std::uint64_t s = 0;
  for (auto c : counts_[static_cast<std::size_t>(k - 1)]) s += c;
  return s;
}

FrequencyReport frequency_report(const BlockCounter& counter, const ParryChain& chain) {
  const ShiftAutomaton& a = chain.automaton();
  if (counter.alphabet_size() != a.alphabet_size)
    throw Error(ErrorKind::InvalidArgument, "counter alphabet does not match the base");
  FrequencyReport r;
  r.n = counter.digits();
  r.k_max = counter.k_max();
  r.alphabet_size = a.alphabet_size;
  r.identities_hold = true;
  std::uint64_t admissible_total = 0, all_total = 0;
  for (int k = 1; k <= r.k_max; ++k) {
    const std::uint64_t expected = r.n >= static_cast<std::uint64_t>(k) ? r.n - static_cast<std::uint64_t>(k) + 1 : 0;
    const std::uint64_t tk = counter.total(k);
    if (tk != expected) r.identities_hold = false;
    all_total += tk;
    for (Word& w : admissible_words(a, k)) {
      std::uint64_t c = counter.count(w);
      double m = chain.mu(w);
      admissible_total += c;
      if (r.n > 0) {
        double gap = std::abs(static_cast<double>(c) / static_cast<double>(r.n) - m);
        if (gap > r.discrepancy) {
          r.discrepancy = gap;
          r.worst_block = w;
        }
      }
      r.counts.emplace_back(std::move(w), c);
      r.mu.push_back(m);
    }
  }
  r.inadmissible_occurrences = all_total - admissible_total;
  return r;
}

FrequencyReport count_blocks(const Word& digits, int k_max, const ParryChain& chain, unsigned threads) {
  const int alphabet = chain.automaton().alphabet_size;
  const std::size_t n = digits.size();
  threads = std::max(1u, threads);
  const std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(n / 4096, 1));
  std::vector<BlockCounter> parts(chunks, BlockCounter(alphabet, k_max));
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::size_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
    parts[c].feed(digits.data() + lo, hi - lo);
  });
  BlockCounter total = std::move(parts[0]);
  for (std::size_t c = 1; c < chunks; ++c) total.merge(parts[c]);
  return frequency_report(total, chain);
}

FrequencyReport count_blocks(DigitStream& stream, std::uint64_t n, int k_max, const ParryChain& chain,
                             unsigned threads) {
  if (k_max < 1 || n < static_cast<std::uint64_t>(k_max))
    throw Error(ErrorKind::InvalidArgument, "count_blocks needs k_max >= 1 and n >= k_max");
  Word digits;
  digits.reserve(n);
  if (stream.read(n, digits) < n)
    throw Error(ErrorKind::StreamShort, "stream ended after " + std::to_string(digits.size()) + " of " +
                                            std::to_string(n) + " digits");
  return count_blocks(digits, k_max, chain, threads);
}

std::vector<TrendPoint> discrepancy_trend(DigitStream& stream, const std::vector<std::uint64_t>& checkpoints,
                                          int k_max, const ParryChain& chain) {
  BlockCounter counter(chain.automaton().alphabet_size, k_max);
  std::vector<TrendPoint> out;
  std::uint64_t prev = 0;
  for (std::uint64_t cp : checkpoints) {
    if (cp < prev) throw Error(ErrorKind::InvalidArgument, "checkpoints must increase");
    Word chunk;
    if (stream.read(cp - prev, chunk) < cp - prev)
      throw Error(ErrorKind::StreamShort, "stream ended before checkpoint " + std::to_string(cp));
    counter.feed(chunk);
    prev = cp;
    out.push_back({cp, frequency_report(counter, chain).discrepancy});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Length laws
// ---------------------------------------------------------------------------

namespace {

std::string base_text(const PisotNumber& b) { return to_string(b.candidate().polynomial()); }

// L and R of f(n) for n in [lo, hi], in parallel blocks.
std::vector<LengthSample> lengths_range(const Expander& ex, const PolynomialSpec& f, std::uint64_t lo, std::uint64_t hi,
                                        unsigned threads) {
  if (hi < lo) return {};
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<LengthSample> out(count);
  const std::size_t block = 4096;
  parallel_for((count + block - 1) / block, threads, [&](std::size_t b) {
    for (std::size_t i = b * block; i < std::min(count, (b + 1) * block); ++i) {
      std::uint64_t n = lo + i;
      auto [L, R] = ex.lengths(f(BigInt(static_cast<unsigned long>(n))));
      out[i] = {n, L, R};
    }
  });
  return out;
}

}  // namespace

LengthBoundReport length_stats(const Expander& expander, const PolynomialSpec& f, std::uint64_t n_lo,
                               std::uint64_t n_hi, const LengthOptions& options) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorKind::InvalidArgument, "length range must satisfy 1 <= lo <= hi");
  const PisotNumber& base = expander.base();
  LengthBoundReport r;
  r.base = base_text(base);
  r.f = f.text();
  r.n_lo = n_lo;
  r.n_hi = n_hi;
  r.delta = base.delta();
  r.delta_prime = r.delta + options.delta_prime_offset;
  if (options.slack)
    r.slack = *options.slack;
  else
    r.slack = base.degree() == 1 ? 1 : enumerate_Y(base).max_tail + 1;
  auto samples = lengths_range(expander, f, n_lo, n_hi, options.threads);
  const double log_beta = std::log(base.beta_double());
  for (const auto& s : samples) {
    const double lf = static_cast<double>(log_big(f(BigInt(static_cast<unsigned long>(s.n)))));
    const double lower = r.delta * lf - r.slack, upper = r.delta_prime * lf;
    if (s.R < lower) r.violations.push_back({s.n, s.R, lower, false});
    if (s.R > upper) r.violations.push_back({s.n, s.R, upper, true});
  }
  r.n0 = r.violations.empty() ? n_lo : r.violations.back().n + 1;
  for (const auto& s : samples) {
    if (s.n < std::max<std::uint64_t>(r.n0, 2)) continue;
    const double ln = std::log(static_cast<double>(s.n));
    r.C = std::max(r.C, (s.L + 1 + s.R) * log_beta / ln);
    r.C_prime = std::max(r.C_prime, s.R / ln);
  }
  if (options.keep_samples) r.samples = std::move(samples);
  return r;
}

std::vector<ParityViolation> golden_parity_check(std::uint64_t n_lo, std::uint64_t n_hi, unsigned threads) {
  PisotNumber phi = verify_pisot(PisotCandidate{{BigInt(1), BigInt(1)}}, Rational(1, 1000000000));
  Expander ex(phi);
  std::vector<ParityViolation> out;
  for (const auto& s : lengths_range(ex, PolynomialSpec::parse("x"), n_lo, n_hi, threads)) {
    const int expected = s.L % 2 == 0 ? s.L : s.L + 1;
    if (s.R != expected || s.R % 2 != 0) out.push_back({s.n, s.L, s.R});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Copeland-Erdos condition
// ---------------------------------------------------------------------------

namespace {

// Pieces of length <= n when a word of length len is split into `parts`.
std::uint64_t pieces_at_most(std::uint64_t len, std::uint64_t parts, std::uint64_t n) {
  const std::uint64_t q = len / parts, extra = len % parts;
  if (q + 1 <= n) return parts;
  if (q <= n) return parts - extra;
  return 0;
}

}  // namespace

CEConditionReport ce_condition_check(const Expander& expander, const PolynomialSpec& f, Source source, int n_lo,
                                     int n_hi, double epsilon, int m, const CEOptions& options) {
  if (!(epsilon > 0 && epsilon < 1)) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0,1)");
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorKind::InvalidArgument, "n range must satisfy 1 <= lo <= hi");
  if (m < 0 || m > 16) throw Error(ErrorKind::InvalidArgument, "split exponent out of range");
  f.validate(100);
  const PisotNumber& base = expander.base();
  const std::uint64_t parts = std::uint64_t(1) << m;
  const long double log_beta = std::log(static_cast<long double>(base.beta_double()));
  const std::uint64_t first = source == Source::Primes ? 2 : 1;

  CEConditionReport r;
  r.base = base_text(base);
  r.f = f.text();
  r.source = source;
  r.n_lo = n_lo;
  r.n_hi = n_hi;
  r.epsilon = epsilon;
  r.m = m;

  // Words of length about (1 + delta log beta) log f(s) / log beta have
  // their shortest piece near n_hi at this bound.
  const long double target = static_cast<long double>(parts * static_cast<std::uint64_t>(n_hi + 1)) /
                             (1 + static_cast<long double>(base.delta()) * log_beta);
  if (options.source_bound > 0) {
    r.source_bound = options.source_bound;
  } else {
    const long double log_value = target * log_beta - log_big(f.coeffs.back());
    const long double s = std::exp(log_value / f.degree());
    if (!(s < 1e15L)) throw Error(ErrorKind::InvalidArgument, "derived source bound is too large; pass one explicitly");
    r.source_bound = static_cast<std::uint64_t>(std::ceil(s)) + 1;
  }

  // complete when every s >= bound has L(f(s)) + 1 >= parts (n_hi + 1) and f increases from there
  {
    const BigInt fb = f(BigInt(static_cast<unsigned long>(r.source_bound)));
    const long double needed = static_cast<long double>(parts * static_cast<std::uint64_t>(n_hi + 1) - 1) * log_beta;
    std::vector<BigInt> df;
    for (std::size_t k = 1; k < f.coeffs.size(); ++k) df.push_back(f.coeffs[k] * static_cast<long>(k));
    IntPoly deriv(std::move(df));
    const bool increasing = deriv.coef.size() < 2 ||
                            Rational(static_cast<long>(r.source_bound)) >= cauchy_root_bound(deriv);
    r.complete = increasing && log_big(fb) > needed + 1e-9L;
  }

  // word-length histogram over the scanned sources
  constexpr std::uint64_t kChunk = std::uint64_t(1) << 21;
  const std::uint64_t span = r.source_bound > first ? r.source_bound - first : 0;
  const std::size_t chunks = static_cast<std::size_t>((span + kChunk - 1) / kChunk);
  std::vector<std::vector<std::uint64_t>> hist(chunks);
  std::vector<double> fitted(chunks, 0.0);
  std::vector<std::uint64_t> words(chunks, 0);
  parallel_for(chunks, options.threads, [&](std::size_t c) {
    const std::uint64_t lo = first + c * kChunk, hi = std::min(r.source_bound, lo + kChunk);
    std::vector<std::uint64_t> values;
    if (source == Source::Primes) {
      values = primes_in_range(lo, hi);
    } else {
      for (std::uint64_t s = lo; s < hi; ++s) values.push_back(s);
    }
    auto& h = hist[c];
    for (std::uint64_t s : values) {
      const BigInt v = f(BigInt(static_cast<unsigned long>(s)));
      auto [L, R] = expander.lengths(v);
      const std::size_t len = static_cast<std::size_t>(L + 1 + R);
      if (h.size() <= len) h.resize(len + 1, 0);
      ++h[len];
      if (s >= 16) fitted[c] = std::max(fitted[c], static_cast<double>(len * log_beta / std::log(static_cast<long double>(s))));
    }
    words[c] = values.size();
  });
  std::vector<std::uint64_t> total;
  for (std::size_t c = 0; c < chunks; ++c) {
    if (total.size() < hist[c].size()) total.resize(hist[c].size(), 0);
    for (std::size_t len = 0; len < hist[c].size(); ++len) total[len] += hist[c][len];
    r.fitted_C = std::max(r.fitted_C, fitted[c]);
    r.words += words[c];
  }

  auto counts = count_words_upto(build_automaton(expansion_of_one(base)), n_hi);
  r.all_pass = true;
  for (int n = n_lo; n <= n_hi; ++n) {
    CERow row;
    row.n = n;
    for (std::size_t len = 0; len < total.size(); ++len)
      row.count += total[len] * pieces_at_most(len, parts, static_cast<std::uint64_t>(n));
    row.cumulative_words = counts[static_cast<std::size_t>(n - 1)].cumulative;
    row.log_threshold = static_cast<double>((1 - static_cast<long double>(epsilon)) * log_big(row.cumulative_words));
    row.log_count = row.count > 0 ? std::log(static_cast<double>(row.count)) : -INFINITY;
    row.pass = row.count > 0 && row.log_count > row.log_threshold;
    r.all_pass = r.all_pass && row.pass;
    r.rows.push_back(std::move(row));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Interleave additivity
// ---------------------------------------------------------------------------

std::uint64_t occurrences(const Word& text, const Word& block) {
  if (block.empty() || block.size() > text.size()) return 0;
  std::uint64_t c = 0;
  for (std::size_t i = 0; i + block.size() <= text.size(); ++i)
    if (std::equal(block.begin(), block.end(), text.begin() + static_cast<long>(i))) ++c;
  return c;
}

AdditivityCheck interleave_additivity(const std::vector<Word>& v, const std::vector<Word>& w, const Word& block) {
  if (v.size() != w.size()) throw Error(ErrorKind::LengthMismatch, "v and w need the same number of words");
  AdditivityCheck out;
  Word u;
  for (std::size_t i = 0; i < v.size(); ++i) {
    u.insert(u.end(), v[i].begin(), v[i].end());
    u.insert(u.end(), w[i].begin(), w[i].end());
    out.separate += occurrences(v[i], block) + occurrences(w[i], block);
  }
  out.joined = occurrences(u, block);
  out.bound = 2 * v.size() * (block.empty() ? 0 : block.size() - 1);
  out.holds = out.joined >= out.separate && out.joined - out.separate <= out.bound;
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string fixed(double x, int digits) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);  // no "-0.000"
  return s;
}

nlohmann::ordered_json to_json(const FrequencyReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["k_max"] = r.k_max;
  j["discrepancy"] = fixed(r.discrepancy);
  j["worst_block"] = word_to_text(r.worst_block, r.alphabet_size);
  j["identities_hold"] = r.identities_hold;
  j["inadmissible_occurrences"] = r.inadmissible_occurrences;
  auto& blocks = j["blocks"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.counts.size(); ++i) {
    nlohmann::ordered_json b;
    b["block"] = word_to_text(r.counts[i].first, r.alphabet_size);
    b["count"] = r.counts[i].second;
    b["frequency"] = fixed(r.n ? static_cast<double>(r.counts[i].second) / static_cast<double>(r.n) : 0.0);
    b["mu"] = fixed(r.mu[i]);
    blocks.push_back(std::move(b));
  }
  return j;
}

nlohmann::ordered_json to_json(const LengthBoundReport& r) {
  nlohmann::ordered_json j;
  j["base"] = r.base;
  j["f"] = r.f;
  j["n_lo"] = r.n_lo;
  j["n_hi"] = r.n_hi;
  j["delta"] = fixed(r.delta);
  j["delta_prime"] = fixed(r.delta_prime);
  j["slack"] = fixed(r.slack, 1);
  j["n0"] = r.n0;
  j["C"] = fixed(r.C, 6);
  j["C_prime"] = fixed(r.C_prime, 6);
  auto& v = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& x : r.violations)
    v.push_back({{"n", x.n}, {"R", x.R}, {"bound", fixed(x.bound, 6)}, {"side", x.upper ? "upper" : "lower"}});
  return j;
}

nlohmann::ordered_json to_json(const CEConditionReport& r) {
  nlohmann::ordered_json j;
  j["base"] = r.base;
  j["f"] = r.f;
  j["source"] = to_string(r.source);
  j["epsilon"] = fixed(r.epsilon, 6);
  j["m"] = r.m;
  j["source_bound"] = r.source_bound;
  j["words"] = r.words;
  j["complete"] = r.complete;
  j["fitted_C"] = fixed(r.fitted_C, 6);
  j["fitted_C_over_2m"] = fixed(r.fitted_C / static_cast<double>(1u << r.m), 6);
  j["all_pass"] = r.all_pass;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"count", row.count},
                    {"cumulative_words", row.cumulative_words.get_str()},
                    {"log_count", fixed(row.log_count, 6)},
                    {"log_threshold", fixed(row.log_threshold, 6)},
                    {"pass", row.pass}});
  return j;
}

std::string to_csv(const FrequencyReport& r) {
  std::string out = "block,count,frequency,mu\n";
  for (std::size_t i = 0; i < r.counts.size(); ++i)
    out += word_to_text(r.counts[i].first, r.alphabet_size) + "," + std::to_string(r.counts[i].second) + "," +
           fixed(r.n ? static_cast<double>(r.counts[i].second) / static_cast<double>(r.n) : 0.0) + "," +
           fixed(r.mu[i]) + "\n";
  return out;
}

std::string to_csv(const LengthBoundReport& r) {
  std::string out = "n,L,R\n";
  for (const auto& s : r.samples)
    out += std::to_string(s.n) + "," + std::to_string(s.L) + "," + std::to_string(s.R) + "\n";
  return out;
}

std::string to_csv(const CEConditionReport& r) {
  std::string out = "n,count,cumulative_words,log_count,log_threshold,pass\n";
  for (const auto& row : r.rows)
    out += std::to_string(row.n) + "," + std::to_string(row.count) + "," + row.cumulative_words.get_str() + "," +
           fixed(row.log_count, 6) + "," + fixed(row.log_threshold, 6) + "," + (row.pass ? "1" : "0") + "\n";
  return out;
}

}  // namespace pisot
