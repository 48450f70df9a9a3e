#pragma once

// Empirical checks: block frequencies against the Parry measure, length
// laws for R(n), the golden-ratio parity law and the Copeland-Erdos
// counting condition.

#include "pisot/construct.hpp"
#include "pisot/shift.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pisot {

// Sliding-window block counter for lengths 1..k_max. Counts every block
// that occurs, admissible or not.
class BlockCounter {
public:
  BlockCounter(int alphabet_size, int k_max);

  void feed(const Digit* digits, std::size_t n);
  void feed(const Word& w) { feed(w.data(), w.size()); }
  // Adds the counts of `other`, which must have seen the digits directly
  // following ours; the k_max-1 digits that straddle the seam are recounted.
  void merge(const BlockCounter& other);

  std::uint64_t digits() const { return n_; }
  int k_max() const { return k_max_; }
  int alphabet_size() const { return alphabet_; }
  std::uint64_t count(const Word& block) const;
  // Sum of counts over all blocks of length k.
  std::uint64_t total(int k) const;

private:
  std::size_t index(const Digit* block, int k) const;

  int alphabet_, k_max_;
  std::vector<std::vector<std::uint64_t>> counts_;  // [k-1][block code]
  std::uint64_t n_ = 0;
  Word head_, tail_;  // first and last k_max-1 digits seen
};

struct FrequencyReport {
  std::uint64_t n = 0;
  int k_max = 0;
  int alphabet_size = 0;
  std::vector<std::pair<Word, std::uint64_t>> counts;  // admissible blocks, by length then lexicographic
  std::vector<double> mu;                              // aligned with counts
  double discrepancy = 0;                              // max |N_d/n - mu(d)|
  Word worst_block;
  std::uint64_t inadmissible_occurrences = 0;
  bool identities_hold = false;  // sum_{|d|=k} N_d = n-k+1 for every k
};

FrequencyReport frequency_report(const BlockCounter& counter, const ParryChain& chain);

// Reads n digits from the stream and counts blocks of length <= k_max, in
// `threads` chunks (same result for any thread count). Throws
// Error(StreamShort) if the stream ends early.
FrequencyReport count_blocks(DigitStream& stream, std::uint64_t n, int k_max, const ParryChain& chain,
                             unsigned threads = 1);
FrequencyReport count_blocks(const Word& digits, int k_max, const ParryChain& chain, unsigned threads = 1);

struct TrendPoint {
  std::uint64_t n = 0;
  double discrepancy = 0;
};
std::vector<TrendPoint> discrepancy_trend(DigitStream& stream, const std::vector<std::uint64_t>& checkpoints,
                                          int k_max, const ParryChain& chain);

struct LengthSample {
  std::uint64_t n = 0;
  int L = 0;
  int R = 0;
};

struct LengthViolation {
  std::uint64_t n = 0;
  int R = 0;
  double bound = 0;
  bool upper = false;
};

struct LengthBoundReport {
  std::string base;
  std::string f;
  std::uint64_t n_lo = 0, n_hi = 0;
  double delta = 0, delta_prime = 0, slack = 0;
  std::vector<LengthSample> samples;
  std::vector<LengthViolation> violations;  // over the whole range
  std::uint64_t n0 = 0;  // smallest n0 with no violation in [n0, n_hi]
  // Fitted constants over [max(n0, 2), n_hi]: |(f(n))| <= C log n / log beta
  // and R(f(n)) <= C' log n.
  double C = 0, C_prime = 0;
};

struct LengthOptions {
  double delta_prime_offset = 0.2;  // delta' = delta + offset
  std::optional<double> slack;      // default: max_tail + 1 from enumerate_Y
  bool keep_samples = true;
  unsigned threads = 1;
};

// Bounds are applied to R(f(n)) against log f(n).
LengthBoundReport length_stats(const Expander& expander, const PolynomialSpec& f, std::uint64_t n_lo,
                               std::uint64_t n_hi, const LengthOptions& options = {});

struct ParityViolation {
  std::uint64_t n = 0;
  int L = 0;
  int R = 0;
};
// Golden ratio: R even and R = L (L even) or L + 1 (L odd).
std::vector<ParityViolation> golden_parity_check(std::uint64_t n_lo, std::uint64_t n_hi, unsigned threads = 1);

struct CERow {
  int n = 0;
  std::uint64_t count = 0;     // pieces of length <= n among scanned sources
  BigInt cumulative_words;     // |L'_n|
  double log_threshold = 0;    // (1 - eps) log |L'_n|
  double log_count = 0;
  bool pass = false;
};

struct CEConditionReport {
  std::string base;
  std::string f;
  Source source = Source::Primes;
  int n_lo = 0, n_hi = 0;
  double epsilon = 0;
  int m = 0;
  std::uint64_t source_bound = 0;  // scanned s < source_bound
  std::uint64_t words = 0;
  bool complete = false;           // no larger s can contribute a piece <= n_hi
  double fitted_C = 0;             // max |w| log beta / log s, s >= 16
  std::vector<CERow> rows;
  bool all_pass = false;
};

struct CEOptions {
  std::uint64_t source_bound = 0;  // 0: derived from the base and n_hi
  unsigned threads = 1;
};

CEConditionReport ce_condition_check(const Expander& expander, const PolynomialSpec& f, Source source, int n_lo,
                                     int n_hi, double epsilon, int m, const CEOptions& options = {});

// N_d(v_1 w_1 ... v_N w_N) against sum N_d(v_i) + sum N_d(w_i).
struct AdditivityCheck {
  std::uint64_t joined = 0, separate = 0, bound = 0;
  bool holds = false;
};
std::uint64_t occurrences(const Word& text, const Word& block);
AdditivityCheck interleave_additivity(const std::vector<Word>& v, const std::vector<Word>& w, const Word& block);

// Fixed-precision decimal text, for byte-stable reports.
std::string fixed(double x, int digits = 12);

nlohmann::ordered_json to_json(const FrequencyReport& r);
nlohmann::ordered_json to_json(const LengthBoundReport& r);
nlohmann::ordered_json to_json(const CEConditionReport& r);
std::string to_csv(const FrequencyReport& r);
std::string to_csv(const LengthBoundReport& r);
std::string to_csv(const CEConditionReport& r);

}  // namespace pisot
