#pragma once

// Concatenation streams (f(s_1))_beta + 0^j + (f(s_2))_beta + ..., over
// primes or integers, plus word splitting and interleaving.

#include "pisot/expansion.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/primes.hpp"
#include "pisot/shift.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pisot {

struct PolynomialSpec {
  std::vector<BigInt> coeffs;  // a_0 .. a_g

  static PolynomialSpec parse(std::string_view text);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  BigInt operator()(const BigInt& n) const;
  std::string text() const;
  // Checks degree >= 1, a_g >= 1 and f(n) >= 1 for 2 <= n <= n_max.
  // Throws Error(InvalidArgument).
  void validate(long n_max = 1000) const;
};

enum class Source { Primes, Integers };
std::string to_string(Source s);
Source source_from_string(std::string_view text);  // "primes" | "integers"

// Yields words one at a time; std::nullopt when exhausted.
class WordSource {
public:
  virtual ~WordSource() = default;
  virtual std::optional<Word> next() = 0;
};

// Words (f(s))_beta for s running through the source: primes from 2, or
// integers from `first`. At most `limit` words when limit > 0.
class ExpansionSource : public WordSource {
public:
  ExpansionSource(std::shared_ptr<const Expander> expander, PolynomialSpec f, Source source, std::uint64_t limit = 0,
                  std::uint64_t first = 1);
  std::optional<Word> next() override;
  // Source value behind the last word.
  std::uint64_t last_value() const { return last_; }

private:
  std::shared_ptr<const Expander> expander_;
  PolynomialSpec f_;
  Source source_;
  std::uint64_t limit_, emitted_ = 0, counter_, last_ = 0;
  PrimeStream primes_;
};

// Digits of the words of a source, with 0^connector after every
// `group` words (not after the last word read).
class DigitStream {
public:
  DigitStream(std::unique_ptr<WordSource> source, int connector, std::size_t group = 1);

  // Throws Error(SourceExhausted) when the source ends.
  Digit next();
  // Appends up to n digits; returns how many were appended.
  std::size_t read(std::size_t n, Word& out);
  std::uint64_t position() const { return position_; }
  std::uint64_t words_consumed() const { return words_; }
  int connector() const { return connector_; }

private:
  bool refill();

  std::unique_ptr<WordSource> source_;
  int connector_;
  std::size_t group_;
  Word buffer_;
  std::size_t pos_ = 0;
  std::uint64_t position_ = 0, words_ = 0;
};

// a 0^j b. Throws Error(Inadmissible) when a or b is not admissible.
Word join(const Word& a, const Word& b, const ShiftAutomaton& automaton);

// 2^m contiguous pieces, lengths differing by at most one, longer pieces first.
std::vector<Word> split_word(const Word& w, int m);

// v_1 w_1 ... concatenated round-robin. Words at the same index may differ
// in length by at most one; Error(LengthMismatch) otherwise.
Word interleave(const std::vector<std::vector<Word>>& streams);

// Round-robin over several word sources, same length rule as interleave().
class InterleaveSource : public WordSource {
public:
  explicit InterleaveSource(std::vector<std::unique_ptr<WordSource>> streams);
  std::optional<Word> next() override;

private:
  std::vector<std::unique_ptr<WordSource>> streams_;
  std::size_t turn_ = 0;
  std::size_t round_length_ = 0;
};

// Splits every word of `source` into 2^m pieces; piece r of each word goes
// to stream r.
std::vector<std::unique_ptr<WordSource>> split_streams(std::unique_ptr<WordSource> source, int m);

struct StreamConfig {
  PolynomialSpec f;
  Source source = Source::Primes;
  std::uint64_t limit = 0;  // source items; 0 = unbounded
  int m = 0;                // split exponent
};

// Throws Error(NonFiniteExpansion) lazily through next() when an expansion
// is not finite. With m > 0 the stream is the split pieces interleaved
// round-robin, one connector per original word.
DigitStream ce_stream(std::shared_ptr<const Expander> expander, const StreamConfig& config);

struct PatchingRatios {
  std::uint64_t n = 0;
  double next_over_total = 0;   // |v_{N+1}| / sum_{i <= N} |v_i|
  double count_over_total = 0;  // N / sum_{i <= N} |v_i|
};
// Ratios at each checkpoint N (increasing) for the words of `source`.
std::vector<PatchingRatios> patching_ratios(WordSource& source, const std::vector<std::uint64_t>& checkpoints);

}  // namespace pisot
