#include <doctest.h>

#include "pisot/analyze.hpp"
#include "pisot/error.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace pisot;

namespace {

PisotNumber base_of(const char* text) {
  return verify_pisot(PisotCandidate::from_polynomial(parse_polynomial(text)), Rational(1, 1000000000));
}

Word digits(const char* text) { return word_from_text(text, 2); }

// Every window of every length, by brute force.
std::map<Word, std::uint64_t> brute_counts(const Word& w, int k_max) {
  std::map<Word, std::uint64_t> out;
  for (int k = 1; k <= k_max; ++k)
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= w.size(); ++i)
      ++out[Word(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + k)];
  return out;
}

}  // namespace

TEST_CASE("block counts on small words") {
  BlockCounter c(2, 2);
  c.feed(digits("10010"));
  CHECK(c.count(digits("10")) == 2);
  CHECK(c.count(digits("00")) == 1);
  CHECK(c.count(digits("1")) == 2);
  BlockCounter z(2, 2);
  z.feed(digits("0000"));
  CHECK(z.count(digits("00")) == 3);
  CHECK(z.total(1) == 4);
  CHECK(z.total(2) == 3);
  CHECK_THROWS_AS(z.feed(Word{2}), Error);
}

TEST_CASE("counter agrees with brute force under any chunking") {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    const int alphabet = 2 + static_cast<int>(rng() % 2), k_max = 1 + static_cast<int>(rng() % 5);
    Word w(rng() % 200);
    for (auto& e : w) e = static_cast<Digit>(rng() % static_cast<unsigned>(alphabet));
    // cut into random pieces, counted separately then merged
    std::vector<BlockCounter> parts;
    std::size_t at = 0;
    while (at < w.size()) {
      std::size_t len = std::min<std::size_t>(w.size() - at, rng() % 6);
      parts.emplace_back(alphabet, k_max);
      parts.back().feed(w.data() + at, len);
      at += len;
    }
    BlockCounter merged(alphabet, k_max), streamed(alphabet, k_max);
    for (const auto& p : parts) merged.merge(p);
    for (std::size_t i = 0; i < w.size(); i += 3) streamed.feed(w.data() + i, std::min<std::size_t>(3, w.size() - i));
    auto brute = brute_counts(w, k_max);
    for (const auto& [block, n] : brute) {
      CHECK(merged.count(block) == n);
      CHECK(streamed.count(block) == n);
    }
    for (int k = 1; k <= k_max; ++k) {
      std::uint64_t expected = w.size() >= static_cast<std::size_t>(k) ? w.size() - static_cast<std::size_t>(k) + 1 : 0;
      CHECK(merged.total(k) == expected);
    }
  }
}

TEST_CASE("phi prime stream frequencies") {
  auto phi = std::make_shared<const Expander>(base_of("x^2-x-1"));
  ParryChain chain(build_automaton(expansion_of_one(phi->base())), phi->base());
  auto s = ce_stream(phi, {PolynomialSpec::parse("x"), Source::Primes, 0, 0});
  Word w;
  REQUIRE(s.read(1000000, w) == 1000000);
  auto r1 = count_blocks(w, 3, chain, 1);
  auto r4 = count_blocks(w, 3, chain, 4);
  CHECK(r1.identities_hold);
  CHECK(r1.inadmissible_occurrences == 0);
  CHECK(to_json(r1).dump() == to_json(r4).dump());
  std::uint64_t ones = 0;
  for (const auto& [block, n] : r1.counts)
    if (block == digits("1")) ones = n;
  const double mu1 = (5 - std::sqrt(5.0)) / 10;
  // convergence is slow: words of integers carry a surplus of ones
  CHECK(std::abs(static_cast<double>(ones) / 1e6 - mu1) < 0.02);
  CHECK(r1.worst_block == digits("00"));

  Word head(w.begin(), w.begin() + 10000);
  CHECK(count_blocks(head, 3, chain).discrepancy > r1.discrepancy);

  auto s2 = ce_stream(phi, {PolynomialSpec::parse("x"), Source::Primes, 0, 0});
  auto trend = discrepancy_trend(s2, {10000, 100000, 1000000}, 2, chain);
  REQUIRE(trend.size() == 3);
  for (const auto& p : trend) CHECK(p.discrepancy >= 0);

  auto s3 = ce_stream(phi, {PolynomialSpec::parse("x"), Source::Primes, 0, 0});
  CHECK_THROWS_AS(count_blocks(s3, 1, 2, chain), Error);
  auto s4 = ce_stream(phi, {PolynomialSpec::parse("x"), Source::Primes, 2, 0});
  try {
    count_blocks(s4, 100, 2, chain);
    FAIL("expected StreamShort");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StreamShort);
  }
}

TEST_CASE("periodic stream fails the frequency test") {
  auto phi = base_of("x^2-x-1");
  ParryChain chain(build_automaton(expansion_of_one(phi)), phi);
  Word w;
  for (int i = 0; i < 500000; ++i) {
    w.push_back(1);
    w.push_back(0);
  }
  auto r = count_blocks(w, 3, chain);
  CHECK(r.identities_hold);
  CHECK(chain.mu(digits("00")) > 0.1);
  std::uint64_t zz = 1;
  for (const auto& [block, n] : r.counts)
    if (block == digits("00")) zz = n;
  CHECK(zz == 0);
  CHECK(r.discrepancy >= 0.01);
}

TEST_CASE("length laws") {
  auto phi = std::make_shared<const Expander>(base_of("x^2-x-1"));
  auto id = PolynomialSpec::parse("x");
  auto small = length_stats(*phi, id, 1, 10);
  CHECK(small.delta == doctest::Approx(1 / std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
  CHECK(std::abs(small.delta - 2.0781) < 1e-4);
  CHECK(small.samples[4].n == 5);
  CHECK(small.samples[4].L == 3);
  CHECK(small.samples[4].R == 4);

  const std::map<std::string, std::uint64_t> n0{{"x^2-x-1", 81}, {"x^3-x^2-x-1", 23193}, {"x^2-2x-1", 90}};
  for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^2-2x-1"}) {
    CAPTURE(std::string(text));
    Expander ex(base_of(text));
    LengthOptions opts;
    opts.keep_samples = false;
    opts.threads = 4;
    auto r = length_stats(ex, id, 1, 100000, opts);
    CHECK(r.n0 == n0.at(text));
    for (const auto& v : r.violations) {
      CHECK(v.n < r.n0);
      CHECK(v.upper);  // the lower bound with slack max_tail + 1 always holds
    }
    CHECK(r.C > 0);
  }

  Expander two(base_of("x-2"));
  auto r2 = length_stats(two, id, 1, 1000);
  CHECK(r2.delta == 0);
  for (const auto& s : r2.samples) CHECK(s.R == 0);
}

TEST_CASE("golden parity") {
  CHECK(golden_parity_check(1, 200000, 4).empty());
  auto phi = std::make_shared<const Expander>(base_of("x^2-x-1"));
  CHECK(phi->lengths(BigInt(2)) == std::pair<int, int>{1, 2});
  CHECK(phi->lengths(BigInt(3)) == std::pair<int, int>{2, 2});
}

TEST_CASE("Copeland-Erdos condition for binary Champernowne") {
  Expander two(base_of("x-2"));
  auto r = ce_condition_check(two, PolynomialSpec::parse("x"), Source::Integers, 1, 20, 0.5, 0);
  CHECK(r.complete);
  CHECK(r.all_pass == false);  // fails at n = 1 only: |L'_1| counts 0 and 1 but only the word 1 exists
  for (const auto& row : r.rows) {
    CAPTURE(row.n);
    // integers below 2^n have binary length <= n
    CHECK(row.count == std::min<std::uint64_t>((std::uint64_t(1) << row.n) - 1, r.words));
    if (row.n >= 2) CHECK(row.pass);
  }
  auto json = to_json(r);
  CHECK(json["rows"].size() == 20);
}

TEST_CASE("vacuous region fails") {
  auto phi = base_of("x^2-x-1");
  Expander ex(phi);
  CEOptions opts;
  opts.source_bound = 1000;
  auto r = ce_condition_check(ex, PolynomialSpec::parse("x^3"), Source::Primes, 1, 3, 0.2, 0, opts);
  // f(2) = 8 = 10000.0001 is the shortest word
  for (const auto& row : r.rows) {
    CHECK(row.count == 0);
    CHECK_FALSE(row.pass);
  }
}

TEST_CASE("interleave additivity") {
  std::mt19937 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t count = 1 + rng() % 8;
    std::vector<Word> v(count), w(count);
    for (std::size_t i = 0; i < count; ++i) {
      v[i].resize(rng() % 12);
      w[i].resize(rng() % 12);
      for (auto& e : v[i]) e = static_cast<Digit>(rng() % 2);
      for (auto& e : w[i]) e = static_cast<Digit>(rng() % 2);
    }
    Word block(1 + rng() % 4);
    for (auto& e : block) e = static_cast<Digit>(rng() % 2);
    auto c = interleave_additivity(v, w, block);
    CHECK(c.holds);
    CHECK(c.bound == 2 * count * (block.size() - 1));
  }
  CHECK(occurrences(digits("0000"), digits("00")) == 3);
  CHECK_THROWS_AS(interleave_additivity({Word{}}, {}, digits("1")), Error);
}
