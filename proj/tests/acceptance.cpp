// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria. argv[1] is the path of the pisot CLI.

#include "pisot/analyze.hpp"
#include "pisot/error.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

using namespace pisot;

namespace {

PisotNumber base_of(const char* text) {
  return verify_pisot(PisotCandidate::from_polynomial(parse_polynomial(text)), Rational(1, 1000000000));
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome exact_reconstruction() {
  Outcome o;
  for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^2-2x-1"}) {
    auto base = base_of(text);
    Expander ex(base);
    long bad = 0;
    for (long n = 1; n <= 100000; ++n) {
      auto e = ex.expand(BigInt(n));
      // sum eps_i beta^(i+R) by Horner over the digit word
      FieldElement acc = FieldElement::zero(base.degree());
      for (Digit d : e.word()) {
        acc = times_beta(acc, base);
        acc.coords[0] += d;
      }
      FieldElement target = beta_power(static_cast<int>(e.digits_frac.size()), base);
      for (auto& c : target.coords) c *= n;
      if (!e.finite || acc.coords != target.coords) ++bad;
    }
    o.require(bad == 0, std::string(text) + " " + std::to_string(bad) + " mismatches");
  }
  o.note("3 x 100000 expansions");
  return o;
}

Outcome golden_parity() {
  Outcome o;
  auto v = golden_parity_check(1, 1000000, worker_count());
  o.require(v.empty(), std::to_string(v.size()) + " violations");
  o.note("n in [1, 10^6], violations " + std::to_string(v.size()));
  return o;
}

Outcome length_bounds() {
  Outcome o;
  auto base = base_of("x^2-x-1");
  Expander ex(base);
  LengthOptions opts;
  opts.keep_samples = false;
  opts.threads = worker_count();
  auto r = length_stats(ex, PolynomialSpec::parse("x"), 1, 100000, opts);
  o.require(std::abs(r.delta - 2.0781) < 5e-5, "delta = " + num(r.delta, 8));
  o.require(std::abs(r.delta - 1 / std::log((1 + std::sqrt(5.0L)) / 2)) < 1e-12, "delta != 1/log(phi)");
  o.require(r.slack == 3, "slack = max_tail + 1 = 3");
  o.require(r.n0 <= 100, "n0 = " + std::to_string(r.n0));
  o.note("delta " + num(r.delta, 8) + ", slack " + num(r.slack) + ", n0 = " + std::to_string(r.n0) +
         ", violations before n0: " + std::to_string(r.violations.size()) + ", C = " + num(r.C) +
         ", C' = " + num(r.C_prime));
  return o;
}

// Oracles: golden words avoid 11, Tribonacci words avoid 111.
bool avoids_run(const Word& w, int run) {
  int cur = 0;
  for (Digit d : w) {
    cur = d == 1 ? cur + 1 : 0;
    if (cur >= run) return false;
  }
  return true;
}

std::uint64_t brute_count(int n, int run) {
  std::uint64_t c = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n); ++bits) {
    Word w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = static_cast<Digit>((bits >> i) & 1);
    if (avoids_run(w, run)) ++c;
  }
  return c;
}

Outcome word_counting() {
  Outcome o;
  auto phi = base_of("x^2-x-1"), trib = base_of("x^3-x^2-x-1");
  auto a_phi = build_automaton(expansion_of_one(phi)), a_trib = build_automaton(expansion_of_one(trib));
  auto counts = count_words_upto(a_phi, 30);
  BigInt f1 = 1, f2 = 2;  // F_2, F_3
  for (int n = 1; n <= 30; ++n) {
    BigInt fib = f2;  // F_{n+2}
    if (n <= 14) o.require(brute_count(n, 2) == fib.get_ui(), "brute force F_" + std::to_string(n + 2));
    o.require(counts[static_cast<std::size_t>(n - 1)].words == fib, "|L_" + std::to_string(n) + "| = F_n+2");
    BigInt next = f1 + f2;
    f1 = f2;
    f2 = next;
  }
  for (int n = 1; n <= 12; ++n) {
    o.require(count_words(a_phi, n).words == brute_count(n, 2), "phi brute force n=" + std::to_string(n));
    o.require(count_words(a_trib, n).words == brute_count(n, 3), "tribonacci brute force n=" + std::to_string(n));
  }
  auto g = growth_constants(a_phi, phi, 1, 30);
  auto gt = growth_constants(a_trib, trib, 1, 30);
  o.require(g.c1 > 0 && g.c1 <= g.c2, "growth constants ordered");
  o.note("phi c1 = " + num(g.c1, 6) + " c2 = " + num(g.c2, 6) + "; tribonacci c1 = " + num(gt.c1, 6) +
         " c2 = " + num(gt.c2, 6));
  return o;
}

Outcome parry_measure_checks() {
  Outcome o;
  for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^2-2x-1"}) {
    auto base = base_of(text);
    auto a = build_automaton(expansion_of_one(base));
    ParryChain chain(a, base);
    double worst = 0;
    for (int k = 1; k <= 8; ++k) {
      double total = 0;
      for (const Word& w : admissible_words(a, k)) {
        const double m = chain.mu(w);
        total += m;
        if (k == 8) continue;
        double right = 0, left = 0;
        for (int d = 0; d < a.alphabet_size; ++d) {
          Word wr = w, wl = w;
          wr.push_back(static_cast<Digit>(d));
          wl.insert(wl.begin(), static_cast<Digit>(d));
          right += chain.mu(wr);
          left += chain.mu(wl);
        }
        worst = std::max({worst, std::abs(right - m), std::abs(left - m)});
      }
      worst = std::max(worst, std::abs(total - 1));
    }
    o.require(worst < 1e-10, std::string(text) + " consistency " + num(worst));
    const double h = entropy(a, base);
    o.require(std::abs(h - std::log(base.beta_double())) < 1e-10, std::string(text) + " entropy");
  }
  auto phi = base_of("x^2-x-1");
  ParryChain chain(build_automaton(expansion_of_one(phi)), phi);
  // stationary vector of [[1/phi, 1/phi^2], [1, 0]] weighted by right eigenvector
  const long double r5 = std::sqrt(5.0L), ph = (1 + r5) / 2;
  const long double oracle = (1 / (ph * ph)) / (1 + 1 / (ph * ph));  // = (5 - sqrt 5)/10
  const double mu1 = chain.mu(Word{1});
  o.require(std::abs(static_cast<long double>(mu1) - oracle) < 1e-10, "mu([1]) = " + num(mu1, 15));
  o.require(std::abs(oracle - (5 - r5) / 10) < 1e-15L, "oracle closed form");
  o.note("mu_phi([1]) = " + num(mu1, 15));
  return o;
}

Outcome empirical_normality() {
  Outcome o;
  auto phi = std::make_shared<const Expander>(base_of("x^2-x-1"));
  ParryChain chain(build_automaton(expansion_of_one(phi->base())), phi->base());
  auto s = ce_stream(phi, {PolynomialSpec::parse("x"), Source::Primes, 0, 0});
  Word w;
  s.read(1000000, w);
  auto big = count_blocks(w, 3, chain, worker_count());
  auto small = count_blocks(Word(w.begin(), w.begin() + 10000), 3, chain);
  std::uint64_t ones = 0;
  for (const auto& [block, n] : big.counts)
    if (block == Word{1}) ones = n;
  const double f1 = static_cast<double>(ones) / 1e6;
  o.require(big.identities_hold, "sliding-window identities");
  o.require(std::abs(f1 - chain.mu(Word{1})) < 0.01, "N_1/n = " + num(f1, 6) + " vs mu([1]) within 0.01");
  o.require(big.discrepancy < 0.01, "discrepancy at 10^6 = " + num(big.discrepancy) + " < 0.01");
  o.require(big.discrepancy < small.discrepancy, "discrepancy decreases from 10^4 to 10^6");
  Word periodic;
  for (int i = 0; i < 500000; ++i) periodic.insert(periodic.end(), {1, 0});
  auto control = count_blocks(periodic, 3, chain);
  o.require(control.discrepancy >= 0.01, "negative control should fail");
  o.note("discrepancy 10^4: " + num(small.discrepancy) + ", 10^6: " + num(big.discrepancy) + " (worst block " +
         word_to_text(big.worst_block, 2) + "), control: " + num(control.discrepancy));
  return o;
}

Outcome ce_condition() {
  Outcome o;
  auto phi = base_of("x^2-x-1");
  Expander ex(phi);
  CEOptions opts;
  opts.threads = worker_count();
  // window frozen after computing both sides exactly
  constexpr int kLo = 28, kHi = 40;
  auto r = ce_condition_check(ex, PolynomialSpec::parse("x"), Source::Primes, kLo, kHi, 0.2, 1, opts);
  o.require(r.all_pass, "phi window [28, 40]");
  const auto& last = r.rows.back();
  o.require(last.count == 32412589, "pieces of length <= 40: " + std::to_string(last.count));
  o.require(last.cumulative_words == 701408730, "|L'_40|");
  o.note("phi m=1 eps=0.2: n in [" + std::to_string(kLo) + ", " + std::to_string(kHi) + "], at n=40 " +
         std::to_string(last.count) + " > " + last.cumulative_words.get_str() + "^0.8, scanned primes < " +
         std::to_string(r.source_bound) + ", C/2^m = " + num(r.fitted_C / 2));

  Expander two(base_of("x-2"));
  auto c = ce_condition_check(two, PolynomialSpec::parse("x"), Source::Integers, 5, 20, 0.2, 0);
  o.require(c.all_pass && c.complete, "binary Champernowne n in [5, 20]");
  o.note("binary Champernowne m=0 passes on [5, 20]");
  return o;
}

Outcome prime_sums() {
  Outcome o;
  // independent sieve of Eratosthenes
  const std::size_t limit = 1400000;
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::size_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  auto theta = [&](std::size_t n) {
    long double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::log(static_cast<long double>(primes[i]));
    return static_cast<double>(s);
  };
  const double t5 = chebyshev_theta(100000), t4 = chebyshev_theta(10000);
  o.require(std::abs(t5 - theta(100000)) < 1e-6 * t5, "theta(p_100000) vs sieve");
  o.require(std::abs(t4 - theta(10000)) < 1e-6 * t4, "theta(p_10000) vs sieve");
  const double ratio = 100000 / t5, rel = t4 / static_cast<double>(primes[9999]);
  o.require(ratio < 0.1, "N/theta(p_N) = " + num(ratio));
  o.require(std::abs(rel - 1) < 0.02, "theta(p_N)/p_N = " + num(rel));
  o.note("N/theta(p_N) at 10^5 = " + num(ratio) + ", theta(p_N)/p_N at 10^4 = " + num(rel, 6));
  return o;
}

Outcome additivity() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t count = 1 + rng() % 16;
    std::vector<Word> v(count), w(count);
    const int alphabet = 2 + static_cast<int>(rng() % 2);
    auto fill = [&](Word& x) {
      x.resize(rng() % 20);
      for (auto& e : x) e = static_cast<Digit>(rng() % static_cast<unsigned>(alphabet));
    };
    for (std::size_t i = 0; i < count; ++i) {
      fill(v[i]);
      fill(w[i]);
    }
    Word block(1 + rng() % 5);
    for (auto& e : block) e = static_cast<Digit>(rng() % static_cast<unsigned>(alphabet));
    auto c = interleave_additivity(v, w, block);
    if (!c.holds || c.bound != 2 * count * (block.size() - 1)) ++failures;
  }
  o.require(failures == 0, std::to_string(failures) + " instances");
  o.note("1000 random instances");
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.require(false, "CLI path not given");
    return o;
  }
  const auto dir = std::filesystem::temp_directory_path() / ("pisot_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string stream = (dir / "stream.txt").string();
  const std::vector<std::string> commands = {
      "verify-pisot \"x^3-x^2-x-1\"",
      "--base \"x^2-x-1\" expand 1..2000",
      "--base \"x^3-x^2-x-1\" expand 1..500 --format json",
      "--base \"x^2-2x-1\" d-of-one",
      "--base \"x^3-x^2-x-1\" automaton",
      "--base \"x^3-x^2-x-1\" measure --kmax 6",
      "--base \"x^2-x-1\" measure --kmax 6 --format csv",
      "--base \"x^2-x-1\" generate --f \"x^2+1\" --source primes --digits 200000 --m 1",
      "--base \"x^2-x-1\" analyze --in " + stream + " --kmax 4",
      "--base \"x^2-x-1\" lengths --range 1..50000 --golden-parity",
      "--base \"x^3-x^2-x-1\" lengths --range 1..20000 --format csv",
      "--base \"x^2-x-1\" ce-check --source primes --range 10..24 --m 1 --epsilon 0.2",
  };
  // reference stream for analyze
  std::system((cli + " --base \"x^2-x-1\" generate --digits 300000 --out " + stream + " 2>/dev/null").c_str());
  int mismatches = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "4"}) {
      const auto out = dir / ("out_" + std::to_string(i) + "_" + std::to_string(outputs.size()));
      const std::string cmd = cli + " --threads " + threads + " --out " + out.string() + " " + commands[i];
      const int status = std::system(cmd.c_str());
      std::string text = slurp(out) + "|status=" + std::to_string(status);
      const auto meta = out.string() + ".meta.json";
      if (std::filesystem::exists(meta)) text += slurp(meta);
      outputs.push_back(text);
    }
    if (outputs[0] != outputs[1] || outputs[0] != outputs[2] || outputs[0].size() < 20) {
      ++mismatches;
      o.require(false, commands[i]);
    }
  }
  std::filesystem::remove_all(dir);
  o.note(std::to_string(commands.size()) + " commands x (2 runs + 4 threads), mismatches " + std::to_string(mismatches));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact reconstruction", exact_reconstruction},
      {"golden parity law", golden_parity},
      {"length bounds", length_bounds},
      {"word counting", word_counting},
      {"Parry measure", parry_measure_checks},
      {"empirical normality", empirical_normality},
      {"Copeland-Erdos condition", ce_condition},
      {"prime sums", prime_sums},
      {"interleave additivity", additivity},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %-26s %s  (%.1fs) %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
