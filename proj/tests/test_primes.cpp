#include <doctest.h>

#include "pisot/error.hpp"
#include "pisot/primes.hpp"

#include <cmath>

using namespace pisot;

namespace {

bool trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
  CHECK(primes_up_to(100).size() == 25);
  CHECK(primes_up_to(1000000).size() == 78498);
  auto small = primes_up_to(20000);
  std::vector<std::uint64_t> oracle;
  for (std::uint64_t n = 2; n <= 20000; ++n)
    if (trial_division(n)) oracle.push_back(n);
  CHECK(small == oracle);
}

TEST_CASE("primes_in_range crosses segment boundaries") {
  const std::uint64_t lo = 1000000000ULL - 5000, hi = 1000000000ULL + 5000;
  auto got = primes_in_range(lo, hi);
  std::vector<std::uint64_t> oracle;
  for (std::uint64_t n = lo; n < hi; ++n)
    if (trial_division(n)) oracle.push_back(n);
  CHECK(got == oracle);
  CHECK(primes_in_range(10, 10).empty());
}

TEST_CASE("PrimeStream agrees with the one-shot sieve") {
  PrimeStream ps(100);  // tiny segments exercise the extension logic
  auto all = primes_up_to(2000000);
  for (std::size_t i = 0; i < all.size(); ++i) {
    REQUIRE(ps.next() == all[i]);
  }
  CHECK(ps.index() == all.size());
  CHECK(ps.current() == all.back());
}

TEST_CASE("chebyshev theta") {
  CHECK(chebyshev_theta(1) == doctest::Approx(std::log(2.0)));
  CHECK(chebyshev_theta(4) == doctest::Approx(std::log(210.0)));
  CHECK(chebyshev_theta(4) == doctest::Approx(5.347).epsilon(1e-3));
  CHECK_THROWS_AS(chebyshev_theta(0), Error);
  // theta(p_N) / p_N at N = 10^4, p_N = 104729
  CHECK(std::abs(chebyshev_theta(10000) / 104729.0 - 1) < 0.02);
}

TEST_CASE("prime number theorem consequences") {
  PrimeStream ps;
  long double theta = 0;
  double last_ratio = 1e9;
  std::uint64_t next_check = 10;
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    theta += std::log(static_cast<long double>(ps.next()));
    if (n == next_check) {
      // log p_{N+1} / theta(p_N) decreases along a log grid
      PrimeStream peek = ps;
      double ratio = std::log(static_cast<double>(peek.next())) / static_cast<double>(theta);
      CHECK(ratio < last_ratio);
      last_ratio = ratio;
      next_check *= 2;
    }
  }
  CHECK(100000.0 / static_cast<double>(theta) < 0.1);
}
