#pragma once

// Segmented sieve of Eratosthenes: an unbounded prime stream and the
// Chebyshev function theta.

#include <cstdint>
#include <vector>

namespace pisot {

// Emits 2, 3, 5, ... without omissions, sieving one segment at a time.
class PrimeStream {
public:
  explicit PrimeStream(std::uint64_t segment_size = 1u << 18);

  std::uint64_t next();
  // Number of primes emitted so far (N) and the last one (p_N, 0 before the first).
  std::uint64_t index() const { return index_; }
  std::uint64_t current() const { return current_; }

private:
  void sieve_next_segment();

  std::uint64_t segment_size_;
  std::uint64_t low_ = 0;  // start of the next segment to sieve
  std::vector<std::uint64_t> base_;
  std::uint64_t base_limit_ = 1;
  std::vector<std::uint64_t> buffer_;
  std::size_t pos_ = 0;
  std::uint64_t index_ = 0;
  std::uint64_t current_ = 0;
};

std::vector<std::uint64_t> primes_up_to(std::uint64_t x);
// Primes in [lo, hi), increasing.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// theta(p_N) = sum_{i <= N} log p_i. Throws Error(InvalidArgument) for N = 0.
double chebyshev_theta(std::uint64_t n);

}  // namespace pisot
