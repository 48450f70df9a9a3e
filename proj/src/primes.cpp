#include "pisot/primes.hpp"

#include "pisot/error.hpp"

#include <cmath>

namespace pisot {

namespace {

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Sieves [lo, hi) with base primes covering sqrt(hi - 1).
void sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& base,
                   std::vector<std::uint64_t>& out) {
  if (hi <= lo) return;
  std::vector<char> composite(hi - lo, 0);
  for (std::uint64_t p : base) {
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m < hi; m += p) composite[m - lo] = 1;
  }
  for (std::uint64_t v = std::max<std::uint64_t>(lo, 2); v < hi; ++v)
    if (!composite[v - lo]) out.push_back(v);
}

}  // namespace

PrimeStream::PrimeStream(std::uint64_t segment_size) : segment_size_(std::max<std::uint64_t>(segment_size, 64)) {}

void PrimeStream::sieve_next_segment() {
  const std::uint64_t hi = low_ + segment_size_;
  const std::uint64_t need = isqrt(hi) + 1;
  if (need > base_limit_) {
    base_limit_ = std::max(need, 2 * base_limit_);
    base_ = small_primes(base_limit_);
  }
  buffer_.clear();
  pos_ = 0;
  sieve_segment(low_, hi, base_, buffer_);
  low_ = hi;
}

std::uint64_t PrimeStream::next() {
  while (pos_ >= buffer_.size()) sieve_next_segment();
  current_ = buffer_[pos_++];
  ++index_;
  return current_;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi <= lo) return out;
  auto base = small_primes(isqrt(hi) + 1);
  constexpr std::uint64_t kSegment = 1u << 20;
  for (std::uint64_t s = lo; s < hi; s += kSegment) sieve_segment(s, std::min(hi, s + kSegment), base, out);
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) { return primes_in_range(2, x + 1); }

double chebyshev_theta(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "theta needs N >= 1");
  PrimeStream ps;
  long double sum = 0;
  for (std::uint64_t i = 0; i < n; ++i) sum += std::log(static_cast<long double>(ps.next()));
  return static_cast<double>(sum);
}

}  // namespace pisot
