#include "spinterp/primes.hpp"

#include <stdexcept>

#include "spinterp/rings.hpp"

namespace spinterp {

std::vector<std::uint64_t> PrimeStream::first(std::size_t k) {
  std::lock_guard lock(mutex_);
  grow_to_count(k);
  return {cache_.begin(), cache_.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::uint64_t PrimeStream::nth(std::size_t i) {
  if (i == 0) throw std::out_of_range("prime index is 1-based");
  std::lock_guard lock(mutex_);
  grow_to_count(i);
  return cache_[i - 1];
}

void PrimeStream::grow_to_count(std::size_t k) {
  while (cache_.size() < k) {
    const std::uint64_t limit = std::max<std::uint64_t>(64, limit_ * 2);
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
      if (composite[i]) continue;
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    for (std::uint64_t i = limit_ + 1; i <= limit; ++i) {
      if (i >= 2 && !composite[i]) cache_.push_back(i);
    }
    limit_ = limit;
  }
}

PrimeStream& global_primes() {
  static PrimeStream stream;
  return stream;
}

std::vector<std::uint64_t> first_primes(std::size_t k) { return global_primes().first(k); }

std::uint64_t next_prime_geq(std::uint64_t b) {
  if (b <= 2) return 2;
  for (std::uint64_t c = b;; ++c) {
    if (is_prime(c)) return c;
  }
}

std::size_t smallest_count_with_product_geq(const mpz_class& bound) {
  mpz_class product = 1;
  for (std::size_t n = 1;; ++n) {
    product *= static_cast<unsigned long>(global_primes().nth(n));
    if (product >= bound) return n;
  }
}

}  // namespace spinterp
