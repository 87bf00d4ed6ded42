#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <vector>

#include <gmpxx.h>

namespace spinterp {

// Ascending cache of primes, grown by re-sieving to twice the current limit.
// Thread-safe; callers get copies.
class PrimeStream {
 public:
  // The first k primes.
  std::vector<std::uint64_t> first(std::size_t k);

  // The i-th prime, 1-based.
  std::uint64_t nth(std::size_t i);

 private:
  void grow_to_count(std::size_t k);

  std::mutex mutex_;
  std::vector<std::uint64_t> cache_;
  std::uint64_t limit_ = 1;
};

// Process-wide stream shared by the free functions below.
PrimeStream& global_primes();

std::vector<std::uint64_t> first_primes(std::size_t k);

// Smallest prime >= b (b <= 2 gives 2).
std::uint64_t next_prime_geq(std::uint64_t b);

// Smallest N >= 1 with p_1 * ... * p_N >= bound, by exact products.
std::size_t smallest_count_with_product_geq(const mpz_class& bound);

}  // namespace spinterp
