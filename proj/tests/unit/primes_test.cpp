#include <gtest/gtest.h>

#include <thread>

#include "spinterp/primes.hpp"
#include "support/oracles.hpp"

using namespace spinterp;

TEST(PrimesTest, FirstPrimes) {
  EXPECT_EQ(first_primes(5), (std::vector<std::uint64_t>{2, 3, 5, 7, 11}));
  EXPECT_EQ(first_primes(1), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(first_primes(25).back(), 97u);
  EXPECT_TRUE(first_primes(0).empty());
}

TEST(PrimesTest, FirstPrimesMatchTrialDivision) {
  const auto ps = first_primes(3000);
  std::uint64_t k = 0;
  for (std::uint64_t v = 2; k < ps.size(); ++v) {
    if (oracle::is_prime_trial(v)) ASSERT_EQ(ps[k++], v);
  }
  EXPECT_EQ(global_primes().nth(1), 2u);
  EXPECT_EQ(global_primes().nth(3000), ps.back());
}

TEST(PrimesTest, NextPrime) {
  EXPECT_EQ(next_prime_geq(0), 2u);
  EXPECT_EQ(next_prime_geq(2), 2u);
  EXPECT_EQ(next_prime_geq(5), 5u);
  EXPECT_EQ(next_prime_geq(6), 7u);
  EXPECT_EQ(next_prime_geq(90), 97u);
  for (std::uint64_t b = 0; b < 5000; ++b) {
    std::uint64_t want = std::max<std::uint64_t>(b, 2);
    while (!oracle::is_prime_trial(want)) ++want;
    ASSERT_EQ(next_prime_geq(b), want);
  }
}

TEST(PrimesTest, SmallestCountWithProduct) {
  EXPECT_EQ(smallest_count_with_product_geq(4), 2u);
  EXPECT_EQ(smallest_count_with_product_geq(1), 1u);
  EXPECT_EQ(smallest_count_with_product_geq(256), 5u);
  EXPECT_EQ(smallest_count_with_product_geq(210), 4u);
  EXPECT_EQ(smallest_count_with_product_geq(211), 5u);
  // Direct product oracle on powers of 3.
  mpz_class bound = 1;
  for (int e = 0; e < 60; ++e, bound *= 3) {
    mpz_class prod = 1;
    std::size_t k = 0;
    std::uint64_t v = 1;
    do {
      do ++v; while (!oracle::is_prime_trial(v));
      prod *= static_cast<unsigned long>(v);
      ++k;
    } while (prod < bound);
    ASSERT_EQ(smallest_count_with_product_geq(bound), k) << e;
  }
}

TEST(PrimesTest, StreamIsThreadSafe) {
  PrimeStream stream;
  std::vector<std::thread> threads;
  std::vector<std::uint64_t> last(8);
  for (std::size_t i = 0; i < last.size(); ++i) {
    threads.emplace_back([&, i] { last[i] = stream.first(500 + 100 * i).back(); });
  }
  for (auto& t : threads) t.join();
  for (std::size_t i = 0; i < last.size(); ++i) EXPECT_EQ(last[i], first_primes(500 + 100 * i).back());
}
