#include <gtest/gtest.h>

#include <random>

#include "spinterp/generator.hpp"
#include "spinterp/interp_base.hpp"
#include "spinterp/interp_mod.hpp"
#include "spinterp/verify.hpp"

using namespace spinterp;

namespace {

const IntegerRing Z;
using U = UniPoly<IntegerRing>;

// Smallest N with p_1...p_N >= D^e, by direct products over trial-divided primes.
std::uint64_t count_for(std::uint64_t D, std::uint64_t e) {
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), D, e);
  mpz_class prod = 1;
  std::uint64_t k = 0, v = 1;
  do {
    bool prime;
    do {
      ++v;
      prime = true;
      for (std::uint64_t d = 2; d * d <= v; ++d) prime = prime && v % d != 0;
    } while (!prime);
    prod *= static_cast<unsigned long>(v);
    ++k;
  } while (prod < bound);
  return k;
}

}  // namespace

TEST(ModParamsTest, Examples) {
  const auto a = ModParams::compute(2, 2, 2);
  EXPECT_EQ(std::vector<std::uint64_t>({a.N1, a.N2, a.N3, a.N}), std::vector<std::uint64_t>({2, 3, 5, 5}));
  EXPECT_EQ(a.primes, (std::vector<std::uint64_t>{2, 3, 5, 7, 11}));
  EXPECT_EQ(a.test_window(), 4u);
  EXPECT_EQ(a.test_threshold(), 3u);
  const auto b = ModParams::compute(1, 1, 2);
  EXPECT_EQ(std::vector<std::uint64_t>({b.N1, b.N2, b.N3, b.N}), std::vector<std::uint64_t>({1, 1, 1, 1}));
  const auto c = ModParams::compute(2, 3, 3);
  EXPECT_EQ(std::vector<std::uint64_t>({c.N1, c.N2, c.N3, c.N}), std::vector<std::uint64_t>({4, 5, 9, 9}));
}

TEST(ModParamsTest, AgreesWithDirectProducts) {
  for (std::uint64_t n = 1; n <= 4; ++n) {
    for (std::uint64_t T = 1; T <= 8; ++T) {
      for (std::uint64_t D = 2; D <= 10; ++D) {
        const auto m = ModParams::compute(n, T, D);
        ASSERT_EQ(m.N1, count_for(D, n * (T - 1)));
        ASSERT_EQ(m.N2, count_for(D, n * T));
        ASSERT_EQ(m.N3, count_for(D, 4 * n * (T - 1)));
        ASSERT_EQ(m.N, std::max(m.N1 + m.N2 - 1, m.N3));
        ASSERT_EQ(m.primes.size(), m.N);
      }
    }
  }
}

TEST(ModParamsTest, CeilLog2Power) {
  EXPECT_EQ(ceil_log2_power(2, 8), 8u);
  EXPECT_EQ(ceil_log2_power(3, 1), 2u);
  EXPECT_EQ(ceil_log2_power(3, 4), 7u);  // 81 -> 6.34
  EXPECT_EQ(ceil_log2_power(10, 0), 0u);
  for (std::uint64_t D = 2; D < 40; ++D) {
    for (std::uint64_t m = 0; m < 30; ++m) {
      mpz_class v;
      mpz_ui_pow_ui(v.get_mpz_t(), D, m);
      const std::uint64_t bits = mpz_sizeinbase(mpz_class(v - 1).get_mpz_t(), 2);
      ASSERT_EQ(ceil_log2_power(D, m), v == 1 ? 0 : bits) << D << "^" << m;
    }
  }
}

TEST(ModTermTest, WorkedInstance) {
  const auto f = parse_sparse("x1 + x2", Z, 2);
  const auto params = ModParams::compute(2, 2, 2);
  std::vector<U> fmod;
  for (std::uint64_t j = 0; j < params.test_window(); ++j) {
    const std::uint64_t p = params.primes[j];
    fmod.push_back(mod_cyclic(substitute_sparse(f, SubstitutionSpec(2, 2, p)), p));
  }
  EXPECT_EQ(fmod[0], U::from_terms(Z, {{0, 1}, {1, 1}}));
  const auto x1 = term_test_mod<IntegerRing>({{1, 0}, 1}, fmod, params);
  EXPECT_EQ(x1.decreases, 4u);
  EXPECT_TRUE(x1.passed());
  EXPECT_FALSE(term_test_mod<IntegerRing>({{0, 1}, 2}, fmod, params).passed());
  EXPECT_EQ(term_test_mod<IntegerRing>({{0, 1}, 2}, fmod, params).decreases, 0u);

  const auto single = parse_sparse("7*x1^3", Z, 2);
  const auto sp = ModParams::compute(2, 1, 4);
  std::vector<U> smod;
  for (std::uint64_t j = 0; j < sp.test_window(); ++j) {
    smod.push_back(mod_cyclic(substitute_sparse(single, SubstitutionSpec(2, 4, sp.primes[j])), sp.primes[j]));
  }
  EXPECT_TRUE(term_test_mod<IntegerRing>({{3, 0}, 7}, smod, sp).passed());
}

TEST(ModSelectTest, Examples) {
  const std::vector<std::uint64_t> a{2, 2, 2, 2, 2}, b{1, 3, 2};
  EXPECT_EQ(select_ok_prime(a, 5), 1u);
  EXPECT_EQ(select_ok_prime(b, 3), 2u);
}

TEST(InterpolateModTest, WorkedInstanceTrace) {
  for (auto backend : {UnivarBackend::lagrange(), UnivarBackend::ben_or_tiwari()}) {
    const auto f = parse_sparse("x1 + x2", Z, 2);
    const auto bb = from_sparse(f);
    const auto r = interpolate_mod(bb, 2, 2, 2, backend);
    EXPECT_EQ(r.poly, f);
    EXPECT_EQ(r.initial.N1, 2u);
    EXPECT_EQ(r.initial.N2, 3u);
    EXPECT_EQ(r.initial.N3, 5u);
    ASSERT_EQ(r.rounds.size(), 1u);
    const auto& round = r.rounds[0];
    EXPECT_EQ(round.window_counts, (std::vector<std::uint64_t>{2, 2, 2, 2, 2}));
    EXPECT_EQ(round.selector, 1u);
    EXPECT_EQ(round.modulus, 2u);
    ASSERT_EQ(round.shifted_images.size(), 2u);
    EXPECT_EQ(round.shifted_images[0], U::from_terms(Z, {{3, 1}, {0, 1}}));
    EXPECT_EQ(round.shifted_images[1], U::from_terms(Z, {{1, 1}, {2, 1}}));
    ASSERT_EQ(round.candidates.size(), 2u);
    for (const auto& c : round.candidates) EXPECT_EQ(c.test.decreases, 4u);
    EXPECT_EQ(round.accepted, f);
    if (backend.kind == BackendKind::Lagrange) {
      // Unshifted degrees D(p-1) for p = 2..11, then two shifted images at p = 2.
      EXPECT_EQ(r.probes, 3u + 5 + 9 + 13 + 21 + 2 * 5);
    } else {
      EXPECT_EQ(r.probes, 7u * 4);
    }
    EXPECT_EQ(r.probes, bb.probe_count());
  }
}

TEST(InterpolateModTest, ZeroAndThreeVariables) {
  const auto zero = from_sparse(SparsePoly<IntegerRing>(Z, 3));
  const auto r0 = interpolate_mod(zero, 3, 2, 4, UnivarBackend::ben_or_tiwari());
  EXPECT_TRUE(r0.poly.is_zero());
  EXPECT_EQ(r0.univariate_interpolations, r0.initial.image_count);

  const auto f = parse_sparse("5*x1^2*x2 + x3", Z, 3);
  const auto rm = interpolate_mod(from_sparse(f), 3, 2, 4, UnivarBackend::lagrange());
  const auto rb = interpolate_base(from_sparse(f), 3, 2, 4, UnivarBackend::lagrange());
  EXPECT_EQ(rm.poly, f);
  EXPECT_EQ(rb.poly, f);

  try {
    interpolate_mod(from_sparse(f), 3, 2, 1, UnivarBackend::lagrange());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
  try {
    interpolate_mod(from_sparse(f), 3, 2, 3, UnivarBackend::lagrange());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundsViolated);
  }
}

TEST(InterpolateModTest, RandomOverSmallestField) {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 10; ++iter) {
    const std::uint64_t n = 1 + iter % 3, T = 1 + iter % 5, D = 2 + iter % 7;
    const std::uint64_t t = std::min<std::uint64_t>(T, monomial_count(n, D).get_ui());
    const PrimeField F(min_field_modulus_mod(n, T, D));
    const auto f = random_sparse(rng, F, n, t, D);
    for (auto backend : {UnivarBackend::lagrange(), UnivarBackend::ben_or_tiwari()}) {
      const auto r = interpolate_mod(from_sparse(f), n, T, D, backend);
      ASSERT_EQ(r.poly, f) << to_string(f);
      ASSERT_TRUE(check_accounting(r, t).empty());
      ASSERT_TRUE(check_rounds_half_survive(f, r).empty());
    }
  }
}

TEST(InterpolateModTest, JobsDoNotChangeTheResult) {
  std::mt19937_64 rng(62);
  const auto f = random_sparse(rng, Z, 2, 5, 7);
  InterpolationOptions options;
  options.jobs = 3;
  const auto one = interpolate_mod(from_sparse(f), 2, 5, 7, UnivarBackend::ben_or_tiwari());
  const auto three = interpolate_mod(from_sparse(f), 2, 5, 7, UnivarBackend::ben_or_tiwari(), options);
  EXPECT_EQ(one.poly, f);
  EXPECT_EQ(three.poly, f);
  EXPECT_EQ(one.probes, three.probes);
  EXPECT_EQ(one.univariate_interpolations, three.univariate_interpolations);
}
