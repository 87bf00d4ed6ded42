#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "spinterp/poly.hpp"
#include "spinterp/rings.hpp"

namespace spinterp {

// Uniform draw from [lo, hi] by rejection on the raw 64-bit stream, so that
// instances are identical across standard libraries.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + v % range;
}

// Number of exponent vectors in n variables with total degree < D.
inline mpz_class monomial_count(std::uint64_t n, std::uint64_t D) {
  if (D == 0) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), D - 1 + n, n);
  return r;
}

inline Exponents random_monomial(std::mt19937_64& rng, std::uint64_t n, std::uint64_t D) {
  Exponents e(n);
  for (;;) {
    std::uint64_t sum = 0;
    for (auto& x : e) {
      x = draw(rng, 0, D - 1);
      sum += x;
    }
    if (sum < D) return e;
  }
}

inline mpz_class random_coefficient(std::mt19937_64& rng, const IntegerRing&) {
  const auto magnitude = static_cast<long>(draw(rng, 1, 9));
  return draw(rng, 0, 1) ? mpz_class(magnitude) : mpz_class(-magnitude);
}

inline std::uint64_t random_coefficient(std::mt19937_64& rng, const PrimeField& field) {
  return draw(rng, 1, field.modulus() - 1);
}

// t distinct monomials of total degree < D with nonzero coefficients.
template <CoefficientRing R>
SparsePoly<R> random_sparse(std::mt19937_64& rng, const R& ring, std::uint64_t n, std::uint64_t t,
                            std::uint64_t D) {
  if (monomial_count(n, D) < t) {
    throw std::invalid_argument("only " + monomial_count(n, D).get_str() + " monomials with n = " +
                                std::to_string(n) + ", D = " + std::to_string(D));
  }
  std::set<Exponents> seen;
  SparsePoly<R> f(ring, n);
  while (seen.size() < t) {
    Exponents e = random_monomial(rng, n, D);
    if (!seen.insert(e).second) continue;
    f.add_term({std::move(e), random_coefficient(rng, ring)});
  }
  return f;
}

}  // namespace spinterp
