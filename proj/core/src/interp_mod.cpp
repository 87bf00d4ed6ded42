#include "spinterp/interp_mod.hpp"

#include <cassert>

namespace spinterp {

namespace {

mpz_class power(std::uint64_t D, std::uint64_t m) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), D, m);
  return r;
}

}  // namespace

std::uint64_t ceil_log2_power(std::uint64_t D, std::uint64_t m) {
  const mpz_class v = power(D, m) - 1;
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

ModParams ModParams::compute(std::uint64_t n, std::uint64_t T, std::uint64_t D) {
  ModParams m;
  m.n = n;
  m.T = T;
  m.D = D;
  const std::uint64_t tm1 = T == 0 ? 0 : T - 1;
  m.N1 = smallest_count_with_product_geq(power(D, n * tm1));
  m.N2 = smallest_count_with_product_geq(power(D, n * T));
  m.N3 = smallest_count_with_product_geq(power(D, 4 * n * tm1));
  m.N = std::max(m.N1 + m.N2 - 1, m.N3);
  const std::uint64_t a = ceil_log2_power(D, n * tm1);
  const std::uint64_t b = ceil_log2_power(D, n * T);
  m.K = std::max({std::uint64_t{4}, a + b, 4 * b});
  assert(m.K >= m.N);
  m.primes = first_primes(m.N);
  return m;
}

}  // namespace spinterp
