#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spinterp/blackbox.hpp"
#include "spinterp/detail/driver.hpp"
#include "spinterp/kronecker.hpp"
#include "spinterp/primes.hpp"
#include "spinterp/report.hpp"

namespace spinterp {

// Thresholds of the modulus-changing algorithm for term bound T.
struct ModParams {
  std::uint64_t n = 0, T = 0, D = 0;
  std::uint64_t N1 = 0;  // p_1...p_N1 >= D^(n(T-1))
  std::uint64_t N2 = 0;  // p_1...p_N2 >= D^(nT)
  std::uint64_t N3 = 0;  // p_1...p_N3 >= D^(4n(T-1))
  std::uint64_t N = 0;   // max(N1 + N2 - 1, N3)
  std::uint64_t K = 0;
  std::vector<std::uint64_t> primes;  // p_1..p_N

  static ModParams compute(std::uint64_t n, std::uint64_t T, std::uint64_t D);

  std::uint64_t selection_window() const { return N3; }
  std::uint64_t test_window() const { return N1 + N2 - 1; }
  std::uint64_t test_threshold() const { return N2; }
};

// ceil(m * log2(D)) computed exactly.
std::uint64_t ceil_log2_power(std::uint64_t D, std::uint64_t m);

// fmod[j-1] must hold (f - h)^mod_(D,p_j) for j = 1..params.test_window().
template <CoefficientRing R>
TermTestResult term_test_mod(const Term<R>& u, std::span<const UniPoly<R>> fmod,
                             const ModParams& params) {
  const std::size_t n = u.exponents.size();
  std::vector<SubstitutionSpec> specs;
  const auto primes = first_primes(params.test_window());
  for (std::uint64_t p : primes) specs.emplace_back(n, params.D, p);
  return detail::count_decreases<R>(u, fmod, specs, params.test_window(), params.test_threshold(),
                                    fmod.front().ring());
}

inline std::uint64_t select_ok_prime(std::span<const std::uint64_t> counts, std::uint64_t window) {
  return detail::argmax_first(counts.first(window));
}

// Smallest prime q for which F_q hosts every image the algorithm interpolates
// with either backend.
inline std::uint64_t min_field_modulus_mod(std::uint64_t n, std::uint64_t T, std::uint64_t D) {
  const ModParams m = ModParams::compute(n, T, D);
  std::uint64_t top = 0;
  for (std::uint64_t p : m.primes) top = std::max(top, SubstitutionSpec(n, D, p, 1).degree_ceiling(D));
  return next_prime_geq(top + 2);
}

namespace detail {

struct ModSchedule {
  std::uint64_t n, D;
  std::vector<std::uint64_t> primes;  // p_1..p_N for the initial T
  ModParams initial;

  Windows windows(std::uint64_t T) const {
    const ModParams m = ModParams::compute(n, T, D);
    return {m.N, m.selection_window(), m.test_window(), m.test_threshold()};
  }
  SubstitutionSpec spec(std::size_t j) const { return {n, D, primes.at(j - 1)}; }
  void describe(InitialParams& init, std::uint64_t T) const {
    init.n = n;
    init.T = T;
    init.D = D;
    init.image_count = initial.N;
    init.selection_window = initial.selection_window();
    init.test_window = initial.test_window();
    init.test_threshold = initial.test_threshold();
    init.primes = primes;
    init.N1 = initial.N1;
    init.N2 = initial.N2;
    init.N3 = initial.N3;
    init.K = initial.K;
  }
};

}  // namespace detail

// Recovers f from its black box given T >= #f and D > deg f (D >= 2).
template <CoefficientRing R>
InterpolationReport<R> interpolate_mod(const BlackBox<R>& bb, std::uint64_t n, std::uint64_t T,
                                       std::uint64_t D, const UnivarBackend& backend,
                                       const InterpolationOptions& options = {}) {
  if (n != bb.arity()) {
    throw Error(ErrorCode::ArityMismatch, "n = " + std::to_string(n) + " but the black box takes " +
                                              std::to_string(bb.arity()) + " variables");
  }
  if (n == 0 || D < 2) throw Error(ErrorCode::PreconditionViolated, "need n >= 1 and D >= 2");
  ModParams init = ModParams::compute(n, T, D);
  const detail::ModSchedule schedule{n, D, init.primes, init};
  return detail::run_reduction(bb, T, D, backend, options, schedule, Algorithm::Modulus);
}

}  // namespace spinterp
