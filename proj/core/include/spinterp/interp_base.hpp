#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinterp/blackbox.hpp"
#include "spinterp/detail/driver.hpp"
#include "spinterp/kronecker.hpp"
#include "spinterp/primes.hpp"
#include "spinterp/report.hpp"

namespace spinterp {

// Thresholds of the base-changing algorithm for term bound T.
struct BaseParams {
  std::uint64_t n = 0, T = 0, D = 0;
  std::uint64_t delta1 = 0;  // (n-1)(T-1)
  std::uint64_t delta2 = 0;  // (n-1)T
  std::uint64_t N = 0;       // max(4*delta1 + 1, delta1 + delta2 + 1)

  static BaseParams compute(std::uint64_t n, std::uint64_t T, std::uint64_t D) {
    BaseParams b{n, T, D};
    b.delta1 = (n - 1) * (T == 0 ? 0 : T - 1);
    b.delta2 = (n - 1) * T;
    b.N = std::max(4 * b.delta1 + 1, b.delta1 + b.delta2 + 1);
    return b;
  }

  std::uint64_t selection_window() const { return 4 * delta1 + 1; }
  std::uint64_t test_window() const { return delta1 + delta2 + 1; }
  std::uint64_t test_threshold() const { return delta2 + 1; }
};

// Smallest prime >= max(n, N, D) for the initial bounds.
inline std::uint64_t base_prime(std::uint64_t n, std::uint64_t T, std::uint64_t D) {
  const BaseParams b = BaseParams::compute(n, T, D);
  return next_prime_geq(std::max({n, b.N, D}));
}

// Smallest prime q for which F_q hosts every image the algorithm interpolates
// with either backend (degrees up to 2D(p - 1)).
inline std::uint64_t min_field_modulus_base(std::uint64_t n, std::uint64_t T, std::uint64_t D) {
  return next_prime_geq(2 * D * (base_prime(n, T, D) - 1) + 2);
}

// fmod[d-1] must hold (f - h)^mod_(d,p) for d = 1..params.test_window().
template <CoefficientRing R>
TermTestResult term_test_base(const Term<R>& u, std::span<const UniPoly<R>> fmod,
                              const BaseParams& params, std::uint64_t p) {
  const std::size_t n = u.exponents.size();
  std::vector<SubstitutionSpec> specs;
  for (std::uint64_t d = 1; d <= params.test_window(); ++d) specs.emplace_back(n, d, p);
  return detail::count_decreases<R>(u, fmod, specs, params.test_window(), params.test_threshold(),
                                    fmod.front().ring());
}

// 1-based smallest maximizer of counts[0..window).
inline std::uint64_t select_ok_degree(std::span<const std::uint64_t> counts,
                                      std::uint64_t window) {
  return detail::argmax_first(counts.first(window));
}

namespace detail {

struct BaseSchedule {
  std::uint64_t n, D, p;

  Windows windows(std::uint64_t T) const {
    const BaseParams b = BaseParams::compute(n, T, D);
    return {b.N, b.selection_window(), b.test_window(), b.test_threshold()};
  }
  SubstitutionSpec spec(std::size_t d) const { return {n, d, p}; }
  void describe(InitialParams& init, std::uint64_t T) const {
    const Windows w = windows(T);
    init.n = n;
    init.T = T;
    init.D = D;
    init.modulus = p;
    init.image_count = w.images;
    init.selection_window = w.selection;
    init.test_window = w.test;
    init.test_threshold = w.threshold;
  }
};

}  // namespace detail

// Recovers f from its black box given T >= #f and D > deg f.
template <CoefficientRing R>
InterpolationReport<R> interpolate_base(const BlackBox<R>& bb, std::uint64_t n, std::uint64_t T,
                                        std::uint64_t D, const UnivarBackend& backend,
                                        const InterpolationOptions& options = {}) {
  if (n != bb.arity()) {
    throw Error(ErrorCode::ArityMismatch, "n = " + std::to_string(n) + " but the black box takes " +
                                              std::to_string(bb.arity()) + " variables");
  }
  if (n == 0 || D == 0) throw Error(ErrorCode::PreconditionViolated, "need n >= 1 and D >= 1");
  const detail::BaseSchedule schedule{n, D, base_prime(n, T, D)};
  return detail::run_reduction(bb, T, D, backend, options, schedule, Algorithm::Base);
}

}  // namespace spinterp
