#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinterp/poly.hpp"
#include "spinterp/univar.hpp"

namespace spinterp {

enum class Algorithm { Base, Modulus };

inline std::string to_string(Algorithm a) { return a == Algorithm::Base ? "base" : "modulus"; }

// Outcome of one term-membership test: how many substitutions in the test
// window showed a term-count decrease, against the acceptance threshold.
struct TermTestResult {
  std::uint64_t decreases = 0;
  std::uint64_t window = 0;
  std::uint64_t threshold = 0;

  bool passed() const { return decreases >= threshold; }
};

template <CoefficientRing R>
struct CandidateVerdict {
  Term<R> term;
  TermTestResult test;
};

// One univariate interpolation as issued by the driver.
struct UnivariateCall {
  std::uint64_t base = 0;      // d (base-changing) or D (modulus-changing)
  std::uint64_t modulus = 0;   // p or p_j
  std::uint64_t shifted = 0;   // k, 0 when unshifted
  std::uint64_t degree_bound = 0;
  std::uint64_t term_bound = 0;
  std::uint64_t probes = 0;    // measured at the black box
};

template <CoefficientRing R>
struct RoundReport {
  RoundReport(const R& ring, std::size_t arity) : accepted(ring, arity) {}

  std::uint64_t remaining_bound = 0;        // T at the start of the round
  std::uint64_t alpha = 0;                  // max #fmod over the selection window
  std::vector<std::uint64_t> window_counts; // #fmod for selector 1..window
  std::uint64_t selector = 0;               // d0, or j0 (1-based)
  std::uint64_t base = 0;                   // d0, or D
  std::uint64_t modulus = 0;                // p, or p_j0
  std::vector<UniPoly<R>> shifted_images;   // g_k = f_(.,.,k) - h_(.,.,k)
  std::vector<CandidateVerdict<R>> candidates;
  SparsePoly<R> accepted;
};

// Thresholds the driver started with.
struct InitialParams {
  std::uint64_t n = 0, T = 0, D = 0;
  std::uint64_t modulus = 0;        // base-changing: p
  std::uint64_t image_count = 0;    // N
  std::uint64_t selection_window = 0;
  std::uint64_t test_window = 0;
  std::uint64_t test_threshold = 0;
  std::vector<std::uint64_t> primes;  // modulus-changing: p_1..p_N
  // modulus-changing only
  std::uint64_t N1 = 0, N2 = 0, N3 = 0, K = 0;
};

template <CoefficientRing R>
struct InterpolationReport {
  InterpolationReport(const R& ring, std::size_t arity) : poly(ring, arity) {}

  Algorithm algorithm = Algorithm::Base;
  UnivarBackend backend;
  SparsePoly<R> poly;
  std::uint64_t probes = 0;
  std::uint64_t univariate_interpolations = 0;
  std::uint64_t max_degree_bound = 0;
  InitialParams initial;
  std::vector<UnivariateCall> calls;
  std::vector<RoundReport<R>> rounds;
  double wall_ms = 0;
};

}  // namespace spinterp
