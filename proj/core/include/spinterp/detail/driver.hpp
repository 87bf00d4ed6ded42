#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinterp/blackbox.hpp"
#include "spinterp/detail/parallel.hpp"
#include "spinterp/kronecker.hpp"
#include "spinterp/report.hpp"
#include "spinterp/tsterms.hpp"
#include "spinterp/univar.hpp"

namespace spinterp {

struct InterpolationOptions {
  unsigned jobs = 1;
  TsTermsOptions ts;
};

namespace detail {

// Sizes that depend on the current term bound T.
struct Windows {
  std::uint64_t images = 0;     // N: cached images f_1..f_N
  std::uint64_t selection = 0;  // ok-base / ok-prime search range 1..selection
  std::uint64_t test = 0;       // term-test range 1..test
  std::uint64_t threshold = 0;  // decreases needed to accept a candidate
};

// Smallest 1-based index of the maximum; 0 when `counts` is empty.
inline std::size_t argmax_first(std::span<const std::uint64_t> counts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return counts.empty() ? 0 : best + 1;
}

inline std::uint64_t ceil_log2(std::uint64_t v) {
  return v <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(v - 1));
}

// Counts substitutions in specs[0..window) where subtracting u's reduced image
// lowers the term count of the corresponding fmod.
template <CoefficientRing R>
TermTestResult count_decreases(const Term<R>& u, std::span<const UniPoly<R>> fmod,
                               std::span<const SubstitutionSpec> specs, std::uint64_t window,
                               std::uint64_t threshold, const R& ring) {
  TermTestResult r{0, window, threshold};
  const auto single = SparsePoly<R>::from_term(ring, u.exponents, u.coefficient);
  for (std::uint64_t i = 0; i < window; ++i) {
    const UniPoly<R> u_mod = mod_cyclic(substitute_sparse(single, specs[i]), specs[i].modulus());
    if ((fmod[i] - u_mod).term_count() < fmod[i].term_count()) ++r.decreases;
  }
  return r;
}

[[noreturn]] inline void bounds_violated(const std::string& why) {
  throw Error(ErrorCode::BoundsViolated, why + " (is T >= #f and D > deg f?)");
}

// The reduction loop shared by both algorithms. Schedule supplies
//   Windows windows(std::uint64_t T) const;
//   SubstitutionSpec spec(std::size_t index) const;     // 1-based
//   void describe(InitialParams&, std::uint64_t T) const;
template <CoefficientRing R, class Schedule>
InterpolationReport<R> run_reduction(const BlackBox<R>& bb, std::uint64_t T, std::uint64_t D,
                                     const UnivarBackend& backend,
                                     const InterpolationOptions& options, const Schedule& schedule,
                                     Algorithm algorithm) {
  const auto started = std::chrono::steady_clock::now();
  const R& ring = bb.ring();
  const std::size_t n = bb.arity();
  const std::uint64_t T0 = T;

  InterpolationReport<R> report(ring, n);
  report.algorithm = algorithm;
  report.backend = backend;
  schedule.describe(report.initial, T0);

  const Windows initial = schedule.windows(T0);
  const std::size_t image_count = initial.images;
  std::vector<SubstitutionSpec> specs;
  specs.reserve(image_count);
  std::uint64_t ceiling = 0;
  for (std::size_t i = 1; i <= image_count; ++i) {
    specs.push_back(schedule.spec(i));
    ceiling = std::max(ceiling, specs.back().shift(1).degree_ceiling(D));
  }
  check_backend_fits(ring, backend, ceiling);

  const std::uint64_t probes_before = bb.probe_count();

  auto interpolate = [&](const SubstitutionSpec& spec, UnivariateCall& call) {
    call.base = spec.base();
    call.modulus = spec.modulus();
    call.shifted = spec.shifted().value_or(0);
    call.degree_bound = spec.degree_ceiling(D);
    call.term_bound = T0;
    std::atomic<std::uint64_t> local{0};
    const UniOracle<R> inner = image_oracle(bb, spec);
    const UniOracle<R> counted = [&](const typename R::Element& x) {
      local.fetch_add(1);
      return inner(x);
    };
    try {
      auto image = interpolate_univariate<R>(counted, backend, T0, call.degree_bound, ring);
      call.probes = local.load();
      return image;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BackendFailure) bounds_violated(e.what());
      throw;
    }
  };

  // Images f_(i) and their reductions for i = 1..N, interpolated once.
  std::vector<UniPoly<R>> images(image_count, UniPoly<R>(ring));
  std::vector<UniPoly<R>> reduced(image_count, UniPoly<R>(ring));
  std::vector<UnivariateCall> first_calls(image_count);
  parallel_for(image_count, options.jobs, [&](std::size_t i) {
    images[i] = interpolate(specs[i], first_calls[i]);
    reduced[i] = mod_cyclic(images[i], specs[i].modulus());
  });
  report.calls = std::move(first_calls);

  SparsePoly<R> h(ring, n);
  std::uint64_t remaining = T0;
  const std::uint64_t max_rounds = ceil_log2(T0) + 2;

  while (remaining > 0) {
    const Windows w = schedule.windows(remaining);
    std::vector<std::uint64_t> counts(w.selection);
    for (std::size_t i = 0; i < w.selection; ++i) counts[i] = reduced[i].term_count();
    const std::size_t sel = argmax_first(counts);
    const std::uint64_t alpha = counts[sel - 1];
    if (alpha == 0) break;
    if (report.rounds.size() == max_rounds) bounds_violated("round limit reached");

    RoundReport<R> round(ring, n);
    round.remaining_bound = remaining;
    round.alpha = alpha;
    round.window_counts = std::move(counts);
    round.selector = sel;
    const SubstitutionSpec& chosen = specs[sel - 1];
    round.base = chosen.base();
    round.modulus = chosen.modulus();
    const std::uint64_t p = chosen.modulus();

    // Shifted images of f, minus the shifted images of what is known.
    std::vector<UniPoly<R>> shifted(n, UniPoly<R>(ring));
    std::vector<UnivariateCall> shifted_calls(n);
    parallel_for(n, options.jobs, [&](std::size_t k) {
      const SubstitutionSpec spec = chosen.shift(k + 1);
      shifted[k] = interpolate(spec, shifted_calls[k]) - substitute_sparse(h, spec);
    });
    report.calls.insert(report.calls.end(), shifted_calls.begin(), shifted_calls.end());
    for (const auto& g : shifted) {
      if (!(mod_cyclic(g, p) == reduced[sel - 1])) {
        bounds_violated("shifted image disagrees with the reduced image");
      }
    }

    const CandidateSet<R> ts =
        ts_terms<R>(reduced[sel - 1], images[sel - 1], shifted, chosen.base(), p, D, options.ts);

    SparsePoly<R> accepted(ring, n);
    for (const auto& u : ts.candidates) {
      const TermTestResult test =
          count_decreases<R>(u, reduced, specs, w.test, w.threshold, ring);
      round.candidates.push_back({u, test});
      if (test.passed()) accepted.add_term(u);
    }
    round.shifted_images = std::move(shifted);

    if (accepted.is_zero()) bounds_violated("no candidate passed the term test");
    if (accepted.term_count() > remaining) bounds_violated("more terms than the term bound");

    h += accepted;
    remaining -= accepted.term_count();
    for (std::size_t i = 0; i < image_count; ++i) {
      const UniPoly<R> s_img = substitute_sparse(accepted, specs[i]);
      images[i] -= s_img;
      reduced[i] -= mod_cyclic(s_img, specs[i].modulus());
    }
    round.accepted = std::move(accepted);
    report.rounds.push_back(std::move(round));
  }

  // Every cached image is now an image of f - h; all must vanish.
  for (const auto& img : images) {
    if (!img.is_zero()) bounds_violated("residual images are nonzero at termination");
  }

  report.poly = std::move(h);
  report.probes = bb.probe_count() - probes_before;
  report.univariate_interpolations = report.calls.size();
  for (const auto& c : report.calls) {
    report.max_degree_bound = std::max(report.max_degree_bound, c.degree_bound);
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace detail
}  // namespace spinterp
