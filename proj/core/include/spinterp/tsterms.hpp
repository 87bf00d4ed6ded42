#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "spinterp/errors.hpp"
#include "spinterp/kronecker.hpp"
#include "spinterp/poly.hpp"

namespace spinterp {

#ifdef NDEBUG
inline constexpr bool kCheckTsPreconditions = false;
#else
inline constexpr bool kCheckTsPreconditions = true;
#endif

struct TsTermsOptions {
  bool check_preconditions = kCheckTsPreconditions;
  // Test hook for the mutation smoke test: skip the weighted-sum consistency
  // condition on recovered exponents. Never set outside tests.
  bool skip_weight_check = false;
};

template <CoefficientRing R>
struct CandidateSet {
  std::vector<Term<R>> candidates;  // distinct exponent vectors
  std::uint64_t base = 0;
  std::uint64_t modulus = 0;
  std::uint64_t operations = 0;  // ring-level work counter, report only
};

// Candidate terms of f from one substitution: the reduced image `fmod`, the
// image f_(d,p) and the n shifted images f_(d,p,k). A term a*x^r of fmod
// yields a candidate a*x1^e1...xn^en when
//   - residue r holds exactly one term in f_(d,p) (a*x^gamma) and in each
//     shifted image (a*x^beta_k),
//   - every e_k = (beta_k - gamma) / p is a nonnegative integer,
//   - sum_k e_k * (d^(k-1) mod p) == gamma,
//   - sum_k e_k < D.
// Every term of f that does not collide modulo x^p - 1 is among the output.
template <CoefficientRing R>
CandidateSet<R> ts_terms(const UniPoly<R>& fmod, const UniPoly<R>& image,
                         std::span<const UniPoly<R>> shifted, std::uint64_t d, std::uint64_t p,
                         std::uint64_t degree_bound, const TsTermsOptions& options = {}) {
  const std::size_t n = shifted.size();
  const R& ring = fmod.ring();
  CandidateSet<R> out;
  out.base = d;
  out.modulus = p;

  if (options.check_preconditions) {
    bool ok = mod_cyclic(image, p) == fmod;
    for (const auto& s : shifted) ok = ok && mod_cyclic(s, p) == fmod;
    if (!ok) {
      throw Error(ErrorCode::PreconditionViolated,
                  "ts_terms: images do not reduce to the same polynomial mod x^p - 1");
    }
  }
  if (fmod.is_zero()) return out;

  const SubstitutionSpec spec(n, d, p);
  const auto weights = spec.weights();

  // residue -> (exponent, coefficient) when exactly one term has that residue;
  // residues with several terms map to nullptr.
  using Group = std::map<std::uint64_t, const std::pair<const std::uint64_t, typename R::Element>*>;
  auto group = [&](const UniPoly<R>& u) {
    Group g;
    for (const auto& term : u.terms()) {
      ++out.operations;
      auto [it, fresh] = g.emplace(term.first % p, &term);
      if (!fresh) it->second = nullptr;
    }
    return g;
  };
  const Group base_groups = group(image);
  std::vector<Group> shifted_groups;
  shifted_groups.reserve(n);
  for (const auto& s : shifted) shifted_groups.push_back(group(s));

  auto single = [](const Group& g, std::uint64_t residue) {
    auto it = g.find(residue);
    return it == g.end() ? nullptr : it->second;
  };

  for (const auto& [residue, a] : fmod.terms()) {
    const auto* base_term = single(base_groups, residue);
    if (base_term == nullptr || !ring.equal(base_term->second, a)) continue;
    const std::uint64_t gamma = base_term->first;

    Exponents e(n, 0);
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      ++out.operations;
      const auto* t = single(shifted_groups[k], residue);
      if (t == nullptr || !ring.equal(t->second, a) || t->first < gamma ||
          (t->first - gamma) % p != 0) {
        ok = false;
        break;
      }
      e[k] = (t->first - gamma) / p;
    }
    if (!ok) continue;

    if (!options.skip_weight_check) {
      unsigned __int128 weighted = 0;
      for (std::size_t k = 0; k < n; ++k) weighted += static_cast<unsigned __int128>(e[k]) * weights[k];
      if (weighted != gamma) continue;
    }
    if (total_degree(e) >= degree_bound) continue;
    out.candidates.push_back({std::move(e), a});
  }
  return out;
}

}  // namespace spinterp
