#pragma once

// Brute-force oracles for the interpolation algorithms. Nothing here is on the
// algorithm path; these exist to falsify it.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spinterp/interp_base.hpp"
#include "spinterp/interp_mod.hpp"
#include "spinterp/poly.hpp"
#include "spinterp/tsterms.hpp"

namespace spinterp {

// Exponent of m^mod_(d,p): sum e_k * (d^(k-1) mod p) mod p, computed directly.
std::uint64_t reduced_exponent(const Exponents& e, std::uint64_t d, std::uint64_t p);

struct CollisionReport {
  std::uint64_t base = 0;
  std::uint64_t modulus = 0;
  std::vector<Exponents> monomials;
  std::vector<std::uint64_t> residues;
  std::vector<bool> colliding;
  std::uint64_t count = 0;  // number of colliding terms

  std::uint64_t terms() const { return monomials.size(); }
  std::uint64_t non_colliding() const { return terms() - count; }
};

// Pairwise comparison of reduced exponents.
CollisionReport collision_report(std::span<const Exponents> monomials, std::uint64_t d,
                                 std::uint64_t p);

template <CoefficientRing R>
std::vector<Exponents> monomials_of(const SparsePoly<R>& f) {
  std::vector<Exponents> out;
  out.reserve(f.term_count());
  for (const auto& [e, c] : f.terms()) out.push_back(e);
  return out;
}

template <CoefficientRing R>
CollisionReport collision_report(const SparsePoly<R>& f, std::uint64_t d, std::uint64_t p) {
  const auto ms = monomials_of(f);
  return collision_report(ms, d, p);
}

// At least ceil(t/2) of the t terms do not collide.
inline bool check_half_survive(const CollisionReport& r) {
  return 2 * r.non_colliding() >= r.terms();
}

template <CoefficientRing R>
bool check_half_survive(const SparsePoly<R>& f, std::uint64_t d, std::uint64_t p) {
  return check_half_survive(collision_report(f, d, p));
}

// #f^mod_(d,p) from residue-class sums.
template <CoefficientRing R>
std::uint64_t reduced_term_count(const SparsePoly<R>& f, std::uint64_t d, std::uint64_t p) {
  const R& ring = f.ring();
  std::map<std::uint64_t, typename R::Element> sums;
  for (const auto& [e, c] : f.terms()) {
    auto [it, fresh] = sums.emplace(reduced_exponent(e, d, p), c);
    if (!fresh) it->second = ring.add(it->second, c);
  }
  std::uint64_t n = 0;
  for (const auto& [r, c] : sums) n += ring.is_zero(c) ? 0 : 1;
  return n;
}

// If #f^mod at (d1,p1) >= #f^mod at (d2,p2) then C(d1,p1) <= 2 C(d2,p2).
// Returns true when the hypothesis fails.
template <CoefficientRing R>
bool check_doubling_lemma(const SparsePoly<R>& f, std::uint64_t d1, std::uint64_t p1,
                          std::uint64_t d2, std::uint64_t p2) {
  if (reduced_term_count(f, d1, p1) < reduced_term_count(f, d2, p2)) return true;
  return collision_report(f, d1, p1).count <= 2 * collision_report(f, d2, p2).count;
}

template <CoefficientRing R>
bool check_doubling_lemma(const SparsePoly<R>& f, std::uint64_t p, std::uint64_t d1,
                          std::uint64_t d2) {
  return check_doubling_lemma(f, d1, p, d2, p);
}

// Points k in [1, delta] where every form sum_i a_i k^(i-1) (mod p) is nonzero.
std::uint64_t count_nonvanishing(std::span<const std::vector<std::uint64_t>> forms,
                                 std::uint64_t p, std::uint64_t delta);

// For each term, the number of d in [1, delta] at which it does not collide mod p.
std::vector<std::uint64_t> good_base_counts(std::span<const Exponents> monomials, std::uint64_t p,
                                            std::uint64_t delta);

// Pairs u < v with A_(u,v)(d) = sum_s (e_(u,s) - e_(v,s)) d^(s-1) = 0 mod p.
std::uint64_t vanishing_pair_count(std::span<const Exponents> monomials, std::uint64_t d,
                                   std::uint64_t p);

// Per term, how many of `primes` make it collide under base D.
std::vector<std::uint64_t> colliding_prime_counts(std::span<const Exponents> monomials,
                                                  std::uint64_t D,
                                                  std::span<const std::uint64_t> primes);

// A = prod_(i<j) sum_k (e_(i,k) - e_(j,k)) D^(k-1), exactly.
mpz_class collision_product(std::span<const Exponents> monomials, std::uint64_t D);

// p^ceil(s/2) divides A, with s the collision count at (D, p).
bool check_collision_divisibility(std::span<const Exponents> monomials, std::uint64_t D,
                                  std::uint64_t p);

// TS set straight from its definition, by linear scans; the reference for ts_terms.
template <CoefficientRing R>
std::vector<Term<R>> ts_reference(const UniPoly<R>& fmod, const UniPoly<R>& image,
                                  std::span<const UniPoly<R>> shifted, std::uint64_t d,
                                  std::uint64_t p, std::uint64_t D) {
  const R& ring = fmod.ring();
  const std::size_t n = shifted.size();
  std::vector<std::uint64_t> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = 1 % p;
    for (std::size_t j = 0; j < k; ++j) {
      w[k] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(w[k]) * (d % p) % p);
    }
  }
  // The unique term of u in residue class r, if exactly one exists.
  auto lone = [p](const UniPoly<R>& u, std::uint64_t r) -> std::optional<std::pair<std::uint64_t, typename R::Element>> {
    std::optional<std::pair<std::uint64_t, typename R::Element>> hit;
    int seen = 0;
    for (const auto& [e, c] : u.terms()) {
      if (e % p == r) {
        ++seen;
        hit = {e, c};
      }
    }
    if (seen != 1) return std::nullopt;
    return hit;
  };
  std::vector<Term<R>> out;
  for (const auto& [r, a] : fmod.terms()) {
    const auto g = lone(image, r);
    if (!g || !ring.equal(g->second, a)) continue;
    Exponents e(n);
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      const auto b = lone(shifted[k], r);
      ok = b && ring.equal(b->second, a) && b->first >= g->first && (b->first - g->first) % p == 0;
      if (ok) e[k] = (b->first - g->first) / p;
    }
    if (!ok) continue;
    mpz_class weighted = 0;
    std::uint64_t deg = 0;
    for (std::size_t k = 0; k < n; ++k) {
      weighted += mpz_class(static_cast<unsigned long>(e[k])) * static_cast<unsigned long>(w[k]);
      deg += e[k];
    }
    if (weighted != mpz_class(static_cast<unsigned long>(g->first)) || deg >= D) continue;
    out.push_back({std::move(e), a});
  }
  return out;
}

// Exhaustive check of a term test over every monomial of degree < D with
// coefficient 1 or 2: the test passes exactly for terms of f.
struct IffResult {
  std::uint64_t checked = 0;
  std::uint64_t agreements = 0;
  std::uint64_t members = 0;
  std::vector<std::string> mismatches;

  bool all_agree() const { return checked == agreements; }
};

inline std::vector<Exponents> all_monomials(std::size_t n, std::uint64_t D) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  for (;;) {
    if (total_degree(e) < D) out.push_back(e);
    std::size_t i = 0;
    while (i < n && ++e[i] == D) e[i++] = 0;
    if (i == n) break;
  }
  return out;
}

template <CoefficientRing R>
IffResult term_test_iff_base(const SparsePoly<R>& f, std::uint64_t T, std::uint64_t D) {
  const std::size_t n = f.arity();
  const BaseParams params = BaseParams::compute(n, T, D);
  const std::uint64_t p = base_prime(n, T, D);
  std::vector<UniPoly<R>> fmod;
  for (std::uint64_t d = 1; d <= params.test_window(); ++d) {
    fmod.push_back(mod_cyclic(substitute_sparse(f, SubstitutionSpec(n, d, p)), p));
  }
  IffResult r;
  for (const auto& m : all_monomials(n, D)) {
    for (long c : {1L, 2L}) {
      const Term<R> u{m, f.ring().from_integer(mpz_class(c))};
      const bool member = f.contains(u);
      const bool passed = term_test_base<R>(u, fmod, params, p).passed();
      ++r.checked;
      r.members += member;
      if (member == passed) {
        ++r.agreements;
      } else {
        r.mismatches.push_back(to_string(SparsePoly<R>::from_term(f.ring(), m, u.coefficient)));
      }
    }
  }
  return r;
}

template <CoefficientRing R>
IffResult term_test_iff_mod(const SparsePoly<R>& f, std::uint64_t T, std::uint64_t D) {
  const std::size_t n = f.arity();
  const ModParams params = ModParams::compute(n, T, D);
  std::vector<UniPoly<R>> fmod;
  for (std::uint64_t j = 0; j < params.test_window(); ++j) {
    const std::uint64_t p = params.primes.at(j);
    fmod.push_back(mod_cyclic(substitute_sparse(f, SubstitutionSpec(n, D, p)), p));
  }
  IffResult r;
  for (const auto& m : all_monomials(n, D)) {
    for (long c : {1L, 2L}) {
      const Term<R> u{m, f.ring().from_integer(mpz_class(c))};
      const bool member = f.contains(u);
      const bool passed = term_test_mod<R>(u, fmod, params).passed();
      ++r.checked;
      r.members += member;
      if (member == passed) {
        ++r.agreements;
      } else {
        r.mismatches.push_back(to_string(SparsePoly<R>::from_term(f.ring(), m, u.coefficient)));
      }
    }
  }
  return r;
}

// Checks every round of a finished run against the fixture f: the selected
// substitution leaves at least half of the remaining terms collision-free.
template <CoefficientRing R>
std::vector<std::string> check_rounds_half_survive(const SparsePoly<R>& f,
                                                   const InterpolationReport<R>& report) {
  std::vector<std::string> errors;
  SparsePoly<R> rest = f;
  for (std::size_t i = 0; i < report.rounds.size(); ++i) {
    const auto& round = report.rounds[i];
    const CollisionReport c = collision_report(rest, round.base, round.modulus);
    if (!check_half_survive(c)) {
      errors.push_back("round " + std::to_string(i + 1) + ": " + std::to_string(c.non_colliding()) +
                       " of " + std::to_string(c.terms()) + " terms collision-free at (" +
                       std::to_string(round.base) + ", " + std::to_string(round.modulus) + ")");
    }
    rest -= round.accepted;
  }
  return errors;
}

// Probe and call-count accounting of a finished run.
template <CoefficientRing R>
std::vector<std::string> check_accounting(const InterpolationReport<R>& report, std::uint64_t t) {
  std::vector<std::string> errors;
  std::uint64_t sum = 0;
  for (const auto& call : report.calls) {
    const std::uint64_t want = contracted_probes(report.backend, call.term_bound, call.degree_bound);
    if (call.probes != want) {
      errors.push_back("call at (" + std::to_string(call.base) + ", " +
                       std::to_string(call.modulus) + ", " + std::to_string(call.shifted) +
                       ") used " + std::to_string(call.probes) + " probes, expected " +
                       std::to_string(want));
    }
    sum += call.probes;
  }
  if (sum != report.probes) {
    errors.push_back("probe total " + std::to_string(report.probes) + " but calls sum to " +
                     std::to_string(sum));
  }
  const std::uint64_t log_t = detail::ceil_log2(t);
  const std::uint64_t cap = report.initial.image_count + report.initial.n * (log_t + 1);
  if (report.univariate_interpolations > cap) {
    errors.push_back(std::to_string(report.univariate_interpolations) +
                     " univariate interpolations exceed " + std::to_string(cap));
  }
  if (report.rounds.size() > log_t + 1) {
    errors.push_back(std::to_string(report.rounds.size()) + " rounds exceed " +
                     std::to_string(log_t + 1));
  }
  return errors;
}

// Smallest prime field that both algorithms and both backends accept for (n, T, D).
std::uint64_t smallest_admissible_field(std::uint64_t n, std::uint64_t T, std::uint64_t D);

// Property suites behind `spinterp verify`.
struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
};

struct SuiteResult {
  std::string name;
  std::uint64_t instances = 0;
  std::map<std::string, Tally> categories;
  std::vector<std::string> messages;  // first failures, minimized where possible

  std::uint64_t checks() const;
  std::uint64_t failures() const;
  bool passed() const { return failures() == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::uint64_t count = 100;
  std::uint64_t max_n = 4;
  std::uint64_t max_t = 8;
  std::uint64_t max_D = 10;  // degrees stay below this
  bool mutant_skip_weight_check = false;
  unsigned jobs = 1;
};

SuiteResult run_lemma_suite(const SuiteOptions& options);
SuiteResult run_roundtrip_suite(const SuiteOptions& options);

}  // namespace spinterp
