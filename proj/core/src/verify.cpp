#include "spinterp/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "spinterp/blackbox.hpp"
#include "spinterp/generator.hpp"
#include "spinterp/primes.hpp"

namespace spinterp {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t ceil_half(std::uint64_t s) { return (s + 1) / 2; }

}  // namespace

std::uint64_t reduced_exponent(const Exponents& e, std::uint64_t d, std::uint64_t p) {
  std::uint64_t power = 1 % p, acc = 0;
  for (std::uint64_t x : e) {
    acc = (acc + mulmod(x % p, power, p)) % p;
    power = mulmod(power, d % p, p);
  }
  return acc;
}

CollisionReport collision_report(std::span<const Exponents> monomials, std::uint64_t d,
                                 std::uint64_t p) {
  CollisionReport r;
  r.base = d;
  r.modulus = p;
  r.monomials.assign(monomials.begin(), monomials.end());
  for (const auto& m : monomials) r.residues.push_back(reduced_exponent(m, d, p));
  const std::size_t t = monomials.size();
  r.colliding.assign(t, false);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      if (r.residues[i] == r.residues[j]) r.colliding[i] = r.colliding[j] = true;
    }
  }
  r.count = std::count(r.colliding.begin(), r.colliding.end(), true);
  return r;
}

std::uint64_t count_nonvanishing(std::span<const std::vector<std::uint64_t>> forms,
                                 std::uint64_t p, std::uint64_t delta) {
  std::uint64_t good = 0;
  for (std::uint64_t k = 1; k <= delta; ++k) {
    bool all = true;
    for (const auto& a : forms) {
      std::uint64_t v = 0;
      for (auto it = a.rbegin(); it != a.rend(); ++it) v = (mulmod(v, k % p, p) + *it % p) % p;
      if (v == 0) {
        all = false;
        break;
      }
    }
    good += all;
  }
  return good;
}

std::vector<std::uint64_t> good_base_counts(std::span<const Exponents> monomials, std::uint64_t p,
                                            std::uint64_t delta) {
  std::vector<std::uint64_t> counts(monomials.size(), 0);
  for (std::uint64_t d = 1; d <= delta; ++d) {
    const CollisionReport r = collision_report(monomials, d, p);
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += !r.colliding[i];
  }
  return counts;
}

std::uint64_t vanishing_pair_count(std::span<const Exponents> monomials, std::uint64_t d,
                                   std::uint64_t p) {
  std::uint64_t count = 0;
  for (std::size_t u = 0; u < monomials.size(); ++u) {
    for (std::size_t v = u + 1; v < monomials.size(); ++v) {
      // A_(u,v)(d) mod p, with signed coefficients lifted into [0, p).
      std::uint64_t acc = 0, power = 1 % p;
      for (std::size_t s = 0; s < monomials[u].size(); ++s) {
        const std::uint64_t a = monomials[u][s] % p, b = monomials[v][s] % p;
        acc = (acc + mulmod((a + p - b) % p, power, p)) % p;
        power = mulmod(power, d % p, p);
      }
      count += acc == 0;
    }
  }
  return count;
}

std::vector<std::uint64_t> colliding_prime_counts(std::span<const Exponents> monomials,
                                                  std::uint64_t D,
                                                  std::span<const std::uint64_t> primes) {
  std::vector<std::uint64_t> counts(monomials.size(), 0);
  for (std::uint64_t p : primes) {
    const CollisionReport r = collision_report(monomials, D, p);
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += r.colliding[i];
  }
  return counts;
}

mpz_class collision_product(std::span<const Exponents> monomials, std::uint64_t D) {
  mpz_class A = 1;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    for (std::size_t j = i + 1; j < monomials.size(); ++j) {
      mpz_class factor = 0, power = 1;
      for (std::size_t k = 0; k < monomials[i].size(); ++k) {
        factor += (mpz_class(static_cast<unsigned long>(monomials[i][k])) -
                   mpz_class(static_cast<unsigned long>(monomials[j][k]))) *
                  power;
        power *= static_cast<unsigned long>(D);
      }
      A *= factor;
    }
  }
  return A;
}

bool check_collision_divisibility(std::span<const Exponents> monomials, std::uint64_t D,
                                  std::uint64_t p) {
  const std::uint64_t s = collision_report(monomials, D, p).count;
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, ceil_half(s));
  const mpz_class A = collision_product(monomials, D);
  return mpz_divisible_p(A.get_mpz_t(), pk.get_mpz_t()) != 0;
}

std::uint64_t SuiteResult::checks() const {
  std::uint64_t n = 0;
  for (const auto& [k, t] : categories) n += t.checks;
  return n;
}

std::uint64_t SuiteResult::failures() const {
  std::uint64_t n = 0;
  for (const auto& [k, t] : categories) n += t.failures;
  return n;
}

namespace {

constexpr std::size_t kMaxMessages = 8;

struct Recorder {
  SuiteResult& out;

  // Returns ok so callers can chain.
  bool check(const std::string& category, bool ok, const std::function<std::string()>& what) {
    Tally& t = out.categories[category];
    ++t.checks;
    if (!ok) {
      ++t.failures;
      if (out.messages.size() < kMaxMessages) out.messages.push_back(category + ": " + what());
    }
    return ok;
  }
};

struct Shape {
  std::uint64_t n, t, D;
};

Shape random_shape(std::mt19937_64& rng, const SuiteOptions& o) {
  Shape s;
  s.n = draw(rng, 1, o.max_n);
  s.D = draw(rng, 2, o.max_D);
  const mpz_class cap = monomial_count(s.n, s.D);
  const std::uint64_t t_cap = cap < o.max_t ? cap.get_ui() : o.max_t;
  s.t = draw(rng, 1, t_cap);
  return s;
}

std::string shape_text(const Shape& s) {
  return "n=" + std::to_string(s.n) + " t=" + std::to_string(s.t) + " D=" + std::to_string(s.D);
}

// Drops terms while `fails` keeps returning true.
template <CoefficientRing R>
SparsePoly<R> minimize(SparsePoly<R> f, const std::function<bool(const SparsePoly<R>&)>& fails) {
  bool shrunk = true;
  while (shrunk && f.term_count() > 1) {
    shrunk = false;
    for (const auto& term : f.term_list()) {
      SparsePoly<R> g = f;
      g -= SparsePoly<R>::from_term(f.ring(), term.exponents, term.coefficient);
      if (fails(g)) {
        f = std::move(g);
        shrunk = true;
        break;
      }
    }
  }
  return f;
}

// ts_terms against the definition at one substitution, on the true images and
// on shifted images whose exponents were moved by random multiples of p.
template <CoefficientRing R>
void check_ts(Recorder& rec, std::mt19937_64& rng, const SparsePoly<R>& f, std::uint64_t d,
              std::uint64_t p, std::uint64_t D, const TsTermsOptions& ts_options,
              const std::string& label) {
  const std::size_t n = f.arity();
  const SubstitutionSpec spec(n, d, p);
  const UniPoly<R> image = substitute_sparse(f, spec);
  const UniPoly<R> fmod = mod_cyclic(image, p);
  std::vector<UniPoly<R>> shifted;
  for (std::size_t k = 1; k <= n; ++k) shifted.push_back(substitute_sparse(f, spec.shift(k)));

  auto same = [](std::vector<Term<R>> a, std::vector<Term<R>> b) {
    auto key = [](const Term<R>& x, const Term<R>& y) { return x.exponents < y.exponents; };
    std::sort(a.begin(), a.end(), key);
    std::sort(b.begin(), b.end(), key);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].exponents != b[i].exponents || !(a[i].coefficient == b[i].coefficient)) return false;
    }
    return true;
  };

  const auto got = ts_terms<R>(fmod, image, shifted, d, p, D, ts_options).candidates;
  const auto want = ts_reference<R>(fmod, image, shifted, d, p, D);
  rec.check("ts_terms", same(got, want), [&] { return label + " true images at d=" + std::to_string(d); });

  std::vector<UniPoly<R>> moved;
  for (const auto& s : shifted) {
    UniPoly<R> m(f.ring());
    for (const auto& [e, c] : s.terms()) m.add_term(e + p * draw(rng, 0, 2), c);
    moved.push_back(std::move(m));
  }
  const auto got2 = ts_terms<R>(fmod, image, moved, d, p, D, ts_options).candidates;
  const auto want2 = ts_reference<R>(fmod, image, moved, d, p, D);
  rec.check("ts_terms", same(got2, want2),
            [&] { return label + " perturbed images at d=" + std::to_string(d); });
}

template <CoefficientRing R>
using Runner = std::function<InterpolationReport<R>(const BlackBox<R>&)>;

template <CoefficientRing R>
void roundtrip_instance(Recorder& rec, std::mt19937_64& rng, const R& ring, const Shape& shape,
                        const SuiteOptions& options) {
  const SparsePoly<R> f = random_sparse(rng, ring, shape.n, shape.t, shape.D);
  const std::string label = ring.descriptor().to_string() + " " + shape_text(shape);
  InterpolationOptions io;
  io.jobs = options.jobs;
  io.ts.skip_weight_check = options.mutant_skip_weight_check;

  for (Algorithm alg : {Algorithm::Base, Algorithm::Modulus}) {
    for (const UnivarBackend& backend : {UnivarBackend::lagrange(), UnivarBackend::ben_or_tiwari()}) {
      const std::string config = label + " " + to_string(alg) + "/" + backend.name();
      auto run = [&](const SparsePoly<R>& g) {
        const BlackBox<R> bb = from_sparse(g);
        return alg == Algorithm::Base ? interpolate_base(bb, shape.n, shape.t, shape.D, backend, io)
                                      : interpolate_mod(bb, shape.n, shape.t, shape.D, backend, io);
      };
      auto fails = [&](const SparsePoly<R>& g) {
        try {
          return !(run(g).poly == g);
        } catch (const Error&) {
          return true;
        }
      };
      std::optional<InterpolationReport<R>> report;
      std::string error;
      try {
        report.emplace(run(f));
      } catch (const Error& e) {
        error = e.what();
      }
      const bool exact = report && report->poly == f;
      rec.check("roundtrip", exact, [&] {
        const SparsePoly<R> small = minimize<R>(f, fails);
        return config + " f = " + to_string(f) + (error.empty() ? "" : " (" + error + ")") +
               "; minimized: " + to_string(small);
      });
      if (!report) continue;

      const auto half = check_rounds_half_survive(f, *report);
      rec.check("ok_selection", half.empty(), [&] { return config + " " + half.front(); });
      const auto acct = check_accounting(*report, f.term_count());
      rec.check("accounting", acct.empty(), [&] { return config + " " + acct.front(); });

      // Accepted terms are terms of f - h at the start of their round.
      SparsePoly<R> rest = f;
      bool sound = true;
      for (const auto& round : report->rounds) {
        for (const auto& term : round.accepted.term_list()) sound = sound && rest.contains(term);
        rest -= round.accepted;
      }
      rec.check("accepted_terms", sound, [&] { return config + " f = " + to_string(f); });

      if (!report->rounds.empty()) {
        const auto& r0 = report->rounds.front();
        check_ts(rec, rng, f, r0.base, r0.modulus, shape.D, io.ts, config);
      }
    }
  }

  // Per-term collision bound over the test primes of the modulus algorithm.
  const ModParams mp = ModParams::compute(shape.n, shape.t, shape.D);
  const auto primes = first_primes(mp.test_window());
  const auto ms = monomials_of(f);
  const auto counts = colliding_prime_counts(ms, shape.D, primes);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    rec.check("collision_primes", counts[i] <= mp.N1 - 1, [&] {
      return label + " term " + std::to_string(i) + " collides at " + std::to_string(counts[i]) +
             " primes, N1 = " + std::to_string(mp.N1);
    });
  }
}

}  // namespace

std::uint64_t smallest_admissible_field(std::uint64_t n, std::uint64_t T, std::uint64_t D) {
  return std::max(min_field_modulus_base(n, T, D), min_field_modulus_mod(n, T, D));
}

SuiteResult run_roundtrip_suite(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "roundtrip";
  Recorder rec{result};
  std::mt19937_64 rng(options.seed);
  for (std::uint64_t i = 0; i < options.count; ++i) {
    const Shape shape = random_shape(rng, options);
    if (i % 2 == 0) {
      roundtrip_instance(rec, rng, IntegerRing{}, shape, options);
    } else {
      const PrimeField field(smallest_admissible_field(shape.n, shape.t, shape.D));
      roundtrip_instance(rec, rng, field, shape, options);
    }
    ++result.instances;
  }
  return result;
}

SuiteResult run_lemma_suite(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "lemmas";
  Recorder rec{result};
  std::mt19937_64 rng(options.seed);
  const IntegerRing zz;

  for (std::uint64_t i = 0; i < options.count; ++i, ++result.instances) {
    const Shape s = random_shape(rng, options);
    const SparsePoly<IntegerRing> f = random_sparse(rng, zz, s.n, s.t, s.D);
    const auto ms = monomials_of(f);
    const std::string label = shape_text(s) + " f = " + to_string(f);
    const BaseParams bp = BaseParams::compute(s.n, s.t, s.D);
    const std::uint64_t p = base_prime(s.n, s.t, s.D);

    // Nonvanishing of l nonzero forms of degree < n.
    {
      const std::uint64_t l = draw(rng, 1, 6);
      const std::uint64_t q = next_prime_geq(std::max<std::uint64_t>(s.n, (s.n - 1) * l));
      std::vector<std::vector<std::uint64_t>> forms;
      while (forms.size() < l) {
        std::vector<std::uint64_t> a(s.n);
        for (auto& x : a) x = draw(rng, 0, q - 1);
        if (std::any_of(a.begin(), a.end(), [](std::uint64_t x) { return x != 0; })) {
          forms.push_back(std::move(a));
        }
      }
      const std::uint64_t delta = draw(rng, (s.n - 1) * l, q);
      const std::uint64_t good = count_nonvanishing(forms, q, delta);
      rec.check("nonvanishing_forms", good + (s.n - 1) * l >= delta, [&] {
        return shape_text(s) + " l=" + std::to_string(l) + " p=" + std::to_string(q) +
               " delta=" + std::to_string(delta) + " good=" + std::to_string(good);
      });
    }

    // Each term is collision-free for at least delta - delta1 bases.
    {
      const std::uint64_t delta = draw(rng, bp.delta1, p);
      const auto good = good_base_counts(ms, p, delta);
      for (std::size_t k = 0; k < good.size(); ++k) {
        rec.check("good_bases", good[k] + bp.delta1 >= delta, [&] {
          return label + " term " + std::to_string(k) + ": " + std::to_string(good[k]) +
                 " good bases in [1," + std::to_string(delta) + "]";
        });
      }
    }

    // Collision flags agree with the reduced image.
    {
      const std::uint64_t d = draw(rng, 1, p);
      const CollisionReport c = collision_report(ms, d, p);
      const UniPoly<IntegerRing> fmod = mod_cyclic(substitute_sparse(f, SubstitutionSpec(s.n, d, p)), p);
      bool ok = c.non_colliding() <= fmod.term_count();
      std::size_t k = 0;
      for (const auto& [e, coeff] : f.terms()) {
        if (!c.colliding[k]) ok = ok && fmod.coefficient(c.residues[k]) == coeff;
        ++k;
      }
      rec.check("collision_flags", ok, [&] { return label + " d=" + std::to_string(d); });
    }

    // Ok-degree selection.
    {
      std::vector<std::uint64_t> counts;
      for (std::uint64_t d = 1; d <= bp.selection_window(); ++d) {
        counts.push_back(reduced_term_count(f, d, p));
      }
      const std::uint64_t d0 = select_ok_degree(counts, bp.selection_window());
      rec.check("ok_degree", check_half_survive(f, d0, p),
                [&] { return label + " d0=" + std::to_string(d0); });

      const std::uint64_t d1 = draw(rng, 1, p), d2 = draw(rng, 1, p);
      rec.check("doubling", check_doubling_lemma(f, p, d1, d2), [&] {
        return label + " p=" + std::to_string(p) + " d1=" + std::to_string(d1) +
               " d2=" + std::to_string(d2);
      });

      const std::uint64_t sc = collision_report(ms, d0, p).count;
      const std::uint64_t pairs = vanishing_pair_count(ms, d0, p);
      rec.check("vanishing_pairs", pairs >= ceil_half(sc), [&] {
        return label + " d=" + std::to_string(d0) + " s=" + std::to_string(sc) +
               " pairs=" + std::to_string(pairs);
      });
      const std::uint64_t dr = draw(rng, 1, p);
      const std::uint64_t sr = collision_report(ms, dr, p).count;
      const std::uint64_t pr = vanishing_pair_count(ms, dr, p);
      rec.check("vanishing_pairs", pr >= ceil_half(sr), [&] {
        return label + " d=" + std::to_string(dr) + " s=" + std::to_string(sr) +
               " pairs=" + std::to_string(pr);
      });
    }

    // Ok-prime selection, collision primes, divisibility.
    {
      const ModParams mp = ModParams::compute(s.n, s.t, s.D);
      std::vector<std::uint64_t> counts;
      for (std::uint64_t j = 0; j < mp.selection_window(); ++j) {
        counts.push_back(reduced_term_count(f, s.D, mp.primes[j]));
      }
      const std::uint64_t j0 = select_ok_prime(counts, mp.selection_window());
      rec.check("ok_prime", check_half_survive(f, s.D, mp.primes[j0 - 1]),
                [&] { return label + " j0=" + std::to_string(j0); });

      const std::uint64_t j1 = draw(rng, 0, mp.N - 1), j2 = draw(rng, 0, mp.N - 1);
      rec.check("doubling", check_doubling_lemma(f, s.D, mp.primes[j1], s.D, mp.primes[j2]),
                [&] { return label + " primes " + std::to_string(mp.primes[j1]) + ", " +
                             std::to_string(mp.primes[j2]); });

      const auto test_primes = first_primes(mp.test_window());
      const auto cp = colliding_prime_counts(ms, s.D, test_primes);
      for (std::size_t k = 0; k < cp.size(); ++k) {
        rec.check("collision_primes", cp[k] <= mp.N1 - 1, [&] {
          return label + " term " + std::to_string(k) + " collides at " + std::to_string(cp[k]) +
                 " primes";
        });
      }

      const std::uint64_t q = first_primes(12)[draw(rng, 0, 11)];
      rec.check("divisibility", check_collision_divisibility(ms, s.D, q),
                [&] { return label + " p=" + std::to_string(q); });
    }
  }

  // Term tests are exact on a fixed small polynomial.
  if (options.count > 0) {
    const PrimeField field(101);
    const auto f = parse_sparse("3*x1^2 + x1*x2 + 2*x2 + 5", field, 2);
    for (const IffResult& r : {term_test_iff_base(f, 4, 3), term_test_iff_mod(f, 4, 3)}) {
      rec.check("term_test_iff", r.all_agree(), [&] {
        return "F_101 f = " + to_string(f) + " disagreement on " + r.mismatches.front();
      });
    }
  }
  return result;
}

}  // namespace spinterp
