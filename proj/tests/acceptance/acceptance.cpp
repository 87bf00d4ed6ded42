// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "spinterp/blackbox.hpp"
#include "spinterp/generator.hpp"
#include "spinterp/interp_base.hpp"
#include "spinterp/interp_mod.hpp"
#include "spinterp/verify.hpp"
#include "support/oracles.hpp"

using namespace spinterp;

namespace {

// Pinned thresholds. Everything is exact arithmetic, so every tolerance on a
// recovered polynomial or a counted bound is zero.
constexpr std::uint64_t kRoundtripInstances = 500;
constexpr std::uint64_t kRoundtripSeed = 20240601;
constexpr std::uint64_t kDivisibilityPairs = 250;
constexpr std::uint64_t kMinDivisibilityPairs = 200;
constexpr std::uint64_t kMinCorpus = 50;
constexpr std::uint64_t kAllowedViolations = 0;

const IntegerRing Z;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 5) notes.push_back(why);
  }
};

std::string tally_text(const SuiteResult& r, const std::string& category) {
  auto it = r.categories.find(category);
  if (it == r.categories.end()) return category + " missing";
  return std::to_string(it->second.checks) + " checks, " + std::to_string(it->second.failures) +
         " violations";
}

bool tally_ok(const SuiteResult& r, const std::string& category) {
  auto it = r.categories.find(category);
  return it != r.categories.end() && it->second.checks > 0 &&
         it->second.failures <= kAllowedViolations;
}

Outcome from_categories(const SuiteResult& r, std::initializer_list<const char*> names) {
  Outcome o;
  for (const char* name : names) {
    if (!tally_ok(r, name)) o.fail(std::string(name) + " failed");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string(name) + ": " + tally_text(r, name);
  }
  return o;
}

// Criterion 2.
Outcome iff_tests() {
  Outcome o;
  const PrimeField F(101);
  const auto f = parse_sparse("3*x1^2 + x1*x2 + 2*x2 + 5", F, 2);
  const auto base = term_test_iff_base(f, 4, 3);
  const auto mod = term_test_iff_mod(f, 4, 3);
  for (const auto* r : {&base, &mod}) {
    if (!r->all_agree()) o.fail("mismatch at " + r->mismatches.front());
  }
  if (base.checked != 12 || mod.checked != 12) o.fail("expected 12 candidate terms");
  o.detail = "base " + std::to_string(base.agreements) + "/" + std::to_string(base.checked) +
             ", modulus " + std::to_string(mod.agreements) + "/" + std::to_string(mod.checked) +
             " agree over F_101";
  return o;
}

// Criterion 5: A computed from its definition, s from residues.
Outcome divisibility() {
  Outcome o;
  std::mt19937_64 rng(kRoundtripSeed + 5);
  const auto small_primes = first_primes(12);
  std::uint64_t checked = 0, nontrivial = 0;
  for (std::uint64_t i = 0; i < kDivisibilityPairs; ++i) {
    const std::uint64_t n = draw(rng, 1, 4), D = draw(rng, 2, 9);
    const std::uint64_t t = std::min<std::uint64_t>(draw(rng, 2, 8), monomial_count(n, D).get_ui());
    const auto f = random_sparse(rng, Z, n, t, D);
    const auto ms = monomials_of(f);
    const std::uint64_t p = small_primes[draw(rng, 0, small_primes.size() - 1)];
    std::vector<std::uint64_t> residues;
    for (const auto& m : ms) residues.push_back(oracle::kronecker_exponent(m, D % p, p) % p);
    std::uint64_t s = 0;
    for (std::size_t a = 0; a < ms.size(); ++a) {
      s += std::count(residues.begin(), residues.end(), residues[a]) > 1;
    }
    mpz_class A = 1;
    for (std::size_t a = 0; a < ms.size(); ++a) {
      for (std::size_t b = a + 1; b < ms.size(); ++b) {
        mpz_class diff = 0, w = 1;
        for (std::size_t k = 0; k < n; ++k, w *= static_cast<unsigned long>(D)) {
          diff += (mpz_class(static_cast<unsigned long>(ms[a][k])) - static_cast<unsigned long>(ms[b][k])) * w;
        }
        A *= diff;
      }
    }
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, (s + 1) / 2);
    ++checked;
    nontrivial += s > 0;
    if (!mpz_divisible_p(A.get_mpz_t(), pk.get_mpz_t()) || collision_product(ms, D) != A ||
        !check_collision_divisibility(ms, D, p)) {
      o.fail(to_string(f) + " p=" + std::to_string(p));
    }
  }
  if (checked < kMinDivisibilityPairs) o.fail("too few pairs");
  o.detail = std::to_string(checked) + " (f, p) pairs, " + std::to_string(nontrivial) +
             " with collisions";
  return o;
}

// Criterion 7.
Outcome worked_traces() {
  Outcome o;
  const auto f = parse_sparse("x1 + x2", Z, 2);
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) o.fail(what);
  };
  for (auto backend : {UnivarBackend::lagrange(), UnivarBackend::ben_or_tiwari()}) {
    const std::string tag = backend.name() + ": ";
    const auto rb = interpolate_base(from_sparse(f), 2, 2, 2, backend);
    expect(rb.poly == f, tag + "base result");
    expect(rb.initial.modulus == 5, tag + "base p");
    expect(rb.rounds.size() == 1, tag + "base rounds");
    if (rb.rounds.size() == 1) {
      const auto& r = rb.rounds[0];
      expect(r.window_counts == std::vector<std::uint64_t>{1, 2, 2, 2, 2}, tag + "base counts");
      expect(r.selector == 2 && r.modulus == 5, tag + "d0");
      expect(r.candidates.size() == 2, tag + "base TS");
      for (const auto& c : r.candidates) {
        expect(f.contains(c.term) && c.test.decreases == 3 && c.test.window == 4, tag + "3 of 4");
      }
      expect(r.accepted == f, tag + "base accepted");
    }
    const auto rm = interpolate_mod(from_sparse(f), 2, 2, 2, backend);
    expect(rm.poly == f, tag + "modulus result");
    expect(rm.initial.N1 == 2 && rm.initial.N2 == 3 && rm.initial.N3 == 5, tag + "N1 N2 N3");
    expect(rm.rounds.size() == 1, tag + "modulus rounds");
    if (rm.rounds.size() == 1) {
      const auto& r = rm.rounds[0];
      using U = UniPoly<IntegerRing>;
      expect(r.window_counts == std::vector<std::uint64_t>{2, 2, 2, 2, 2}, tag + "modulus counts");
      expect(r.selector == 1 && r.modulus == 2, tag + "j0");
      expect(r.shifted_images.size() == 2 &&
                 r.shifted_images[0] == U::from_terms(Z, {{3, 1}, {0, 1}}) &&
                 r.shifted_images[1] == U::from_terms(Z, {{1, 1}, {2, 1}}),
             tag + "shifted images");
      expect(r.candidates.size() == 2, tag + "modulus TS");
      for (const auto& c : r.candidates) {
        expect(f.contains(c.term) && c.test.decreases == 4 && c.test.window == 4, tag + "4 of 4");
      }
      expect(r.accepted == f, tag + "modulus accepted");
    }
  }
  o.detail = "x1 + x2: d0=2 p=5 tests 3/4; j0=1 p=2 tests 4/4; TS = {x1, x2}; both backends";
  return o;
}

// Criterion 8.
Outcome corpus(const std::string& path) {
  Outcome o;
  std::ifstream in(path);
  if (!in) {
    o.fail("cannot open " + path);
    return o;
  }
  std::string line;
  std::uint64_t count = 0, runs = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++count;
    const std::size_t n = std::max<std::size_t>(1, max_variable_index(line));
    const auto want = oracle::expand(line, n);
    const std::uint64_t T = std::max<std::size_t>(1, want.size());
    const std::uint64_t D = std::max<std::uint64_t>(2, oracle::degree(want) + 1);
    const auto bb = to_blackbox(parse_expr(line, n), Z);
    for (auto alg : {Algorithm::Base, Algorithm::Modulus}) {
      for (auto backend : {UnivarBackend::lagrange(), UnivarBackend::ben_or_tiwari()}) {
        try {
          const auto r = alg == Algorithm::Base ? interpolate_base(bb, n, T, D, backend)
                                                : interpolate_mod(bb, n, T, D, backend);
          oracle::Expansion got;
          for (const auto& [e, c] : r.poly.terms()) got[e] = c;
          ++runs;
          if (got != want) o.fail(line + " (" + to_string(alg) + ", " + backend.name() + ")");
        } catch (const std::exception& e) {
          o.fail(line + ": " + e.what());
        }
      }
    }
  }
  if (count < kMinCorpus) o.fail("corpus has " + std::to_string(count) + " expressions");
  o.detail = std::to_string(count) + " expressions, " + std::to_string(runs) + " runs";
  return o;
}

// Criterion 9.
template <CoefficientRing R>
void degenerate_runs(Outcome& o, const R& ring, std::uint64_t& runs) {
  struct Case {
    const char* text;
    std::size_t n;
    std::uint64_t T_extra;
    std::uint64_t D;
  };
  const Case ok_cases[] = {
      {"0", 2, 1, 2},           {"0", 1, 0, 3},         {"-4*x2^3", 2, 0, 4},
      {"x1^5", 1, 0, 6},        {"x1^3 - 2*x1 + 1", 1, 0, 4},
      {"x1 + x2 - 3", 2, 3, 2}, {"2*x1*x2*x3 + x3^2", 3, 3, 4},
      {"x1^6", 1, 3, 9},
  };
  for (const auto& c : ok_cases) {
    const auto f = parse_sparse(c.text, ring, c.n);
    const std::uint64_t T = f.term_count() + c.T_extra;
    for (auto alg : {Algorithm::Base, Algorithm::Modulus}) {
      for (auto backend : {UnivarBackend::lagrange(), UnivarBackend::ben_or_tiwari()}) {
        const std::string label = std::string(c.text) + " T=" + std::to_string(T) + " " +
                                  to_string(alg) + "/" + backend.name() + " over " +
                                  ring.descriptor().to_string();
        try {
          const auto bb = from_sparse(f);
          const auto r = alg == Algorithm::Base ? interpolate_base(bb, c.n, std::max<std::uint64_t>(T, 1), c.D, backend)
                                                : interpolate_mod(bb, c.n, std::max<std::uint64_t>(T, 1), c.D, backend);
          ++runs;
          if (!(r.poly == f)) o.fail(label + " gave " + to_string(r.poly));
        } catch (const std::exception& e) {
          o.fail(label + ": " + e.what());
        }
      }
    }
  }
  const Case bad_cases[] = {
      {"x1^2 + 2*x1*x2 + x2^2", 2, 0, 2}, {"x1^3", 1, 0, 3}, {"x1^4 + x2", 2, 0, 3},
      {"x1*x2*x3 - 1", 3, 0, 2},          {"x1^9 + 1", 1, 0, 5},
  };
  for (const auto& c : bad_cases) {
    const auto f = parse_sparse(c.text, ring, c.n);
    for (auto alg : {Algorithm::Base, Algorithm::Modulus}) {
      for (auto backend : {UnivarBackend::lagrange(), UnivarBackend::ben_or_tiwari()}) {
        const std::string label = std::string(c.text) + " D=" + std::to_string(c.D) + " " +
                                  to_string(alg) + "/" + backend.name() + " over " +
                                  ring.descriptor().to_string();
        ++runs;
        try {
          const auto bb = from_sparse(f);
          const auto r = alg == Algorithm::Base ? interpolate_base(bb, c.n, f.term_count(), c.D, backend)
                                                : interpolate_mod(bb, c.n, f.term_count(), c.D, backend);
          o.fail(label + " returned " + to_string(r.poly));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::BoundsViolated) o.fail(label + ": " + e.what());
        }
      }
    }
  }
}

Outcome degenerate() {
  Outcome o;
  std::uint64_t runs = 0;
  degenerate_runs(o, Z, runs);
  // Large enough for every case above with either algorithm.
  degenerate_runs(o, PrimeField(1000003), runs);
  o.detail = std::to_string(runs) + " runs: f = 0, single term, n = 1, T = #f + 3, D <= deg f";
  return o;
}

void print(int number, const char* name, const Outcome& o, double seconds, bool& all) {
  all = all && o.pass;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << number << " " << name << ": " << o.detail
            << " [" << static_cast<long>(seconds * 1000) << " ms]\n";
  for (const auto& note : o.notes) std::cout << "        " << note << "\n";
  std::cout.flush();
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string corpus_path =
      argc > 1 ? argv[1] : std::string(SPINTERP_TEST_DATA) + "/expressions.txt";
  bool all = true;

  auto t0 = std::chrono::steady_clock::now();
  SuiteOptions options;
  options.seed = kRoundtripSeed;
  options.count = kRoundtripInstances;
  options.jobs = std::max(1u, std::thread::hardware_concurrency());
  const SuiteResult rt = run_roundtrip_suite(options);
  const double rt_seconds = since(t0);

  Outcome c1 = from_categories(rt, {"roundtrip"});
  if (rt.instances < kRoundtripInstances) c1.fail("only " + std::to_string(rt.instances) + " instances");
  c1.detail = std::to_string(rt.instances) + " instances, n 1..4, t 1..8, deg < 10, zz and smallest F_q, 2 algorithms x 2 backends; " + c1.detail;
  for (const auto& m : rt.messages) c1.notes.push_back(m);
  print(1, "roundtrip exactness", c1, rt_seconds, all);

  // Times each criterion; the outcome must be computed before the clock is read.
  auto timed = [&](int number, const char* name, const std::function<Outcome()>& run) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = run();
    print(number, name, o, since(start), all);
  };
  timed(2, "iff term tests", iff_tests);
  print(3, "ok selection", from_categories(rt, {"ok_selection"}), 0, all);
  print(4, "colliding primes per term", from_categories(rt, {"collision_primes"}), 0, all);
  timed(5, "collision divisibility", divisibility);
  print(6, "probe accounting", from_categories(rt, {"accounting"}), 0, all);
  timed(7, "worked traces", worked_traces);
  timed(8, "cross-oracle corpus", [&] { return corpus(corpus_path); });
  timed(9, "degenerate cases", degenerate);
  return all ? 0 : 1;
}
