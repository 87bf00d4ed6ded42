#include <benchmark/benchmark.h>

#include <random>

#include "spinterp/generator.hpp"
#include "spinterp/interp_base.hpp"
#include "spinterp/interp_mod.hpp"
#include "spinterp/verify.hpp"

using namespace spinterp;

namespace {

const IntegerRing Z;

UnivarBackend backend_of(std::int64_t code) {
  return code == 0 ? UnivarBackend::lagrange() : UnivarBackend::ben_or_tiwari();
}

// args: n, T, D, backend (0 lagrange, 1 bot)
template <Algorithm A>
void BM_InterpolateFq(benchmark::State& state) {
  const std::uint64_t n = state.range(0), T = state.range(1), D = state.range(2);
  const PrimeField F(smallest_admissible_field(n, T, D));
  std::mt19937_64 rng(7);
  const auto f = random_sparse(rng, F, n, T, D);
  const auto backend = backend_of(state.range(3));
  std::uint64_t probes = 0;
  for (auto _ : state) {
    const auto bb = from_sparse(f);
    const auto r = A == Algorithm::Base ? interpolate_base(bb, n, T, D, backend)
                                        : interpolate_mod(bb, n, T, D, backend);
    probes = r.probes;
    benchmark::DoNotOptimize(r.poly.term_count());
  }
  state.counters["probes"] = static_cast<double>(probes);
  state.counters["q"] = static_cast<double>(F.modulus());
}

template <Algorithm A>
void BM_InterpolateZ(benchmark::State& state) {
  const std::uint64_t n = state.range(0), T = state.range(1), D = state.range(2);
  std::mt19937_64 rng(8);
  const auto f = random_sparse(rng, Z, n, T, D);
  const auto backend = backend_of(state.range(3));
  std::uint64_t probes = 0;
  for (auto _ : state) {
    const auto bb = from_sparse(f);
    const auto r = A == Algorithm::Base ? interpolate_base(bb, n, T, D, backend)
                                        : interpolate_mod(bb, n, T, D, backend);
    probes = r.probes;
    benchmark::DoNotOptimize(r.poly.term_count());
  }
  state.counters["probes"] = static_cast<double>(probes);
}

void interp_args(benchmark::internal::Benchmark* b) {
  for (std::int64_t backend : {0, 1}) {
    for (std::int64_t T : {1, 2, 4, 8}) b->Args({2, T, 6, backend});
    b->Args({4, 8, 10, backend});
  }
  b->Unit(benchmark::kMillisecond);
}

// args: degree bound, term count
void BM_LagrangeZ(benchmark::State& state) {
  const std::uint64_t deg = state.range(0);
  std::mt19937_64 rng(9);
  UniPoly<IntegerRing> u(Z);
  for (std::int64_t i = 0; i < state.range(1); ++i) u.add_term(draw(rng, 0, deg), random_coefficient(rng, Z));
  const UniOracle<IntegerRing> oracle = [&u](const mpz_class& x) { return u.evaluate(x); };
  for (auto _ : state) benchmark::DoNotOptimize(lagrange_interpolate<IntegerRing>(oracle, deg, Z));
}

void BM_BenOrTiwariZ(benchmark::State& state) {
  const std::uint64_t deg = state.range(0);
  std::mt19937_64 rng(10);
  UniPoly<IntegerRing> u(Z);
  for (std::int64_t i = 0; i < state.range(1); ++i) u.add_term(draw(rng, 0, deg), random_coefficient(rng, Z));
  const UniOracle<IntegerRing> oracle = [&u](const mpz_class& x) { return u.evaluate(x); };
  for (auto _ : state) benchmark::DoNotOptimize(bot_interpolate(oracle, state.range(1), deg, Z));
}

void BM_BenOrTiwariFq(benchmark::State& state) {
  const std::uint64_t deg = state.range(0);
  const PrimeField F(next_prime_geq(2 * deg + 2));
  std::mt19937_64 rng(11);
  UniPoly<PrimeField> u(F);
  for (std::int64_t i = 0; i < state.range(1); ++i) u.add_term(draw(rng, 0, deg), random_coefficient(rng, F));
  const UniOracle<PrimeField> oracle = [&u](const std::uint64_t& x) { return u.evaluate(x); };
  for (auto _ : state) benchmark::DoNotOptimize(bot_interpolate(oracle, state.range(1), deg, F));
}

void BM_TsTerms(benchmark::State& state) {
  const std::uint64_t n = 4, D = 10, p = 101, d = 7;
  std::mt19937_64 rng(12);
  const PrimeField F(1000003);
  const auto f = random_sparse(rng, F, n, state.range(0), D);
  const SubstitutionSpec spec(n, d, p);
  const auto image = substitute_sparse(f, spec);
  const auto fmod = mod_cyclic(image, p);
  std::vector<UniPoly<PrimeField>> shifted;
  for (std::size_t k = 1; k <= n; ++k) shifted.push_back(substitute_sparse(f, spec.shift(k)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts_terms<PrimeField>(fmod, image, shifted, d, p, D).candidates.size());
  }
}

}  // namespace

BENCHMARK(BM_InterpolateFq<Algorithm::Base>)->Apply(interp_args);
BENCHMARK(BM_InterpolateFq<Algorithm::Modulus>)->Apply(interp_args);
BENCHMARK(BM_InterpolateZ<Algorithm::Base>)->Apply(interp_args);
BENCHMARK(BM_InterpolateZ<Algorithm::Modulus>)->Apply(interp_args);
BENCHMARK(BM_LagrangeZ)->Args({100, 4})->Args({1000, 8})->Args({3000, 8});
BENCHMARK(BM_BenOrTiwariZ)->Args({100, 4})->Args({1000, 8})->Args({3000, 8});
BENCHMARK(BM_BenOrTiwariFq)->Args({1000, 8})->Args({100000, 8});
BENCHMARK(BM_TsTerms)->Arg(8)->Arg(64);

BENCHMARK_MAIN();
