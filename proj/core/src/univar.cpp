#include "spinterp/univar.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

namespace spinterp {

UnivarBackend UnivarBackend::parse(std::string_view name) {
  if (name == "lagrange") return lagrange();
  if (name == "bot" || name == "ben-or-tiwari") return ben_or_tiwari();
  throw ParseError(0, "unknown backend '" + std::string(name) + "' (expected lagrange or bot)");
}

std::uint64_t contracted_probes(const UnivarBackend& backend, std::uint64_t term_bound,
                                std::uint64_t degree_bound) {
  return backend.kind == BackendKind::Lagrange ? degree_bound + 1 : 2 * term_bound;
}

void check_backend_fits(const IntegerRing&, const UnivarBackend&, std::uint64_t) {}

void check_backend_fits(const PrimeField& ring, const UnivarBackend& backend,
                        std::uint64_t degree_bound) {
  const std::uint64_t q = ring.modulus();
  if (backend.kind == BackendKind::Lagrange) {
    // degree_bound + 1 distinct nodes 0..degree_bound
    if (degree_bound >= q) {
      throw Error(ErrorCode::RingTooSmall,
                  "Lagrange needs q >= " + std::to_string(degree_bound + 1) + ", got q = " +
                      std::to_string(q));
    }
  } else if (q - 1 <= degree_bound) {
    // needs an element of order > degree_bound
    throw Error(ErrorCode::RingTooSmall,
                "Ben-or-Tiwari needs q >= " + std::to_string(degree_bound + 2) + ", got q = " +
                    std::to_string(q));
  }
}

namespace {

BackendKind bot() { return BackendKind::BenOrTiwari; }

[[noreturn]] void backend_failure(const std::string& why) {
  throw Error(ErrorCode::BackendFailure, "Ben-or-Tiwari: " + why);
}

std::optional<UniPoly<IntegerRing>> bot_multimodular(const std::vector<mpz_class>& values,
                                                     std::uint64_t term_bound,
                                                     std::uint64_t degree_bound);

}  // namespace

UniPoly<IntegerRing> bot_interpolate(const UniOracle<IntegerRing>& oracle, std::uint64_t term_bound,
                                     std::uint64_t degree_bound, const IntegerRing& ring) {
  const RationalField rationals;
  std::vector<mpz_class> values;
  std::vector<mpq_class> seq;
  values.reserve(2 * term_bound);
  mpz_class point = 1;
  for (std::uint64_t i = 0; i < 2 * term_bound; ++i) {
    values.push_back(oracle(point));
    seq.emplace_back(values.back());
    point <<= 1;
  }
  if (auto fast = bot_multimodular(values, term_bound, degree_bound)) return std::move(*fast);

  const UniPoly<RationalField> lambda = berlekamp_massey<RationalField>(seq, rationals);
  const std::uint64_t r = lambda.degree();
  UniPoly<IntegerRing> out(ring);
  if (r == 0) return out;
  if (r > term_bound) backend_failure("recurrence longer than the term bound");

  // -lambda_{r-1} is the sum of the roots 2^e_j.
  const mpq_class sum_q = -lambda.coefficient(r - 1);
  if (sum_q.get_den() != 1 || sgn(sum_q) <= 0) backend_failure("roots are not powers of two");
  const mpz_class sum = sum_q.get_num();
  if (mpz_popcount(sum.get_mpz_t()) != r) backend_failure("roots are not distinct powers of two");

  std::vector<std::uint64_t> exponents;
  std::vector<mpq_class> roots;
  UniPoly<RationalField> product = UniPoly<RationalField>::from_terms(rationals, {{0, mpq_class(1)}});
  for (mp_bitcnt_t bit = mpz_scan1(sum.get_mpz_t(), 0); exponents.size() < r;
       bit = mpz_scan1(sum.get_mpz_t(), bit + 1)) {
    if (bit > degree_bound) backend_failure("exponent exceeds the degree bound");
    exponents.push_back(bit);
    mpz_class root = 0;
    mpz_setbit(root.get_mpz_t(), bit);
    roots.emplace_back(root);
    // product *= (z - root)
    UniPoly<RationalField> next(rationals);
    for (const auto& [d, c] : product.terms()) {
      next.add_term(d + 1, c);
      next.add_term(d, -c * roots.back());
    }
    product = std::move(next);
  }
  if (!(product == lambda)) backend_failure("recurrence does not split over powers of two");

  const auto coeffs = solve_transposed_vandermonde<RationalField>(
      roots, std::span<const mpq_class>(seq).first(r), rationals);
  for (std::size_t j = 0; j < r; ++j) {
    if (coeffs[j].get_den() != 1) backend_failure("non-integral coefficient");
    out.add_term(exponents[j], coeffs[j].get_num());
  }
  return out;
}

UniPoly<PrimeField> bot_interpolate(const UniOracle<PrimeField>& oracle, std::uint64_t term_bound,
                                    std::uint64_t degree_bound, const PrimeField& ring,
                                    std::optional<std::uint64_t> base) {
  check_backend_fits(ring, UnivarBackend{bot(), base}, degree_bound);
  std::uint64_t g = 0;
  if (base) {
    g = *base % ring.modulus();
    if (g == 0 || ring.order(g) <= degree_bound) {
      throw Error(ErrorCode::RingTooSmall, "evaluation base " + std::to_string(*base) +
                                               " has order <= " + std::to_string(degree_bound));
    }
  } else {
    g = find_element_of_order_geq(ring, degree_bound + 1);
  }

  std::vector<std::uint64_t> seq;
  seq.reserve(2 * term_bound);
  std::uint64_t point = 1;
  for (std::uint64_t i = 0; i < 2 * term_bound; ++i) {
    seq.push_back(oracle(point));
    point = ring.mul(point, g);
  }

  const UniPoly<PrimeField> lambda = berlekamp_massey<PrimeField>(seq, ring);
  const std::uint64_t r = lambda.degree();
  UniPoly<PrimeField> out(ring);
  if (r == 0) return out;
  if (r > term_bound) backend_failure("recurrence longer than the term bound");
  if (lambda.coefficient(0) == 0) backend_failure("zero is a root of the recurrence");

  std::vector<std::uint64_t> exponents;
  std::vector<std::uint64_t> roots;
  std::uint64_t power = 1;
  for (std::uint64_t e = 0; e <= degree_bound && exponents.size() < r; ++e) {
    if (lambda.evaluate(power) == 0) {
      exponents.push_back(e);
      roots.push_back(power);
    }
    power = ring.mul(power, g);
  }
  if (exponents.size() != r) backend_failure("recurrence roots are not powers of the base");

  const auto coeffs = solve_transposed_vandermonde<PrimeField>(
      roots, std::span<const std::uint64_t>(seq).first(r), ring);
  for (std::size_t j = 0; j < r; ++j) out.add_term(exponents[j], coeffs[j]);
  return out;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  for (; e; e >>= 1, a = mulmod(a, a, p)) {
    if (e & 1) r = mulmod(r, a, p);
  }
  return r;
}

// Primes just below 2^62, largest first. With `safe`, only primes P where
// (P-1)/2 is prime too, so 2 has order at least (P-1)/2.
std::vector<std::uint64_t> word_primes(std::size_t count, bool safe = false) {
  static std::vector<std::uint64_t> cache[2];
  static std::mutex lock;
  std::lock_guard guard(lock);
  auto& primes = cache[safe];
  std::uint64_t c = primes.empty() ? (std::uint64_t{1} << 62) - 1 : primes.back() - 2;
  while (primes.size() < count) {
    if (is_prime(c) && (!safe || is_prime(c / 2))) primes.push_back(c);
    c -= 2;
  }
  return {primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(count)};
}

// Interpolant mod P through (i, values[i]) in monomial form.
std::vector<std::uint64_t> lagrange_mod(const std::vector<mpz_class>& values, std::uint64_t P) {
  const std::size_t m = values.size() - 1;
  std::vector<std::uint64_t> a(m + 1);
  for (std::size_t i = 0; i <= m; ++i) a[i] = mpz_fdiv_ui(values[i].get_mpz_t(), P);
  for (std::size_t k = 1; k <= m; ++k) {
    const std::uint64_t inv = powmod(k, P - 2, P);
    for (std::size_t i = m; i >= k; --i) a[i] = mulmod((a[i] + P - a[i - 1]) % P, inv, P);
  }
  std::vector<std::uint64_t> c(m + 1, 0);
  c[0] = a[m];
  for (std::size_t step = 0; step < m; ++step) {
    const std::uint64_t k = m - 1 - step;
    for (std::size_t j = step + 1; j >= 1; --j) c[j] = (c[j - 1] + P - mulmod(k, c[j], P)) % P;
    c[0] = (a[k] + P - mulmod(k, c[0], P)) % P;
  }
  return c;
}

// Does the sparse candidate reproduce every value exactly?
bool reproduces(const std::vector<std::pair<std::uint64_t, mpz_class>>& terms,
                const std::vector<mpz_class>& values) {
  mpz_class acc, power, step;
  auto check = [&](std::size_t i) {
    acc = 0;
    power = 1;
    std::uint64_t prev = 0;
    for (const auto& [e, c] : terms) {
      mpz_ui_pow_ui(step.get_mpz_t(), i, e - prev);
      power *= step;
      prev = e;
      acc += c * power;
    }
    return acc == values[i];
  };
  // Small nodes first: a wrong lift is almost always caught there cheaply.
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!check(i)) return false;
  }
  return true;
}

// Multimodular attempt: CRT over a growing set of word primes, accepted only
// when the symmetric lift reproduces all values. nullopt means "not found".
std::optional<UniPoly<IntegerRing>> lagrange_multimodular(const std::vector<mpz_class>& values) {
  constexpr std::size_t kMaxPrimes = 8;
  const std::size_t m = values.size() - 1;
  const auto primes = word_primes(kMaxPrimes);
  std::vector<mpz_class> x(m + 1, 0);
  mpz_class M = 1;
  std::size_t used = 0;
  for (std::size_t target : {1, 2, 4, 8}) {
    for (; used < target; ++used) {
      const std::uint64_t P = primes[used];
      const auto r = lagrange_mod(values, P);
      const std::uint64_t m_inv = powmod(mpz_fdiv_ui(M.get_mpz_t(), P), P - 2, P);
      for (std::size_t j = 0; j <= m; ++j) {
        const std::uint64_t xr = mpz_fdiv_ui(x[j].get_mpz_t(), P);
        const std::uint64_t t = mulmod((r[j] + P - xr) % P, m_inv, P);
        if (t != 0) x[j] += M * static_cast<unsigned long>(t);
      }
      M *= static_cast<unsigned long>(P);
    }
    const mpz_class half = M / 2;
    std::vector<std::pair<std::uint64_t, mpz_class>> terms;
    for (std::size_t j = 0; j <= m; ++j) {
      if (x[j] != 0) terms.emplace_back(j, x[j] > half ? mpz_class(x[j] - M) : x[j]);
    }
    if (reproduces(terms, values)) {
      UniPoly<IntegerRing> out{IntegerRing{}};
      for (const auto& [e, c] : terms) out.add_term(e, c);
      return out;
    }
  }
  return std::nullopt;
}

// Ben-or-Tiwari on the values at 2^0..2^(2T-1) reduced mod safe word primes:
// recurrence and exponents from the first prime,
// coefficients by CRT. Accepted only if the lift reproduces every value; two
// T-sparse polynomials agreeing there are equal. nullopt means "not found".
std::optional<UniPoly<IntegerRing>> bot_multimodular(const std::vector<mpz_class>& values,
                                                     std::uint64_t term_bound,
                                                     std::uint64_t degree_bound) {
  constexpr std::size_t kMaxPrimes = 8;
  std::vector<PrimeField> fields;
  for (std::uint64_t P : word_primes(kMaxPrimes, true)) fields.emplace_back(P);
  if (degree_bound >= fields.back().modulus() / 2) return std::nullopt;

  auto reduce = [&](const PrimeField& F) {
    std::vector<std::uint64_t> seq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      seq[i] = mpz_fdiv_ui(values[i].get_mpz_t(), F.modulus());
    }
    return seq;
  };

  const std::vector<std::uint64_t> seq0 = reduce(fields[0]);
  const UniPoly<PrimeField> lambda = berlekamp_massey<PrimeField>(seq0, fields[0]);
  const std::uint64_t r = lambda.degree();
  if (r > term_bound || (r > 0 && lambda.coefficient(0) == 0)) return std::nullopt;
  std::vector<std::uint64_t> exponents;
  std::uint64_t power = 1;
  for (std::uint64_t e = 0; e <= degree_bound && exponents.size() < r; ++e) {
    if (lambda.evaluate(power) == 0) exponents.push_back(e);
    power = fields[0].mul(power, 2);
  }
  if (exponents.size() != r) return std::nullopt;

  std::vector<mpz_class> x(r, 0);
  mpz_class M = 1;
  std::size_t used = 0;
  for (std::size_t target : {1, 2, 4, 8}) {
    for (; used < std::min(target, fields.size()); ++used) {
      const PrimeField& F = fields[used];
      const std::uint64_t P = F.modulus();
      std::vector<std::uint64_t> roots;
      for (std::uint64_t e : exponents) roots.push_back(F.pow(2, e));
      const std::vector<std::uint64_t> seq = used == 0 ? seq0 : reduce(F);
      const auto c = solve_transposed_vandermonde<PrimeField>(
          roots, std::span<const std::uint64_t>(seq).first(r), F);
      const std::uint64_t m_inv = F.inv(mpz_fdiv_ui(M.get_mpz_t(), P));
      for (std::size_t j = 0; j < r; ++j) {
        const std::uint64_t t = F.mul(F.sub(c[j], mpz_fdiv_ui(x[j].get_mpz_t(), P)), m_inv);
        if (t != 0) x[j] += M * static_cast<unsigned long>(t);
      }
      M *= static_cast<unsigned long>(P);
    }
    const mpz_class half = M / 2;
    std::vector<mpz_class> lifted(r);
    for (std::size_t j = 0; j < r; ++j) lifted[j] = x[j] > half ? mpz_class(x[j] - M) : x[j];

    bool ok = std::none_of(lifted.begin(), lifted.end(), [](const mpz_class& c) { return c == 0; });
    mpz_class acc, term;
    for (std::size_t i = 0; ok && i < values.size(); ++i) {
      acc = 0;
      for (std::size_t j = 0; j < r; ++j) {
        mpz_mul_2exp(term.get_mpz_t(), lifted[j].get_mpz_t(), exponents[j] * i);
        acc += term;
      }
      ok = acc == values[i];
    }
    if (ok) {
      UniPoly<IntegerRing> out{IntegerRing{}};
      for (std::size_t j = 0; j < r; ++j) out.add_term(exponents[j], lifted[j]);
      return out;
    }
    if (used == fields.size()) break;
  }
  return std::nullopt;
}

}  // namespace

namespace detail {

UniPoly<IntegerRing> lagrange_from_values(std::vector<mpz_class>& a) {
  if (a.size() > 1) {
    if (auto g = lagrange_multimodular(a)) return std::move(*g);
  }
  return lagrange_exact(a);
}

UniPoly<IntegerRing> lagrange_exact(std::vector<mpz_class>& a) {
  const std::size_t m = a.empty() ? 0 : a.size() - 1;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t i = m; i >= k; --i) {
      mpz_ptr x = a[i].get_mpz_t();
      mpz_sub(x, x, a[i - 1].get_mpz_t());
      if (mpz_tdiv_q_ui(x, x, static_cast<unsigned long>(k)) != 0) {
        throw Error(ErrorCode::BackendFailure,
                    "Lagrange: values are not those of an integer polynomial of degree <= " +
                        std::to_string(m));
      }
    }
  }
  // c holds the partial product, highest Newton coefficient first.
  std::vector<mpz_class> c(m + 1);
  c[0] = a[m];
  for (std::size_t step = 0; step < m; ++step) {
    const unsigned long k = static_cast<unsigned long>(m - 1 - step);
    for (std::size_t j = step + 1; j >= 1; --j) {
      mpz_ptr cj = c[j].get_mpz_t();
      mpz_mul_ui(cj, cj, k);
      mpz_sub(cj, c[j - 1].get_mpz_t(), cj);
    }
    mpz_ptr c0 = c[0].get_mpz_t();
    mpz_mul_ui(c0, c0, k);
    mpz_sub(c0, a[m - 1 - step].get_mpz_t(), c0);
  }
  UniPoly<IntegerRing> out{IntegerRing{}};
  for (std::size_t j = 0; j <= m; ++j) out.add_term(j, c[j]);
  return out;
}

}  // namespace detail
}  // namespace spinterp
