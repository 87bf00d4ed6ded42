#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinterp/errors.hpp"
#include "spinterp/poly.hpp"
#include "spinterp/rings.hpp"

namespace spinterp {

enum class BackendKind { Lagrange, BenOrTiwari };

struct UnivarBackend {
  BackendKind kind = BackendKind::Lagrange;
  // Ben-or-Tiwari over F_q: evaluation base to use instead of the smallest
  // element of large enough order.
  std::optional<std::uint64_t> field_base;

  static UnivarBackend lagrange() { return {BackendKind::Lagrange, std::nullopt}; }
  static UnivarBackend ben_or_tiwari() { return {BackendKind::BenOrTiwari, std::nullopt}; }
  static UnivarBackend parse(std::string_view name);  // "lagrange" | "bot"

  std::string name() const { return kind == BackendKind::Lagrange ? "lagrange" : "bot"; }
};

// Probes one univariate interpolation costs: degree_bound + 1 for Lagrange,
// 2 * term_bound for Ben-or-Tiwari.
std::uint64_t contracted_probes(const UnivarBackend& backend, std::uint64_t term_bound,
                                std::uint64_t degree_bound);

// Univariate restriction of a black box. Probe accounting stays with the
// black box behind it.
template <CoefficientRing R>
using UniOracle = std::function<typename R::Element(const typename R::Element&)>;

// Throws RingTooSmall if `ring` cannot host `backend` at this degree bound.
void check_backend_fits(const IntegerRing& ring, const UnivarBackend& backend,
                        std::uint64_t degree_bound);
void check_backend_fits(const PrimeField& ring, const UnivarBackend& backend,
                        std::uint64_t degree_bound);

namespace detail {
// Integer version of the loops below; values[i] is the value at i. Tries a
// multimodular reconstruction checked against every value, then falls back to
// exact divided differences (which may clobber `values`).
UniPoly<IntegerRing> lagrange_from_values(std::vector<mpz_class>& values);
UniPoly<IntegerRing> lagrange_exact(std::vector<mpz_class>& values);
}  // namespace detail

// Dense interpolation through the points 0, 1, ..., degree_bound using Newton
// divided differences. Over Z the divisions are exact for any integer
// polynomial of degree <= degree_bound; an inexact one raises BackendFailure.
template <CoefficientRing R>
UniPoly<R> lagrange_interpolate(const UniOracle<R>& oracle, std::uint64_t degree_bound,
                                const R& ring) {
  if constexpr (std::same_as<R, PrimeField>) {
    check_backend_fits(ring, UnivarBackend::lagrange(), degree_bound);
  }
  const std::size_t m = degree_bound;
  std::vector<typename R::Element> a;
  a.reserve(m + 1);
  for (std::size_t i = 0; i <= m; ++i) a.push_back(oracle(ring.from_integer(mpz_class(static_cast<unsigned long>(i)))));
  if constexpr (std::same_as<R, IntegerRing>) return detail::lagrange_from_values(a);

  // Divided differences on equally spaced nodes: a[i] <- (a[i] - a[i-1]) / k.
  for (std::size_t k = 1; k <= m; ++k) {
    if constexpr (Field<R>) {
      const auto inv_k = ring.inv(ring.from_integer(mpz_class(static_cast<unsigned long>(k))));
      for (std::size_t i = m; i >= k; --i) a[i] = ring.mul(ring.sub(a[i], a[i - 1]), inv_k);
      continue;
    }
    for (std::size_t i = m; i >= k; --i) {
      auto q = ring.div_exact_small(ring.sub(a[i], a[i - 1]), k);
      if (!q) {
        throw Error(ErrorCode::BackendFailure,
                    "Lagrange: values are not those of an integer polynomial of degree <= " +
                        std::to_string(degree_bound));
      }
      a[i] = std::move(*q);
    }
  }

  // Newton form to monomial form, Horner-style from the top coefficient.
  std::vector<typename R::Element> c(m + 1, ring.zero());
  c[0] = a[m];
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t k = m - 1 - step;  // multiply by (x - k), add a[k]
    const std::size_t len = step + 1;
    const auto node = ring.from_integer(mpz_class(static_cast<unsigned long>(k)));
    for (std::size_t j = len; j >= 1; --j) {
      c[j] = ring.sub(c[j - 1], ring.mul(node, c[j]));
    }
    c[0] = ring.add(ring.neg(ring.mul(node, c[0])), a[k]);
  }

  UniPoly<R> out(ring);
  for (std::size_t j = 0; j <= m; ++j) out.add_term(j, c[j]);
  return out;
}

// Minimal monic generator of a linear recurrent sequence. The returned
// polynomial lambda(z) = z^r + ... satisfies sum_j lambda_j * seq[i+j] = 0 for
// every window inside the sequence; r = 0 (lambda = 1) for an all-zero input.
template <Field F>
UniPoly<F> berlekamp_massey(std::span<const typename F::Element> seq, const F& field) {
  using E = typename F::Element;
  std::vector<E> conn{field.one()};  // C(z) = 1 + c1 z + ... + cL z^L
  std::vector<E> prev{field.one()};
  std::size_t length = 0;
  std::size_t shift = 1;
  E last_discrepancy = field.one();

  for (std::size_t n = 0; n < seq.size(); ++n) {
    E d = seq[n];
    for (std::size_t i = 1; i <= length && i < conn.size(); ++i) {
      d = field.add(d, field.mul(conn[i], seq[n - i]));
    }
    if (field.is_zero(d)) {
      ++shift;
      continue;
    }
    const E factor = field.div(d, last_discrepancy);
    std::vector<E> next = conn;
    if (next.size() < prev.size() + shift) next.resize(prev.size() + shift, field.zero());
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + shift] = field.sub(next[i + shift], field.mul(factor, prev[i]));
    }
    if (2 * length <= n) {
      prev = std::move(conn);
      length = n + 1 - length;
      last_discrepancy = d;
      shift = 1;
    } else {
      ++shift;
    }
    conn = std::move(next);
  }

  // lambda(z) = z^L * C(1/z)
  UniPoly<F> lambda(field);
  for (std::size_t i = 0; i <= length; ++i) {
    const E c = i < conn.size() ? conn[i] : field.zero();
    lambda.add_term(length - i, c);
  }
  return lambda;
}

// Solves sum_j c_j * roots[j]^i = values[i] for i < |roots|.
// Throws SingularSystem if two roots coincide.
template <Field F>
std::vector<typename F::Element> solve_transposed_vandermonde(
    std::span<const typename F::Element> roots, std::span<const typename F::Element> values,
    const F& field) {
  using E = typename F::Element;
  const std::size_t k = roots.size();
  if (values.size() < k) throw std::invalid_argument("transposed Vandermonde: too few values");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (field.equal(roots[i], roots[j])) {
        throw Error(ErrorCode::SingularSystem, "transposed Vandermonde: repeated root");
      }
    }
  }
  // master(z) = prod (z - r_j), ascending coefficients.
  std::vector<E> master{field.one()};
  for (const E& r : roots) {
    std::vector<E> next(master.size() + 1, field.zero());
    for (std::size_t i = 0; i < master.size(); ++i) {
      next[i + 1] = field.add(next[i + 1], master[i]);
      next[i] = field.sub(next[i], field.mul(r, master[i]));
    }
    master = std::move(next);
  }
  std::vector<E> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    // quotient(z) = master(z) / (z - r_j) by synthetic division
    std::vector<E> quot(k, field.zero());
    E carry = field.zero();
    for (std::size_t i = k; i >= 1; --i) {
      carry = field.add(master[i], field.mul(carry, roots[j]));
      quot[i - 1] = carry;
    }
    E num = field.zero();
    E den = field.zero();
    E power = field.one();
    for (std::size_t i = 0; i < k; ++i) {
      num = field.add(num, field.mul(quot[i], values[i]));
      den = field.add(den, field.mul(quot[i], power));
      power = field.mul(power, roots[j]);
    }
    out.push_back(field.div(num, den));
  }
  return out;
}

// Ben-or-Tiwari with exactly 2 * term_bound probes.
//  Z:   probes at 2^0..2^(2T-1); Berlekamp-Massey over Q; every root is a power
//       of two, and since they are distinct their sum has exactly one bit set
//       per root, which gives the exponents.
//  F_q: probes at g^0..g^(2T-1) for g of order > degree_bound; exponents by a
//       sweep over g^0..g^degree_bound (no discrete logarithms).
// BackendFailure when the data is not a <= term_bound-sparse polynomial of
// degree <= degree_bound.
UniPoly<IntegerRing> bot_interpolate(const UniOracle<IntegerRing>& oracle, std::uint64_t term_bound,
                                     std::uint64_t degree_bound, const IntegerRing& ring);
UniPoly<PrimeField> bot_interpolate(const UniOracle<PrimeField>& oracle, std::uint64_t term_bound,
                                    std::uint64_t degree_bound, const PrimeField& ring,
                                    std::optional<std::uint64_t> base = std::nullopt);

template <CoefficientRing R>
UniPoly<R> interpolate_univariate(const UniOracle<R>& oracle, const UnivarBackend& backend,
                                  std::uint64_t term_bound, std::uint64_t degree_bound,
                                  const R& ring) {
  if (backend.kind == BackendKind::Lagrange) return lagrange_interpolate(oracle, degree_bound, ring);
  if constexpr (std::same_as<R, PrimeField>) {
    return bot_interpolate(oracle, term_bound, degree_bound, ring, backend.field_base);
  } else {
    return bot_interpolate(oracle, term_bound, degree_bound, ring);
  }
}

}  // namespace spinterp
