#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "spinterp/errors.hpp"
#include "spinterp/rings.hpp"

namespace spinterp {

// Exponent vector (e_1, ..., e_n) of a monomial x1^e_1 * ... * xn^e_n.
using Exponents = std::vector<std::uint64_t>;

// Canonical term order: lexicographically descending, so x1 precedes x2 and
// the constant term comes last.
struct DescendingLex {
  bool operator()(const Exponents& a, const Exponents& b) const { return b < a; }
};

std::uint64_t total_degree(const Exponents& e);

template <CoefficientRing R>
struct Term {
  Exponents exponents;
  typename R::Element coefficient;
};

namespace detail {

// The + and - of both polynomial types: fold `other` into `terms`, dropping
// coefficients that become zero.
template <CoefficientRing R, class Map>
void accumulate(const R& ring, Map& terms, const typename Map::key_type& key,
                const typename R::Element& c, bool subtract) {
  if (ring.is_zero(c)) return;
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, subtract ? ring.neg(c) : c);
    return;
  }
  it->second = subtract ? ring.sub(it->second, c) : ring.add(it->second, c);
  if (ring.is_zero(it->second)) terms.erase(it);
}

inline void check_arity(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::ArityMismatch,
                "arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

template <CoefficientRing R>
void check_ring(const R& a, const R& b) {
  if (!(a == b)) {
    if constexpr (requires { a.descriptor(); }) {
      throw Error(ErrorCode::RingMismatch, "ring mismatch: " + a.descriptor().to_string() +
                                               " vs " + b.descriptor().to_string());
    } else {
      throw Error(ErrorCode::RingMismatch, "ring mismatch");
    }
  }
}

}  // namespace detail

// Sparse multivariate polynomial in canonical form: no zero coefficients,
// distinct exponent vectors, descending lexicographic term order.
template <CoefficientRing R>
class SparsePoly {
 public:
  using Element = typename R::Element;
  using TermMap = std::map<Exponents, Element, DescendingLex>;

  SparsePoly(R ring, std::size_t arity) : ring_(std::move(ring)), arity_(arity) {}

  static SparsePoly from_term(R ring, Exponents e, Element c) {
    SparsePoly f(std::move(ring), e.size());
    f.add_term(std::move(e), c);
    return f;
  }

  const R& ring() const { return ring_; }
  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Total degree; 0 for the zero polynomial.
  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, spinterp::total_degree(e));
    return d;
  }

  Element coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  bool contains(const Term<R>& t) const {
    auto it = terms_.find(t.exponents);
    return it != terms_.end() && ring_.equal(it->second, t.coefficient);
  }

  void add_term(const Exponents& e, const Element& c) {
    detail::check_arity(arity_, e.size());
    detail::accumulate(ring_, terms_, e, c, false);
  }
  void add_term(const Term<R>& t) { add_term(t.exponents, t.coefficient); }

  std::vector<Term<R>> term_list() const {
    std::vector<Term<R>> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.push_back({e, c});
    return out;
  }

  SparsePoly& operator+=(const SparsePoly& g) { return combine(g, false); }
  SparsePoly& operator-=(const SparsePoly& g) { return combine(g, true); }
  friend SparsePoly operator+(SparsePoly f, const SparsePoly& g) { return f += g; }
  friend SparsePoly operator-(SparsePoly f, const SparsePoly& g) { return f -= g; }

  friend bool operator==(const SparsePoly& f, const SparsePoly& g) {
    if (!(f.ring_ == g.ring_) || f.arity_ != g.arity_ || f.terms_.size() != g.terms_.size()) {
      return false;
    }
    auto it = g.terms_.begin();
    for (const auto& [e, c] : f.terms_) {
      if (e != it->first || !f.ring_.equal(c, it->second)) return false;
      ++it;
    }
    return true;
  }

 private:
  SparsePoly& combine(const SparsePoly& g, bool subtract) {
    detail::check_ring(ring_, g.ring_);
    detail::check_arity(arity_, g.arity_);
    for (const auto& [e, c] : g.terms_) detail::accumulate(ring_, terms_, e, c, subtract);
    return *this;
  }

  R ring_;
  std::size_t arity_;
  TermMap terms_;
};

// Sparse univariate polynomial: degree -> nonzero coefficient, ascending.
template <CoefficientRing R>
class UniPoly {
 public:
  using Element = typename R::Element;
  using TermMap = std::map<std::uint64_t, Element>;

  explicit UniPoly(R ring) : ring_(std::move(ring)) {}

  static UniPoly from_terms(R ring, std::initializer_list<std::pair<std::uint64_t, Element>> ts) {
    UniPoly u(std::move(ring));
    for (const auto& [d, c] : ts) u.add_term(d, c);
    return u;
  }

  const R& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::uint64_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  Element coefficient(std::uint64_t d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  void add_term(std::uint64_t d, const Element& c) {
    detail::accumulate(ring_, terms_, d, c, false);
  }

  Element evaluate(const Element& x) const {
    Element acc = ring_.zero();
    for (const auto& [d, c] : terms_) acc = ring_.add(acc, ring_.mul(c, ring_.pow(x, d)));
    return acc;
  }

  UniPoly& operator+=(const UniPoly& g) { return combine(g, false); }
  UniPoly& operator-=(const UniPoly& g) { return combine(g, true); }
  friend UniPoly operator+(UniPoly f, const UniPoly& g) { return f += g; }
  friend UniPoly operator-(UniPoly f, const UniPoly& g) { return f -= g; }

  friend bool operator==(const UniPoly& f, const UniPoly& g) {
    if (!(f.ring_ == g.ring_) || f.terms_.size() != g.terms_.size()) return false;
    auto it = g.terms_.begin();
    for (const auto& [d, c] : f.terms_) {
      if (d != it->first || !f.ring_.equal(c, it->second)) return false;
      ++it;
    }
    return true;
  }

 private:
  UniPoly& combine(const UniPoly& g, bool subtract) {
    detail::check_ring(ring_, g.ring_);
    for (const auto& [d, c] : g.terms_) detail::accumulate(ring_, terms_, d, c, subtract);
    return *this;
  }

  R ring_;
  TermMap terms_;
};

// Reduction modulo x^p - 1: exponents taken mod p, colliding coefficients summed.
template <CoefficientRing R>
UniPoly<R> mod_cyclic(const UniPoly<R>& f, std::uint64_t p) {
  if (p == 0) throw std::invalid_argument("mod_cyclic: p must be positive");
  UniPoly<R> out(f.ring());
  for (const auto& [d, c] : f.terms()) out.add_term(d % p, c);
  return out;
}

template <CoefficientRing R>
typename R::Element evaluate(const SparsePoly<R>& f, std::span<const typename R::Element> point) {
  detail::check_arity(f.arity(), point.size());
  const R& ring = f.ring();
  auto acc = ring.zero();
  for (const auto& [e, c] : f.terms()) {
    auto term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = ring.mul(term, ring.pow(point[i], e[i]));
    }
    acc = ring.add(acc, term);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Text form: `3*x1^2*x2 - x3 + 5`. Printing is canonical (descending lex,
// coefficient 1 omitted, residues printed as given by the ring).

// Ring-free parse result: exponent vector -> integer coefficient (summed).
using IntegerTermMap = std::map<Exponents, mpz_class, DescendingLex>;

// Throws ParseError (with byte offset) or UnknownVariable.
IntegerTermMap parse_sparse_terms(std::string_view text, std::size_t arity);

// Shared printer; `coeffs` are signed integers.
std::string format_terms(const std::vector<std::pair<Exponents, mpz_class>>& terms);
std::string format_univariate(const std::vector<std::pair<std::uint64_t, mpz_class>>& terms,
                              std::string_view var);

template <CoefficientRing R>
SparsePoly<R> parse_sparse(std::string_view text, const R& ring, std::size_t arity) {
  SparsePoly<R> f(ring, arity);
  for (const auto& [e, c] : parse_sparse_terms(text, arity)) f.add_term(e, ring.from_integer(c));
  return f;
}

template <CoefficientRing R>
std::string to_string(const SparsePoly<R>& f) {
  std::vector<std::pair<Exponents, mpz_class>> ts;
  ts.reserve(f.term_count());
  for (const auto& [e, c] : f.terms()) ts.emplace_back(e, f.ring().to_integer(c));
  return format_terms(ts);
}

template <CoefficientRing R>
std::string to_string(const UniPoly<R>& u, std::string_view var = "x") {
  std::vector<std::pair<std::uint64_t, mpz_class>> ts;
  ts.reserve(u.term_count());
  for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it) {
    ts.emplace_back(it->first, u.ring().to_integer(it->second));
  }
  return format_univariate(ts, var);
}

template <CoefficientRing R>
std::ostream& operator<<(std::ostream& os, const SparsePoly<R>& f) {
  return os << to_string(f);
}

template <CoefficientRing R>
std::ostream& operator<<(std::ostream& os, const UniPoly<R>& u) {
  return os << to_string(u);
}

}  // namespace spinterp
