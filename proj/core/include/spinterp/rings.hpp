#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "spinterp/errors.hpp"

namespace spinterp {

// Coefficient rings. Algorithms are templates over a ring object that owns
// all arithmetic; elements are plain values (mpz_class for the integers,
// canonical residues for F_q, mpq_class for the rationals used internally by
// Berlekamp-Massey over Z).

template <class R>
concept CoefficientRing = std::copyable<R> && requires(const R& r, const typename R::Element& a,
                                                      const mpz_class& z, std::uint64_t e) {
  typename R::Element;
  { r.zero() } -> std::same_as<typename R::Element>;
  { r.one() } -> std::same_as<typename R::Element>;
  { r.from_integer(z) } -> std::same_as<typename R::Element>;
  { r.add(a, a) } -> std::same_as<typename R::Element>;
  { r.sub(a, a) } -> std::same_as<typename R::Element>;
  { r.mul(a, a) } -> std::same_as<typename R::Element>;
  { r.neg(a) } -> std::same_as<typename R::Element>;
  { r.pow(a, e) } -> std::same_as<typename R::Element>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.equal(a, a) } -> std::same_as<bool>;
  { r == r } -> std::same_as<bool>;
};

template <class F>
concept Field = CoefficientRing<F> && requires(const F& f, const typename F::Element& a) {
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.div(a, a) } -> std::same_as<typename F::Element>;
};

enum class RingKind { Integers, PrimeField };

// Runtime description of a coefficient ring, as named on the command line and
// in .poly files: "zz" or "fq:<q>" (also "fq <q>").
struct RingDescriptor {
  RingKind kind = RingKind::Integers;
  std::uint64_t modulus = 0;  // PrimeField only

  static RingDescriptor integers() { return {}; }
  static RingDescriptor prime_field(std::uint64_t q);  // throws NotPrime
  static RingDescriptor parse(std::string_view text);

  std::string to_string() const;
  bool operator==(const RingDescriptor&) const = default;
};

// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

class IntegerRing {
 public:
  using Element = mpz_class;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_integer(const mpz_class& v) const { return v; }
  Element from_int(std::int64_t v) const { return mpz_class(static_cast<long>(v)); }
  mpz_class to_integer(const Element& a) const { return a; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element pow(const Element& a, std::uint64_t e) const;

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  // a / k when k divides a exactly.
  std::optional<Element> div_exact_small(const Element& a, std::uint64_t k) const;

  RingDescriptor descriptor() const { return RingDescriptor::integers(); }
  bool operator==(const IntegerRing&) const = default;
};

// F_q for a prime 2 <= q < 2^63. Elements are canonical residues in [0, q-1].
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t q);  // throws NotPrime

  std::uint64_t modulus() const { return q_; }

  Element zero() const { return 0; }
  Element one() const { return 1 % q_; }
  Element from_integer(const mpz_class& v) const;
  Element from_int(std::int64_t v) const;
  mpz_class to_integer(const Element& a) const { return mpz_class(static_cast<unsigned long>(a)); }

  Element add(Element a, Element b) const {
    std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + (q_ - b); }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<unsigned __int128>(a) * b % q_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : q_ - a; }
  Element pow(Element a, std::uint64_t e) const;
  Element inv(Element a) const;  // throws std::domain_error on zero
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }

  std::optional<Element> div_exact_small(Element a, std::uint64_t k) const;

  // Multiplicative order of a nonzero element.
  std::uint64_t order(Element a) const;

  RingDescriptor descriptor() const { return {RingKind::PrimeField, q_}; }
  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t q_;
};

// Exact rationals; used where the Z-case needs a field.
class RationalField {
 public:
  using Element = mpq_class;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_integer(const mpz_class& v) const { return mpq_class(v); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element pow(const Element& a, std::uint64_t e) const;
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return a * inv(b); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  bool operator==(const RationalField&) const = default;
};

PrimeField mk_prime_field(std::uint64_t q);

// Smallest g >= 2 whose multiplicative order is at least `bound`. The order is
// computed exactly from the factorization of q-1.
// Throws RingTooSmall when q-1 < bound.
std::uint64_t find_element_of_order_geq(const PrimeField& field, std::uint64_t bound);

// Prime factors of n (distinct, ascending) by trial division.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

}  // namespace spinterp
