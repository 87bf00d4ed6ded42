#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spinterp/blackbox.hpp"
#include "spinterp/poly.hpp"
#include "spinterp/univar.hpp"

namespace spinterp {

// The substitution x_i -> x^(w_i) with w_i = d^(i-1) mod p, optionally with
// w_k increased by p for one (1-based) coordinate k. Without k this gives the
// image f_(d,p); with k the shifted image f_(d,p,k). Both reduce to the same
// polynomial modulo x^p - 1.
class SubstitutionSpec {
 public:
  SubstitutionSpec(std::size_t arity, std::uint64_t base, std::uint64_t modulus,
                   std::optional<std::size_t> shifted = std::nullopt);

  std::size_t arity() const { return weights_.size(); }
  std::uint64_t base() const { return base_; }
  std::uint64_t modulus() const { return modulus_; }
  std::optional<std::size_t> shifted() const { return shifted_; }
  std::span<const std::uint64_t> weights() const { return weights_; }

  // Exponent of the image of a monomial: sum e_i * w_i.
  std::uint64_t image_exponent(const Exponents& e) const;

  // Degree ceiling of the image of a polynomial with total degree < D:
  // D(p-1) unshifted, max(2D(p-1), (D-1)(2p-1)) shifted; the two agree
  // whenever 2p > D.
  std::uint64_t degree_ceiling(std::uint64_t degree_bound) const;

  SubstitutionSpec shift(std::size_t k) const { return {arity(), base_, modulus_, k}; }

 private:
  std::uint64_t base_;
  std::uint64_t modulus_;
  std::optional<std::size_t> shifted_;
  std::vector<std::uint64_t> weights_;
};

template <CoefficientRing R>
UniPoly<R> substitute_sparse(const SparsePoly<R>& f, const SubstitutionSpec& spec) {
  detail::check_arity(f.arity(), spec.arity());
  UniPoly<R> out(f.ring());
  for (const auto& [e, c] : f.terms()) out.add_term(spec.image_exponent(e), c);
  return out;
}

// (theta^w_1, ..., theta^w_n): evaluating the image at theta is evaluating f here.
template <CoefficientRing R>
std::vector<typename R::Element> image_point(const R& ring, const SubstitutionSpec& spec,
                                             const typename R::Element& theta) {
  std::vector<typename R::Element> point;
  point.reserve(spec.arity());
  for (std::uint64_t w : spec.weights()) point.push_back(ring.pow(theta, w));
  return point;
}

// Univariate restriction of `bb` along `spec`; each call is one probe of bb.
template <CoefficientRing R>
UniOracle<R> image_oracle(const BlackBox<R>& bb, const SubstitutionSpec& spec) {
  detail::check_arity(bb.arity(), spec.arity());
  return [&bb, spec](const typename R::Element& theta) {
    const auto point = image_point(bb.ring(), spec, theta);
    return bb(point);
  };
}

// Interpolates the image of the black-box polynomial under `spec`.
// degree_bound must be at least the degree of the true image.
template <CoefficientRing R>
UniPoly<R> interpolate_image(const BlackBox<R>& bb, const SubstitutionSpec& spec,
                             std::uint64_t degree_bound, std::uint64_t term_bound,
                             const UnivarBackend& backend) {
  return interpolate_univariate<R>(image_oracle(bb, spec), backend, term_bound, degree_bound,
                                   bb.ring());
}

}  // namespace spinterp
