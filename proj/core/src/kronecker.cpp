#include "spinterp/kronecker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spinterp {

SubstitutionSpec::SubstitutionSpec(std::size_t arity, std::uint64_t base, std::uint64_t modulus,
                                   std::optional<std::size_t> shifted)
    : base_(base), modulus_(modulus), shifted_(shifted) {
  if (!is_prime(modulus)) {
    throw Error(ErrorCode::NotPrime, "substitution modulus " + std::to_string(modulus) +
                                         " is not prime");
  }
  if (shifted && (*shifted == 0 || *shifted > arity)) {
    throw std::out_of_range("shifted coordinate " + std::to_string(*shifted) + " outside 1.." +
                            std::to_string(arity));
  }
  weights_.reserve(arity);
  std::uint64_t w = 1 % modulus;
  const std::uint64_t step = base % modulus;
  for (std::size_t i = 0; i < arity; ++i) {
    weights_.push_back(w);
    w = static_cast<std::uint64_t>(static_cast<unsigned __int128>(w) * step % modulus);
  }
  if (shifted) weights_[*shifted - 1] += modulus;
}

std::uint64_t SubstitutionSpec::image_exponent(const Exponents& e) const {
  if (e.size() != weights_.size()) {
    throw Error(ErrorCode::ArityMismatch, "exponent vector length " + std::to_string(e.size()) +
                                              " vs substitution arity " +
                                              std::to_string(weights_.size()));
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::uint64_t term = 0;
    if (__builtin_mul_overflow(e[i], weights_[i], &term) ||
        __builtin_add_overflow(total, term, &total)) {
      throw std::overflow_error("image exponent exceeds 64 bits");
    }
  }
  return total;
}

std::uint64_t SubstitutionSpec::degree_ceiling(std::uint64_t degree_bound) const {
  if (!shifted_) return degree_bound * (modulus_ - 1);
  // The shifted weight is below 2p, so for p < D/2 the first form is too small.
  const std::uint64_t top = degree_bound == 0 ? 0 : (degree_bound - 1) * (2 * modulus_ - 1);
  return std::max(2 * degree_bound * (modulus_ - 1), top);
}

}  // namespace spinterp
