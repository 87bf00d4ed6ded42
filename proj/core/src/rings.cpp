#include "spinterp/rings.hpp"

#include <charconv>
#include <stdexcept>

namespace spinterp {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

constexpr std::uint64_t kMaxFieldModulus = std::uint64_t{1} << 63;

}  // namespace

// Miller-Rabin with the first twelve prime bases is exact below 3.3e24.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t b : kBases) {
    std::uint64_t x = pow_mod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

RingDescriptor RingDescriptor::prime_field(std::uint64_t q) {
  (void)PrimeField(q);
  return {RingKind::PrimeField, q};
}

RingDescriptor RingDescriptor::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "zz" || text == "ZZ") return integers();
  if (text.size() > 2 && text.substr(0, 2) == "fq") {
    std::string_view rest = trim(text.substr(2));
    if (!rest.empty() && rest.front() == ':') rest = trim(rest.substr(1));
    std::uint64_t q = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), q);
    if (ec == std::errc() && ptr == rest.data() + rest.size()) return prime_field(q);
  }
  throw ParseError(0, "unrecognized ring '" + std::string(text) + "' (expected zz or fq:<q>)");
}

std::string RingDescriptor::to_string() const {
  if (kind == RingKind::Integers) return "zz";
  return "fq:" + std::to_string(modulus);
}

IntegerRing::Element IntegerRing::pow(const Element& a, std::uint64_t e) const {
  Element r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

std::optional<IntegerRing::Element> IntegerRing::div_exact_small(const Element& a,
                                                                 std::uint64_t k) const {
  if (k == 0 || !mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(k))) {
    return std::nullopt;
  }
  Element r;
  mpz_divexact_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q >= kMaxFieldModulus) {
    throw Error(ErrorCode::NotPrime, "field modulus " + std::to_string(q) + " exceeds 2^63");
  }
  if (!is_prime(q)) {
    throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  }
}

PrimeField::Element PrimeField::from_integer(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(q_));
  return static_cast<Element>(r.get_ui());
}

PrimeField::Element PrimeField::from_int(std::int64_t v) const {
  const auto q = static_cast<std::int64_t>(q_);
  std::int64_t r = v % q;
  if (r < 0) r += q;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::pow(Element a, std::uint64_t e) const { return pow_mod(a, e, q_); }

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(q_));
  return pow_mod(a, q_ - 2, q_);
}

std::optional<PrimeField::Element> PrimeField::div_exact_small(Element a, std::uint64_t k) const {
  const Element kk = k % q_;
  if (kk == 0) return std::nullopt;
  return mul(a, inv(kk));
}

std::uint64_t PrimeField::order(Element a) const {
  if (a == 0) throw std::domain_error("order of zero");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t r : distinct_prime_factors(q_ - 1)) {
    while (ord % r == 0 && pow_mod(a, ord / r, q_) == 1) ord /= r;
  }
  return ord;
}

RationalField::Element RationalField::pow(const Element& a, std::uint64_t e) const {
  Element r = 1;
  Element b = a;
  while (e != 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

RationalField::Element RationalField::inv(const Element& a) const {
  if (sgn(a) == 0) throw std::domain_error("inverse of zero rational");
  return 1 / a;
}

PrimeField mk_prime_field(std::uint64_t q) { return PrimeField(q); }

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 2; r <= n / r; r += (r == 2 ? 1 : 2)) {
    if (n % r == 0) {
      out.push_back(r);
      while (n % r == 0) n /= r;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t find_element_of_order_geq(const PrimeField& field, std::uint64_t bound) {
  const std::uint64_t q = field.modulus();
  if (q - 1 < bound) {
    throw Error(ErrorCode::RingTooSmall, "F_" + std::to_string(q) +
                                             " has no element of order >= " +
                                             std::to_string(bound));
  }
  // q-1 itself is the order of a generator, so the loop always returns.
  for (std::uint64_t g = 2; g < q; ++g) {
    if (field.order(g) >= bound) return g;
  }
  return 1;  // q == 2, bound <= 1: the only unit
}

}  // namespace spinterp
