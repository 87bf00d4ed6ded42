#pragma once

// Reference computations for the tests. They share no code with the library
// beyond mpz_class, so agreement means something.

#include <cctype>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t order_brute(std::uint64_t a, std::uint64_t q) {
  std::uint64_t x = a % q, k = 1;
  while (x != 1) {
    x = x * a % q;
    ++k;
  }
  return k;
}

// Dense expansion: exponent vector -> integer coefficient, zeros dropped.
using Expansion = std::map<std::vector<std::uint64_t>, mpz_class>;

inline void tidy(Expansion& e) {
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
}

inline Expansion add(Expansion a, const Expansion& b, int sign) {
  for (const auto& [m, c] : b) a[m] += sign * c;
  tidy(a);
  return a;
}

inline Expansion mul(const Expansion& a, const Expansion& b) {
  Expansion out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      std::vector<std::uint64_t> m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
    }
  }
  tidy(out);
  return out;
}

// Expands an expression over x1..xn by recursive descent:
//   sum := prod (('+'|'-') prod)*   prod := unary ('*' unary)*
//   unary := '-' unary | power      power := atom ('^' integer)?
//   atom := integer | 'x' index | '(' sum ')'
class Expander {
 public:
  Expander(std::string text, std::size_t n) : s_(std::move(text)), n_(n) {}

  Expansion run() {
    Expansion e = sum();
    skip();
    if (i_ != s_.size()) throw std::runtime_error("trailing input in '" + s_ + "'");
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::uint64_t integer() {
    skip();
    std::uint64_t v = 0;
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      throw std::runtime_error("digit expected in '" + s_ + "'");
    }
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = v * 10 + (s_[i_++] - '0');
    return v;
  }
  Expansion constant(const mpz_class& c) const {
    Expansion e;
    if (c != 0) e[std::vector<std::uint64_t>(n_, 0)] = c;
    return e;
  }
  Expansion sum() {
    Expansion acc = prod();
    for (;;) {
      if (eat('+')) {
        acc = add(acc, prod(), 1);
      } else if (eat('-')) {
        acc = add(acc, prod(), -1);
      } else {
        return acc;
      }
    }
  }
  Expansion prod() {
    Expansion acc = unary();
    while (eat('*')) acc = mul(acc, unary());
    return acc;
  }
  Expansion unary() {
    if (eat('-')) return mul(constant(-1), unary());
    return power();
  }
  Expansion power() {
    Expansion base = atom();
    if (!eat('^')) return base;
    std::uint64_t k = integer();
    Expansion out = constant(1);
    while (k--) out = mul(out, base);
    return out;
  }
  Expansion atom() {
    if (eat('(')) {
      Expansion e = sum();
      if (!eat(')')) throw std::runtime_error("')' expected in '" + s_ + "'");
      return e;
    }
    if (eat('x')) {
      const std::uint64_t v = integer();
      if (v == 0 || v > n_) throw std::runtime_error("bad variable in '" + s_ + "'");
      std::vector<std::uint64_t> m(n_, 0);
      m[v - 1] = 1;
      return Expansion{{m, 1}};
    }
    return constant(mpz_class(static_cast<unsigned long>(integer())));
  }

  std::string s_;
  std::size_t n_;
  std::size_t i_ = 0;
};

inline Expansion expand(const std::string& text, std::size_t n) { return Expander(text, n).run(); }

inline std::uint64_t degree(const Expansion& e) {
  std::uint64_t d = 0;
  for (const auto& [m, c] : e) {
    std::uint64_t s = 0;
    for (auto x : m) s += x;
    d = std::max(d, s);
  }
  return d;
}

// Exponent of the image of m under x_i -> x^(w_i), computed from scratch.
inline std::uint64_t kronecker_exponent(const std::vector<std::uint64_t>& m, std::uint64_t d,
                                        std::uint64_t p, std::size_t shifted = 0) {
  std::uint64_t w = 1 % p, total = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    total += m[i] * (w + (i + 1 == shifted ? p : 0));
    w = w * d % p;
  }
  return total;
}

// Value of sum c_j x^e_j at x, exactly.
inline mpz_class eval_uni(const std::map<std::uint64_t, mpz_class>& u, const mpz_class& x) {
  mpz_class acc = 0, pw;
  for (const auto& [e, c] : u) {
    mpz_pow_ui(pw.get_mpz_t(), x.get_mpz_t(), e);
    acc += c * pw;
  }
  return acc;
}

}  // namespace oracle
