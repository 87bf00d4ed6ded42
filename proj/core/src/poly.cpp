#include "spinterp/poly.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

namespace spinterp {

std::uint64_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

namespace {

class SparseTextReader {
 public:
  SparseTextReader(std::string_view text, std::size_t arity) : text_(text), arity_(arity) {}

  IntegerTermMap read() {
    IntegerTermMap out;
    skip_ws();
    if (at_end()) throw ParseError(pos_, "empty polynomial");
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    for (;;) {
      auto [e, c] = read_term();
      if (negative) c = -c;
      auto& slot = out[e];
      slot += c;
      if (slot == 0) out.erase(e);
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') throw ParseError(pos_, "expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }
    return out;
  }

 private:
  std::pair<Exponents, mpz_class> read_term() {
    Exponents e(arity_, 0);
    mpz_class c = 1;
    for (;;) {
      skip_ws();
      if (at_end()) throw ParseError(pos_, "expected a coefficient or variable");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c *= read_integer();
      } else if (peek() == 'x') {
        const std::size_t at = pos_;
        ++pos_;
        const std::uint64_t index = read_u64();
        if (index == 0 || index > arity_) {
          throw Error(ErrorCode::UnknownVariable, "unknown variable x" + std::to_string(index) +
                                                      " at offset " + std::to_string(at));
        }
        std::uint64_t power = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          power = read_u64();
        }
        e[index - 1] += power;
      } else {
        throw ParseError(pos_, std::string("unexpected character '") + peek() + "'");
      }
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    return {std::move(e), std::move(c)};
  }

  mpz_class read_integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::uint64_t read_u64() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) throw ParseError(start, "expected a nonnegative integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t arity_;
  std::size_t pos_ = 0;
};

// Appends " + " / " - " (or a leading "-") and returns |c|.
mpz_class append_sign(std::string& out, const mpz_class& c, bool first) {
  if (first) {
    if (c < 0) out += '-';
  } else {
    out += c < 0 ? " - " : " + ";
  }
  return abs(c);
}

}  // namespace

IntegerTermMap parse_sparse_terms(std::string_view text, std::size_t arity) {
  return SparseTextReader(text, arity).read();
}

std::string format_terms(const std::vector<std::pair<Exponents, mpz_class>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    const mpz_class mag = append_sign(out, c, first);
    first = false;
    const bool constant = total_degree(e) == 0;
    bool need_star = false;
    if (constant || mag != 1) {
      out += mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out += '*';
      out += 'x' + std::to_string(i + 1);
      if (e[i] > 1) out += '^' + std::to_string(e[i]);
      need_star = true;
    }
  }
  return out;
}

std::string format_univariate(const std::vector<std::pair<std::uint64_t, mpz_class>>& terms,
                              std::string_view var) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, c] : terms) {
    const mpz_class mag = append_sign(out, c, first);
    first = false;
    if (d == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + '*';
    out += var;
    if (d > 1) out += '^' + std::to_string(d);
  }
  return out;
}

}  // namespace spinterp
