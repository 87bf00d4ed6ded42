#include "spinterp/blackbox.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

namespace spinterp {

namespace {

using Node = ExprTree::Node;
using Op = ExprTree::Op;

// Recursive descent:
//   sum     := product (('+' | '-') product)*
//   product := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'x' index | '(' sum ')'
class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t arity) : text_(text), arity_(arity) {}

  ExprTree parse() {
    const std::size_t root = sum();
    skip_ws();
    if (!at_end()) throw ParseError(pos_, std::string("unexpected '") + peek() + "'");
    return ExprTree(std::move(nodes_), root, arity_);
  }

 private:
  std::size_t sum() {
    std::size_t lhs = product();
    for (;;) {
      skip_ws();
      if (at_end() || (peek() != '+' && peek() != '-')) return lhs;
      const Op op = peek() == '+' ? Op::Add : Op::Sub;
      ++pos_;
      lhs = binary(op, lhs, product());
    }
  }

  std::size_t product() {
    std::size_t lhs = unary();
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '*') return lhs;
      ++pos_;
      lhs = binary(Op::Mul, lhs, unary());
    }
  }

  std::size_t unary() {
    skip_ws();
    if (!at_end() && peek() == '-') {
      ++pos_;
      Node n;
      n.op = Op::Neg;
      n.lhs = unary();
      return push(std::move(n));
    }
    return power();
  }

  std::size_t power() {
    const std::size_t base = primary();
    skip_ws();
    if (at_end() || peek() != '^') return base;
    ++pos_;
    skip_ws();
    Node n;
    n.op = Op::Pow;
    n.lhs = base;
    n.exponent = read_u64("expected a nonnegative integer exponent");
    skip_ws();
    if (!at_end() && peek() == '^') throw ParseError(pos_, "chained '^' needs parentheses");
    return push(std::move(n));
  }

  std::size_t primary() {
    skip_ws();
    if (at_end()) throw ParseError(pos_, "unexpected end of expression");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      const std::size_t inner = sum();
      skip_ws();
      if (at_end() || peek() != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      Node n;
      n.op = Op::Constant;
      n.constant = mpz_class(std::string(text_.substr(start, pos_ - start)));
      return push(std::move(n));
    }
    if (c == 'x') {
      const std::size_t at = pos_;
      ++pos_;
      const std::uint64_t index = read_u64("expected a variable index");
      if (index == 0 || index > arity_) {
        throw Error(ErrorCode::UnknownVariable, "unknown variable x" + std::to_string(index) +
                                                    " at offset " + std::to_string(at) +
                                                    " (arity " + std::to_string(arity_) + ")");
      }
      Node n;
      n.op = Op::Variable;
      n.variable = index - 1;
      return push(std::move(n));
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::size_t binary(Op op, std::size_t lhs, std::size_t rhs) {
    Node n;
    n.op = op;
    n.lhs = lhs;
    n.rhs = rhs;
    return push(std::move(n));
  }

  std::size_t push(Node n) {
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::uint64_t read_u64(const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) throw ParseError(pos_, what);
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
  std::vector<Node> nodes_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

ExprTree parse_expr(std::string_view text, std::size_t arity) {
  return ExprParser(text, arity).parse();
}

std::size_t max_variable_index(std::string_view text) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x') continue;
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + text.size(), v);
    if (ec == std::errc()) best = std::max(best, v);
  }
  return best;
}

PolyFile parse_poly_file(std::istream& in) {
  PolyFile file;
  bool have_source = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto colon = view.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError::at_line(lineno, "expected 'key: value'");
    }
    const std::string_view key = trim(view.substr(0, colon));
    const std::string_view value = trim(view.substr(colon + 1));
    if (key == "ring") {
      file.ring = RingDescriptor::parse(value);
    } else if (key == "n") {
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || ptr != value.data() + value.size() || n == 0) {
        throw ParseError::at_line(lineno, "bad arity");
      }
      file.arity = n;
    } else if (key == "expr" || key == "sparse") {
      if (have_source) {
        throw ParseError::at_line(lineno, "more than one polynomial");
      }
      have_source = true;
      file.source = key == "expr" ? PolyFile::Source::Expr : PolyFile::Source::Sparse;
      file.text = std::string(value);
    } else {
      throw ParseError::at_line(lineno, "unknown key '" +
                                   std::string(key) + "'");
    }
  }
  if (!have_source) throw ParseError::at_line(lineno, "no 'expr:' or 'sparse:' line");
  return file;
}

PolyFile load_poly_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError::at_line(0, "cannot open " + path.string());
  return parse_poly_file(in);
}

}  // namespace spinterp
