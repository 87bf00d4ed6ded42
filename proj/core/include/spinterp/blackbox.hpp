#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "spinterp/errors.hpp"
#include "spinterp/poly.hpp"
#include "spinterp/rings.hpp"

namespace spinterp {

// Evaluation oracle R^n -> R. Every call counts as one probe; the counter is
// atomic so a black box may be shared by concurrent interpolations as long as
// the wrapped function is itself safe to call concurrently.
template <CoefficientRing R>
class BlackBox {
 public:
  using Element = typename R::Element;
  using EvalFn = std::function<Element(std::span<const Element>)>;

  BlackBox(R ring, std::size_t arity, EvalFn fn)
      : ring_(std::move(ring)),
        arity_(arity),
        fn_(std::move(fn)),
        probes_(std::make_unique<std::atomic<std::uint64_t>>(0)) {}

  const R& ring() const { return ring_; }
  std::size_t arity() const { return arity_; }
  std::uint64_t probe_count() const { return probes_->load(); }

  Element operator()(std::span<const Element> point) const {
    detail::check_arity(arity_, point.size());
    probes_->fetch_add(1);
    return fn_(point);
  }

 private:
  R ring_;
  std::size_t arity_;
  EvalFn fn_;
  std::unique_ptr<std::atomic<std::uint64_t>> probes_;
};

template <CoefficientRing R>
BlackBox<R> from_sparse(SparsePoly<R> f) {
  const R ring = f.ring();
  const std::size_t n = f.arity();
  return BlackBox<R>(ring, n, [f = std::move(f)](std::span<const typename R::Element> pt) {
    return evaluate(f, pt);
  });
}

// ---------------------------------------------------------------------------
// Arithmetic expressions over x1..xn: integer constants, + - *, unary minus
// and ^ with a nonnegative integer literal exponent. Precedence, tightest
// first: ^, unary -, *, binary + and -.

class ExprTree {
 public:
  enum class Op { Constant, Variable, Neg, Add, Sub, Mul, Pow };

  struct Node {
    Op op = Op::Constant;
    mpz_class constant;            // Constant
    std::size_t variable = 0;      // Variable, 0-based
    std::uint64_t exponent = 0;    // Pow
    std::size_t lhs = 0, rhs = 0;  // child indices
  };

  ExprTree(std::vector<Node> nodes, std::size_t root, std::size_t arity)
      : nodes_(std::move(nodes)), root_(root), arity_(arity) {}

  std::size_t arity() const { return arity_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t root() const { return root_; }

  template <CoefficientRing R>
  typename R::Element evaluate(const R& ring, std::span<const typename R::Element> point) const {
    detail::check_arity(arity_, point.size());
    return eval_node(ring, point, root_);
  }

 private:
  template <CoefficientRing R>
  typename R::Element eval_node(const R& ring, std::span<const typename R::Element> point,
                                std::size_t i) const {
    const Node& node = nodes_[i];
    switch (node.op) {
      case Op::Constant: return ring.from_integer(node.constant);
      case Op::Variable: return point[node.variable];
      case Op::Neg: return ring.neg(eval_node(ring, point, node.lhs));
      case Op::Add: return ring.add(eval_node(ring, point, node.lhs), eval_node(ring, point, node.rhs));
      case Op::Sub: return ring.sub(eval_node(ring, point, node.lhs), eval_node(ring, point, node.rhs));
      case Op::Mul: return ring.mul(eval_node(ring, point, node.lhs), eval_node(ring, point, node.rhs));
      case Op::Pow: return ring.pow(eval_node(ring, point, node.lhs), node.exponent);
    }
    return ring.zero();
  }

  std::vector<Node> nodes_;
  std::size_t root_;
  std::size_t arity_;
};

// Throws ParseError (byte offset) or UnknownVariable for x0 / x_i with i > arity.
ExprTree parse_expr(std::string_view text, std::size_t arity);

// Largest variable index mentioned in `text` (0 if none); used to infer arity.
std::size_t max_variable_index(std::string_view text);

template <CoefficientRing R>
BlackBox<R> to_blackbox(ExprTree tree, R ring) {
  const std::size_t n = tree.arity();
  return BlackBox<R>(ring, n,
                     [tree = std::move(tree), ring](std::span<const typename R::Element> pt) {
                       return tree.evaluate(ring, pt);
                     });
}

// ---------------------------------------------------------------------------
// .poly files: one `key: value` per line, `#` starts a comment.
//   ring: zz | fq <q>
//   n: <arity>
//   expr: <expression>      or      sparse: <canonical text form>

struct PolyFile {
  enum class Source { Expr, Sparse };

  std::optional<RingDescriptor> ring;
  std::optional<std::size_t> arity;
  Source source = Source::Expr;
  std::string text;
};

PolyFile parse_poly_file(std::istream& in);
PolyFile load_poly_file(const std::filesystem::path& path);

}  // namespace spinterp
