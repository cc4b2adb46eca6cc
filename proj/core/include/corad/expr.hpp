#pragma once

// Small rational-expression grammar for scenario files. Identifiers: s,
// u1..un (affine chart coordinates), xi0..xin (dual coordinates), the
// imaginary unit i. Operators + - * / ^ with integer exponents, parentheses,
// decimal literals. Expressions are parsed once and evaluated many times;
// exact symbolic differentiation in the xi variables backs the Martineau
// kernel derivatives.

#include <memory>
#include <string>

#include "corad/types.hpp"

namespace corad {

struct EvalContext {
  Cx s{};
  CxVec u;   // u[0] is u1
  CxVec xi;  // xi[0] is xi0
};

class Expr {
 public:
  Expr() = default;

  static Expr parse(const std::string& text);

  bool valid() const { return node_ != nullptr; }
  Cx eval(const EvalContext& ctx) const;

  /// Exact d/d xi_k as a new expression.
  Expr d_xi(int k) const;

  std::string str() const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace corad
