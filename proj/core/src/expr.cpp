#include "corad/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace corad {

struct Expr::Node {
  enum class Op { constant, var_s, var_u, var_xi, imag_unit, add, sub, mul, div, pow, neg };
  Op op = Op::constant;
  double value = 0.0;  // constant
  int index = 0;       // variable index or integer exponent
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::constant;
  n->value = v;
  return n;
}

NodePtr make_binary(Node::Op op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_pow(NodePtr a, int k) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::pow;
  n->a = std::move(a);
  n->index = k;
  return n;
}

NodePtr make_var(Node::Op op, int index) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->index = index;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != s_.size())
      throw Error(Errc::invalid_input,
                  "expression: trailing characters at position " +
                      std::to_string(pos_));
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr e = term();
    for (;;) {
      if (consume('+'))
        e = make_binary(Node::Op::add, e, term());
      else if (consume('-'))
        e = make_binary(Node::Op::sub, e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (consume('*'))
        e = make_binary(Node::Op::mul, e, factor());
      else if (consume('/'))
        e = make_binary(Node::Op::div, e, factor());
      else
        return e;
    }
  }

  NodePtr factor() {
    if (consume('-')) {
      auto n = std::make_shared<Node>();
      n->op = Node::Op::neg;
      n->a = factor();
      return n;
    }
    if (consume('+')) return factor();
    NodePtr base = atom();
    if (consume('^')) {
      bool negexp = consume('-');
      skip_ws();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (start == pos_)
        throw Error(Errc::invalid_input, "expression: integer exponent expected");
      int k = std::stoi(s_.substr(start, pos_ - start));
      if (negexp)
        return make_binary(Node::Op::div, make_const(1.0), make_pow(base, k));
      return make_pow(base, k);
    }
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (consume('(')) {
      NodePtr e = expression();
      if (!consume(')'))
        throw Error(Errc::invalid_input, "expression: missing )");
      return e;
    }
    if (pos_ >= s_.size())
      throw Error(Errc::invalid_input, "expression: unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E' ||
              ((s_[pos_] == '+' || s_[pos_] == '-') && pos_ > start &&
               (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
        ++pos_;
      return make_const(std::stod(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_]))))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "s") return make_var(Node::Op::var_s, 0);
      if (name == "i") return make_var(Node::Op::imag_unit, 0);
      if (name.size() > 1 && name[0] == 'u') {
        int idx = std::stoi(name.substr(1));
        if (idx < 1)
          throw Error(Errc::invalid_input, "expression: u index starts at 1");
        return make_var(Node::Op::var_u, idx - 1);
      }
      if (name.size() > 2 && name.rfind("xi", 0) == 0) {
        int idx = std::stoi(name.substr(2));
        return make_var(Node::Op::var_xi, idx);
      }
      throw Error(Errc::invalid_input, "expression: unknown identifier " + name);
    }
    throw Error(Errc::invalid_input, std::string("expression: unexpected '") + c + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

Cx eval_node(const Node* n, const EvalContext& ctx) {
  switch (n->op) {
    case Node::Op::constant: return Cx(n->value, 0.0);
    case Node::Op::imag_unit: return Cx(0.0, 1.0);
    case Node::Op::var_s: return ctx.s;
    case Node::Op::var_u:
      if (n->index >= static_cast<int>(ctx.u.size()))
        throw Error(Errc::invalid_input, "expression: u index out of range");
      return ctx.u[n->index];
    case Node::Op::var_xi:
      if (n->index >= static_cast<int>(ctx.xi.size()))
        throw Error(Errc::invalid_input, "expression: xi index out of range");
      return ctx.xi[n->index];
    case Node::Op::add: return eval_node(n->a.get(), ctx) + eval_node(n->b.get(), ctx);
    case Node::Op::sub: return eval_node(n->a.get(), ctx) - eval_node(n->b.get(), ctx);
    case Node::Op::mul: return eval_node(n->a.get(), ctx) * eval_node(n->b.get(), ctx);
    case Node::Op::div: return eval_node(n->a.get(), ctx) / eval_node(n->b.get(), ctx);
    case Node::Op::neg: return -eval_node(n->a.get(), ctx);
    case Node::Op::pow: {
      Cx b = eval_node(n->a.get(), ctx);
      Cx r = 1.0;
      for (int k = 0; k < n->index; ++k) r *= b;
      return r;
    }
  }
  return Cx{};
}

NodePtr diff_node(const NodePtr& n, int k) {
  switch (n->op) {
    case Node::Op::constant:
    case Node::Op::imag_unit:
    case Node::Op::var_s:
    case Node::Op::var_u:
      return make_const(0.0);
    case Node::Op::var_xi:
      return make_const(n->index == k ? 1.0 : 0.0);
    case Node::Op::add:
      return make_binary(Node::Op::add, diff_node(n->a, k), diff_node(n->b, k));
    case Node::Op::sub:
      return make_binary(Node::Op::sub, diff_node(n->a, k), diff_node(n->b, k));
    case Node::Op::neg: {
      auto r = std::make_shared<Node>();
      r->op = Node::Op::neg;
      r->a = diff_node(n->a, k);
      return r;
    }
    case Node::Op::mul:
      return make_binary(
          Node::Op::add,
          make_binary(Node::Op::mul, diff_node(n->a, k), n->b),
          make_binary(Node::Op::mul, n->a, diff_node(n->b, k)));
    case Node::Op::div:
      // (a/b)' = a'/b - a b' / b^2
      return make_binary(
          Node::Op::sub,
          make_binary(Node::Op::div, diff_node(n->a, k), n->b),
          make_binary(Node::Op::div,
                      make_binary(Node::Op::mul, n->a, diff_node(n->b, k)),
                      make_pow(n->b, 2)));
    case Node::Op::pow: {
      if (n->index == 0) return make_const(0.0);
      return make_binary(
          Node::Op::mul, make_const(double(n->index)),
          make_binary(Node::Op::mul, make_pow(n->a, n->index - 1),
                      diff_node(n->a, k)));
    }
  }
  return make_const(0.0);
}

void print_node(const Node* n, std::ostringstream& out) {
  switch (n->op) {
    case Node::Op::constant: out << n->value; return;
    case Node::Op::imag_unit: out << "i"; return;
    case Node::Op::var_s: out << "s"; return;
    case Node::Op::var_u: out << "u" << (n->index + 1); return;
    case Node::Op::var_xi: out << "xi" << n->index; return;
    case Node::Op::neg:
      out << "(-";
      print_node(n->a.get(), out);
      out << ")";
      return;
    case Node::Op::pow:
      out << "(";
      print_node(n->a.get(), out);
      out << ")^" << n->index;
      return;
    default: {
      const char* sym = n->op == Node::Op::add   ? "+"
                        : n->op == Node::Op::sub ? "-"
                        : n->op == Node::Op::mul ? "*"
                                                 : "/";
      out << "(";
      print_node(n->a.get(), out);
      out << sym;
      print_node(n->b.get(), out);
      out << ")";
      return;
    }
  }
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Parser p(text);
  return Expr(p.run());
}

Cx Expr::eval(const EvalContext& ctx) const {
  if (!node_) throw Error(Errc::invalid_input, "expression: empty");
  return eval_node(node_.get(), ctx);
}

Expr Expr::d_xi(int k) const {
  if (!node_) throw Error(Errc::invalid_input, "expression: empty");
  return Expr(diff_node(node_, k));
}

std::string Expr::str() const {
  if (!node_) return "<empty>";
  std::ostringstream out;
  print_node(node_.get(), out);
  return out.str();
}

}  // namespace corad
