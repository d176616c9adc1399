#include "skewtor/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace skewtor {

enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Bump };

struct ExprNode {
  Op op;
  double value = 0;   // Const
  int var = 0;        // Var: 0-based coordinate index
  int ipow = 0;       // Pow exponent
  std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodeP = std::shared_ptr<const ExprNode>;

NodeP make(Op op, NodeP a = nullptr, NodeP b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  int max_var = 0;

  explicit Parser(const std::string& src) : s(src) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ExprError("expression parse error at offset " + std::to_string(pos) + ": " + what);
  }

  NodeP parse_expr() {
    NodeP lhs = parse_term();
    while (true) {
      if (eat('+'))
        lhs = make(Op::Add, lhs, parse_term());
      else if (eat('-'))
        lhs = make(Op::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  NodeP parse_term() {
    NodeP lhs = parse_unary();
    while (true) {
      if (eat('*'))
        lhs = make(Op::Mul, lhs, parse_unary());
      else if (eat('/'))
        lhs = make(Op::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodeP parse_unary() {
    if (eat('-')) return make(Op::Neg, parse_unary());
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  NodeP parse_power() {
    NodeP base = parse_primary();
    if (eat('^')) {
      bool neg = false;
      skip();
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
      skip();
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        fail("exponent must be an integer literal");
      long e = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        e = e * 10 + (s[pos++] - '0');
      if (e > 64) fail("exponent too large");
      auto n = std::make_shared<ExprNode>();
      n->op = Op::Pow;
      n->ipow = static_cast<int>(neg ? -e : e);
      n->a = base;
      return n;
    }
    return base;
  }

  NodeP parse_primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end of expression");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NodeP inner = parse_expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodeP parse_number() {
    const char* start = s.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(start, &end);
    if (end == start) fail("bad number");
    pos += static_cast<std::size_t>(end - start);
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Const;
    n->value = v;
    return n;
  }

  NodeP parse_name() {
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])))) ++pos;
    std::string name = s.substr(start, pos - start);
    if (name.size() >= 2 && name[0] == 'x' && std::isdigit(static_cast<unsigned char>(name[1]))) {
      int idx = 0;
      for (std::size_t q = 1; q < name.size(); ++q) {
        if (!std::isdigit(static_cast<unsigned char>(name[q]))) fail("bad coordinate name " + name);
        idx = idx * 10 + (name[q] - '0');
      }
      if (idx < 1 || idx > 8) fail("coordinate index out of range in " + name);
      if (idx > max_var) max_var = idx;
      auto n = std::make_shared<ExprNode>();
      n->op = Op::Var;
      n->var = idx - 1;
      return n;
    }
    Op op;
    if (name == "sin")
      op = Op::Sin;
    else if (name == "cos")
      op = Op::Cos;
    else if (name == "exp")
      op = Op::Exp;
    else if (name == "bump")
      op = Op::Bump;
    else
      fail("unknown name '" + name + "'");
    if (!eat('(')) fail("expected '(' after " + name);
    NodeP arg = parse_expr();
    if (!eat(')')) fail("missing ')' after " + name + " argument");
    return make(op, arg);
  }
};

double eval_node(const ExprNode* n, const double* x) {
  switch (n->op) {
    case Op::Const:
      return n->value;
    case Op::Var:
      return x[n->var];
    case Op::Add:
      return eval_node(n->a.get(), x) + eval_node(n->b.get(), x);
    case Op::Sub:
      return eval_node(n->a.get(), x) - eval_node(n->b.get(), x);
    case Op::Mul:
      return eval_node(n->a.get(), x) * eval_node(n->b.get(), x);
    case Op::Div:
      return eval_node(n->a.get(), x) / eval_node(n->b.get(), x);
    case Op::Neg:
      return -eval_node(n->a.get(), x);
    case Op::Pow: {
      double base = eval_node(n->a.get(), x);
      int e = n->ipow;
      if (e == 0) return 1.0;
      bool inv = e < 0;
      if (inv) e = -e;
      double acc = 1.0;
      double b = base;
      while (e > 0) {  // binary powering keeps results bit-reproducible per exponent
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
      }
      return inv ? 1.0 / acc : acc;
    }
    case Op::Sin:
      return std::sin(eval_node(n->a.get(), x));
    case Op::Cos:
      return std::cos(eval_node(n->a.get(), x));
    case Op::Exp:
      return std::exp(eval_node(n->a.get(), x));
    case Op::Bump: {
      double t = eval_node(n->a.get(), x);
      double q = 1.0 - t * t;
      return q > 0 ? std::exp(-1.0 / q) : 0.0;
    }
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& src) {
  Parser p(src);
  Expr e;
  e.root_ = p.parse_expr();
  p.skip();
  if (p.pos != src.size()) p.fail("trailing characters");
  e.src_ = src;
  e.max_var_ = p.max_var;
  return e;
}

double Expr::eval(const double* x) const {
  if (!root_) throw ExprError("evaluating an empty expression");
  return eval_node(root_.get(), x);
}

}  // namespace skewtor
