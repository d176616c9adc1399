#pragma once
// Fixed-vocabulary scalar expressions for chart geometries: coordinates x1..xn,
// rational/decimal literals, + - * / ^int, unary minus, sin, cos, exp, and a
// smooth compactly supported bump, bump(t) = exp(-1/(1-t^2)) for |t|<1 else 0.
// Parsed once into a small AST; evaluation is allocation-free.

#include <memory>
#include <stdexcept>
#include <string>

namespace skewtor {

struct ExprError : std::runtime_error {
  explicit ExprError(const std::string& m) : std::runtime_error(m) {}
};

struct ExprNode;

class Expr {
 public:
  Expr() = default;
  static Expr parse(const std::string& src);  // throws ExprError

  double eval(const double* x) const;  // x[k] is the coordinate x_{k+1}
  const std::string& source() const { return src_; }
  int max_var_index() const { return max_var_; }  // 1-based; 0 = constant expression
  bool empty() const { return root_ == nullptr; }

 private:
  std::shared_ptr<const ExprNode> root_;
  std::string src_;
  int max_var_ = 0;
};

}  // namespace skewtor
