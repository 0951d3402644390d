#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsw/grid.hpp"

namespace rsw {

class ExprParseError : public PreconditionError {
 public:
  ExprParseError(const std::string& msg, std::size_t pos)
      : PreconditionError(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Immutable closed-form scalar expression in x, y, z, t with symbolic
// differentiation. Used for analytic media and source terms.
class Expr {
 public:
  enum class Var { x, y, z, t };
  enum class Op { constant, var, add, sub, mul, div, neg, pow, sin, cos, exp, log, sqrt };

  Expr() : Expr(constant(0.0)) {}
  static Expr constant(double c);
  static Expr variable(Var v);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, double exponent);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr sqrt(const Expr& a);

  Expr derivative(Var v) const;
  bool depends_on(Var v) const;
  std::optional<double> constant_value() const;

  double eval(double x, double y, double z, double t) const;
  // Evaluate at every grid sample at time t (x fastest).
  std::vector<double> eval_grid(const Grid3& g, double t) const;

  std::string to_string() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Op op, Expr a, Expr b, double value = 0.0);

  std::shared_ptr<const Node> node_;
};

// Grammar: sums/differences of products/quotients of unary terms;
// postfix '^' with a constant exponent; functions sin cos exp log sqrt;
// variables x y z t; constants pi and decimal literals.
Expr parse_expr(std::string_view text);

}  // namespace rsw
