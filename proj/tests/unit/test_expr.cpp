#include <doctest.h>

#include <cmath>

#include "rsw/expr.hpp"

using namespace rsw;

TEST_CASE("parse and evaluate") {
  const auto e = parse_expr("1 + 0.5*sin(2*pi*z/3) - x^2 / 4");
  const double x = 0.3, z = 1.1;
  CHECK(e.eval(x, 0, z, 0) == doctest::Approx(1 + 0.5 * std::sin(2 * pi * z / 3) - x * x / 4).epsilon(1e-15));
  CHECK(parse_expr("-2*-3").constant_value().value() == 6.0);
  CHECK(parse_expr("exp(t)*cos(y)").depends_on(Expr::Var::t));
  CHECK_FALSE(parse_expr("exp(x)").depends_on(Expr::Var::t));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_expr("1 + "), ExprParseError);
  CHECK_THROWS_AS(parse_expr("foo(x)"), ExprParseError);
  CHECK_THROWS_AS(parse_expr("x^y"), ExprParseError);
  CHECK_THROWS_AS(parse_expr("(x"), ExprParseError);
  try {
    parse_expr("x + $");
  } catch (const ExprParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("symbolic derivatives against central differences") {
  const auto e = parse_expr("sqrt(2 + sin(x*y)) * exp(0.3*z - t) / (1.5 + cos(z)) + log(3 + x^2)");
  const double p[4] = {0.4, -0.7, 1.3, 0.2};
  const double h = 1e-5;
  for (auto v : {Expr::Var::x, Expr::Var::y, Expr::Var::z, Expr::Var::t}) {
    double a[4] = {p[0], p[1], p[2], p[3]}, b[4] = {p[0], p[1], p[2], p[3]};
    a[static_cast<int>(v)] += h;
    b[static_cast<int>(v)] -= h;
    const double fd = (e.eval(a[0], a[1], a[2], a[3]) - e.eval(b[0], b[1], b[2], b[3])) / (2 * h);
    CHECK(e.derivative(v).eval(p[0], p[1], p[2], p[3]) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  const Grid3 g({5, 3, 4}, {1, 2, 3});
  const auto e = parse_expr("x + 2*y*z - cos(t + x)");
  const auto vals = e.eval_grid(g, 0.7);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto r = g.position(p);
    CHECK(vals[p] == doctest::Approx(e.eval(r[0], r[1], r[2], 0.7)).epsilon(1e-15));
  }
}
