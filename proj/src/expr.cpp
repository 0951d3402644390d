#include "rsw/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace rsw {

struct Expr::Node {
  Op op;
  double value = 0.0;  // constant value, variable index, or exponent
  std::shared_ptr<const Node> a, b;
};

Expr Expr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = c;
  return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->op = Op::var;
  n->value = static_cast<double>(static_cast<int>(v));
  return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::make(Op op, Expr a, Expr b, double value) {
  // Constant folding keeps derivative trees small.
  const auto ca = a.constant_value(), cb = b.constant_value();
  switch (op) {
    case Op::add:
      if (ca && cb) return constant(*ca + *cb);
      if (ca && *ca == 0.0) return b;
      if (cb && *cb == 0.0) return a;
      break;
    case Op::sub:
      if (ca && cb) return constant(*ca - *cb);
      if (cb && *cb == 0.0) return a;
      if (ca && *ca == 0.0) return -b;
      break;
    case Op::mul:
      if (ca && cb) return constant(*ca * *cb);
      if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) return constant(0.0);
      if (ca && *ca == 1.0) return b;
      if (cb && *cb == 1.0) return a;
      break;
    case Op::div:
      if (ca && cb) return constant(*ca / *cb);
      if (ca && *ca == 0.0) return constant(0.0);
      if (cb && *cb == 1.0) return a;
      break;
    case Op::neg:
      if (ca) return constant(-*ca);
      break;
    case Op::pow:
      if (ca) return constant(std::pow(*ca, value));
      if (value == 1.0) return a;
      if (value == 0.0) return constant(1.0);
      break;
    case Op::sin:
      if (ca) return constant(std::sin(*ca));
      break;
    case Op::cos:
      if (ca) return constant(std::cos(*ca));
      break;
    case Op::exp:
      if (ca) return constant(std::exp(*ca));
      break;
    case Op::log:
      if (ca) return constant(std::log(*ca));
      break;
    case Op::sqrt:
      if (ca) return constant(std::sqrt(*ca));
      break;
    default: break;
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  n->a = std::move(a.node_);
  n->b = std::move(b.node_);
  return Expr(std::shared_ptr<const Node>(n));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::div, a, b); }
Expr operator-(const Expr& a) { return Expr::make(Expr::Op::neg, a, Expr::constant(0.0)); }
Expr pow(const Expr& base, double exponent) {
  return Expr::make(Expr::Op::pow, base, Expr::constant(0.0), exponent);
}
Expr sin(const Expr& a) { return Expr::make(Expr::Op::sin, a, Expr::constant(0.0)); }
Expr cos(const Expr& a) { return Expr::make(Expr::Op::cos, a, Expr::constant(0.0)); }
Expr exp(const Expr& a) { return Expr::make(Expr::Op::exp, a, Expr::constant(0.0)); }
Expr log(const Expr& a) { return Expr::make(Expr::Op::log, a, Expr::constant(0.0)); }
Expr sqrt(const Expr& a) { return Expr::make(Expr::Op::sqrt, a, Expr::constant(0.0)); }

std::optional<double> Expr::constant_value() const {
  if (node_->op == Op::constant) return node_->value;
  return std::nullopt;
}

bool Expr::depends_on(Var v) const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  switch (n.op) {
    case Op::constant: return false;
    case Op::var: return static_cast<int>(n.value) == static_cast<int>(v);
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: return a.depends_on(v) || b.depends_on(v);
    default: return a.depends_on(v);
  }
}

Expr Expr::derivative(Var v) const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  switch (n.op) {
    case Op::constant: return constant(0.0);
    case Op::var: return constant(static_cast<int>(n.value) == static_cast<int>(v) ? 1.0 : 0.0);
    case Op::add: return a.derivative(v) + b.derivative(v);
    case Op::sub: return a.derivative(v) - b.derivative(v);
    case Op::mul: return a.derivative(v) * b + a * b.derivative(v);
    case Op::div: return (a.derivative(v) * b - a * b.derivative(v)) / (b * b);
    case Op::neg: return -a.derivative(v);
    case Op::pow: return constant(n.value) * pow(a, n.value - 1.0) * a.derivative(v);
    case Op::sin: return cos(a) * a.derivative(v);
    case Op::cos: return -(sin(a) * a.derivative(v));
    case Op::exp: return *this * a.derivative(v);
    case Op::log: return a.derivative(v) / a;
    case Op::sqrt: return a.derivative(v) / (constant(2.0) * *this);
  }
  throw PreconditionError("Expr: bad node");
}

double Expr::eval(double x, double y, double z, double t) const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::var: {
      const double vars[4] = {x, y, z, t};
      return vars[static_cast<int>(n.value)];
    }
    case Op::add: return a.eval(x, y, z, t) + b.eval(x, y, z, t);
    case Op::sub: return a.eval(x, y, z, t) - b.eval(x, y, z, t);
    case Op::mul: return a.eval(x, y, z, t) * b.eval(x, y, z, t);
    case Op::div: return a.eval(x, y, z, t) / b.eval(x, y, z, t);
    case Op::neg: return -a.eval(x, y, z, t);
    case Op::pow: return std::pow(a.eval(x, y, z, t), n.value);
    case Op::sin: return std::sin(a.eval(x, y, z, t));
    case Op::cos: return std::cos(a.eval(x, y, z, t));
    case Op::exp: return std::exp(a.eval(x, y, z, t));
    case Op::log: return std::log(a.eval(x, y, z, t));
    case Op::sqrt: return std::sqrt(a.eval(x, y, z, t));
  }
  throw PreconditionError("Expr: bad node");
}

std::vector<double> Expr::eval_grid(const Grid3& g, double t) const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  const std::size_t size = g.size();
  auto unary = [&](double (*fn)(double)) {
    auto r = a.eval_grid(g, t);
    for (auto& x : r) x = fn(x);
    return r;
  };
  switch (n.op) {
    case Op::constant: return std::vector<double>(size, n.value);
    case Op::var: {
      const int idx = static_cast<int>(n.value);
      if (idx == 3) return std::vector<double>(size, t);
      std::vector<double> r(size);
      for (std::size_t p = 0; p < size; ++p) r[p] = g.position(p)[static_cast<std::size_t>(idx)];
      return r;
    }
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      auto r = a.eval_grid(g, t);
      const auto s = b.eval_grid(g, t);
      for (std::size_t p = 0; p < size; ++p) {
        if (n.op == Op::add) r[p] += s[p];
        else if (n.op == Op::sub) r[p] -= s[p];
        else if (n.op == Op::mul) r[p] *= s[p];
        else r[p] /= s[p];
      }
      return r;
    }
    case Op::neg: {
      auto r = a.eval_grid(g, t);
      for (auto& x : r) x = -x;
      return r;
    }
    case Op::pow: {
      auto r = a.eval_grid(g, t);
      for (auto& x : r) x = std::pow(x, n.value);
      return r;
    }
    case Op::sin: return unary(std::sin);
    case Op::cos: return unary(std::cos);
    case Op::exp: return unary(std::exp);
    case Op::log: return unary(std::log);
    case Op::sqrt: return unary(std::sqrt);
  }
  throw PreconditionError("Expr: bad node");
}

std::string Expr::to_string() const {
  const Node& n = *node_;
  const Expr a(n.a), b(n.b);
  std::ostringstream os;
  os.precision(17);
  switch (n.op) {
    case Op::constant: os << n.value; break;
    case Op::var: os << "xyzt"[static_cast<int>(n.value)]; break;
    case Op::add: os << '(' << a.to_string() << " + " << b.to_string() << ')'; break;
    case Op::sub: os << '(' << a.to_string() << " - " << b.to_string() << ')'; break;
    case Op::mul: os << '(' << a.to_string() << " * " << b.to_string() << ')'; break;
    case Op::div: os << '(' << a.to_string() << " / " << b.to_string() << ')'; break;
    case Op::neg: os << "(-" << a.to_string() << ')'; break;
    case Op::pow: os << '(' << a.to_string() << ")^" << n.value; break;
    case Op::sin: os << "sin(" << a.to_string() << ')'; break;
    case Op::cos: os << "cos(" << a.to_string() << ')'; break;
    case Op::exp: os << "exp(" << a.to_string() << ')'; break;
    case Op::log: os << "log(" << a.to_string() << ')'; break;
    case Op::sqrt: os << "sqrt(" << a.to_string() << ')'; break;
  }
  return os.str();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = sum();
    skip_ws();
    if (pos_ != s_.size()) throw ExprParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (accept('+')) e = e + product();
      else if (accept('-')) e = e - product();
      else return e;
    }
  }

  Expr product() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) e = e * unary();
      else if (accept('/')) e = e / unary();
      else return e;
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    Expr base = primary();
    if (accept('^')) {
      const std::size_t at = pos_;
      const auto c = unary().constant_value();
      if (!c) throw ExprParseError("exponent must be a constant", at);
      return pow(base, *c);
    }
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ExprParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (accept('(')) {
      Expr e = sum();
      if (!accept(')')) throw ExprParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    throw ExprParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  Expr number() {
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) throw ExprParseError("bad number", pos_);
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return Expr::constant(v);
  }

  Expr name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == "x") return Expr::variable(Expr::Var::x);
    if (id == "y") return Expr::variable(Expr::Var::y);
    if (id == "z") return Expr::variable(Expr::Var::z);
    if (id == "t") return Expr::variable(Expr::Var::t);
    if (id == "pi") return Expr::constant(pi);
    Expr (*fn)(const Expr&) = nullptr;
    if (id == "sin") fn = sin;
    else if (id == "cos") fn = cos;
    else if (id == "exp") fn = exp;
    else if (id == "log") fn = log;
    else if (id == "sqrt") fn = sqrt;
    if (!fn) throw ExprParseError("unknown name '" + std::string(id) + "'", start);
    if (!accept('(')) throw ExprParseError("expected '(' after " + std::string(id), pos_);
    Expr arg = sum();
    if (!accept(')')) throw ExprParseError("expected ')'", pos_);
    return fn(arg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace rsw
