#include "rsw/medium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rsw {

UnitConstants units(UnitMode mode) {
  if (mode == UnitMode::natural) return {1.0, 1.0, 1.0};
  const double c = 299792458.0;
  const double mu0 = 4.0e-7 * pi;
  return {c, 1.0 / (mu0 * c * c), mu0};
}

namespace {

MediumSpec::Analytic differentiate(const Expr& e) {
  using V = Expr::Var;
  return {e, {e.derivative(V::x), e.derivative(V::y), e.derivative(V::z)}, e.derivative(V::t)};
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw MediumError(std::string(what) + " must be positive and finite", {0, 0, 0});
}

}  // namespace

MediumSpec MediumSpec::constant(double eps, double mu, UnitMode mode) {
  require_positive(eps, "permittivity");
  require_positive(mu, "permeability");
  MediumSpec s;
  s.kind_ = Kind::constant;
  s.mode_ = mode;
  s.eps0_ = eps;
  s.mu0_ = mu;
  return s;
}

MediumSpec MediumSpec::constant_n_eta(double n, double eta, UnitMode mode) {
  require_positive(n, "refractive index");
  require_positive(eta, "impedance");
  const double c = units(mode).c;
  return constant(n / (c * eta), n * eta / c, mode);
}

MediumSpec MediumSpec::from_four(const Expr& eps, const Expr& mu, const Expr& n, const Expr& eta,
                                 UnitMode mode) {
  MediumSpec s;
  s.kind_ = Kind::analytic;
  s.mode_ = mode;
  s.an_ = {differentiate(eps), differentiate(mu), differentiate(n), differentiate(eta)};
  return s;
}

MediumSpec MediumSpec::analytic(const Expr& eps, const Expr& mu, UnitMode mode) {
  const Expr c = Expr::constant(units(mode).c);
  return from_four(eps, mu, c * sqrt(eps * mu), sqrt(mu / eps), mode);
}

MediumSpec MediumSpec::analytic_n_eta(const Expr& n, const Expr& eta, UnitMode mode) {
  const Expr c = Expr::constant(units(mode).c);
  return from_four(n / (c * eta), n * eta / c, n, eta, mode);
}

MediumSpec MediumSpec::sampled(const Grid3& g, std::vector<double> eps, std::vector<double> mu,
                               UnitMode mode) {
  if (eps.size() != g.size() || mu.size() != g.size())
    throw PreconditionError("sampled medium: sample count does not match grid");
  MediumSpec s;
  s.kind_ = Kind::sampled;
  s.mode_ = mode;
  s.sample_grid_ = g;
  s.eps_s_ = std::move(eps);
  s.mu_s_ = std::move(mu);
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (const auto* arr : {&s.eps_s_, &s.mu_s_}) {
      const double x = (*arr)[p];
      if (!(x > 0.0) || !std::isfinite(x)) {
        const auto ijk = g.unflatten(p);
        std::ostringstream os;
        os << (arr == &s.eps_s_ ? "permittivity" : "permeability") << " = " << x << " at sample ("
           << ijk[0] << "," << ijk[1] << "," << ijk[2] << ") must be positive";
        throw MediumError(os.str(), ijk);
      }
    }
  }
  return s;
}

bool MediumSpec::time_independent() const {
  if (kind_ != Kind::analytic) return true;
  return std::none_of(an_.begin(), an_.end(),
                      [](const Analytic& a) { return a.value.depends_on(Expr::Var::t); });
}

MediumFrame::MediumFrame(const Grid3& g)
    : grid(g), eps(g), mu(g), v(g), n(g), eta(g), eps_bar(g), mu_bar(g), n_bar(g), eta_bar(g),
      grad_eps_bar(g), grad_mu_bar(g), grad_n_bar(g), grad_eta_bar(g), dot_eps_bar(g),
      dot_mu_bar(g), dot_n(g), dot_eta(g) {}

double MediumFrame::max_v() const {
  double m = 0.0;
  for (cplx x : v.values()) m = std::max(m, x.real());
  return m;
}

bool MediumFrame::has_time_derivatives() const {
  for (const auto* f : {&dot_eps_bar, &dot_mu_bar, &dot_n, &dot_eta})
    for (cplx x : f->values())
      if (x != 0.0) return true;
  return false;
}

namespace {

void check_positive(const Grid3& g, const std::vector<double>& a, const char* what, double t) {
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p] > 0.0 && std::isfinite(a[p])) continue;
    const auto ijk = g.unflatten(p);
    const auto r = g.position(p);
    std::ostringstream os;
    os << what << " = " << a[p] << " at sample (" << ijk[0] << "," << ijk[1] << "," << ijk[2]
       << "), position (" << r[0] << "," << r[1] << "," << r[2] << "), t = " << t
       << " must be positive";
    throw MediumError(os.str(), ijk);
  }
}

ScalarField to_field(const Grid3& g, const std::vector<double>& a) {
  ScalarField f(g);
  for (std::size_t p = 0; p < a.size(); ++p) f[p] = a[p];
  return f;
}

VectorField3 real_gradient(const ScalarField& f) {
  auto g = gradient(f);
  for (std::size_t a = 0; a < 3; ++a) g[a] = real_part(g[a]);
  return g;
}

// Values, half-log gradients and time derivatives of one analytic quantity.
struct Evaluated {
  std::vector<double> value;
  std::array<std::vector<double>, 3> half_log_grad;
  std::vector<double> dot;
};

Evaluated evaluate(const MediumSpec::Analytic& a, const Grid3& g, double t) {
  Evaluated e;
  e.value = a.value.eval_grid(g, t);
  for (Axis ax : all_axes) {
    const std::size_t i = index_of(ax);
    if (g.degenerate(ax)) {
      e.half_log_grad[i].assign(g.size(), 0.0);
      continue;
    }
    e.half_log_grad[i] = a.grad[i].eval_grid(g, t);
    for (std::size_t p = 0; p < g.size(); ++p) e.half_log_grad[i][p] *= 0.5 / e.value[p];
  }
  e.dot = a.dot.eval_grid(g, t);
  return e;
}

void fill_common(MediumFrame& f) {
  const double c = f.constants.c;
  for (std::size_t p = 0; p < f.grid.size(); ++p) {
    const double e = f.eps[p].real(), m = f.mu[p].real();
    f.v[p] = 1.0 / std::sqrt(e * m);
    f.eps_bar[p] = 0.5 * std::log(e);
    f.mu_bar[p] = 0.5 * std::log(m);
    if (f.n[p] == 0.0) f.n[p] = c * std::sqrt(e * m);
    if (f.eta[p] == 0.0) f.eta[p] = std::sqrt(m / e);
    f.n_bar[p] = 0.5 * std::log(f.n[p].real());
    f.eta_bar[p] = 0.5 * std::log(f.eta[p].real());
  }
}

}  // namespace

MediumFrame sample(const MediumSpec& spec, const Grid3& g, double t) {
  MediumFrame f(g);
  f.t = t;
  f.constants = units(spec.unit_mode());
  f.is_constant = spec.kind() == MediumSpec::Kind::constant;
  f.is_static = spec.time_independent();

  switch (spec.kind()) {
    case MediumSpec::Kind::constant: {
      for (std::size_t p = 0; p < g.size(); ++p) {
        f.eps[p] = spec.constant_eps();
        f.mu[p] = spec.constant_mu();
      }
      fill_common(f);
      break;
    }
    case MediumSpec::Kind::sampled: {
      if (!(spec.sample_grid() == g))
        throw PreconditionError("sampled medium: grid differs from the sampling grid");
      check_positive(g, spec.eps_samples(), "permittivity", t);
      check_positive(g, spec.mu_samples(), "permeability", t);
      f.eps = to_field(g, spec.eps_samples());
      f.mu = to_field(g, spec.mu_samples());
      fill_common(f);
      f.grad_eps_bar = real_gradient(f.eps_bar);
      f.grad_mu_bar = real_gradient(f.mu_bar);
      // Sampled media are canonical in eps, mu; derive the rest linearly.
      for (std::size_t a = 0; a < 3; ++a) {
        f.grad_n_bar[a] = 0.5 * (f.grad_eps_bar[a] + f.grad_mu_bar[a]);
        f.grad_eta_bar[a] = 0.5 * (f.grad_mu_bar[a] - f.grad_eps_bar[a]);
      }
      break;
    }
    case MediumSpec::Kind::analytic: {
      const auto e = evaluate(spec.analytic_eps(), g, t);
      const auto m = evaluate(spec.analytic_mu(), g, t);
      const auto nn = evaluate(spec.analytic_n(), g, t);
      const auto h = evaluate(spec.analytic_eta(), g, t);
      check_positive(g, e.value, "permittivity", t);
      check_positive(g, m.value, "permeability", t);
      f.eps = to_field(g, e.value);
      f.mu = to_field(g, m.value);
      f.n = to_field(g, nn.value);
      f.eta = to_field(g, h.value);
      fill_common(f);
      for (std::size_t a = 0; a < 3; ++a) {
        f.grad_eps_bar[a] = to_field(g, e.half_log_grad[a]);
        f.grad_mu_bar[a] = to_field(g, m.half_log_grad[a]);
        f.grad_n_bar[a] = to_field(g, nn.half_log_grad[a]);
        f.grad_eta_bar[a] = to_field(g, h.half_log_grad[a]);
      }
      if (!f.is_static) {
        for (std::size_t p = 0; p < g.size(); ++p) {
          f.dot_eps_bar[p] = 0.5 * e.dot[p] / e.value[p];
          f.dot_mu_bar[p] = 0.5 * m.dot[p] / m.value[p];
          f.dot_n[p] = nn.dot[p];
          f.dot_eta[p] = h.dot[p];
        }
      }
      break;
    }
  }

  const auto d = frame_defects(f);
  if (d.max() > 1e-12) {
    std::ostringstream os;
    os << "medium frame violates its derived-field relations (defect " << d.max() << ")";
    throw PreconditionError(os.str());
  }
  return f;
}

double FrameDefects::max() const {
  return std::max({n_relation, eta_relation, dot_relations, grad_relations});
}

namespace {

// max|a - b| / max scale, zero when both vanish identically. The scale defaults
// to |a| + |b| but differences of nearly equal terms should pass their operands.
class DefectAccumulator {
 public:
  void add(double a, double b) { add(a, b, std::abs(a) + std::abs(b)); }
  void add(double a, double b, double scale) {
    diff_ = std::max(diff_, std::abs(a - b));
    scale_ = std::max(scale_, scale);
  }
  double value() const { return diff_ == 0.0 ? 0.0 : diff_ / scale_; }

 private:
  double diff_ = 0.0, scale_ = 0.0;
};

}  // namespace

FrameDefects frame_defects(const MediumFrame& f) {
  const double c = f.constants.c;
  DefectAccumulator n_rel, v_rel, eta_rel, dot_s, dot_d;
  std::array<DefectAccumulator, 3> grad_s, grad_d;
  for (std::size_t p = 0; p < f.grid.size(); ++p) {
    const double e = f.eps[p].real(), m = f.mu[p].real(), n = f.n[p].real();
    n_rel.add(n, c * std::sqrt(e * m));
    v_rel.add(f.v[p].real(), c / n);
    eta_rel.add(f.eta[p].real(), std::sqrt(m / e));
    const double n_bar_dot = 0.5 * f.dot_n[p].real() / n;
    const double eta_bar_dot = 0.5 * f.dot_eta[p].real() / f.eta[p].real();
    dot_s.add(f.dot_eps_bar[p].real() + f.dot_mu_bar[p].real(), 2.0 * n_bar_dot,
              std::abs(f.dot_eps_bar[p].real()) + std::abs(f.dot_mu_bar[p].real()) + 2.0 * std::abs(n_bar_dot));
    dot_d.add(f.dot_eps_bar[p].real() - f.dot_mu_bar[p].real(), -2.0 * eta_bar_dot,
              std::abs(f.dot_eps_bar[p].real()) + std::abs(f.dot_mu_bar[p].real()) + 2.0 * std::abs(eta_bar_dot));
    for (std::size_t a = 0; a < 3; ++a) {
      const double ge = f.grad_eps_bar[a][p].real(), gm = f.grad_mu_bar[a][p].real();
      const double gn = 2.0 * f.grad_n_bar[a][p].real(), ge2 = -2.0 * f.grad_eta_bar[a][p].real();
      const double scale = std::abs(ge) + std::abs(gm);
      grad_s[a].add(ge + gm, gn, scale + std::abs(gn));
      grad_d[a].add(ge - gm, ge2, scale + std::abs(ge2));
    }
  }
  FrameDefects d;
  d.n_relation = std::max(n_rel.value(), v_rel.value());
  d.eta_relation = eta_rel.value();
  d.dot_relations = std::max(dot_s.value(), dot_d.value());
  for (std::size_t a = 0; a < 3; ++a)
    d.grad_relations = std::max({d.grad_relations, grad_s[a].value(), grad_d[a].value()});
  return d;
}

}  // namespace rsw
