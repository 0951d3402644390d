// Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../support/printed.hpp"
#include "rsw/commands.hpp"
#include "rsw/evolve.hpp"
#include "rsw/operators.hpp"
#include "rsw/verify.hpp"

using namespace rsw;

namespace {

// Worst measured/tolerance pair within one criterion.
class Criterion {
 public:
  void check(const std::string& what, double measured, double tol) {
    const bool ok = std::isfinite(measured) && measured <= tol;
    if (verbose) std::printf("    %s %s <= %s\n", what.c_str(), fmt(measured).c_str(), fmt(tol).c_str());
    if (!ok) failures_.push_back(what);
    const double ratio = measured / tol;
    if (!std::isfinite(measured) || ratio > worst_ratio_) {
      worst_ratio_ = std::isfinite(measured) ? ratio : INFINITY;
      worst_ = what + " " + fmt(measured) + " <= " + fmt(tol);
    }
  }
  void require(const std::string& what, bool ok) {
    ++required_;
    if (verbose) std::printf("    %s: %s\n", what.c_str(), ok ? "yes" : "no");
    if (!ok) failures_.push_back(what);
  }
  bool pass() const { return failures_.empty(); }
  std::string summary() const {
    std::string s = worst_ratio_ < 0 ? std::to_string(required_) + " requirements" : "worst: " + worst_;
    for (const auto& f : failures_) s += "; failed: " + f;
    return s;
  }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }
  inline static bool verbose = std::getenv("ACCEPTANCE_VERBOSE") != nullptr;

 private:
  double worst_ratio_ = -1.0;
  std::size_t required_ = 0;
  std::string worst_ = "none";
  std::vector<std::string> failures_;
};

const ComplexMatrix one2 = ComplexMatrix::identity(2);
const ComplexMatrix one8 = ComplexMatrix::identity(8);

double rel(const StateField8& a, const StateField8& b) { return relative_l2(a, b); }

FState random_F(const Grid3& g, int max_mode, Rng& rng) {
  FState f(g);
  for (std::size_t c : {0, 1, 2, 4, 5, 6}) f.f[c] = random_bandlimited(g, max_mode, rng);
  return f;
}

// -v (sigma.grad) on pairs (0,1), (2,3) and -v (sigma*.grad) on (4,5), (6,7)
StateField8 block_operator(const StateField8& psi, double v) {
  StateField8 out(psi.grid());
  for (std::size_t b = 0; b < 4; ++b) {
    const auto& u0 = psi[2 * b];
    const auto& u1 = psi[2 * b + 1];
    const bool conj = b >= 2;
    const auto lower = conj ? dminus(u0) : dplus(u0);
    const auto upper = conj ? dplus(u1) : dminus(u1);
    out[2 * b] = -v * (ddx(u0, Axis::z) + upper);
    out[2 * b + 1] = -v * (lower - ddx(u1, Axis::z));
  }
  return out;
}

// Fields with div D = 0 and div B = 0 in the given medium.
EMState solenoidal_state(const MediumFrame& med, int max_mode, Rng& rng) {
  const Grid3& g = med.grid;
  EMState em(g);
  const auto d = curl(random_bandlimited_set<3>(g, max_mode, rng));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t p = 0; p < g.size(); ++p) em.E[a][p] = d[a][p] / med.eps[p];
  em.B = curl(random_bandlimited_set<3>(g, max_mode, rng));
  return em;
}

std::array<double, 3> lattice_k(const Grid3& g, Rng& rng, int max_mode) {
  std::array<double, 3> k{};
  while (k == std::array<double, 3>{}) {
    for (std::size_t a = 0; a < 3; ++a) {
      const int m = static_cast<int>(rng() % static_cast<unsigned>(2 * max_mode + 1)) - max_mode;
      k[a] = 2 * pi * m / g.lengths()[a];
    }
  }
  return k;
}

std::array<cplx, 3> cross(const std::array<double, 3>& k, const std::array<cplx, 3>& f) {
  return {k[1] * f[2] - k[2] * f[1], k[2] * f[0] - k[0] * f[2], k[0] * f[1] - k[1] * f[0]};
}

// ---- 1 ----------------------------------------------------------------
void algebra_suite(Criterion& c) {
  const ComplexMatrix sx(2, {0.0, 1.0, 1.0, 0.0});
  const ComplexMatrix sy(2, {0.0, -I, I, 0.0});
  const ComplexMatrix sz(2, {1.0, 0.0, 0.0, -1.0});
  const std::array<ComplexMatrix, 3> s{sx, sy, sz};
  double d = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    d = std::max(d, max_norm_diff(pauli(all_axes[j]), s[j]));
    d = std::max(d, max_norm_diff(pauli(all_axes[j]) * pauli(all_axes[j]), one2));
    for (std::size_t k = j + 1; k < 3; ++k) {
      const auto a = pauli(all_axes[j]), b = pauli(all_axes[k]);
      d = std::max(d, max_abs(a * b + b * a));
    }
  }
  c.check("pauli identities", d, 1e-14);
  c.check("sigma_x sigma_y sigma_z = i", max_norm_diff(pauli(Axis::x) * pauli(Axis::y) * pauli(Axis::z), I * one2),
          1e-14);

  for (double v : {1.0, 0.7, 2.5}) {
    const std::array<ComplexMatrix, 3> printed_m{printed::m0x(v), printed::m0y(v), printed::m0z(v)};
    double entry = 0, square = 0, anti = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const auto mj = m0_direction(all_axes[j], v);
      entry = std::max(entry, max_norm_diff(mj, printed_m[j]));
      square = std::max(square, max_norm_diff(mj * mj, (v * v) * one8) / (v * v));
      for (std::size_t k = j + 1; k < 3; ++k) {
        const auto mk = m0_direction(all_axes[k], v);
        anti = std::max(anti, max_abs(mj * mk + mk * mj) / (v * v));
      }
    }
    c.check("M0 entries vs printed tables", entry, 1e-14);
    c.check("M0j^2 = v^2", square, 1e-14);
    c.check("M0 anticommutation", anti, 1e-14);
    const auto triple = m0_direction(Axis::x, v) * m0_direction(Axis::y, v) * m0_direction(Axis::z, v);
    c.check("M0x M0y M0z = i v^3 sigma_y x 1",
            max_norm_diff(triple, (I * v * v * v) * kron(sy, ComplexMatrix::identity(4))) / (v * v * v), 1e-14);
  }
  for (const auto& [name, u] : std::vector<std::pair<std::string, ComplexMatrix>>{
           {"tau", transform_tau()},
           {"T8", transform_T8()},
           {"T", transform_T()},
           {"TT", transform_TT()},
           {"SK", transform_SK()},
           {"Sphi", transform_Sphi()}})
    c.check(name + " unitary", unitarity_defect(u), 1e-14);
  const double tables = std::max({max_norm_diff(transform_T8(), printed::t8()),
                                  max_norm_diff(transform_T(), printed::t_small()),
                                  max_norm_diff(transform_TT(), printed::tt()),
                                  max_norm_diff(transform_SK(), printed::sk()),
                                  max_norm_diff(transform_Sphi(), printed::sphi())});
  c.check("transforms vs printed tables", tables, 1e-14);
}

// ---- 2 ----------------------------------------------------------------
void representation_chain(Criterion& c) {
  const Grid3 g({12, 12, 12}, {1, 1, 1});
  const auto med = sample(MediumSpec::analytic(parse_expr("2 + 0.3*sin(2*pi*x)*cos(2*pi*z)"),
                                               parse_expr("1.2 + 0.2*cos(2*pi*y)")),
                          g, 0.0);
  Rng rng(2002);
  EMState em(g);
  em.E = random_bandlimited_set<3>(g, 3, rng);
  em.B = random_bandlimited_set<3>(g, 3, rng);
  const auto f = em_to_F(em, med);
  const auto back = F_to_em(f, med);
  c.check("em <-> F", std::max(relative_l2(back.E, em.E), relative_l2(back.B, em.B)), 1e-13);
  const auto psi = F_to_psi(f);
  c.check("F <-> psi", rel(psi_to_F(psi).f, f.f), 1e-13);
  c.check("psi <-> phi", rel(phi_to_psi(psi_to_phi(psi)).psi, psi.psi), 1e-13);
  const auto full = psi_to_em(phi_to_psi(psi_to_phi(em_to_psi(em, med))), med);
  c.check("em -> phi -> em", std::max(relative_l2(full.E, em.E), relative_l2(full.B, em.B)), 1e-13);

  const double v = 0.75;
  const auto tt = transform_TT();
  double block = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto ft = random_F(g, 3, rng);
    const auto lhs = apply_pointwise(tt, apply_M0_F(ft, v).f);
    block = std::max(block, rel(lhs, block_operator(apply_pointwise(tt, ft.f), v)));
  }
  c.check("TT M0 TT^dagger block form, 20 states", block, 1e-12);

  double forms = 0;
  for (const auto& spec :
       {MediumSpec::analytic(parse_expr("2 + 0.3*sin(2*pi*x)*cos(2*pi*z)"), parse_expr("1.2 + 0.2*cos(2*pi*y)")),
        MediumSpec::analytic(parse_expr("2 + 0.2*sin(2*pi*x - t)"), parse_expr("1.1 + 0.1*cos(2*pi*(y + z) + 2*t)"))}) {
    const auto m = sample(spec, g, 0.4);
    PsiState p(g);
    p.psi = random_bandlimited_set<8>(g, 3, rng);
    forms = std::max(forms, rel(apply_M_psi(p, m, MForm::eps_mu).psi, apply_M_psi(p, m, MForm::n_eta).psi));
  }
  c.check("eps,mu form vs n,eta form", forms, 1e-12);
}

// ---- 3 ----------------------------------------------------------------
void helmholtz(Criterion& c) {
  {
    const Grid3 g({16, 16, 16}, {1, 1, 1});
    Rng rng(3003);
    FState f(g);
    f.f = random_bandlimited_set<8>(g, 4, rng);
    const double v = 0.6;
    StateField8 lap(g);
    for (std::size_t k = 0; k < 8; ++k) lap[k] = (v * v) * laplacian(f.f[k]);
    c.check("M0 twice = v^2 laplacian", rel(apply_M0_F(apply_M0_F(f, v), v).f, lap), 1e-10);
  }
  const Grid3 g({128, 1, 128}, {1, 1, 1});
  const auto med = sample(MediumSpec::analytic(parse_expr("2 + 0.3*sin(2*pi*x)*cos(2*pi*z)"),
                                               parse_expr("1.2 + 0.2*cos(2*pi*(x + z))")),
                          g, 0.0);
  Rng rng(3004);
  EMState only_e(g);
  only_e.E = random_bandlimited_set<3>(g, 5, rng);
  const auto twice = apply_M_F(apply_M_F(em_to_F(only_e, med), med), med);
  VectorField3 from_op(g);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t p = 0; p < g.size(); ++p) from_op[a][p] = twice.f[a][p] * std::sqrt(2.0 / med.eps[p]);
  c.check("generalized Helmholtz, gradient form", relative_l2(helmholtz_gradient(only_e.E, med), from_op), 1e-8);
  c.check("generalized Helmholtz, expanded form", relative_l2(helmholtz_expanded(only_e.E, med), from_op), 1e-8);

  const auto H = random_bandlimited_set<3>(g, 5, rng);
  EMState only_b(g);
  for (std::size_t a = 0; a < 3; ++a) only_b.B[a] = med.mu * H[a];
  const auto twice_b = apply_M_F(apply_M_F(em_to_F(only_b, med), med), med);
  VectorField3 from_op_h(g);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t p = 0; p < g.size(); ++p) from_op_h[a][p] = twice_b.f[4 + a][p] * std::sqrt(2.0 / med.mu[p]);
  c.check("generalized Helmholtz, magnetic form", relative_l2(helmholtz_gradient_H(H, med), from_op_h), 1e-8);
}

// ---- 4 ----------------------------------------------------------------
void dispersion(Criterion& c) {
  for (double eps : {1.0, 4.0}) {
    const Grid3 g({16, 16, 16}, {1, 1, 1});
    const auto med = sample(MediumSpec::constant(eps, 1.0), g, 0.0);
    Rng rng(4004);
    std::vector<DispersionMode> modes;
    for (int i = 0; i < 10; ++i) modes.push_back({lattice_k(g, rng, 5), std::nullopt});
    const auto rows = dispersion_scan(modes, med);
    double worst = 0;
    const double v = 1.0 / std::sqrt(eps);
    for (const auto& r : rows) {
      const double kn = std::sqrt(r.k[0] * r.k[0] + r.k[1] * r.k[1] + r.k[2] * r.k[2]);
      worst = std::max(worst, std::abs(r.omega_measured - v * kn) / (v * kn));
    }
    c.require("ten rows", rows.size() == 10);
    c.check("omega = v|k|, v = " + Criterion::fmt(v), worst, 1e-10);
  }
}

// ---- 5 ----------------------------------------------------------------
// d/dt at t = 0 from samples at 0, h, .., 4h (fourth order, one-sided).
template <class Field>
Field forward_derivative(const std::array<Field, 5>& f, double h) {
  const double w[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  Field out = f[0];
  out *= w[0] / (12.0 * h);
  for (std::size_t i = 1; i < 5; ++i) {
    Field t = f[i];
    t *= w[i] / (12.0 * h);
    out += t;
  }
  return out;
}

void transversality(Criterion& c) {
  {
    const Grid3 g({16, 16, 16}, {1, 1, 1});
    const auto med = sample(MediumSpec::constant(2.25, 1.0), g, 0.0);
    Rng rng(5005);
    double dot = 0, curl_rel = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto k = lattice_k(g, rng, 5);
      std::array<cplx, 3> e0;
      // seed orthogonal to k by construction
      const std::array<cplx, 3> r{cplx(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                                  cplx(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                                  cplx(uniform(rng, -1, 1), uniform(rng, -1, 1))};
      e0 = cross(k, r);
      const auto wave = make_plane_wave(k, e0, med);
      const auto rsw = em_to_rsw(wave.state, med);
      const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
      for (int sign : {1, -1}) {
        const auto& field = sign > 0 ? rsw.plus : rsw.minus;
        // amplitude at the origin sample, where exp(i k.r) = 1
        const std::array<cplx, 3> f0{field[0][0], field[1][0], field[2][0]};
        const double scale = kn * std::sqrt(std::norm(f0[0]) + std::norm(f0[1]) + std::norm(f0[2]));
        const auto kx = cross(k, f0);
        dot = std::max(dot, std::abs(k[0] * f0[0] + k[1] * f0[1] + k[2] * f0[2]) / scale);
        double d = 0;
        for (std::size_t a = 0; a < 3; ++a) d += std::norm(kn * f0[a] - static_cast<double>(sign) * I * kx[a]);
        curl_rel = std::max(curl_rel, std::sqrt(d) / scale);
      }
    }
    c.check("k . F0 = 0", dot, 1e-12);
    c.check("k F0 = +-i k x F0", curl_rel, 1e-12);
  }

  // F+- rates from the evolution against the curl form
  const Grid3 g({16, 16, 16}, {1, 1, 1});
  const double eps = 2.25, v = 1.0 / 1.5, h = 1e-4;
  const auto spec = MediumSpec::constant(eps, 1.0);
  const auto med = sample(spec, g, 0.0);
  Rng rng(5006);
  auto residual = [&](const std::array<RSWPair, 5>& samples, const SourceState* src) {
    std::array<VectorField3, 5> plus{samples[0].plus, samples[1].plus, samples[2].plus, samples[3].plus,
                                     samples[4].plus};
    std::array<VectorField3, 5> minus{samples[0].minus, samples[1].minus, samples[2].minus, samples[3].minus,
                                      samples[4].minus};
    const auto dp = forward_derivative(plus, h), dm = forward_derivative(minus, h);
    VectorField3 rp = curl(samples[0].plus), rm = curl(samples[0].minus);
    rp *= -I * v;
    rm *= I * v;
    if (src) {
      VectorField3 j = src->J;
      j *= -1.0 / std::sqrt(2.0 * eps);
      rp += j;
      rm += j;
    }
    return std::max(relative_l2(dp, rp), relative_l2(dm, rm));
  };
  auto divergence = [&](const RSWPair& s, const SourceState* src) {
    ScalarField target(g);
    if (src) target = src->rho * cplx(1.0 / std::sqrt(2.0 * eps));
    const auto dp = div(s.plus) - target, dm = div(s.minus) - target;
    const double scale = l2_norm(curl(s.plus)) + l2_norm(target);
    return std::max(l2_norm(dp), l2_norm(dm)) / scale;
  };

  {
    const auto em = solenoidal_state(med, 3, rng);
    const auto psi0 = em_to_psi(em, med);
    std::array<RSWPair, 5> s{RSWPair(g), RSWPair(g), RSWPair(g), RSWPair(g), RSWPair(g)};
    for (std::size_t i = 0; i < 5; ++i) s[i] = psi_to_rsw(evolve_exact(psi0, med, static_cast<double>(i) * h));
    c.check("source-free RSW curl equations", residual(s, nullptr), 1e-8);
    c.check("source-free RSW divergence", divergence(s[0], nullptr), 1e-8);
  }
  {
    // E with div E = 2 pi cos(2 pi x); transverse J so rho stays put
    SourceSpec src;
    src.J = {parse_expr("0"), parse_expr("sin(2*pi*x)*cos(3*t)"), parse_expr("cos(2*pi*(x + y))*sin(t + 1)")};
    src.rho = parse_expr("2.25*2*pi*cos(2*pi*x)");
    EMState em(g);
    em.E[0] = ScalarField::from_function(g, [](double x, double, double) { return cplx(std::sin(2 * pi * x)); });
    const auto more = solenoidal_state(med, 2, rng);
    em.E[0] += more.E[0];
    em.E[1] = more.E[1];
    em.E[2] = more.E[2];
    em.B = more.B;
    const auto psi0 = em_to_psi(em, med);
    std::array<RSWPair, 5> s{RSWPair(g), RSWPair(g), RSWPair(g), RSWPair(g), RSWPair(g)};
    s[0] = psi_to_rsw(psi0);
    PsiState cur = psi0;
    for (std::size_t i = 1; i < 5; ++i) {
      cur = evolve_rk4(cur, spec, {PropagatorPlan::Kind::rk4, h, 1, 0.25}, &src).state;
      s[i] = psi_to_rsw(cur);
    }
    const auto j0 = src.sample(g, 0.0);
    c.check("RSW curl equations with sources", residual(s, &j0), 1e-8);
    c.check("RSW divergence with charge", divergence(s[0], &j0), 1e-8);
  }
}

// ---- 6 ----------------------------------------------------------------
void conservation(Criterion& c) {
  {
    const Grid3 g({16, 16, 16}, {1, 1, 1});
    const auto med = sample(MediumSpec::constant(1.5, 1.2), g, 0.0);
    Rng rng(6006);
    const auto em = solenoidal_state(med, 4, rng);
    const auto psi0 = em_to_psi(em, med);
    const double e0 = energy(psi_to_F(psi0));
    // the longest wave on a unit box has period 1 / v
    const double period = 1.0 / med.v[0].real();
    double worst = 0;
    for (int i = 1; i <= 10; ++i)
      worst = std::max(worst, std::abs(energy(psi_to_F(evolve_exact(psi0, med, i * period))) - e0) / e0);
    c.check("exact propagator energy, 10 periods", worst, 1e-12);
  }
  {
    const Grid3 g({64, 1, 64}, {1, 1, 1});
    const auto spec = MediumSpec::constant(1.0, 1.0);
    const auto med = sample(spec, g, 0.0);
    Rng rng(6007);
    const auto em = solenoidal_state(med, 1, rng);
    PropagatorPlan plan;
    plan.dt = PropagatorPlan::dt_limit(med, 0.25);
    plan.steps = 1000;
    RunOptions opts;
    opts.diagnostic_every = 10;
    const auto run = evolve_rk4(em_to_psi(em, med), spec, plan, nullptr, opts);
    c.check("RK4 energy drift, 1000 steps at cfl 0.25", run.record.energy_drift(), 1e-6);
  }
}

// ---- 7 ----------------------------------------------------------------
void oracle_equivalence(Criterion& c) {
  struct Case {
    std::string name;
    Grid3 grid;
    MediumSpec spec;
    int max_mode;
  };
  const std::vector<Case> cases{
      {"vacuum", Grid3({16, 16, 16}, {1, 1, 1}), MediumSpec::constant(1.0, 1.0), 3},
      {"graded n(z)", Grid3({1, 1, 128}, {1, 1, 1}),
       MediumSpec::analytic_n_eta(parse_expr("1.5 + 0.2*sin(2*pi*z)"), parse_expr("1")), 4},
      {"graded n(x,y,z), varying eta", Grid3({40, 40, 40}, {1, 1, 1}),
       MediumSpec::analytic_n_eta(parse_expr("1.4 + 0.1*sin(2*pi*x)*cos(2*pi*y) + 0.05*cos(2*pi*z)"),
                                  parse_expr("1 + 0.1*cos(2*pi*(x - z))")),
       2},
  };
  Rng rng(7007);
  for (const auto& cs : cases) {
    const auto med = sample(cs.spec, cs.grid, 0.0);
    const auto em = solenoidal_state(med, cs.max_mode, rng);
    const PropagatorPlan plan{PropagatorPlan::Kind::rk4, PropagatorPlan::dt_limit(med, 0.25), 200, 0.25};
    RunOptions opts;
    opts.diagnostic_every = 50;
    const auto run = evolve_rk4(em_to_psi(em, med), cs.spec, plan, nullptr, opts);
    const auto ref = reference_curl_solver(em, cs.spec, plan);
    c.check(cs.name + " psi vs curl solver", rel(run.state.psi, em_to_psi(ref, med).psi), 1e-10);
    c.check(cs.name + " divergence growth",
            run.record.max_divergence() / std::max(run.record.initial_divergence(), 1e-13), 10.0);
  }
}

// ---- 8 ----------------------------------------------------------------
void beam_optics(Criterion& c) {
  {
    const Grid3 g({16, 16, 16}, {1, 1, 1});
    const auto med = sample(MediumSpec::analytic_n_eta(parse_expr("1.5 + 0.03*cos(2*pi*x)*cos(2*pi*y)"),
                                                       parse_expr("1 + 0.1*sin(2*pi*x)")),
                            g, 0.0);
    const auto beam = beam_hamiltonian(BeamContext(0.2, 1.5), med);
    Rng rng(8008);
    double be = 0, bo = 0, mono = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto phi = random_bandlimited_set<8>(g, 3, rng);
      StateField8 c1 = beam.apply_B(beam.apply_E(phi));
      c1 -= beam.apply_E(beam.apply_B(phi));
      StateField8 c2 = beam.apply_B(beam.apply_O(phi));
      c2 += beam.apply_O(beam.apply_B(phi));
      be = std::max(be, max_abs(c1));
      bo = std::max(bo, max_abs(c2));
      mono = std::max(mono, beam.monochromatic_residual(phi));
    }
    c.check("BE = EB", be, 1e-13);
    c.check("BO = -OB", bo, 1e-13);
    c.check("monochromatic reduction", mono, 1e-10);
  }
  {
    const Grid3 g({24, 24, 24}, {1, 1, 1});
    const auto med = sample(MediumSpec::analytic_n_eta(
                                parse_expr("1.4 + 0.1*sin(2*pi*x)*cos(2*pi*y) + 0.05*cos(2*pi*z)"), parse_expr("1")),
                            g, 0.0);
    const auto blocks = m_blocks(med);
    Rng rng(8009);
    const std::array<ScalarField, 2> u{random_bandlimited(g, 3, rng), random_bandlimited(g, 3, rng)};
    double worst = 0;
    for (bool conj : {false, true}) {
      const auto a = blocks.apply(u, conj), b = blocks.compose(u, conj);
      worst = std::max({worst, relative_l2(a[0], b[0]), relative_l2(a[1], b[1])});
    }
    c.check("m-block formulas vs composition", worst, 1e-9);
  }
}

// ---- 9 ----------------------------------------------------------------
void mutation_sensitivity(Criterion& c) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(RSW_MUTATION_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    const auto m = load_mutation(entry.path());
    CommandOptions opts;
    opts.scope = "all";
    opts.mutation = entry.path();
    std::ostringstream out, err;
    const int code = cmd_verify(opts, out, err);
    c.require(m.name + " exits non-zero", code != 0);
    c.require(m.name + " lists expected checks", !m.expect_failed.empty());
    for (const auto& name : m.expect_failed)
      c.require(m.name + " names " + name, out.str().find("failed: " + name + "\n") != std::string::npos);
  }
  c.require("five fixtures", seen == 5);
  // and the unmutated suite is clean
  CommandOptions clean;
  clean.scope = "algebra";
  std::ostringstream out, err;
  c.require("unmutated algebra suite passes", cmd_verify(clean, out, err) == 0);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"algebra suite", algebra_suite},
      {"representation chain", representation_chain},
      {"Helmholtz", helmholtz},
      {"dispersion", dispersion},
      {"transversality and RSW equations", transversality},
      {"conservation", conservation},
      {"oracle equivalence", oracle_equivalence},
      {"beam optics", beam_optics},
      {"mutation sensitivity", mutation_sensitivity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(std::string("threw: ") + e.what(), false);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!c.pass()) ++failed;
    std::printf("criterion %zu %s: %s (%s; %.1fs)\n", i + 1, c.pass() ? "PASS" : "FAIL", criteria[i].first.c_str(),
                c.summary().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
