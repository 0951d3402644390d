#include "rsw/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsw/operators.hpp"

namespace rsw {

double PropagatorPlan::dt_limit(const MediumFrame& med, double cfl) {
  return cfl * med.grid.min_spacing() / med.max_v();
}

PropagatorPlan PropagatorPlan::rk4_covering(double duration, const MediumFrame& med, double cfl) {
  if (!(duration > 0.0)) throw PreconditionError("rk4_covering: duration must be positive");
  const double limit = dt_limit(med, cfl);
  PropagatorPlan plan;
  plan.kind = Kind::rk4;
  plan.cfl = cfl;
  plan.steps = static_cast<std::size_t>(std::ceil(duration / limit * (1.0 - 1e-12)));
  plan.dt = duration / static_cast<double>(plan.steps);
  return plan;
}

void PropagatorPlan::check(const MediumFrame& med) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("plan: dt must be positive");
  if (!(cfl > 0.0)) throw PreconditionError("plan: cfl must be positive");
  if (kind == Kind::exact_kspace) {
    if (!med.is_constant) throw PreconditionError("plan: exact propagation needs a constant medium");
    return;
  }
  const double limit = dt_limit(med, cfl);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "plan: dt = " << dt << " exceeds the CFL limit " << limit << " (cfl " << cfl << ")";
    throw CflError(os.str(), dt, limit);
  }
}

SourceState SourceSpec::sample(const Grid3& g, double t) const {
  SourceState s(g);
  for (std::size_t a = 0; a < 3; ++a) {
    const auto v = J[a].eval_grid(g, t);
    for (std::size_t p = 0; p < g.size(); ++p) s.J[a][p] = v[p];
  }
  const auto r = rho.eval_grid(g, t);
  for (std::size_t p = 0; p < g.size(); ++p) s.rho[p] = r[p];
  return s;
}

namespace {

// (div + grad xbar .) w, the divergence residual shape shared by both fields.
ScalarField weighted_div(const VectorField3& w, const VectorField3& grad_bar) {
  ScalarField r = div(w);
  for (std::size_t a = 0; a < 3; ++a) r += grad_bar[a] * w[a];
  return r;
}

}  // namespace

Diagnostics diagnose(const PsiState& psi, const MediumFrame& med, const SourceState* src) {
  const Grid3& g = med.grid;
  const FState f = psi_to_F(psi);
  Diagnostics d;
  d.t = psi.t;
  d.energy = energy(f);
  d.null_norm = f.null_norm();

  // sqrt(eps) E and B / sqrt(mu)
  const double s2 = std::sqrt(2.0);
  VectorField3 e(g), b(g);
  for (std::size_t a = 0; a < 3; ++a) {
    e[a] = s2 * f.f[a];
    b[a] = s2 * f.f[4 + a];
  }
  ScalarField re = weighted_div(e, med.grad_eps_bar);
  if (src)
    for (std::size_t p = 0; p < g.size(); ++p) re[p] -= src->rho[p] / std::sqrt(med.eps[p]);
  const ScalarField rb = weighted_div(b, med.grad_mu_bar);
  const double dv = std::sqrt(g.cell_volume());
  d.div_plus = l2_norm(std::sqrt(0.5) * (re + I * rb)) * dv;
  d.div_minus = l2_norm(std::sqrt(0.5) * (re - I * rb)) * dv;
  return d;
}

void RunRecord::append(const Diagnostics& d) {
  if (!samples.empty() && d.t < samples.back().t) throw PreconditionError("RunRecord: times must be monotone");
  samples.push_back(d);
}

double RunRecord::energy_drift() const {
  if (samples.empty() || samples.front().energy == 0.0) return 0.0;
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, std::abs(s.energy - samples.front().energy));
  return m / samples.front().energy;
}

double RunRecord::max_divergence() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max({m, s.div_plus, s.div_minus});
  return m;
}

double RunRecord::initial_divergence() const {
  return samples.empty() ? 0.0 : std::max(samples.front().div_plus, samples.front().div_minus);
}

PsiState evolve_exact(const PsiState& psi0, double v, double t) {
  if (!(v > 0.0)) throw PreconditionError("evolve_exact: speed must be positive");
  PsiState out = psi0;
  out.t = psi0.t + t;
  if (t == 0.0) return out;
  out.psi = apply_per_mode(psi0.psi, [&](const std::array<double, 3>& k, const std::array<cplx, 8>& in,
                                         std::array<cplx, 8>& res) {
    const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (kn == 0.0) {
      res = in;
      return;
    }
    // exp(-i theta sigma.khat) = cos theta - i sin theta sigma.khat
    const double theta = v * kn * t;
    const cplx cs = std::cos(theta), sn = -I * std::sin(theta);
    const std::array<cplx, 3> kh{k[0] / kn, k[1] / kn, k[2] / kn};
    for (std::size_t b = 0; b < 4; ++b) {
      const ComplexMatrix s = sigma_dot(kh, b >= 2);
      const cplx u0 = in[2 * b], u1 = in[2 * b + 1];
      res[2 * b] = cs * u0 + sn * (s(0, 0) * u0 + s(0, 1) * u1);
      res[2 * b + 1] = cs * u1 + sn * (s(1, 0) * u0 + s(1, 1) * u1);
    }
  });
  return out;
}

PsiState evolve_exact(const PsiState& psi0, const MediumFrame& med, double t) {
  if (!med.is_constant) throw PreconditionError("evolve_exact: medium must be constant");
  return evolve_exact(psi0, med.v[0].real(), t);
}

namespace {

// Generic classical RK4 over a state type with +=, *= and axpy.
template <class State, class Rate>
State rk4_step(const State& y, double t, double dt, Rate&& rate) {
  const State k1 = rate(t, y);
  State y2 = y;
  y2.axpy(0.5 * dt, k1);
  const State k2 = rate(t + 0.5 * dt, y2);
  State y3 = y;
  y3.axpy(0.5 * dt, k2);
  const State k3 = rate(t + 0.5 * dt, y3);
  State y4 = y;
  y4.axpy(dt, k3);
  const State k4 = rate(t + dt, y4);
  State out = y;
  out.axpy(dt / 6.0, k1);
  out.axpy(dt / 3.0, k2);
  out.axpy(dt / 3.0, k3);
  out.axpy(dt / 6.0, k4);
  return out;
}

// Medium frames at the stage times, sampled once when time-independent.
class FrameSource {
 public:
  FrameSource(const MediumSpec& spec, const Grid3& g, double t0)
      : spec_(spec), grid_(g), fixed_(spec.time_independent()), frame_(sample(spec, g, t0)) {}

  const MediumFrame& at(double t) {
    if (!fixed_ && frame_.t != t) frame_ = sample(spec_, grid_, t);
    return frame_;
  }

 private:
  const MediumSpec& spec_;
  Grid3 grid_;
  bool fixed_;
  MediumFrame frame_;
};

void check_finite(bool ok, std::size_t step) {
  if (!ok) {
    std::ostringstream os;
    os << "non-finite values at step " << step;
    throw RuntimeAbort(os.str(), step);
  }
}

// Pair of fields stepped by the reference solver.
struct DB {
  VectorField3 d, b;
  void axpy(double a, const DB& x) {
    d.axpy(a, x.d);
    b.axpy(a, x.b);
  }
};

}  // namespace

RunResult evolve_rk4(const PsiState& psi0, const MediumSpec& medium, const PropagatorPlan& plan,
                     const SourceSpec* src, const RunOptions& opts) {
  const Grid3& g = psi0.psi.grid();
  FrameSource frames(medium, g, psi0.t);
  PropagatorPlan p = plan;
  p.kind = PropagatorPlan::Kind::rk4;
  p.check(frames.at(psi0.t));

  auto rate = [&](double t, const StateField8& y) {
    const MediumFrame& med = frames.at(t);
    PsiState s(g);
    s.psi = y;
    s.t = t;
    if (src) {
      const SourceState j = src->sample(g, t);
      return apply_M_psi(s, med, MForm::n_eta, &j).psi;
    }
    return apply_M_psi(s, med).psi;
  };

  RunResult r{psi0, {}};
  auto record = [&](std::size_t step) {
    const MediumFrame& med = frames.at(r.state.t);
    if (src) {
      const SourceState j = src->sample(g, r.state.t);
      r.record.append(diagnose(r.state, med, &j));
    } else {
      r.record.append(diagnose(r.state, med));
    }
    if (opts.observer) opts.observer(step, r.state, r.record.samples.back());
  };

  check_finite(r.state.psi.all_finite(), 0);
  record(0);
  for (std::size_t step = 1; step <= p.steps; ++step) {
    const double t = psi0.t + static_cast<double>(step - 1) * p.dt;
    r.state.psi = rk4_step(r.state.psi, t, p.dt, rate);
    r.state.t = psi0.t + static_cast<double>(step) * p.dt;
    check_finite(r.state.psi.all_finite(), step);
    const bool last = step == p.steps;
    if (last || (opts.diagnostic_every > 0 && step % opts.diagnostic_every == 0)) record(step);
  }
  return r;
}

EMState reference_curl_solver(const EMState& em0, const MediumSpec& medium, const PropagatorPlan& plan,
                              const SourceSpec* src) {
  const Grid3& g = em0.E.grid();
  FrameSource frames(medium, g, em0.t);
  PropagatorPlan p = plan;
  p.kind = PropagatorPlan::Kind::rk4;
  p.check(frames.at(em0.t));

  DB y{VectorField3(g), em0.B};
  {
    const MediumFrame& med = frames.at(em0.t);
    for (std::size_t a = 0; a < 3; ++a) y.d[a] = med.eps * em0.E[a];
  }

  auto rate = [&](double t, const DB& s) {
    const MediumFrame& med = frames.at(t);
    VectorField3 e(g), h(g);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t q = 0; q < g.size(); ++q) {
        e[a][q] = s.d[a][q] / med.eps[q];
        h[a][q] = s.b[a][q] / med.mu[q];
      }
    DB out{curl(h), curl(e)};
    out.b *= -1.0;
    if (src) out.d -= src->sample(g, t).J;
    return out;
  };

  for (std::size_t step = 1; step <= p.steps; ++step) {
    const double t = em0.t + static_cast<double>(step - 1) * p.dt;
    y = rk4_step(y, t, p.dt, rate);
    check_finite(y.d.all_finite() && y.b.all_finite(), step);
  }

  EMState out(g);
  out.t = em0.t + p.duration();
  const MediumFrame& med = frames.at(out.t);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t q = 0; q < g.size(); ++q) out.E[a][q] = y.d[a][q] / med.eps[q];
  out.B = std::move(y.b);
  return out;
}

namespace {

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

std::array<cplx, 3> default_polarization(const std::array<double, 3>& k) {
  // Any fixed vector off the k axis; the transverse part is kept.
  const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  if (std::abs(k[0]) < 0.9 * kn) return {1.0, cplx(0.0, 0.5), 0.25};
  return {0.25, 1.0, cplx(0.0, 0.5)};
}

}  // namespace

std::vector<DispersionRow> dispersion_scan(const std::vector<DispersionMode>& modes, const MediumFrame& med,
                                           const DispersionOptions& opts) {
  if (!med.is_constant) throw PreconditionError("dispersion_scan: medium must be constant");
  if (opts.samples < 3 || !(opts.periods > 0.0)) throw PreconditionError("dispersion_scan: bad sampling window");
  const double v = med.v[0].real();
  std::vector<DispersionRow> rows;
  for (const auto& mode : modes) {
    const auto wave = make_plane_wave(mode.k, mode.E0.value_or(default_polarization(mode.k)), med);
    const PsiState psi0 = em_to_psi(wave.state, med);

    // follow the largest component at one sample
    std::size_t comp = 0;
    for (std::size_t c = 1; c < 8; ++c)
      if (std::abs(psi0.psi[c][0]) > std::abs(psi0.psi[comp][0])) comp = c;

    DispersionRow row;
    row.k = wave.k;
    row.projected = mode.E0 && wave.projected;  // the default seed is projected by design
    const double kn = std::sqrt(wave.k[0] * wave.k[0] + wave.k[1] * wave.k[1] + wave.k[2] * wave.k[2]);
    row.omega_theory = v * kn;
    const double window = opts.periods * 2.0 * pi / row.omega_theory;

    std::vector<double> ts, phase;
    double prev = std::arg(psi0.psi[comp][0]), unwrapped = prev;
    for (std::size_t i = 0; i < opts.samples; ++i) {
      const double t = window * static_cast<double>(i) / static_cast<double>(opts.samples - 1);
      const double ph = std::arg(evolve_exact(psi0, v, t).psi[comp][0]);
      double step = ph - prev;
      step -= 2.0 * pi * std::round(step / (2.0 * pi));
      unwrapped += step;
      prev = ph;
      ts.push_back(t);
      phase.push_back(unwrapped);
    }
    // psi ~ exp(-i omega t)
    row.omega_measured = -fit_slope(ts, phase);
    row.rel_err = std::abs(row.omega_measured - row.omega_theory) / row.omega_theory;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rsw
