#include "rsw/fields.hpp"

#include <cmath>
#include <sstream>

namespace rsw {

namespace {

void require_same(const Grid3& a, const Grid3& b) {
  if (!(a == b)) throw GridMismatchError();
}

double real_at(const ScalarField& f, std::size_t p) { return f[p].real(); }

}  // namespace

double FState::null_norm() const {
  return std::sqrt(l2_norm(f[3]) * l2_norm(f[3]) + l2_norm(f[7]) * l2_norm(f[7]));
}

double PsiState::duplicate_defect() const {
  return std::max(max_abs(psi[1] - psi[2]), max_abs(psi[5] - psi[6]));
}

StateField8 apply_pointwise(const ComplexMatrix& m, const StateField8& in) {
  if (m.rows() != 8) throw PreconditionError("apply_pointwise: matrix must be 8x8");
  const Grid3& g = in.grid();
  StateField8 out(g);
  std::array<cplx, 8> x{}, y{};
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (std::size_t c = 0; c < 8; ++c) x[c] = in[c][p];
    m.apply(x.data(), y.data());
    for (std::size_t c = 0; c < 8; ++c) out[c][p] = y[c];
  }
  return out;
}

FState em_to_F(const EMState& em, const MediumFrame& med) {
  require_same(em.E.grid(), med.grid);
  FState f(med.grid);
  f.t = em.t;
  const double r2 = 1.0 / std::sqrt(2.0);
  for (std::size_t p = 0; p < med.grid.size(); ++p) {
    const double se = std::sqrt(real_at(med.eps, p)) * r2;
    const double sm = r2 / std::sqrt(real_at(med.mu, p));
    for (std::size_t a = 0; a < 3; ++a) {
      f.f[a][p] = se * em.E[a][p];
      f.f[4 + a][p] = sm * em.B[a][p];
    }
  }
  return f;
}

EMState F_to_em(const FState& f, const MediumFrame& med) {
  require_same(f.f.grid(), med.grid);
  EMState em(med.grid);
  em.t = f.t;
  const double s2 = std::sqrt(2.0);
  for (std::size_t p = 0; p < med.grid.size(); ++p) {
    const double se = s2 / std::sqrt(real_at(med.eps, p));
    const double sm = s2 * std::sqrt(real_at(med.mu, p));
    for (std::size_t a = 0; a < 3; ++a) {
      em.E[a][p] = se * f.f[a][p];
      em.B[a][p] = sm * f.f[4 + a][p];
    }
  }
  return em;
}

RSWPair em_to_rsw(const EMState& em, const MediumFrame& med) {
  require_same(em.E.grid(), med.grid);
  RSWPair r(med.grid);
  for (std::size_t p = 0; p < med.grid.size(); ++p) {
    const double s = std::sqrt(real_at(med.eps, p) / 2.0);
    const double v = real_at(med.v, p);
    for (std::size_t a = 0; a < 3; ++a) {
      r.plus[a][p] = s * (em.E[a][p] + I * v * em.B[a][p]);
      r.minus[a][p] = s * (em.E[a][p] - I * v * em.B[a][p]);
    }
  }
  return r;
}

EMState rsw_to_em(const RSWPair& rsw, const MediumFrame& med) {
  require_same(rsw.plus.grid(), med.grid);
  EMState em(med.grid);
  for (std::size_t p = 0; p < med.grid.size(); ++p) {
    const double s = std::sqrt(2.0 * real_at(med.eps, p));
    const double v = real_at(med.v, p);
    for (std::size_t a = 0; a < 3; ++a) {
      em.E[a][p] = (rsw.plus[a][p] + rsw.minus[a][p]) / s;
      em.B[a][p] = (rsw.plus[a][p] - rsw.minus[a][p]) / (I * v * s);
    }
  }
  return em;
}

PsiState F_to_psi(const FState& f) {
  PsiState s(f.f.grid());
  s.t = f.t;
  s.psi = apply_pointwise(transform_TT(), f.f);
  return s;
}

FState psi_to_F(const PsiState& psi) {
  FState f(psi.psi.grid());
  f.t = psi.t;
  f.f = apply_pointwise(transform_TT().adjoint(), psi.psi);
  return f;
}

PhiState psi_to_phi(const PsiState& psi) {
  PhiState s(psi.psi.grid());
  s.t = psi.t;
  s.phi = apply_pointwise(transform_Sphi(), psi.psi);
  return s;
}

PsiState phi_to_psi(const PhiState& phi) {
  PsiState s(phi.phi.grid());
  s.t = phi.t;
  s.psi = apply_pointwise(transform_Sphi().adjoint(), phi.phi);
  return s;
}

PsiState rsw_to_psi(const RSWPair& rsw) {
  const Grid3& g = rsw.plus.grid();
  PsiState s(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const cplx px = rsw.plus[0][p], py = rsw.plus[1][p], pz = rsw.plus[2][p];
    const cplx mx = rsw.minus[0][p], my = rsw.minus[1][p], mz = rsw.minus[2][p];
    s.psi[0][p] = 0.5 * (-px + I * py);
    s.psi[1][p] = 0.5 * pz;
    s.psi[2][p] = 0.5 * pz;
    s.psi[3][p] = 0.5 * (px + I * py);
    s.psi[4][p] = 0.5 * (-mx - I * my);
    s.psi[5][p] = 0.5 * mz;
    s.psi[6][p] = 0.5 * mz;
    s.psi[7][p] = 0.5 * (mx - I * my);
  }
  return s;
}

RSWPair psi_to_rsw(const PsiState& psi) {
  const Grid3& g = psi.psi.grid();
  RSWPair r(g);
  const auto& s = psi.psi;
  for (std::size_t p = 0; p < g.size(); ++p) {
    r.plus[0][p] = s[3][p] - s[0][p];
    r.plus[1][p] = -I * (s[0][p] + s[3][p]);
    r.plus[2][p] = s[1][p] + s[2][p];
    r.minus[0][p] = s[7][p] - s[4][p];
    r.minus[1][p] = I * (s[4][p] + s[7][p]);
    r.minus[2][p] = s[5][p] + s[6][p];
  }
  return r;
}

PsiState em_to_psi(const EMState& em, const MediumFrame& med) { return F_to_psi(em_to_F(em, med)); }

EMState psi_to_em(const PsiState& psi, const MediumFrame& med) { return F_to_em(psi_to_F(psi), med); }

StateField8 sources_to_calJ(const SourceState& src, const MediumFrame& med) {
  require_same(src.rho.grid(), med.grid);
  StateField8 j(med.grid);
  for (std::size_t p = 0; p < med.grid.size(); ++p) {
    const double s = 1.0 / std::sqrt(2.0 * real_at(med.eps, p));
    for (std::size_t a = 0; a < 3; ++a) j[a][p] = s * src.J[a][p];
    j[7][p] = -s * real_at(med.v, p) * src.rho[p];
  }
  return j;
}

StateField8 sources_to_frak(const SourceState& src, const MediumFrame& med) {
  require_same(src.rho.grid(), med.grid);
  StateField8 j(med.grid);
  for (std::size_t p = 0; p < med.grid.size(); ++p) {
    const double s = 1.0 / (2.0 * std::sqrt(2.0 * real_at(med.eps, p)));
    const cplx jx = src.J[0][p], jy = src.J[1][p], jz = src.J[2][p];
    const cplx vr = real_at(med.v, p) * src.rho[p];
    j[0][p] = s * (-jx + I * jy);
    j[1][p] = s * (jz + vr);
    j[2][p] = s * (jz - vr);
    j[3][p] = s * (jx + I * jy);
    j[4][p] = s * (-jx - I * jy);
    j[5][p] = s * (jz + vr);
    j[6][p] = s * (jz - vr);
    j[7][p] = s * (jx - I * jy);
  }
  return j;
}

ScalarField energy_density(const FState& f) {
  const Grid3& g = f.f.grid();
  ScalarField d(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    double s = 0.0;
    for (std::size_t c = 0; c < 8; ++c) s += std::norm(f.f[c][p]);
    d[p] = s;
  }
  return d;
}

double energy(const FState& f) {
  double s = 0.0;
  const ScalarField density = energy_density(f);
  for (cplx x : density.values()) s += x.real();
  return s * f.f.grid().cell_volume();
}

double em_energy(const EMState& em, const MediumFrame& med) {
  require_same(em.E.grid(), med.grid);
  double s = 0.0;
  for (std::size_t p = 0; p < med.grid.size(); ++p) {
    double e2 = 0.0, b2 = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
      e2 += std::norm(em.E[a][p]);
      b2 += std::norm(em.B[a][p]);
    }
    s += 0.5 * (real_at(med.eps, p) * e2 + b2 / real_at(med.mu, p));
  }
  return s * med.grid.cell_volume();
}

std::array<long, 3> lattice_modes(const Grid3& g, const std::array<double, 3>& k) {
  std::array<long, 3> m{};
  for (Axis a : all_axes) {
    const std::size_t i = index_of(a);
    const double x = k[i] * g.length(a) / (2.0 * pi);
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x))) {
      std::ostringstream os;
      os << "wavevector component " << "xyz"[i] << " = " << k[i] << " is not on the grid lattice";
      throw PreconditionError(os.str());
    }
    m[i] = static_cast<long>(r);
    if (2 * static_cast<std::size_t>(std::labs(m[i])) >= g.n(a) && m[i] != 0) {
      std::ostringstream os;
      os << "mode " << m[i] << " along " << "xyz"[i] << " is not resolved by " << g.n(a) << " samples";
      throw PreconditionError(os.str());
    }
  }
  return m;
}

PlaneWave make_plane_wave(const std::array<double, 3>& k, const std::array<cplx, 3>& E0,
                          const MediumFrame& med) {
  if (!med.is_constant) throw PreconditionError("make_plane_wave: medium must be constant");
  const Grid3& g = med.grid;
  const auto modes = lattice_modes(g, k);
  std::array<double, 3> kk{};
  for (std::size_t i = 0; i < 3; ++i) kk[i] = 2.0 * pi * static_cast<double>(modes[i]) / g.lengths()[i];
  const double kn = std::sqrt(kk[0] * kk[0] + kk[1] * kk[1] + kk[2] * kk[2]);
  if (kn == 0.0) throw PreconditionError("make_plane_wave: zero wavevector");
  const std::array<double, 3> kh{kk[0] / kn, kk[1] / kn, kk[2] / kn};

  const cplx along = kh[0] * E0[0] + kh[1] * E0[1] + kh[2] * E0[2];
  std::array<cplx, 3> e{};
  double e_norm = 0.0, e0_norm = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    e[i] = E0[i] - along * kh[i];
    e_norm += std::norm(e[i]);
    e0_norm += std::norm(E0[i]);
  }
  if (e_norm <= 1e-24 * std::max(e0_norm, 1e-300))
    throw PreconditionError("make_plane_wave: E0 is parallel to k");

  const double v = med.v[0].real();
  const std::array<cplx, 3> b{(kh[1] * e[2] - kh[2] * e[1]) / v, (kh[2] * e[0] - kh[0] * e[2]) / v,
                              (kh[0] * e[1] - kh[1] * e[0]) / v};

  PlaneWave w{EMState(g), kk, std::abs(along) > 1e-14 * std::sqrt(e0_norm)};
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto r = g.position(p);
    const cplx phase = std::exp(I * (kk[0] * r[0] + kk[1] * r[1] + kk[2] * r[2]));
    for (std::size_t a = 0; a < 3; ++a) {
      w.state.E[a][p] = e[a] * phase;
      w.state.B[a][p] = b[a] * phase;
    }
  }
  return w;
}

}  // namespace rsw
