#include "rsw/operators.hpp"

#include <cmath>

namespace rsw {

namespace {

using Mat8 = std::array<cplx, 64>;

void require_same(const Grid3& a, const Grid3& b) {
  if (!(a == b)) throw GridMismatchError();
}

void require_static(const MediumFrame& med, const char* who) {
  if (!med.is_static || med.has_time_derivatives())
    throw PreconditionError(std::string(who) + ": medium must be time-independent");
}

// sum_j A_j d_j f, evaluated per Fourier mode.
StateField8 first_order(const StateField8& f, const std::array<ComplexMatrix, 3>& a) {
  return apply_per_mode(f, [&](const std::array<double, 3>& k, const std::array<cplx, 8>& in,
                               std::array<cplx, 8>& out) {
    out.fill(0.0);
    for (std::size_t j = 0; j < 3; ++j) {
      if (k[j] == 0.0) continue;
      const cplx ik = I * k[j];
      for (std::size_t r = 0; r < 8; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < 8; ++c) acc += a[j](r, c) * in[c];
        out[r] += ik * acc;
      }
    }
  });
}

// out(p) = M(p) in(p) with M(p) produced by build(p, M).
template <class Build>
StateField8 pointwise(const StateField8& in, Build&& build) {
  const Grid3& g = in.grid();
  StateField8 out(g);
  Mat8 m{};
  std::array<cplx, 8> x{};
  for (std::size_t p = 0; p < g.size(); ++p) {
    m.fill(0.0);
    build(p, m);
    for (std::size_t c = 0; c < 8; ++c) x[c] = in[c][p];
    for (std::size_t r = 0; r < 8; ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < 8; ++c) acc += m[r * 8 + c] * x[c];
      out[r][p] = acc;
    }
  }
  return out;
}

// Places a 2x2 matrix at block (br, bc) of an 8x8 laid out as 4x4 blocks.
void put_block(Mat8& m, std::size_t br, std::size_t bc, const ComplexMatrix& b, cplx scale = 1.0) {
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) m[(2 * br + r) * 8 + 2 * bc + c] += scale * b(r, c);
}

void add_kron(Mat8& m, std::size_t r0, std::size_t c0, const ComplexMatrix& k4, cplx scale) {
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m[(r0 + r) * 8 + c0 + c] += scale * k4(r, c);
}

std::array<cplx, 3> vec_at(const VectorField3& v, std::size_t p) {
  return {v[0][p].real(), v[1][p].real(), v[2][p].real()};
}

StateField8 scale_by(const ScalarField& s, StateField8 f, cplx factor = 1.0) {
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t p = 0; p < s.size(); ++p) f[c][p] *= factor * s[p];
  return f;
}

ScalarField c_over_n(const MediumFrame& med) {
  ScalarField r(med.grid);
  for (std::size_t p = 0; p < r.size(); ++p) r[p] = med.constants.c / med.n[p].real();
  return r;
}

// One printed entry of the off-diagonal F blocks: v (d * d_axis + g * (d_axis Xbar)).
struct FEntry {
  std::size_t row, col;
  Axis axis;
  int d, g;
};

// Upper block (rows 0-3, cols 4-7) uses mu-bar, lower block uses eps-bar.
constexpr std::array<FEntry, 12> upper_entries{{
    {0, 5, Axis::z, -1, +1}, {0, 6, Axis::y, +1, -1}, {0, 7, Axis::x, -1, -1},
    {1, 4, Axis::z, +1, -1}, {1, 6, Axis::x, -1, +1}, {1, 7, Axis::y, -1, -1},
    {2, 4, Axis::y, -1, +1}, {2, 5, Axis::x, +1, -1}, {2, 7, Axis::z, -1, -1},
    {3, 4, Axis::x, +1, +1}, {3, 5, Axis::y, +1, +1}, {3, 6, Axis::z, +1, +1},
}};
constexpr std::array<FEntry, 12> lower_entries{{
    {4, 1, Axis::z, +1, -1}, {4, 2, Axis::y, -1, +1}, {4, 3, Axis::x, +1, +1},
    {5, 0, Axis::z, -1, +1}, {5, 2, Axis::x, +1, -1}, {5, 3, Axis::y, +1, +1},
    {6, 0, Axis::y, +1, -1}, {6, 1, Axis::x, -1, +1}, {6, 3, Axis::z, +1, +1},
    {7, 0, Axis::x, -1, -1}, {7, 1, Axis::y, -1, -1}, {7, 2, Axis::z, -1, -1},
}};

const std::array<ComplexMatrix, 3>& f_derivative_matrices() {
  static const std::array<ComplexMatrix, 3> a = [] {
    std::array<ComplexMatrix, 3> m{ComplexMatrix(8), ComplexMatrix(8), ComplexMatrix(8)};
    for (const auto* table : {&upper_entries, &lower_entries})
      for (const auto& e : *table) m[index_of(e.axis)](e.row, e.col) = e.d;
    return m;
  }();
  return a;
}

const std::array<ComplexMatrix, 3>& psi_derivative_matrices() {
  static const std::array<ComplexMatrix, 3> a = [] {
    std::array<ComplexMatrix, 3> m{ComplexMatrix(8), ComplexMatrix(8), ComplexMatrix(8)};
    const auto one = ComplexMatrix::identity(2);
    for (Axis ax : all_axes) {
      const auto s = pauli(ax);
      const auto plus = kron(one, s), minus = kron(one, s.conjugate());
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
          m[index_of(ax)](r, c) = plus(r, c);
          m[index_of(ax)](4 + r, 4 + c) = minus(r, c);
        }
    }
    return m;
  }();
  return a;
}

// Derivative part of the phi operator divided by -(c/n).
const std::array<ComplexMatrix, 3>& phi_derivative_matrices() {
  static const std::array<ComplexMatrix, 3> a = [] {
    std::array<ComplexMatrix, 3> m{ComplexMatrix(8), ComplexMatrix(8), ComplexMatrix(8)};
    const auto one = ComplexMatrix::identity(2);
    auto put = [&](Axis ax, std::size_t br, std::size_t bc, cplx s) {
      for (std::size_t i = 0; i < 2; ++i) m[index_of(ax)](2 * br + i, 2 * bc + i) = s * one(i, i);
    };
    put(Axis::z, 0, 0, 1.0);
    put(Axis::z, 1, 1, 1.0);
    put(Axis::z, 2, 2, -1.0);
    put(Axis::z, 3, 3, -1.0);
    // d- at (0,2), (3,1); d+ at (1,3), (2,0)
    for (auto [br, bc, sy] : {std::tuple{0, 2, -1.0}, {3, 1, -1.0}, {1, 3, 1.0}, {2, 0, 1.0}}) {
      put(Axis::x, br, bc, 1.0);
      put(Axis::y, br, bc, sy * I);
    }
    return m;
  }();
  return a;
}

// Transverse derivative part of the beam odd operator, without i lambda / 2 pi.
const std::array<ComplexMatrix, 3>& beam_derivative_matrices() {
  static const std::array<ComplexMatrix, 3> a = [] {
    std::array<ComplexMatrix, 3> m{ComplexMatrix(8), ComplexMatrix(8), ComplexMatrix(8)};
    auto put = [&](Axis ax, std::size_t br, std::size_t bc, cplx s) {
      for (std::size_t i = 0; i < 2; ++i) m[index_of(ax)](2 * br + i, 2 * bc + i) = s;
    };
    // -d- at (0,2), -d+ at (1,3), +d+ at (2,0), +d- at (3,1)
    for (auto [br, bc, sign, sy] :
         {std::tuple{0, 2, -1.0, -1.0}, {1, 3, -1.0, 1.0}, {2, 0, 1.0, 1.0}, {3, 1, 1.0, -1.0}}) {
      put(Axis::x, br, bc, sign);
      put(Axis::y, br, bc, sign * sy * I);
    }
    return m;
  }();
  return a;
}

struct KronBasis {
  std::array<ComplexMatrix, 3> n_plus, n_minus;    // sigma_j (x) 1, sigma*_j (x) 1
  std::array<ComplexMatrix, 3> eta_plus, eta_minus;  // (sigma_j sigma_y) (x) sigma_y, conj
  ComplexMatrix yy;                                 // sigma_y (x) sigma_y
};

const KronBasis& kron_basis() {
  static const KronBasis b = [] {
    KronBasis k;
    const auto one = ComplexMatrix::identity(2);
    const auto sy = pauli(Axis::y);
    for (Axis ax : all_axes) {
      const auto s = pauli(ax);
      const auto sc = s.conjugate();
      const std::size_t j = index_of(ax);
      k.n_plus[j] = kron(s, one);
      k.n_minus[j] = kron(sc, one);
      k.eta_plus[j] = kron(s * sy, sy);
      k.eta_minus[j] = kron(sc * sy, sy);
    }
    k.yy = kron(sy, sy);
    return k;
  }();
  return b;
}

// M' from the explicit eps-bar, mu-bar entry tables, multiplied by 2/v.
void build_mprime_eps_mu(const MediumFrame& med, std::size_t p, bool with_dots, Mat8& m) {
  const double v = med.v[p].real();
  const auto ge = vec_at(med.grad_eps_bar, p), gm = vec_at(med.grad_mu_bar, p);
  const cplx sx = ge[0] + gm[0], sy = ge[1] + gm[1], sz = ge[2] + gm[2];
  const cplx dx = ge[0] - gm[0], dy = ge[1] - gm[1], dz = ge[2] - gm[2];
  const cplx s_minus = sx - I * sy, s_plus = sx + I * sy;
  const cplx d_minus = dx - I * dy, d_plus = dx + I * dy;
  const double sdot = with_dots ? (med.dot_eps_bar[p].real() + med.dot_mu_bar[p].real()) / v : 0.0;
  const double ddot = with_dots ? (med.dot_eps_bar[p].real() - med.dot_mu_bar[p].real()) / v : 0.0;

  auto at = [&](std::size_t r, std::size_t c) -> cplx& { return m[r * 8 + c]; };
  for (std::size_t blk = 0; blk < 2; ++blk) {
    const std::size_t o = 4 * blk;
    // Diagonal blocks: the lower one swaps d- and d+.
    const cplx up = blk == 0 ? s_minus : s_plus;
    const cplx lo = blk == 0 ? s_plus : s_minus;
    at(o + 0, o + 0) = sz - sdot;
    at(o + 1, o + 1) = sz - sdot;
    at(o + 2, o + 2) = -sz - sdot;
    at(o + 3, o + 3) = -sz - sdot;
    at(o + 0, o + 2) = up;
    at(o + 1, o + 3) = up;
    at(o + 2, o + 0) = lo;
    at(o + 3, o + 1) = lo;
    // Off-diagonal blocks.
    const std::size_t q = 4 - o;
    const cplx dm = blk == 0 ? d_minus : d_plus;
    const cplx dp = blk == 0 ? d_plus : d_minus;
    at(o + 0, q + 1) = dm;
    at(o + 0, q + 3) = -dz + ddot;
    at(o + 1, q + 0) = -dm;
    at(o + 1, q + 2) = dz - ddot;
    at(o + 2, q + 1) = -dz - ddot;
    at(o + 2, q + 3) = -dp;
    at(o + 3, q + 0) = dz + ddot;
    at(o + 3, q + 2) = dp;
  }
  for (auto& x : m) x *= 0.5 * v;
}

// M' from the compact Kronecker form in n-bar, eta-bar.
void build_mprime_n_eta(const MediumFrame& med, std::size_t p, bool with_dots, Mat8& m) {
  const KronBasis& kb = kron_basis();
  const double n = med.n[p].real();
  const double v = med.constants.c / n;
  const auto gn = vec_at(med.grad_n_bar, p), gh = vec_at(med.grad_eta_bar, p);
  for (std::size_t j = 0; j < 3; ++j) {
    add_kron(m, 0, 0, kb.n_plus[j], v * gn[j]);
    add_kron(m, 4, 4, kb.n_minus[j], v * gn[j]);
    add_kron(m, 0, 4, kb.eta_plus[j], -v * gh[j]);
    add_kron(m, 4, 0, kb.eta_minus[j], -v * gh[j]);
  }
  if (with_dots) {
    const double n_bar_dot = 0.5 * med.dot_n[p].real() / n;
    const double eta_bar_dot = 0.5 * med.dot_eta[p].real() / med.eta[p].real();
    for (std::size_t i = 0; i < 8; ++i) m[i * 8 + i] -= n_bar_dot;
    add_kron(m, 0, 4, kb.yy, eta_bar_dot);
    add_kron(m, 4, 0, kb.yy, eta_bar_dot);
  }
}

// -i sigma_y (sigma . g) or with sigma*.
ComplexMatrix eta_block(const std::array<cplx, 3>& g, bool conjugate) {
  return (-I) * pauli(Axis::y) * sigma_dot(g, conjugate);
}

}  // namespace

FState apply_M0_F(const FState& f, double v) {
  const std::array<ComplexMatrix, 3> a{m0_direction(Axis::x, v), m0_direction(Axis::y, v),
                                       m0_direction(Axis::z, v)};
  FState out(f.f.grid());
  out.t = f.t;
  out.f = first_order(f.f, a);
  return out;
}

FState apply_M_F(const FState& f, const MediumFrame& med, const SourceState* src) {
  require_same(f.f.grid(), med.grid);
  FState out(med.grid);
  out.t = f.t;
  // v after differentiation, as printed.
  out.f = scale_by(med.v, first_order(f.f, f_derivative_matrices()));
  out.f += pointwise(f.f, [&](std::size_t p, Mat8& m) {
    const double v = med.v[p].real();
    for (const auto& e : upper_entries)
      m[e.row * 8 + e.col] += v * e.g * med.grad_mu_bar[index_of(e.axis)][p].real();
    for (const auto& e : lower_entries)
      m[e.row * 8 + e.col] += v * e.g * med.grad_eps_bar[index_of(e.axis)][p].real();
    for (std::size_t i = 0; i < 4; ++i) {
      m[i * 8 + i] -= med.dot_eps_bar[p].real();
      m[(4 + i) * 8 + 4 + i] -= med.dot_mu_bar[p].real();
    }
  });
  if (src) out.f -= sources_to_calJ(*src, med);
  return out;
}

StateField8 sigma_gradient(const StateField8& psi) { return first_order(psi, psi_derivative_matrices()); }

PsiState apply_M_psi(const PsiState& psi, const MediumFrame& med, MForm form, const SourceState* src) {
  require_same(psi.psi.grid(), med.grid);
  PsiState out(med.grid);
  out.t = psi.t;
  const StateField8 d = sigma_gradient(psi.psi);
  if (form == MForm::eps_mu) {
    out.psi = scale_by(med.v, d, -1.0);
    out.psi += pointwise(psi.psi, [&](std::size_t p, Mat8& m) { build_mprime_eps_mu(med, p, true, m); });
  } else {
    out.psi = scale_by(c_over_n(med), d, -1.0);
    out.psi += pointwise(psi.psi, [&](std::size_t p, Mat8& m) { build_mprime_n_eta(med, p, true, m); });
  }
  if (src) out.psi -= sources_to_frak(*src, med);
  return out;
}

PsiState apply_H(const PsiState& psi, const MediumFrame& med, HPart part) {
  require_same(psi.psi.grid(), med.grid);
  require_static(med, "apply_H");
  PsiState out(med.grid);
  out.t = psi.t;
  if (part != HPart::Hprime) out.psi = scale_by(c_over_n(med), sigma_gradient(psi.psi), -1.0);
  if (part != HPart::H0)
    out.psi += pointwise(psi.psi, [&](std::size_t p, Mat8& m) { build_mprime_n_eta(med, p, false, m); });
  return out;
}

PhiState apply_M_phi(const PhiState& phi, const MediumFrame& med) {
  require_same(phi.phi.grid(), med.grid);
  require_static(med, "apply_M_phi");
  PhiState out(med.grid);
  out.t = phi.t;
  const ScalarField speed = c_over_n(med);
  out.phi = scale_by(speed, first_order(phi.phi, phi_derivative_matrices()), -1.0);
  out.phi += pointwise(phi.phi, [&](std::size_t p, Mat8& m) {
    const auto gn = vec_at(med.grad_n_bar, p), gh = vec_at(med.grad_eta_bar, p);
    const auto x = eta_block(gh, true);   // -i sigma_y (sigma* . grad eta-bar)
    const auto y = eta_block(gh, false);  // -i sigma_y (sigma . grad eta-bar)
    put_block(m, 0, 0, sigma_dot(gn, false));
    put_block(m, 1, 1, sigma_dot(gn, true));
    put_block(m, 2, 2, sigma_dot(gn, false));
    put_block(m, 3, 3, sigma_dot(gn, true));
    put_block(m, 0, 3, x);
    put_block(m, 1, 2, y);
    put_block(m, 2, 1, x, -1.0);
    put_block(m, 3, 0, y, -1.0);
    for (auto& e : m) e *= speed[p];
  });
  return out;
}

PsiState psi_to_sk(const PsiState& psi) {
  PsiState out(psi.psi.grid());
  out.t = psi.t;
  out.psi = apply_pointwise(2.0 * transform_SK(), psi.psi);
  return out;
}

PsiState sk_to_psi(const PsiState& psi_sk) {
  PsiState out(psi_sk.psi.grid());
  out.t = psi_sk.t;
  out.psi = apply_pointwise(0.5 * transform_SK().adjoint(), psi_sk.psi);
  return out;
}

PsiState apply_M_sk(const PsiState& psi_sk, const MediumFrame& med, MForm form, const SourceState* src) {
  return psi_to_sk(apply_M_psi(sk_to_psi(psi_sk), med, form, src));
}

namespace {

VectorField3 cross(const VectorField3& a, const VectorField3& b) {
  VectorField3 r(a.grid());
  r[0] = a[1] * b[2] - a[2] * b[1];
  r[1] = a[2] * b[0] - a[0] * b[2];
  r[2] = a[0] * b[1] - a[1] * b[0];
  return r;
}

ScalarField dot(const VectorField3& a, const VectorField3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

VectorField3 twice(const VectorField3& g) { return 2.0 * g; }

VectorField3 v2_times(const MediumFrame& med, VectorField3 x) {
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t p = 0; p < med.grid.size(); ++p) x[a][p] *= std::norm(med.v[p]);
  return x;
}

VectorField3 vector_laplacian(const VectorField3& e) {
  VectorField3 r(e.grid());
  for (std::size_t a = 0; a < 3; ++a) r[a] = laplacian(e[a]);
  return r;
}

}  // namespace

VectorField3 helmholtz_gradient(const VectorField3& E, const MediumFrame& med) {
  require_same(E.grid(), med.grid);
  const VectorField3 gl_eps = twice(med.grad_eps_bar), gl_mu = twice(med.grad_mu_bar);
  VectorField3 r = vector_laplacian(E);
  r += cross(gl_mu, curl(E));
  r += gradient(dot(gl_eps, E));
  return v2_times(med, std::move(r));
}

VectorField3 helmholtz_expanded(const VectorField3& E, const MediumFrame& med) {
  require_same(E.grid(), med.grid);
  const VectorField3 gl_eps = twice(med.grad_eps_bar);
  VectorField3 gl_sum = twice(med.grad_eps_bar);
  gl_sum += twice(med.grad_mu_bar);
  VectorField3 r = vector_laplacian(E);
  for (std::size_t a = 0; a < 3; ++a) {
    // ((grad ln eps) . grad) E_a + (E . grad)(grad ln eps)_a
    r[a] += dot(gl_eps, gradient(E[a]));
    r[a] += dot(E, gradient(gl_eps[a]));
  }
  r += cross(gl_sum, curl(E));
  return v2_times(med, std::move(r));
}

VectorField3 helmholtz_gradient_H(const VectorField3& H, const MediumFrame& med) {
  require_same(H.grid(), med.grid);
  const VectorField3 gl_eps = twice(med.grad_eps_bar), gl_mu = twice(med.grad_mu_bar);
  VectorField3 r = vector_laplacian(H);
  r += cross(gl_eps, curl(H));
  r += gradient(dot(gl_mu, H));
  return v2_times(med, std::move(r));
}

MBlocks::MBlocks(const MediumFrame& med) : grid_(med.grid), inv_n_(med.grid), grad_n_(med.grid) {
  require_static(med, "m_blocks");
  for (std::size_t p = 0; p < grid_.size(); ++p) {
    const double n = med.n[p].real();
    inv_n_[p] = 1.0 / n;
    for (std::size_t a = 0; a < 3; ++a) grad_n_[a][p] = 2.0 * n * med.grad_n_bar[a][p].real();
  }
}

// lap u / n^2 - (a . grad u) / n^3 + cross_sign * i (a x grad)_z u / n^3
ScalarField MBlocks::lap_term(const ScalarField& u, double cross_sign) const {
  const ScalarField lap = laplacian(u);
  const VectorField3 gu = gradient(u);
  ScalarField r(grid_);
  for (std::size_t p = 0; p < grid_.size(); ++p) {
    const cplx in = inv_n_[p];
    const cplx ax = grad_n_[0][p], ay = grad_n_[1][p], az = grad_n_[2][p];
    const cplx adotg = ax * gu[0][p] + ay * gu[1][p] + az * gu[2][p];
    const cplx cz = ax * gu[1][p] - ay * gu[0][p];
    r[p] = lap[p] * in * in - in * in * in * (adotg - cross_sign * I * cz);
  }
  return r;
}

ScalarField MBlocks::m11(const ScalarField& u, bool conjugate) const {
  return lap_term(u, conjugate ? 1.0 : -1.0);
}

ScalarField MBlocks::m22(const ScalarField& u, bool conjugate) const {
  return lap_term(u, conjugate ? -1.0 : 1.0);
}

ScalarField MBlocks::m12(const ScalarField& u, bool conjugate) const {
  // (-a_z d_(-) + a_(-) d_z) / n^3, with +/- swapped for sigma*
  const ScalarField dt = conjugate ? dplus(u) : dminus(u);
  const ScalarField dz = ddx(u, Axis::z);
  const double s = conjugate ? 1.0 : -1.0;
  ScalarField r(grid_);
  for (std::size_t p = 0; p < grid_.size(); ++p) {
    const cplx in3 = inv_n_[p] * inv_n_[p] * inv_n_[p];
    const cplx at = grad_n_[0][p] + s * I * grad_n_[1][p];
    r[p] = in3 * (-grad_n_[2][p] * dt[p] + at * dz[p]);
  }
  return r;
}

ScalarField MBlocks::m21(const ScalarField& u, bool conjugate) const {
  // (a_z d_(+) - a_(+) d_z) / n^3, with +/- swapped for sigma*
  const ScalarField dt = conjugate ? dminus(u) : dplus(u);
  const ScalarField dz = ddx(u, Axis::z);
  const double s = conjugate ? -1.0 : 1.0;
  ScalarField r(grid_);
  for (std::size_t p = 0; p < grid_.size(); ++p) {
    const cplx in3 = inv_n_[p] * inv_n_[p] * inv_n_[p];
    const cplx at = grad_n_[0][p] + s * I * grad_n_[1][p];
    r[p] = in3 * (grad_n_[2][p] * dt[p] - at * dz[p]);
  }
  return r;
}

std::array<ScalarField, 2> MBlocks::apply(const std::array<ScalarField, 2>& u, bool conjugate) const {
  return {m11(u[0], conjugate) + m12(u[1], conjugate), m21(u[0], conjugate) + m22(u[1], conjugate)};
}

std::array<ScalarField, 2> MBlocks::compose(const std::array<ScalarField, 2>& u, bool conjugate) const {
  auto step = [&](const std::array<ScalarField, 2>& w) -> std::array<ScalarField, 2> {
    const ScalarField dz0 = ddx(w[0], Axis::z), dz1 = ddx(w[1], Axis::z);
    const ScalarField up = conjugate ? dplus(w[1]) : dminus(w[1]);
    const ScalarField lo = conjugate ? dminus(w[0]) : dplus(w[0]);
    return {inv_n_ * (dz0 + up), inv_n_ * (lo - dz1)};
  };
  return step(step(u));
}

MBlocks m_blocks(const MediumFrame& med) { return MBlocks(med); }

BeamContext::BeamContext(double lambda_, double n0_) : lambda(lambda_), n0(n0_) {
  if (!(lambda > 0.0)) throw PreconditionError("beam: wavelength must be positive");
  if (!(n0 > 0.0)) throw PreconditionError("beam: average refractive index must be positive");
}

BeamHamiltonian::BeamHamiltonian(const BeamContext& ctx, const MediumFrame& med)
    : ctx_(ctx), med_(med), beta_(beta()) {
  require_static(med, "beam_hamiltonian");
}

StateField8 BeamHamiltonian::apply_B(const StateField8& phi) const { return apply_pointwise(beta_, phi); }

StateField8 BeamHamiltonian::refractive_part(const StateField8& phi) const {
  require_same(phi.grid(), med_.grid);
  return pointwise(phi, [&](std::size_t p, Mat8& m) {
    const double dn = med_.n[p].real() - ctx_.n0;
    for (std::size_t i = 0; i < 8; ++i) m[i * 8 + i] = -dn * beta_(i, i);
  });
}

StateField8 BeamHamiltonian::apply_E(const StateField8& phi) const {
  require_same(phi.grid(), med_.grid);
  const cplx f = I * ctx_.lambda / (2.0 * pi);
  StateField8 r = refractive_part(phi);
  r += pointwise(phi, [&](std::size_t p, Mat8& m) {
    const auto gn = vec_at(med_.grad_n_bar, p);
    put_block(m, 0, 0, sigma_dot(gn, false), f);
    put_block(m, 1, 1, sigma_dot(gn, true), f);
    put_block(m, 2, 2, sigma_dot(gn, false), -f);
    put_block(m, 3, 3, sigma_dot(gn, true), -f);
  });
  return r;
}

StateField8 BeamHamiltonian::apply_O(const StateField8& phi) const {
  require_same(phi.grid(), med_.grid);
  const cplx f = I * ctx_.lambda / (2.0 * pi);
  StateField8 r = first_order(phi, beam_derivative_matrices());
  r *= f;
  r += pointwise(phi, [&](std::size_t p, Mat8& m) {
    const auto gh = vec_at(med_.grad_eta_bar, p);
    const auto x = eta_block(gh, true);
    const auto y = eta_block(gh, false);
    put_block(m, 0, 3, x, f);
    put_block(m, 1, 2, y, f);
    put_block(m, 2, 1, x, f);
    put_block(m, 3, 0, y, f);
  });
  return r;
}

StateField8 BeamHamiltonian::apply_H(const StateField8& phi) const {
  StateField8 r = apply_B(phi);
  r *= -ctx_.n0;
  r += apply_E(phi);
  r += apply_O(phi);
  return r;
}

double BeamHamiltonian::monochromatic_residual(const StateField8& phi) const {
  const double omega = ctx_.omega(med_.constants);
  const StateField8 h = apply_H(phi);
  // (i lambda / 2 pi) dz phi
  StateField8 dz(phi.grid());
  for (std::size_t c = 0; c < 8; ++c) dz[c] = ddx(phi[c], Axis::z) * (I * ctx_.lambda / (2.0 * pi));
  PhiState state(phi.grid());
  state.phi = phi;
  StateField8 mm = apply_M_phi(state, med_).phi;
  mm.axpy(I * omega, phi);
  StateField8 rhs = apply_B(mm);
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t p = 0; p < phi.grid().size(); ++p) rhs[c][p] *= I * med_.n[p].real() / omega;
  StateField8 res = h - dz - rhs;
  const double scale = l2_norm(h);
  return scale > 0.0 ? l2_norm(res) / scale : l2_norm(res);
}

BeamHamiltonian beam_hamiltonian(const BeamContext& ctx, const MediumFrame& med) {
  return BeamHamiltonian(ctx, med);
}

StateField8 OperatorSpec::apply(const StateField8& state, const MediumFrame& med,
                                const SourceState* src) const {
  switch (representation) {
    case Rep::F: {
      FState f(state.grid());
      f.f = state;
      return apply_M_F(f, med, src).f;
    }
    case Rep::psi: {
      PsiState s(state.grid());
      s.psi = state;
      if (drop_perturbation) return apply_H(s, med, HPart::H0).psi;
      if (!include_time_derivative_terms) return apply_H(s, med, HPart::full).psi;
      return apply_M_psi(s, med, form, src).psi;
    }
    case Rep::phi: {
      PhiState s(state.grid());
      s.phi = state;
      return apply_M_phi(s, med).phi;
    }
  }
  throw PreconditionError("OperatorSpec: bad representation");
}

}  // namespace rsw
