#include "rsw/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace rsw {

Grid3::Grid3(std::array<std::size_t, 3> n, std::array<double, 3> length) : n_(n), length_(length) {
  for (std::size_t a = 0; a < 3; ++a) {
    if (n_[a] < 1) throw PreconditionError("Grid3: sample counts must be >= 1");
    if (!(length_[a] > 0.0) || !std::isfinite(length_[a]))
      throw PreconditionError("Grid3: box lengths must be positive and finite");
  }
}

double Grid3::cell_volume() const {
  return spacing(Axis::x) * spacing(Axis::y) * spacing(Axis::z);
}

double Grid3::min_spacing() const {
  double h = std::numeric_limits<double>::infinity();
  for (Axis a : all_axes)
    if (!degenerate(a)) h = std::min(h, spacing(a));
  return h;
}

std::array<std::size_t, 3> Grid3::unflatten(std::size_t flat) const {
  const std::size_t i = flat % n_[0];
  const std::size_t rest = flat / n_[0];
  return {i, rest % n_[1], rest / n_[1]};
}

std::array<double, 3> Grid3::position(std::size_t flat) const {
  const auto ijk = unflatten(flat);
  return {static_cast<double>(ijk[0]) * spacing(Axis::x),
          static_cast<double>(ijk[1]) * spacing(Axis::y),
          static_cast<double>(ijk[2]) * spacing(Axis::z)};
}

long Grid3::mode(Axis a, std::size_t i) const {
  const std::size_t n = n_[index_of(a)];
  return 2 * i < n ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

bool Grid3::is_nyquist(Axis a, std::size_t i) const {
  const std::size_t n = n_[index_of(a)];
  return n % 2 == 0 && 2 * i == n;
}

double Grid3::wavenumber(Axis a, std::size_t i) const {
  return 2.0 * pi * static_cast<double>(mode(a, i)) / length(a);
}

double Grid3::deriv_wavenumber(Axis a, std::size_t i) const {
  return is_nyquist(a, i) ? 0.0 : wavenumber(a, i);
}

std::array<double, 3> Grid3::deriv_wavevector(std::size_t flat) const {
  const auto ijk = unflatten(flat);
  return {deriv_wavenumber(Axis::x, ijk[0]), deriv_wavenumber(Axis::y, ijk[1]),
          deriv_wavenumber(Axis::z, ijk[2])};
}

std::array<double, 3> Grid3::wavevector(std::size_t flat) const {
  const auto ijk = unflatten(flat);
  return {wavenumber(Axis::x, ijk[0]), wavenumber(Axis::y, ijk[1]), wavenumber(Axis::z, ijk[2])};
}

ScalarField::ScalarField(const Grid3& g, std::vector<cplx> values) : grid_(g), v_(std::move(values)) {
  if (v_.size() != g.size()) throw PreconditionError("ScalarField: value count does not match grid");
}

bool ScalarField::all_finite() const {
  return std::all_of(v_.begin(), v_.end(),
                     [](cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  if (!(o.grid_ == grid_)) throw GridMismatchError();
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] += o.v_[p];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  if (!(o.grid_ == grid_)) throw GridMismatchError();
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] -= o.v_[p];
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  if (!(o.grid_ == grid_)) throw GridMismatchError();
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] *= o.v_[p];
  return *this;
}

ScalarField& ScalarField::operator*=(cplx s) {
  for (auto& x : v_) x *= s;
  return *this;
}

double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (cplx x : f.values()) s += std::norm(x);
  return std::sqrt(s);
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (cplx x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void set_threads(int n) {
    std::lock_guard lock(mu_);
    threads_ = std::max(1, n);
  }

  Plans get(const std::array<std::size_t, 3>& n) {
    std::lock_guard lock(mu_);
    const auto key = std::make_tuple(n[0], n[1], n[2], threads_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_plan_with_nthreads(threads_);
    const std::size_t total = n[0] * n[1] * n[2];
    auto* a = fftw_alloc_complex(total);
    auto* b = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int nz = static_cast<int>(n[2]), ny = static_cast<int>(n[1]), nx = static_cast<int>(n[0]);
    Plans p;
    p.forward = fftw_plan_dft_3d(nz, ny, nx, a, b, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_3d(nz, ny, nx, a, b, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
    plans_.emplace(key, p);
    return p;
  }

 private:
  PlanCache() {
    fftw_init_threads();
    if (const char* env = std::getenv("RSW_NUM_THREADS")) threads_ = std::max(1, std::atoi(env));
  }
  ~PlanCache() {
    for (auto& [k, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
    fftw_cleanup_threads();
  }

  std::mutex mu_;
  int threads_ = 1;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, int>, Plans> plans_;
};

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

// Multiply a spectrum by i k_axis (derivative wavenumbers).
void times_ik(const Grid3& g, std::vector<cplx>& s, Axis axis) {
  for (std::size_t p = 0; p < g.size(); ++p) s[p] *= I * g.deriv_wavevector(p)[index_of(axis)];
}

}  // namespace

void set_fft_threads(int n) { PlanCache::instance().set_threads(n); }

std::vector<cplx> fft_forward(const ScalarField& f) {
  std::vector<cplx> out(f.size());
  const Plans p = PlanCache::instance().get(f.grid().shape());
  fftw_execute_dft(p.forward, as_fftw(f.data()), as_fftw(out.data()));
  return out;
}

ScalarField fft_inverse(const Grid3& g, std::vector<cplx> spectrum) {
  if (spectrum.size() != g.size()) throw PreconditionError("fft_inverse: spectrum size mismatch");
  std::vector<cplx> out(g.size());
  const Plans p = PlanCache::instance().get(g.shape());
  fftw_execute_dft(p.backward, as_fftw(spectrum.data()), as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& x : out) x *= scale;
  return ScalarField(g, std::move(out));
}

ScalarField ddx(const ScalarField& f, Axis axis) {
  auto s = fft_forward(f);
  times_ik(f.grid(), s, axis);
  return fft_inverse(f.grid(), std::move(s));
}

VectorField3 gradient(const ScalarField& f) {
  const Grid3& g = f.grid();
  const auto s = fft_forward(f);
  VectorField3 r(g);
  for (Axis a : all_axes) {
    auto t = s;
    times_ik(g, t, a);
    r[index_of(a)] = fft_inverse(g, std::move(t));
  }
  return r;
}

VectorField3 curl(const VectorField3& v) {
  return apply_per_mode(v, [](const std::array<double, 3>& k, const std::array<cplx, 3>& in,
                              std::array<cplx, 3>& out) {
    out[0] = I * (k[1] * in[2] - k[2] * in[1]);
    out[1] = I * (k[2] * in[0] - k[0] * in[2]);
    out[2] = I * (k[0] * in[1] - k[1] * in[0]);
  });
}

ScalarField div(const VectorField3& v) {
  const Grid3& g = v.grid();
  std::array<std::vector<cplx>, 3> s{fft_forward(v[0]), fft_forward(v[1]), fft_forward(v[2])};
  std::vector<cplx> out(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto k = g.deriv_wavevector(p);
    out[p] = I * (k[0] * s[0][p] + k[1] * s[1][p] + k[2] * s[2][p]);
  }
  return fft_inverse(g, std::move(out));
}

ScalarField laplacian(const ScalarField& f) {
  // Uses the derivative wavenumbers so that laplacian == div(grad) exactly.
  const Grid3& g = f.grid();
  auto s = fft_forward(f);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto k = g.deriv_wavevector(p);
    s[p] *= -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  }
  return fft_inverse(g, std::move(s));
}

namespace {
ScalarField d_pm(const ScalarField& f, double sign) {
  const Grid3& g = f.grid();
  auto s = fft_forward(f);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto k = g.deriv_wavevector(p);
    s[p] *= I * k[0] - sign * k[1];  // i kx + sign * i (i ky)
  }
  return fft_inverse(g, std::move(s));
}
}  // namespace

ScalarField dplus(const ScalarField& f) { return d_pm(f, 1.0); }
ScalarField dminus(const ScalarField& f) { return d_pm(f, -1.0); }

ScalarField random_bandlimited(const Grid3& g, int max_mode, Rng& rng) {
  std::vector<cplx> s(g.size(), 0.0);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto ijk = g.unflatten(p);
    bool keep = true;
    for (Axis a : all_axes) {
      const std::size_t i = ijk[index_of(a)];
      if (g.is_nyquist(a, i) || std::abs(g.mode(a, i)) > max_mode) keep = false;
    }
    if (!keep) continue;
    const double re = uniform(rng, -1.0, 1.0);
    const double im = uniform(rng, -1.0, 1.0);
    s[p] = cplx(re, im);
  }
  auto f = fft_inverse(g, std::move(s));
  // Unit RMS amplitude.
  const double n = l2_norm(f);
  if (n > 0.0) f *= std::sqrt(static_cast<double>(g.size())) / n;
  return f;
}

ScalarField real_part(const ScalarField& f) {
  ScalarField r(f.grid());
  for (std::size_t p = 0; p < f.size(); ++p) r[p] = f[p].real();
  return r;
}

}  // namespace rsw
