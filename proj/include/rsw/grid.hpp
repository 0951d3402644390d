#pragma once

#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "rsw/algebra.hpp"
#include "rsw/common.hpp"

namespace rsw {

// Periodic box [0,Lx) x [0,Ly) x [0,Lz), uniformly sampled, x fastest.
class Grid3 {
 public:
  Grid3(std::array<std::size_t, 3> n, std::array<double, 3> length);

  std::size_t n(Axis a) const { return n_[index_of(a)]; }
  double length(Axis a) const { return length_[index_of(a)]; }
  double spacing(Axis a) const { return length_[index_of(a)] / static_cast<double>(n_[index_of(a)]); }
  bool degenerate(Axis a) const { return n_[index_of(a)] == 1; }
  const std::array<std::size_t, 3>& shape() const { return n_; }
  const std::array<double, 3>& lengths() const { return length_; }

  std::size_t size() const { return n_[0] * n_[1] * n_[2]; }
  double cell_volume() const;
  // Smallest spacing over non-degenerate axes (infinity if there are none).
  double min_spacing() const;

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return i + n_[0] * (j + n_[1] * k);
  }
  std::array<std::size_t, 3> unflatten(std::size_t flat) const;
  std::array<double, 3> position(std::size_t flat) const;

  // Signed FFT mode number for sample i along axis a.
  long mode(Axis a, std::size_t i) const;
  bool is_nyquist(Axis a, std::size_t i) const;
  double wavenumber(Axis a, std::size_t i) const;
  // Wavenumber used by first derivatives: zero on the Nyquist plane.
  double deriv_wavenumber(Axis a, std::size_t i) const;
  std::array<double, 3> deriv_wavevector(std::size_t flat) const;
  std::array<double, 3> wavevector(std::size_t flat) const;

  friend bool operator==(const Grid3&, const Grid3&) = default;

 private:
  std::array<std::size_t, 3> n_;
  std::array<double, 3> length_;
};

class ScalarField {
 public:
  explicit ScalarField(const Grid3& g, cplx fill = 0.0) : grid_(g), v_(g.size(), fill) {}
  ScalarField(const Grid3& g, std::vector<cplx> values);

  template <class Fn>
  static ScalarField from_function(const Grid3& g, Fn&& fn) {
    ScalarField f(g);
    for (std::size_t p = 0; p < g.size(); ++p) {
      const auto r = g.position(p);
      f.v_[p] = fn(r[0], r[1], r[2]);
    }
    return f;
  }

  const Grid3& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  cplx& operator[](std::size_t p) { return v_[p]; }
  cplx operator[](std::size_t p) const { return v_[p]; }
  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }
  std::span<cplx> values() & { return v_; }
  std::span<const cplx> values() const& { return v_; }
  std::span<const cplx> values() && = delete;

  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const ScalarField& o);  // pointwise
  ScalarField& operator*=(cplx s);

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
  friend ScalarField operator*(ScalarField a, cplx s) { return a *= s; }
  friend ScalarField operator*(cplx s, ScalarField a) { return a *= s; }

 private:
  Grid3 grid_;
  std::vector<cplx> v_;
};

namespace detail {
template <std::size_t... Is>
auto filled_fields(const Grid3& g, std::index_sequence<Is...>) {
  return std::array<ScalarField, sizeof...(Is)>{((void)Is, ScalarField(g))...};
}
}  // namespace detail

// Fixed-arity bundle of scalar fields on one grid.
template <std::size_t N>
class FieldSet {
 public:
  static constexpr std::size_t arity = N;

  explicit FieldSet(const Grid3& g) : c_(detail::filled_fields(g, std::make_index_sequence<N>{})) {}

  const Grid3& grid() const { return c_[0].grid(); }
  ScalarField& operator[](std::size_t i) { return c_[i]; }
  const ScalarField& operator[](std::size_t i) const { return c_[i]; }

  bool all_finite() const {
    for (const auto& c : c_)
      if (!c.all_finite()) return false;
    return true;
  }

  FieldSet& operator+=(const FieldSet& o) {
    for (std::size_t i = 0; i < N; ++i) c_[i] += o.c_[i];
    return *this;
  }
  FieldSet& operator-=(const FieldSet& o) {
    for (std::size_t i = 0; i < N; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  FieldSet& operator*=(cplx s) {
    for (auto& c : c_) c *= s;
    return *this;
  }
  // this += a * x
  void axpy(cplx a, const FieldSet& x) {
    for (std::size_t i = 0; i < N; ++i) {
      cplx* d = c_[i].data();
      const cplx* s = x.c_[i].data();
      for (std::size_t p = 0; p < c_[i].size(); ++p) d[p] += a * s[p];
    }
  }

  friend FieldSet operator+(FieldSet a, const FieldSet& b) { return a += b; }
  friend FieldSet operator-(FieldSet a, const FieldSet& b) { return a -= b; }
  friend FieldSet operator*(cplx s, FieldSet a) { return a *= s; }

 private:
  std::array<ScalarField, N> c_;
};

using VectorField3 = FieldSet<3>;
using StateField8 = FieldSet<8>;

// Norms without cell-volume weighting.
double l2_norm(const ScalarField& f);
double max_abs(const ScalarField& f);

template <std::size_t N>
double l2_norm(const FieldSet<N>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double n = l2_norm(f[i]);
    s += n * n;
  }
  return std::sqrt(s);
}

template <std::size_t N>
double max_abs(const FieldSet<N>& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) m = std::max(m, max_abs(f[i]));
  return m;
}

// ||a - b|| / ||b|| (returns ||a - b|| when b vanishes).
template <class F>
double relative_l2(const F& a, const F& b) {
  const double d = l2_norm(a - b);
  const double r = l2_norm(b);
  return r > 0.0 ? d / r : d;
}

// Unnormalized forward DFT; the inverse carries the 1/N.
std::vector<cplx> fft_forward(const ScalarField& f);
ScalarField fft_inverse(const Grid3& g, std::vector<cplx> spectrum);

ScalarField ddx(const ScalarField& f, Axis axis);
VectorField3 gradient(const ScalarField& f);
VectorField3 curl(const VectorField3& v);
ScalarField div(const VectorField3& v);
ScalarField laplacian(const ScalarField& f);
ScalarField dplus(const ScalarField& f);
ScalarField dminus(const ScalarField& f);

// Transform every component, call fn(k, in, out) per mode with the
// derivative wavevector and N-component spectra, transform back.
template <std::size_t N, class Fn>
FieldSet<N> apply_per_mode(const FieldSet<N>& f, Fn&& fn) {
  const Grid3& g = f.grid();
  std::array<std::vector<cplx>, N> spec;
  for (std::size_t c = 0; c < N; ++c) spec[c] = fft_forward(f[c]);
  std::array<cplx, N> in{}, out{};
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (std::size_t c = 0; c < N; ++c) in[c] = spec[c][p];
    fn(g.deriv_wavevector(p), in, out);
    for (std::size_t c = 0; c < N; ++c) spec[c][p] = out[c];
  }
  FieldSet<N> r(g);
  for (std::size_t c = 0; c < N; ++c) r[c] = fft_inverse(g, std::move(spec[c]));
  return r;
}

// Random complex field whose spectrum is confined to |m_j| <= max_mode,
// Nyquist excluded. Coefficients are uniform in the unit square.
ScalarField random_bandlimited(const Grid3& g, int max_mode, Rng& rng);

template <std::size_t N>
FieldSet<N> random_bandlimited_set(const Grid3& g, int max_mode, Rng& rng) {
  FieldSet<N> f(g);
  for (std::size_t c = 0; c < N; ++c) f[c] = random_bandlimited(g, max_mode, rng);
  return f;
}

ScalarField real_part(const ScalarField& f);

// Overrides the FFT thread count (otherwise RSW_NUM_THREADS, default 1).
void set_fft_threads(int n);

}  // namespace rsw
