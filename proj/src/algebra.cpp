#include "rsw/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace rsw {

ComplexMatrix::ComplexMatrix(std::size_t n, std::initializer_list<cplx> row_major)
    : n_(n), a_(row_major) {
  if (a_.size() != n * n) throw PreconditionError("ComplexMatrix: wrong number of entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (auto& x : m.a_) x = std::conj(x);
  return m;
}

void ComplexMatrix::apply(const cplx* x, cplx* y) const {
  for (std::size_t r = 0; r < n_; ++r) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < n_; ++c) acc += a_[r * n_ + c] * x[c];
    y[r] = acc;
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.n_ != n_) throw PreconditionError("ComplexMatrix: size mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.n_ != n_) throw PreconditionError("ComplexMatrix: size mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : a_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_ != b.n_) throw PreconditionError("ComplexMatrix: size mismatch");
  const std::size_t n = a.n_;
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      if (ark == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (cplx x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw PreconditionError("max_norm_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_norm_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

bool is_permutation(const ComplexMatrix& p) {
  const std::size_t n = p.rows();
  std::vector<int> col_count(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    int ones = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const cplx x = p(r, c);
      if (x == cplx(1.0)) {
        ++ones;
        ++col_count[c];
      } else if (x != cplx(0.0)) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return std::all_of(col_count.begin(), col_count.end(), [](int k) { return k == 1; });
}

bool is_real(const ComplexMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](cplx x) { return x.imag() == 0.0; });
}

ComplexMatrix pauli(PauliIndex axis) {
  switch (axis) {
    case Axis::x: return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case Axis::y: return ComplexMatrix(2, {0.0, -I, I, 0.0});
    case Axis::z: return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
  }
  throw PreconditionError("pauli: bad axis");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.rows(), nb = b.rows();
  ComplexMatrix m(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) m(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return m;
}

ComplexMatrix m0_direction(PauliIndex axis, double v) {
  if (!(v > 0.0)) throw PreconditionError("m0_direction: speed must be positive");
  const auto sx = pauli(Axis::x), sy = pauli(Axis::y), sz = pauli(Axis::z);
  const auto one = ComplexMatrix::identity(2);
  switch (axis) {
    case Axis::x: return v * kron(kron(sy, sy), sx);
    case Axis::y: return -v * kron(kron(sy, sy), sz);
    case Axis::z: return v * kron(kron(sy, one), sy);
  }
  throw PreconditionError("m0_direction: bad axis");
}

ComplexMatrix transform_tau() {
  return (ComplexMatrix::identity(2) + I * pauli(Axis::x)) * cplx(1.0 / std::sqrt(2.0));
}

ComplexMatrix transform_T8() { return kron(transform_tau(), ComplexMatrix::identity(4)); }

ComplexMatrix transform_T() {
  const cplx o = 1.0, i = I, z = 0.0;
  ComplexMatrix t(8, {
      -o, i,  z, z,  z,  z,  z,  z,
      z,  z,  o, i,  z,  z,  z,  z,
      z,  z,  o, -i, z,  z,  z,  z,
      o,  i,  z, z,  z,  z,  z,  z,
      z,  z,  z, z,  i,  -o, z,  z,
      z,  z,  z, z,  z,  z,  -i, -o,
      z,  z,  z, z,  z,  z,  -i, o,
      z,  z,  z, z,  -i, -o, z,  z,
  });
  return t * cplx(1.0 / std::sqrt(2.0));
}

ComplexMatrix transform_TT() { return transform_T() * transform_T8(); }

namespace {

// Row r has its single 1 in column cols[r].
ComplexMatrix permutation(const std::array<std::size_t, 8>& cols) {
  ComplexMatrix p(8);
  for (std::size_t r = 0; r < 8; ++r) p(r, cols[r]) = 1.0;
  return p;
}

}  // namespace

ComplexMatrix transform_SK() { return permutation({0, 2, 1, 3, 4, 6, 5, 7}); }

ComplexMatrix transform_SphiK() { return permutation({0, 1, 4, 5, 2, 3, 6, 7}); }

ComplexMatrix transform_Sphi() { return transform_SphiK() * transform_SK(); }

ComplexMatrix beta() { return kron(pauli(Axis::z), ComplexMatrix::identity(4)); }

ComplexMatrix sigma_dot(const std::array<cplx, 3>& a, bool conjugate_sigma) {
  // sigma* differs from sigma only in the sign of sigma_y.
  const cplx ay = conjugate_sigma ? -a[1] : a[1];
  return ComplexMatrix(2, {a[2], a[0] - I * ay, a[0] + I * ay, -a[2]});
}

}  // namespace rsw
