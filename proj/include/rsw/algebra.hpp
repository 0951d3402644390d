#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <vector>

#include "rsw/common.hpp"

namespace rsw {

enum class Axis { x = 0, y = 1, z = 2 };
using PauliIndex = Axis;

inline constexpr std::array<Axis, 3> all_axes{Axis::x, Axis::y, Axis::z};

inline constexpr std::size_t index_of(Axis a) { return static_cast<std::size_t>(a); }

// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}
  ComplexMatrix(std::size_t n, std::initializer_list<cplx> row_major);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return n_; }

  cplx operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }

  std::span<const cplx> data() const { return a_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  // y = A x for a vector of matching length.
  void apply(const cplx* x, cplx* y) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

double max_abs(const ComplexMatrix& a);
double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max |U^dagger U - 1|
double unitarity_defect(const ComplexMatrix& u);
bool is_permutation(const ComplexMatrix& p);
bool is_real(const ComplexMatrix& a);

ComplexMatrix pauli(PauliIndex axis);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Direction matrix of the constant-medium 8x8 curl operator along `axis`.
ComplexMatrix m0_direction(PauliIndex axis, double v);

ComplexMatrix transform_tau();
ComplexMatrix transform_T8();  // tau (x) 1_4
ComplexMatrix transform_T();
ComplexMatrix transform_TT();  // T * T8
ComplexMatrix transform_SK();
ComplexMatrix transform_SphiK();
ComplexMatrix transform_Sphi();  // SphiK * SK
ComplexMatrix beta();

// sigma . a, or sigma* . a when conjugate_sigma is set. `a` may be complex
// (e.g. i k for a Fourier mode).
ComplexMatrix sigma_dot(const std::array<cplx, 3>& a, bool conjugate_sigma = false);

}  // namespace rsw
