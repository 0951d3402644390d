#include <doctest.h>

#include <cmath>

#include "../support/printed.hpp"
#include "rsw/algebra.hpp"

using namespace rsw;

namespace {

const ComplexMatrix one2 = ComplexMatrix::identity(2);
const ComplexMatrix one8 = ComplexMatrix::identity(8);

ComplexMatrix random_matrix(std::size_t n, Rng& rng) {
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return m;
}

}  // namespace

TEST_CASE("pauli matrices") {
  CHECK(pauli(Axis::x) == ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));
  for (Axis a : all_axes) {
    CHECK(pauli(a).adjoint() == pauli(a));
    CHECK(max_norm_diff(pauli(a) * pauli(a), one2) == 0.0);
  }
  CHECK(max_norm_diff(pauli(Axis::x) * pauli(Axis::y) * pauli(Axis::z), I * one2) == 0.0);
  for (Axis a : all_axes)
    for (Axis b : all_axes)
      if (a != b) CHECK(max_abs(pauli(a) * pauli(b) + pauli(b) * pauli(a)) == 0.0);
}

TEST_CASE("kron block layout and mixed product") {
  const auto k = kron(one2, pauli(Axis::x));
  CHECK(k(0, 1) == cplx(1.0));
  CHECK(k(2, 3) == cplx(1.0));
  CHECK(k(0, 3) == cplx(0.0));

  Rng rng(7);
  const auto a = random_matrix(2, rng), b = random_matrix(2, rng);
  const auto c = random_matrix(2, rng), d = random_matrix(2, rng);
  CHECK(max_norm_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-14);
  CHECK(kron(kron(pauli(Axis::y), pauli(Axis::y)), pauli(Axis::x))(0, 7) == cplx(-1.0));
}

TEST_CASE("direction matrices match the printed tables") {
  for (double v : {1.0, 0.5, 3.0}) {
    CHECK(max_norm_diff(m0_direction(Axis::x, v), printed::m0x(v)) == 0.0);
    CHECK(max_norm_diff(m0_direction(Axis::y, v), printed::m0y(v)) == 0.0);
    CHECK(max_norm_diff(m0_direction(Axis::z, v), printed::m0z(v)) == 0.0);
  }
  CHECK(m0_direction(Axis::x, 1.0)(3, 4) == cplx(1.0));
  for (Axis a : all_axes) CHECK(is_real(m0_direction(a, 2.0)));
  CHECK_THROWS_AS(m0_direction(Axis::x, 0.0), PreconditionError);
  CHECK_THROWS_AS(m0_direction(Axis::y, -1.0), PreconditionError);
}

TEST_CASE("direction matrix algebra") {
  const double v = 1.7;
  for (Axis a : all_axes) {
    CHECK(max_norm_diff(m0_direction(a, v) * m0_direction(a, v), v * v * one8) <= 1e-14);
    for (Axis b : all_axes)
      if (a != b)
        CHECK(max_abs(m0_direction(a, v) * m0_direction(b, v) + m0_direction(b, v) * m0_direction(a, v)) <=
              1e-14);
  }
  const auto prod = m0_direction(Axis::x, 1) * m0_direction(Axis::y, 1) * m0_direction(Axis::z, 1);
  CHECK(max_norm_diff(prod, I * kron(pauli(Axis::y), ComplexMatrix::identity(4))) <= 1e-14);
  const auto prod_v = m0_direction(Axis::x, v) * m0_direction(Axis::y, v) * m0_direction(Axis::z, v);
  CHECK(max_norm_diff(prod_v, I * v * v * v * kron(pauli(Axis::y), ComplexMatrix::identity(4))) <= 1e-13);
}

TEST_CASE("unitary transforms") {
  const auto tau = transform_tau();
  CHECK(max_norm_diff(tau * pauli(Axis::y) * tau.adjoint(), -1.0 * pauli(Axis::z)) <= 1e-15);
  CHECK(max_norm_diff(transform_T8(), printed::t8()) <= 1e-16);
  CHECK(max_norm_diff(transform_T(), printed::t_small()) == 0.0);
  CHECK(max_norm_diff(transform_TT(), printed::tt()) <= 1e-15);
  CHECK(transform_TT() == transform_T() * transform_T8());
  for (const auto& u : {tau, transform_T8(), transform_T(), transform_TT(), transform_SK(), transform_Sphi(),
                        transform_SphiK(), beta()})
    CHECK(unitarity_defect(u) <= 1e-14);
  // Row 0 of TT
  const cplx row0[8] = {-0.5, 0.5 * I, 0, 0, -0.5 * I, -0.5, 0, 0};
  for (std::size_t c = 0; c < 8; ++c) CHECK(std::abs(transform_TT()(0, c) - row0[c]) <= 1e-15);
}

TEST_CASE("permutations and beta") {
  CHECK(transform_SK() == printed::sk());
  CHECK(transform_Sphi() == printed::sphi());
  CHECK(is_permutation(transform_SK()));
  CHECK(is_permutation(transform_Sphi()));
  CHECK_FALSE(is_permutation(transform_TT()));

  std::array<cplx, 8> e{}, out{};
  // SK swaps 1<->2 and 5<->6
  for (std::size_t i = 0; i < 8; ++i) {
    e.fill(0.0);
    e[i] = 1.0;
    transform_SK().apply(e.data(), out.data());
    const std::size_t expect = i == 1 ? 2 : i == 2 ? 1 : i == 5 ? 6 : i == 6 ? 5 : i;
    CHECK(out[expect] == cplx(1.0));
  }
  // Printed product: column 4 lands in row 2, so S_phi e4 = e2 and S_phi^dagger e2 = e4.
  e.fill(0.0);
  e[4] = 1.0;
  transform_Sphi().apply(e.data(), out.data());
  CHECK(out[2] == cplx(1.0));
  e.fill(0.0);
  e[2] = 1.0;
  transform_Sphi().adjoint().apply(e.data(), out.data());
  CHECK(out[4] == cplx(1.0));

  CHECK(beta() * beta() == one8);
  CHECK(beta() == kron(pauli(Axis::z), ComplexMatrix::identity(4)));
}

TEST_CASE("sigma_dot") {
  const std::array<cplx, 3> a{0.3, -1.2, 0.7};
  const auto expect = a[0] * pauli(Axis::x) + a[1] * pauli(Axis::y) + a[2] * pauli(Axis::z);
  CHECK(max_norm_diff(sigma_dot(a), expect) <= 1e-16);
  const auto expect_c = a[0] * pauli(Axis::x).conjugate() + a[1] * pauli(Axis::y).conjugate() +
                        a[2] * pauli(Axis::z).conjugate();
  CHECK(max_norm_diff(sigma_dot(a, true), expect_c) <= 1e-16);
}
