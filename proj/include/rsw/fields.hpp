#pragma once

#include <array>

#include "rsw/algebra.hpp"
#include "rsw/grid.hpp"
#include "rsw/medium.hpp"

namespace rsw {

enum class Representation { em = 0, F = 1, psi = 2, phi = 3 };

struct EMState {
  explicit EMState(const Grid3& g) : E(g), B(g) {}
  VectorField3 E, B;
  double t = 0.0;
};

// (sqrt(eps) E, 0, B / sqrt(mu), 0) / sqrt(2), slots 3 and 7 null.
struct FState {
  explicit FState(const Grid3& g) : f(g) {}
  StateField8 f;
  double t = 0.0;
  // L2 norm of the two null slots.
  double null_norm() const;
};

struct RSWPair {
  explicit RSWPair(const Grid3& g) : plus(g), minus(g) {}
  VectorField3 plus, minus;
};

struct PsiState {
  explicit PsiState(const Grid3& g) : psi(g) {}
  StateField8 psi;
  double t = 0.0;
  // max |psi1 - psi2|, |psi5 - psi6|
  double duplicate_defect() const;
};

struct PhiState {
  explicit PhiState(const Grid3& g) : phi(g) {}
  StateField8 phi;
  double t = 0.0;
};

struct SourceState {
  explicit SourceState(const Grid3& g) : J(g), rho(g) {}
  VectorField3 J;
  ScalarField rho;
};

// out(p) = m * in(p) at every sample.
StateField8 apply_pointwise(const ComplexMatrix& m, const StateField8& in);

FState em_to_F(const EMState& em, const MediumFrame& med);
EMState F_to_em(const FState& f, const MediumFrame& med);

RSWPair em_to_rsw(const EMState& em, const MediumFrame& med);
EMState rsw_to_em(const RSWPair& rsw, const MediumFrame& med);

PsiState F_to_psi(const FState& f);
FState psi_to_F(const PsiState& psi);
PhiState psi_to_phi(const PsiState& psi);
PsiState phi_to_psi(const PhiState& phi);

// Component formulas for the psi blocks in terms of F+ and F-.
PsiState rsw_to_psi(const RSWPair& rsw);
RSWPair psi_to_rsw(const PsiState& psi);

PsiState em_to_psi(const EMState& em, const MediumFrame& med);
EMState psi_to_em(const PsiState& psi, const MediumFrame& med);

// Source column of the F representation: (J, 0, 0, 0, 0, -v rho) / sqrt(2 eps).
StateField8 sources_to_calJ(const SourceState& src, const MediumFrame& med);
// Source column of the psi representation, from its component formula.
StateField8 sources_to_frak(const SourceState& src, const MediumFrame& med);

ScalarField energy_density(const FState& f);
double energy(const FState& f);
// The same functional evaluated from (E, B) directly.
double em_energy(const EMState& em, const MediumFrame& med);

struct PlaneWave {
  EMState state;
  std::array<double, 3> k;
  bool projected = false;  // E0 had a longitudinal part that was removed
};

// E = E0 exp(i k.r), B = (khat x E0 / v) exp(i k.r) in a constant medium.
PlaneWave make_plane_wave(const std::array<double, 3>& k, const std::array<cplx, 3>& E0,
                          const MediumFrame& med);

// Components of a wavevector as integer mode numbers; throws if k is off
// the grid lattice or at/above Nyquist.
std::array<long, 3> lattice_modes(const Grid3& g, const std::array<double, 3>& k);

}  // namespace rsw
