#pragma once

#include <array>
#include <optional>

#include "rsw/fields.hpp"

namespace rsw {

enum class MForm { eps_mu, n_eta };
enum class HPart { H0, Hprime, full };

// Constant-medium curl operator on the F representation.
FState apply_M0_F(const FState& f, double v);

// Inhomogeneous operator on the F representation, minus the source
// column when src is given.
FState apply_M_F(const FState& f, const MediumFrame& med, const SourceState* src = nullptr);

// M = M0 + M' on psi, minus the psi source column when src is given.
PsiState apply_M_psi(const PsiState& psi, const MediumFrame& med, MForm form = MForm::n_eta,
                     const SourceState* src = nullptr);

// The operator conjugated into the phi representation, built from its own
// block form. Static, source-free media only.
PhiState apply_M_phi(const PhiState& phi, const MediumFrame& med);

// Core / perturbation split of M for static, source-free media.
PsiState apply_H(const PsiState& psi, const MediumFrame& med, HPart part);

// (Sigma . grad (+) Sigma* . grad) psi, no speed factor.
StateField8 sigma_gradient(const StateField8& psi);

// The earlier representation reached by the scaled permutation 2 S_K.
PsiState psi_to_sk(const PsiState& psi);
PsiState sk_to_psi(const PsiState& psi_sk);
PsiState apply_M_sk(const PsiState& psi_sk, const MediumFrame& med, MForm form = MForm::n_eta,
                      const SourceState* src = nullptr);

// Right sides of the second-order wave equations for static media.
// Returns d^2 E / dt^2 = v^2 [lap E + grad ln mu x curl E + grad(grad ln eps . E)].
VectorField3 helmholtz_gradient(const VectorField3& E, const MediumFrame& med);
// Same quantity with the gradient term expanded.
VectorField3 helmholtz_expanded(const VectorField3& E, const MediumFrame& med);
// Magnetic counterpart for H = B / mu.
VectorField3 helmholtz_gradient_H(const VectorField3& H, const MediumFrame& med);

// 2x2 operator blocks of (1/n)(sigma.grad)(1/n)(sigma.grad), or the sigma*
// version when conjugate is set. Static n only.
class MBlocks {
 public:
  explicit MBlocks(const MediumFrame& med);

  ScalarField m11(const ScalarField& u, bool conjugate = false) const;
  ScalarField m12(const ScalarField& u, bool conjugate = false) const;
  ScalarField m21(const ScalarField& u, bool conjugate = false) const;
  ScalarField m22(const ScalarField& u, bool conjugate = false) const;

  std::array<ScalarField, 2> apply(const std::array<ScalarField, 2>& u, bool conjugate = false) const;
  // Direct numerical composition of the two first-order factors.
  std::array<ScalarField, 2> compose(const std::array<ScalarField, 2>& u, bool conjugate = false) const;

 private:
  ScalarField lap_term(const ScalarField& u, double cross_sign) const;

  Grid3 grid_;
  ScalarField inv_n_;
  VectorField3 grad_n_;
};

MBlocks m_blocks(const MediumFrame& med);

struct BeamContext {
  BeamContext(double lambda, double n0);
  double lambda;
  double n0;
  double omega(const UnitConstants& u) const { return 2.0 * pi * u.c / lambda; }
};

// z-evolution generator -n0 B + E + O acting on phi-bar.
class BeamHamiltonian {
 public:
  BeamHamiltonian(const BeamContext& ctx, const MediumFrame& med);

  const ComplexMatrix& B() const { return beta_; }
  const BeamContext& context() const { return ctx_; }

  StateField8 apply_B(const StateField8& phi) const;
  StateField8 apply_E(const StateField8& phi) const;
  StateField8 apply_O(const StateField8& phi) const;
  StateField8 apply_H(const StateField8& phi) const;
  // -(n - n0) B phi
  StateField8 refractive_part(const StateField8& phi) const;

  // H phi - (i lambda / 2 pi) dz phi - i (n / omega) B (Mphi phi + i omega phi),
  // relative to ||H phi||; vanishes identically.
  double monochromatic_residual(const StateField8& phi) const;

 private:
  BeamContext ctx_;
  MediumFrame med_;
  ComplexMatrix beta_;
};

BeamHamiltonian beam_hamiltonian(const BeamContext& ctx, const MediumFrame& med);

// Bundles a representation with its medium for uniform application.
struct OperatorSpec {
  enum class Rep { F, psi, phi };
  Rep representation = Rep::psi;
  MForm form = MForm::n_eta;
  bool include_time_derivative_terms = true;
  bool drop_perturbation = false;

  StateField8 apply(const StateField8& state, const MediumFrame& med,
                    const SourceState* src = nullptr) const;
};

}  // namespace rsw
