#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsw/expr.hpp"
#include "rsw/fields.hpp"
#include "rsw/medium.hpp"

namespace rsw {

class CflError : public PreconditionError {
 public:
  CflError(const std::string& msg, double dt, double limit) : PreconditionError(msg), dt_(dt), limit_(limit) {}
  double dt() const { return dt_; }
  double limit() const { return limit_; }

 private:
  double dt_, limit_;
};

struct PropagatorPlan {
  enum class Kind { exact_kspace, rk4 };
  Kind kind = Kind::rk4;
  double dt = 0.0;
  std::size_t steps = 0;
  double cfl = 0.25;

  // Largest stable step for this medium: cfl * dx_min / max v.
  static double dt_limit(const MediumFrame& med, double cfl);
  // Equal steps covering duration, each within the CFL limit.
  static PropagatorPlan rk4_covering(double duration, const MediumFrame& med, double cfl = 0.25);

  double duration() const { return dt * static_cast<double>(steps); }
  // Throws CflError for rk4 plans that exceed the limit.
  void check(const MediumFrame& med) const;
};

// Prescribed J(r, t) and rho(r, t).
struct SourceSpec {
  std::array<Expr, 3> J{Expr::constant(0.0), Expr::constant(0.0), Expr::constant(0.0)};
  Expr rho = Expr::constant(0.0);

  SourceState sample(const Grid3& g, double t) const;
};

struct Diagnostics {
  double t = 0.0;
  double energy = 0.0;
  // L2 norms of the divergence-constraint residuals of F+ and F-.
  double div_plus = 0.0;
  double div_minus = 0.0;
  double null_norm = 0.0;
};

Diagnostics diagnose(const PsiState& psi, const MediumFrame& med, const SourceState* src = nullptr);

struct RunRecord {
  std::vector<Diagnostics> samples;
  std::vector<std::string> snapshots;

  // Throws if t goes backwards.
  void append(const Diagnostics& d);
  double energy_drift() const;  // max |E(t) - E(0)| / E(0)
  double max_divergence() const;
  double initial_divergence() const;
};

// Exact per-mode propagator of the constant-medium operator.
PsiState evolve_exact(const PsiState& psi0, double v, double t);
// Same, taking v from a medium that must be constant.
PsiState evolve_exact(const PsiState& psi0, const MediumFrame& med, double t);

struct RunOptions {
  // Record diagnostics every this many steps; 0 records only the endpoints.
  std::size_t diagnostic_every = 0;
  // Called at every diagnostic sample with the step index and the sample.
  std::function<void(std::size_t, const PsiState&, const Diagnostics&)> observer;
};

struct RunResult {
  PsiState state;
  RunRecord record;
};

// Classical RK4 on dPsi/dt = M Psi - frak J, the medium re-sampled at stage
// times when it depends on t.
RunResult evolve_rk4(const PsiState& psi0, const MediumSpec& medium, const PropagatorPlan& plan,
                     const SourceSpec* src = nullptr, const RunOptions& opts = {});

// Steps D = eps E and B with the curl equations directly.
EMState reference_curl_solver(const EMState& em0, const MediumSpec& medium, const PropagatorPlan& plan,
                              const SourceSpec* src = nullptr);

struct DispersionMode {
  std::array<double, 3> k{};
  std::optional<std::array<cplx, 3>> E0;  // default polarization when unset
};

struct DispersionRow {
  std::array<double, 3> k{};
  double omega_measured = 0.0;
  double omega_theory = 0.0;
  double rel_err = 0.0;
  bool projected = false;  // the seed had a longitudinal part
};

struct DispersionOptions {
  double periods = 2.0;
  std::size_t samples = 64;
};

std::vector<DispersionRow> dispersion_scan(const std::vector<DispersionMode>& modes, const MediumFrame& med,
                                           const DispersionOptions& opts = {});

}  // namespace rsw
