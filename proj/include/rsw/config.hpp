#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsw/evolve.hpp"
#include "rsw/medium.hpp"

namespace rsw {

// Collects every field-level problem found while loading.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct MediumConfig {
  enum class Type { constant, constant_n_eta, analytic, analytic_n_eta, file };
  Type type = Type::constant;
  double eps = 1.0, mu = 1.0, n = 1.0, eta = 1.0;
  std::string eps_expr, mu_expr, n_expr, eta_expr;
  std::filesystem::path path;
};

struct InitialConfig {
  enum class Type { zero, plane_wave, gaussian_packet, file };
  Type type = Type::zero;
  std::array<double, 3> k{};
  std::array<cplx, 3> E0{};
  std::array<double, 3> center{};
  double width = 0.0;
  std::filesystem::path path;
};

struct PlanConfig {
  PropagatorPlan::Kind kind = PropagatorPlan::Kind::rk4;
  std::optional<double> dt, duration;
  std::optional<std::size_t> steps;
  double cfl = 0.25;
};

struct OutputConfig {
  std::size_t diagnostic_every = 0;
  std::size_t snapshot_every = 0;
  std::optional<std::size_t> csv_slice_y;
};

// Defaults are the acceptance thresholds; any may be overridden.
struct Tolerances {
  double energy_drift = 1e-6;
  double phase_error = 1e-8;
  double oracle = 1e-10;
  double divergence_growth = 10.0;
  double divergence_floor = 1e-13;
  double dispersion = 1e-10;
  double beam_commutation = 1e-13;
  double beam_residual = 1e-10;
  double refractive_part = 1e-13;
};

struct DispersionConfig {
  std::vector<DispersionMode> modes;
  DispersionOptions options;
};

struct BeamConfig {
  double lambda = 0.0;
  double n0 = 0.0;
  std::size_t trials = 20;
  int max_mode = 3;
};

struct RunConfig {
  std::array<std::size_t, 3> n{};
  std::array<double, 3> L{};
  UnitMode units = UnitMode::natural;
  MediumConfig medium;
  InitialConfig initial;
  PlanConfig plan;
  std::optional<SourceSpec> sources;
  OutputConfig output;
  Tolerances tolerances;
  std::uint64_t seed = 1;
  bool oracle = false;
  std::optional<DispersionConfig> dispersion;
  std::optional<BeamConfig> beam;

  Grid3 grid() const { return Grid3(n, L); }
  MediumSpec build_medium() const;
  // Initial fields at t = 0 in the given medium.
  EMState build_initial(const MediumFrame& med) const;
  // Resolves dt/steps/duration against the CFL limit.
  PropagatorPlan build_plan(const MediumFrame& med) const;
};

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace rsw
