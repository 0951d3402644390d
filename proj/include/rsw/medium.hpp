#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsw/expr.hpp"
#include "rsw/grid.hpp"

namespace rsw {

enum class UnitMode { natural, si };

struct UnitConstants {
  double c;
  double eps0;
  double mu0;
};

UnitConstants units(UnitMode mode);

// Nonpositive or non-finite material value at a sample.
class MediumError : public PreconditionError {
 public:
  MediumError(const std::string& what, std::array<std::size_t, 3> where)
      : PreconditionError(what), where_(where) {}
  const std::array<std::size_t, 3>& where() const { return where_; }

 private:
  std::array<std::size_t, 3> where_;
};

// Linear isotropic medium description. Analytic media may depend on t;
// constant and sampled media are static.
class MediumSpec {
 public:
  enum class Kind { constant, analytic, sampled };

  static MediumSpec constant(double eps, double mu, UnitMode mode = UnitMode::natural);
  static MediumSpec constant_n_eta(double n, double eta, UnitMode mode = UnitMode::natural);
  static MediumSpec analytic(const Expr& eps, const Expr& mu, UnitMode mode = UnitMode::natural);
  static MediumSpec analytic_n_eta(const Expr& n, const Expr& eta, UnitMode mode = UnitMode::natural);
  // Samples at t = 0, x fastest.
  static MediumSpec sampled(const Grid3& g, std::vector<double> eps, std::vector<double> mu,
                            UnitMode mode = UnitMode::natural);

  Kind kind() const { return kind_; }
  UnitMode unit_mode() const { return mode_; }
  bool time_independent() const;

  // Accessors for the stored representation.
  double constant_eps() const { return eps0_; }
  double constant_mu() const { return mu0_; }
  const std::optional<Grid3>& sample_grid() const { return sample_grid_; }
  const std::vector<double>& eps_samples() const { return eps_s_; }
  const std::vector<double>& mu_samples() const { return mu_s_; }

  // Closed-form eps, mu, n, eta; only for analytic media.
  struct Analytic {
    Expr value;
    std::array<Expr, 3> grad;
    Expr dot;
  };
  const Analytic& analytic_eps() const { return an_[0]; }
  const Analytic& analytic_mu() const { return an_[1]; }
  const Analytic& analytic_n() const { return an_[2]; }
  const Analytic& analytic_eta() const { return an_[3]; }

 private:
  MediumSpec() = default;
  static MediumSpec from_four(const Expr& eps, const Expr& mu, const Expr& n, const Expr& eta,
                              UnitMode mode);

  Kind kind_ = Kind::constant;
  UnitMode mode_ = UnitMode::natural;
  double eps0_ = 1.0, mu0_ = 1.0;
  std::array<Analytic, 4> an_{};
  std::optional<Grid3> sample_grid_;
  std::vector<double> eps_s_, mu_s_;
};

// The medium sampled on a grid at one instant with every derived
// quantity the operators need. Bars denote half logarithms.
struct MediumFrame {
  explicit MediumFrame(const Grid3& g);

  Grid3 grid;
  double t = 0.0;
  UnitConstants constants{1.0, 1.0, 1.0};
  bool is_constant = false;
  bool is_static = false;

  ScalarField eps, mu, v, n, eta;
  ScalarField eps_bar, mu_bar, n_bar, eta_bar;
  VectorField3 grad_eps_bar, grad_mu_bar, grad_n_bar, grad_eta_bar;
  ScalarField dot_eps_bar, dot_mu_bar, dot_n, dot_eta;

  double max_v() const;
  bool has_time_derivatives() const;
};

MediumFrame sample(const MediumSpec& spec, const Grid3& g, double t);

// Largest scaled defect of each documented frame relation.
struct FrameDefects {
  double n_relation = 0.0;    // n = c sqrt(eps mu), v = c / n
  double eta_relation = 0.0;  // eta = sqrt(mu / eps)
  double dot_relations = 0.0;
  double grad_relations = 0.0;
  double max() const;
};

FrameDefects frame_defects(const MediumFrame& f);

}  // namespace rsw
