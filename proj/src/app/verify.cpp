#include "rsw/verify.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "rsw/evolve.hpp"
#include "rsw/io.hpp"
#include "rsw/operators.hpp"

namespace rsw {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double exact_tol = 1e-14;

class Suite {
 public:
  explicit Suite(std::vector<CheckResult>& out) : out_(out) {}
  void add(const std::string& name, double norm, double tol) {
    out_.push_back({name, norm, tol, std::isfinite(norm) && norm <= tol});
  }

 private:
  std::vector<CheckResult>& out_;
};

const std::array<const char*, 3> pauli_names{"pauli_x", "pauli_y", "pauli_z"};
const std::array<const char*, 3> m0_names{"m0x", "m0y", "m0z"};

ComplexMatrix one(std::size_t n) { return ComplexMatrix::identity(n); }

double anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a * b + b * a); }

void algebra_checks(Suite& s, const MatrixSet& set, Rng& rng) {
  double sq = 0, anti = 0, herm = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& pj = set[pauli_names[j]];
    sq = std::max(sq, max_norm_diff(pj * pj, one(2)));
    herm = std::max(herm, max_norm_diff(pj.adjoint(), pj));
    for (std::size_t k = j + 1; k < 3; ++k) anti = std::max(anti, anticommutator(pj, set[pauli_names[k]]));
  }
  s.add("pauli_square", sq, exact_tol);
  s.add("pauli_anticommutation", anti, exact_tol);
  s.add("pauli_product", max_norm_diff(set["pauli_x"] * set["pauli_y"] * set["pauli_z"], I * one(2)), exact_tol);
  s.add("pauli_hermitian", herm, exact_tol);

  double m_sq = 0, m_anti = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& mj = set[m0_names[j]];
    m_sq = std::max(m_sq, max_norm_diff(mj * mj, one(8)));
    for (std::size_t k = j + 1; k < 3; ++k) m_anti = std::max(m_anti, anticommutator(mj, set[m0_names[k]]));
  }
  s.add("m0_square", m_sq, exact_tol);
  s.add("m0_anticommutation", m_anti, exact_tol);
  s.add("m0_triple_product",
        max_norm_diff(set["m0x"] * set["m0y"] * set["m0z"], I * kron(set["pauli_y"], one(4))), exact_tol);
  const auto& sx = set["pauli_x"];
  const auto& sy = set["pauli_y"];
  const auto& sz = set["pauli_z"];
  const double kr = std::max({max_norm_diff(set["m0x"], kron(kron(sy, sy), sx)),
                              max_norm_diff(set["m0y"], cplx(-1.0) * kron(kron(sy, sy), sz)),
                              max_norm_diff(set["m0z"], kron(kron(sy, one(2)), sy))});
  s.add("m0_kron_structure", kr, exact_tol);

  const auto& tau = set["tau"];
  s.add("tau_unitary", unitarity_defect(tau), exact_tol);
  s.add("tau_similarity", max_norm_diff(tau * sy * tau.adjoint(), cplx(-1.0) * sz), exact_tol);
  s.add("T8_unitary", unitarity_defect(set["T8"]), exact_tol);
  s.add("T8_kron", max_norm_diff(set["T8"], kron(tau, one(4))), exact_tol);
  s.add("T_unitary", unitarity_defect(set["T"]), exact_tol);
  s.add("TT_unitary", unitarity_defect(set["TT"]), exact_tol);
  s.add("TT_product", max_norm_diff(set["TT"], set["T"] * set["T8"]), exact_tol);
  double entry = 0;
  for (cplx z : set["TT"].data()) {
    // each entry is 0, +-1/2 or +-i/2
    const double a = std::abs(z);
    const double off_axis = std::min(std::abs(z.real()), std::abs(z.imag()));
    entry = std::max({entry, std::min(a, std::abs(a - 0.5)), off_axis});
  }
  s.add("TT_entry_set", entry, exact_tol);

  s.add("SK_permutation", is_permutation(set["SK"]) ? 0.0 : 1.0, exact_tol);
  s.add("SphiK_permutation", is_permutation(set["SphiK"]) ? 0.0 : 1.0, exact_tol);
  s.add("Sphi_permutation", is_permutation(set["Sphi"]) ? 0.0 : 1.0, exact_tol);
  s.add("Sphi_product", max_norm_diff(set["Sphi"], set["SphiK"] * set["SK"]), exact_tol);
  s.add("beta_definition", max_norm_diff(set["beta"], kron(sz, one(4))), exact_tol);
  s.add("beta_square", max_norm_diff(set["beta"] * set["beta"], one(8)), exact_tol);

  // TT (k . M0) TT^dagger = -(sigma.k on the first half, sigma*.k on the second)
  double red = 0;
  for (int trial = 0; trial < 8; ++trial) {
    const std::array<cplx, 3> k{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
    ComplexMatrix mk(8);
    for (std::size_t j = 0; j < 3; ++j) mk += k[j] * set[m0_names[j]];
    const auto reduced = set["TT"] * mk * set["TT"].adjoint();
    ComplexMatrix expect(8);
    for (std::size_t b = 0; b < 4; ++b) {
      const auto blk = sigma_dot(k, b >= 2);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) expect(2 * b + r, 2 * b + c) = -blk(r, c);
    }
    red = std::max(red, max_norm_diff(reduced, expect));
  }
  s.add("reduction_blocks", red, exact_tol);
}

MediumSpec smooth_eps_mu() {
  return MediumSpec::analytic(parse_expr("2 + 0.2*sin(2*pi*x)*cos(2*pi*z)"),
                              parse_expr("1.1 + 0.1*cos(2*pi*y) + 0.05*sin(2*pi*z)"));
}

FState random_F(const Grid3& g, int max_mode, Rng& rng) {
  FState f(g);
  for (std::size_t c : {0, 1, 2, 4, 5, 6}) f.f[c] = random_bandlimited(g, max_mode, rng);
  return f;
}

PsiState random_psi(const Grid3& g, int max_mode, Rng& rng) {
  PsiState s(g);
  s.psi = random_bandlimited_set<8>(g, max_mode, rng);
  return s;
}

// sum_j M0j d_j with the direction matrices taken from the set
StateField8 m0_from_set(const StateField8& f, const MatrixSet& set) {
  StateField8 out(f.grid());
  for (std::size_t j = 0; j < 3; ++j) {
    StateField8 d(f.grid());
    for (std::size_t c = 0; c < 8; ++c) d[c] = ddx(f[c], all_axes[j]);
    out += apply_pointwise(set[m0_names[j]], d);
  }
  return out;
}

double rel(const StateField8& a, const StateField8& b) { return relative_l2(a, b); }

void operator_checks(Suite& s, const MatrixSet& set, Rng& rng) {
  {
    const Grid3 g({12, 12, 12}, {1, 1, 1});
    const auto f = random_F(g, 3, rng);
    const auto twice = m0_from_set(m0_from_set(f.f, set), set);
    StateField8 lap(g);
    for (std::size_t c = 0; c < 8; ++c) lap[c] = laplacian(f.f[c]);
    s.add("M0F_twice_laplacian", rel(twice, lap), 1e-10);
    s.add("M0F_matches_library", rel(m0_from_set(f.f, set), apply_M0_F(f, 1.0).f), 1e-13);
    // <g, M f> = -<M g, f>
    const auto h = random_F(g, 3, rng);
    const auto mf = m0_from_set(f.f, set), mh = m0_from_set(h.f, set);
    cplx a = 0, b = 0;
    for (std::size_t c = 0; c < 8; ++c)
      for (std::size_t p = 0; p < g.size(); ++p) {
        a += std::conj(h.f[c][p]) * mf[c][p];
        b += std::conj(mh[c][p]) * f.f[c][p];
      }
    s.add("M0F_antihermitian", std::abs(a + b) / (l2_norm(mf) * l2_norm(h.f)), 1e-12);
  }

  const Grid3 g({12, 12, 12}, {1, 1, 1});
  const auto med = sample(smooth_eps_mu(), g, 0.0);
  {
    const auto cmed = sample(MediumSpec::constant(2.25, 1.0), g, 0.0);
    const auto f = random_F(g, 3, rng);
    s.add("MF_constant_reduces", rel(apply_M_F(f, cmed).f, apply_M0_F(f, cmed.v[0].real()).f), 1e-13);
  }
  {
    // E random, B = curl A, rho = div(eps E): the null slots of M F vanish
    const Grid3 g32({32, 32, 32}, {1, 1, 1});
    const auto m32 = sample(smooth_eps_mu(), g32, 0.0);
    EMState em(g32);
    em.E = random_bandlimited_set<3>(g32, 3, rng);
    em.B = curl(random_bandlimited_set<3>(g32, 3, rng));
    SourceState src(g32);
    VectorField3 d(g32);
    for (std::size_t a = 0; a < 3; ++a) d[a] = m32.eps * em.E[a];
    src.rho = div(d);
    const auto rate = apply_M_F(em_to_F(em, m32), m32, &src);
    s.add("MF_null_preservation", std::hypot(l2_norm(rate.f[3]), l2_norm(rate.f[7])) / l2_norm(rate.f), 1e-10);
  }
  {
    const auto psi = random_psi(g, 3, rng);
    s.add("Mpsi_forms_agree", rel(apply_M_psi(psi, med, MForm::eps_mu).psi, apply_M_psi(psi, med, MForm::n_eta).psi),
          1e-12);
    const auto f = random_F(g, 3, rng);
    SourceState src(g);
    src.J = random_bandlimited_set<3>(g, 2, rng);
    src.rho = random_bandlimited(g, 2, rng);
    PsiState p(g);
    p.psi = apply_pointwise(set["TT"], f.f);
    s.add("Mpsi_similarity", rel(apply_M_psi(p, med, MForm::n_eta, &src).psi,
                                 apply_pointwise(set["TT"], apply_M_F(f, med, &src).f)),
          1e-12);
    PhiState phi(g);
    phi.phi = apply_pointwise(set["Sphi"], psi.psi);
    s.add("Mphi_similarity",
          rel(apply_M_phi(phi, med).phi, apply_pointwise(set["Sphi"], apply_M_psi(psi, med).psi)), 1e-12);
    StateField8 sum = apply_H(psi, med, HPart::H0).psi;
    sum += apply_H(psi, med, HPart::Hprime).psi;
    s.add("H_split_sum", rel(sum, apply_M_psi(psi, med).psi), 1e-13);
  }
  {
    const Grid3 gh({64, 1, 64}, {1, 1, 1});
    const auto mh = sample(MediumSpec::analytic(parse_expr("2 + 0.3*sin(2*pi*x)*cos(2*pi*z)"),
                                                parse_expr("1.2 + 0.2*cos(2*pi*(x + z))")),
                           gh, 0.0);
    EMState only_e(gh);
    only_e.E = random_bandlimited_set<3>(gh, 4, rng);
    const auto twice = apply_M_F(apply_M_F(em_to_F(only_e, mh), mh), mh);
    VectorField3 from_op(gh);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t p = 0; p < gh.size(); ++p) from_op[a][p] = twice.f[a][p] * std::sqrt(2.0 / mh.eps[p]);
    s.add("helmholtz_gradient", relative_l2(helmholtz_gradient(only_e.E, mh), from_op), 1e-8);
    s.add("helmholtz_expanded", relative_l2(helmholtz_expanded(only_e.E, mh), from_op), 1e-8);
  }
  {
    const Grid3 gm({24, 24, 24}, {1, 1, 1});
    const auto mm = sample(MediumSpec::analytic_n_eta(
                               parse_expr("1.4 + 0.1*sin(2*pi*x)*cos(2*pi*y) + 0.05*cos(2*pi*z)"), parse_expr("1")),
                           gm, 0.0);
    const auto blocks = m_blocks(mm);
    const std::array<ScalarField, 2> u{random_bandlimited(gm, 3, rng), random_bandlimited(gm, 3, rng)};
    double worst = 0;
    for (bool conj : {false, true}) {
      const auto a = blocks.apply(u, conj), b = blocks.compose(u, conj);
      worst = std::max({worst, relative_l2(a[0], b[0]), relative_l2(a[1], b[1])});
    }
    s.add("mblocks_composition", worst, 1e-9);
  }
  {
    const Grid3 gb({16, 16, 16}, {1, 1, 1});
    const auto mb = sample(MediumSpec::analytic_n_eta(parse_expr("1.5 + 0.03*cos(2*pi*x)*cos(2*pi*y)"),
                                                      parse_expr("1 + 0.1*sin(2*pi*x)")),
                           gb, 0.0);
    const auto beam = beam_hamiltonian(BeamContext(0.2, 1.5), mb);
    const auto& b = set["beta"];
    double be = 0, bo = 0, mono = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto phi = random_bandlimited_set<8>(gb, 3, rng);
      StateField8 c1 = apply_pointwise(b, beam.apply_E(phi));
      c1 -= beam.apply_E(apply_pointwise(b, phi));
      StateField8 c2 = apply_pointwise(b, beam.apply_O(phi));
      c2 += beam.apply_O(apply_pointwise(b, phi));
      be = std::max(be, max_abs(c1));
      bo = std::max(bo, max_abs(c2));
      mono = std::max(mono, beam.monochromatic_residual(phi));
    }
    s.add("beam_BE_commute", be, 1e-13);
    s.add("beam_BO_anticommute", bo, 1e-13);
    s.add("beam_monochromatic", mono, 1e-10);
  }
}

void evolution_checks(Suite& s, Rng& rng) {
  {
    const Grid3 g({8, 8, 8}, {1, 1, 1});
    const auto med = sample(MediumSpec::constant(1.0, 1.0), g, 0.0);
    const std::array<double, 3> k{2 * pi, 4 * pi, 0.0};
    const auto wave = make_plane_wave(k, {cplx(0), cplx(0), cplx(1)}, med);
    const auto psi0 = em_to_psi(wave.state, med);
    const double period = 2 * pi / std::hypot(k[0], k[1]);
    s.add("exact_plane_wave_period", rel(evolve_exact(psi0, med, period).psi, psi0.psi), 1e-12);
  }
  {
    const Grid3 g({12, 12, 12}, {1, 1, 1});
    const auto psi = random_psi(g, 3, rng);
    const double v = 0.7;
    const auto one_go = evolve_exact(psi, v, 0.9);
    const auto two = evolve_exact(evolve_exact(psi, v, 0.4), v, 0.5);
    s.add("exact_group_property", rel(two.psi, one_go.psi), 1e-12);
    const auto f = random_F(g, 3, rng);
    const double e0 = energy(f);
    // ten periods of the longest wave
    const auto later = psi_to_F(evolve_exact(F_to_psi(f), v, 10.0 / v));
    s.add("exact_energy_conservation", std::abs(energy(later) - e0) / e0, 1e-12);
  }
  {
    const Grid3 g({64, 64, 1}, {1, 1, 1});
    const auto spec = MediumSpec::constant(1.0, 1.0);
    const auto med = sample(spec, g, 0.0);
    // two axial waves; RK4 phase error grows like (v|k|dt)^5 per step
    EMState em(g);
    for (const std::array<double, 3>& k : {std::array<double, 3>{2 * pi, 0, 0}, std::array<double, 3>{0, -2 * pi, 0}}) {
      const std::array<cplx, 3> e0{cplx(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                                   cplx(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                                   cplx(uniform(rng, -1, 1), uniform(rng, -1, 1))};
      const auto w = make_plane_wave(k, e0, med);
      em.E += w.state.E;
      em.B += w.state.B;
    }
    const auto psi = em_to_psi(em, med);
    PropagatorPlan plan;
    plan.dt = PropagatorPlan::dt_limit(med, 0.25);
    plan.steps = 100;
    const auto run = evolve_rk4(psi, spec, plan);
    s.add("rk4_vs_exact", rel(run.state.psi, evolve_exact(psi, med, plan.duration()).psi), 1e-8);
  }
  {
    const Grid3 g({64, 1, 64}, {1, 1, 1});
    const auto spec = MediumSpec::constant(1.0, 1.0);
    const auto med = sample(spec, g, 0.0);
    EMState em(g);
    em.E = random_bandlimited_set<3>(g, 1, rng);
    em.B = random_bandlimited_set<3>(g, 1, rng);
    PropagatorPlan plan;
    plan.dt = PropagatorPlan::dt_limit(med, 0.25);
    plan.steps = 1000;
    RunOptions opts;
    opts.diagnostic_every = 50;
    const auto run = evolve_rk4(em_to_psi(em, med), spec, plan, nullptr, opts);
    s.add("rk4_energy_drift", run.record.energy_drift(), 1e-6);
  }
  {
    const Grid3 g({16, 16, 16}, {1, 1, 1});
    const auto med = sample(MediumSpec::constant(1.0, 1.0), g, 0.0);
    std::vector<DispersionMode> modes;
    for (int i = 0; i < 10; ++i) {
      DispersionMode m;
      for (auto& c : m.k) c = 2 * pi * static_cast<double>(static_cast<int>(rng() % 7) - 3);
      if (m.k == std::array<double, 3>{}) m.k[2] = 2 * pi;
      modes.push_back(m);
    }
    double worst = 0;
    for (const auto& row : dispersion_scan(modes, med)) worst = std::max(worst, row.rel_err);
    s.add("dispersion_scan", worst, 1e-10);
  }
  {
    const Grid3 g({1, 1, 128}, {1, 1, 1});
    const auto spec = MediumSpec::analytic_n_eta(parse_expr("1.5 + 0.2*sin(2*pi*z)"), parse_expr("1"));
    const auto med = sample(spec, g, 0.0);
    EMState em(g);
    for (std::size_t a : {0, 1}) {
      em.E[a] = random_bandlimited(g, 3, rng);
      em.B[a] = random_bandlimited(g, 3, rng);
    }
    const auto plan = PropagatorPlan{PropagatorPlan::Kind::rk4, PropagatorPlan::dt_limit(med, 0.25), 50, 0.25};
    RunOptions opts;
    opts.diagnostic_every = 10;
    const auto run = evolve_rk4(em_to_psi(em, med), spec, plan, nullptr, opts);
    const auto ref = reference_curl_solver(em, spec, plan);
    const auto end = sample(spec, g, plan.duration());
    s.add("reference_vs_psi_graded", rel(run.state.psi, em_to_psi(ref, end).psi), 1e-10);
    const double floor = std::max(run.record.initial_divergence(), 1e-13);
    s.add("divergence_growth", run.record.max_divergence() / floor, 10.0);
  }
}

}  // namespace

MatrixSet MatrixSet::library() {
  MatrixSet s;
  s.m_["pauli_x"] = pauli(Axis::x);
  s.m_["pauli_y"] = pauli(Axis::y);
  s.m_["pauli_z"] = pauli(Axis::z);
  s.m_["m0x"] = m0_direction(Axis::x, 1.0);
  s.m_["m0y"] = m0_direction(Axis::y, 1.0);
  s.m_["m0z"] = m0_direction(Axis::z, 1.0);
  s.m_["tau"] = transform_tau();
  s.m_["T8"] = transform_T8();
  s.m_["T"] = transform_T();
  s.m_["TT"] = transform_TT();
  s.m_["SK"] = transform_SK();
  s.m_["SphiK"] = transform_SphiK();
  s.m_["Sphi"] = transform_Sphi();
  s.m_["beta"] = beta();
  return s;
}

const ComplexMatrix& MatrixSet::operator[](const std::string& name) const {
  auto it = m_.find(name);
  if (it == m_.end()) throw PreconditionError("unknown matrix '" + name + "'");
  return it->second;
}

ComplexMatrix& MatrixSet::at(const std::string& name) {
  auto it = m_.find(name);
  if (it == m_.end()) throw PreconditionError("unknown matrix '" + name + "'");
  return it->second;
}

std::vector<std::string> MatrixSet::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : m_) out.push_back(k);
  return out;
}

Mutation load_mutation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open mutation file " + path.string());
  Mutation m;
  try {
    const auto j = nlohmann::json::parse(in);
    m.name = j.value("name", path.stem().string());
    m.matrix = j.at("matrix").get<std::string>();
    m.row = j.at("row").get<std::size_t>();
    m.col = j.at("col").get<std::size_t>();
    const auto op = j.value("op", std::string("negate"));
    if (op == "negate")
      m.op = Mutation::Op::negate;
    else if (op == "set")
      m.op = Mutation::Op::set;
    else if (op == "scale")
      m.op = Mutation::Op::scale;
    else
      throw PreconditionError("mutation op must be negate, set or scale");
    if (j.contains("value")) {
      const auto& v = j.at("value");
      m.value = v.is_array() ? cplx(v.at(0).get<double>(), v.at(1).get<double>()) : cplx(v.get<double>());
    }
    if (j.contains("expect_failed")) m.expect_failed = j.at("expect_failed").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(path.string() + ": " + e.what());
  }
  return m;
}

void apply_mutation(MatrixSet& set, const Mutation& m) {
  ComplexMatrix& a = set.at(m.matrix);
  if (m.row >= a.rows() || m.col >= a.cols()) throw PreconditionError("mutation entry out of range");
  cplx& e = a(m.row, m.col);
  switch (m.op) {
    case Mutation::Op::negate: e = -e; break;
    case Mutation::Op::set: e = m.value; break;
    case Mutation::Op::scale: e *= m.value; break;
  }
}

VerifyScope parse_scope(const std::string& name) {
  if (name == "algebra") return VerifyScope::algebra;
  if (name == "operators") return VerifyScope::operators;
  if (name == "evolution") return VerifyScope::evolution;
  if (name == "all") return VerifyScope::all;
  throw PreconditionError("unknown scope '" + name + "' (algebra, operators, evolution, all)");
}

std::string scope_name(VerifyScope s) {
  switch (s) {
    case VerifyScope::algebra: return "algebra";
    case VerifyScope::operators: return "operators";
    case VerifyScope::evolution: return "evolution";
    case VerifyScope::all: return "all";
  }
  return "?";
}

std::size_t VerifyReport::failed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
}

std::vector<std::string> VerifyReport::failed_names() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

std::string VerifyReport::to_json() const {
  ordered_json j;
  j["scope"] = scope;
  j["seed"] = seed;
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["check_name"] = c.name;
    // non-finite norms are not representable in JSON
    if (std::isfinite(c.norm))
      e["norm"] = c.norm;
    else
      e["norm"] = nullptr;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    j["checks"].push_back(e);
  }
  j["passed"] = checks.size() - failed();
  j["failed"] = failed();
  return j.dump(2) + "\n";
}

std::string VerifyReport::to_table() const {
  std::ostringstream os;
  std::size_t width = 10;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks)
    os << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(static_cast<int>(width) + 2) << c.name
       << std::setw(24) << format_double(c.norm) << "<= " << format_double(c.tolerance) << '\n';
  os << checks.size() - failed() << " passed, " << failed() << " failed\n";
  return os.str();
}

VerifyReport run_verify(VerifyScope scope, std::uint64_t seed, const MatrixSet& set) {
  VerifyReport r;
  r.scope = scope_name(scope);
  r.seed = seed;
  Suite s(r.checks);
  // each suite gets its own stream so a scope's results do not depend on
  // which other scopes ran
  if (scope == VerifyScope::algebra || scope == VerifyScope::all) {
    Rng rng(seed);
    algebra_checks(s, set, rng);
  }
  if (scope == VerifyScope::operators || scope == VerifyScope::all) {
    Rng rng(seed + 1);
    operator_checks(s, set, rng);
  }
  if (scope == VerifyScope::evolution || scope == VerifyScope::all) {
    Rng rng(seed + 2);
    evolution_checks(s, rng);
  }
  return r;
}

}  // namespace rsw
