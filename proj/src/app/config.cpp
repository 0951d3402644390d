#include "rsw/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rsw/io.hpp"

namespace rsw {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items) {
  std::string s = "invalid configuration:";
  for (const auto& p : items) s += "\n  " + p;
  return s;
}

// Walks a JSON document, recording problems instead of stopping at the first.
class Reader {
 public:
  explicit Reader(std::filesystem::path base) : base_(std::move(base)) {}

  void problem(const std::string& where, const std::string& what) { problems_.push_back(where + ": " + what); }
  const std::vector<std::string>& problems() const { return problems_; }
  const std::filesystem::path& base() const { return base_; }

  void no_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || it.key() == a;
      if (!ok) problem(where + "." + it.key(), "unknown key");
    }
  }

  const json* child(const json& obj, const std::string& key, const std::string& where, bool required) {
    if (auto it = obj.find(key); it != obj.end()) return &*it;
    if (required) problem(where + "." + key, "required");
    return nullptr;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& where, bool required,
                               bool positive = false) {
    const json* j = child(obj, key, where, required);
    if (!j) return std::nullopt;
    if (!j->is_number()) {
      problem(where + "." + key, "expected a number");
      return std::nullopt;
    }
    const double v = j->get<double>();
    if (!std::isfinite(v) || (positive && !(v > 0.0))) {
      problem(where + "." + key, positive ? "must be a positive finite number" : "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::size_t> count(const json& obj, const std::string& key, const std::string& where, bool required,
                                   bool positive = false) {
    const json* j = child(obj, key, where, required);
    if (!j) return std::nullopt;
    if (!j->is_number_integer() || j->get<long long>() < (positive ? 1 : 0)) {
      problem(where + "." + key, positive ? "expected a positive integer" : "expected a non-negative integer");
      return std::nullopt;
    }
    return static_cast<std::size_t>(j->get<long long>());
  }

  std::optional<std::string> string(const json& obj, const std::string& key, const std::string& where,
                                    bool required) {
    const json* j = child(obj, key, where, required);
    if (!j) return std::nullopt;
    if (!j->is_string()) {
      problem(where + "." + key, "expected a string");
      return std::nullopt;
    }
    return j->get<std::string>();
  }

  std::optional<std::array<double, 3>> vec3(const json& obj, const std::string& key, const std::string& where,
                                            bool required) {
    const json* j = child(obj, key, where, required);
    if (!j) return std::nullopt;
    if (!j->is_array() || j->size() != 3) {
      problem(where + "." + key, "expected an array of 3 numbers");
      return std::nullopt;
    }
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!(*j)[i].is_number() || !std::isfinite((*j)[i].get<double>())) {
        problem(where + "." + key + "[" + std::to_string(i) + "]", "expected a finite number");
        return std::nullopt;
      }
      v[i] = (*j)[i].get<double>();
    }
    return v;
  }

  // Entries are numbers or [re, im] pairs.
  std::optional<std::array<cplx, 3>> cvec3(const json& obj, const std::string& key, const std::string& where,
                                           bool required) {
    const json* j = child(obj, key, where, required);
    if (!j) return std::nullopt;
    if (!j->is_array() || j->size() != 3) {
      problem(where + "." + key, "expected an array of 3 numbers or [re, im] pairs");
      return std::nullopt;
    }
    std::array<cplx, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
      const json& e = (*j)[i];
      const std::string at = where + "." + key + "[" + std::to_string(i) + "]";
      if (e.is_number()) {
        v[i] = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        v[i] = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        problem(at, "expected a number or [re, im]");
        return std::nullopt;
      }
    }
    return v;
  }

  // A number or an expression string; expressions are parse-checked here.
  void quantity(const json& obj, const std::string& key, const std::string& where, double& num, std::string& expr) {
    const json* j = child(obj, key, where, true);
    if (!j) return;
    if (j->is_number()) {
      num = j->get<double>();
      expr = format_double(num);
    } else if (j->is_string()) {
      expr = j->get<std::string>();
      check_expr(expr, where + "." + key);
    } else {
      problem(where + "." + key, "expected a number or an expression string");
    }
  }

  void check_expr(const std::string& text, const std::string& where) {
    try {
      parse_expr(text);
    } catch (const ExprParseError& e) {
      problem(where, std::string("bad expression at column ") + std::to_string(e.position()) + ": " + e.what());
    }
  }

  std::filesystem::path existing_file(const std::string& rel, const std::string& where) {
    std::filesystem::path p(rel);
    if (p.is_relative()) p = base_ / p;
    if (!std::filesystem::is_regular_file(p)) problem(where, "file not found: " + p.string());
    return p;
  }

 private:
  std::filesystem::path base_;
  std::vector<std::string> problems_;
};

void read_grid(Reader& r, const json& root, RunConfig& c) {
  const json* g = r.child(root, "grid", "config", true);
  if (!g) return;
  if (!g->is_object()) return r.problem("grid", "expected an object");
  r.no_unknown(*g, "grid", {"n", "L"});
  if (const json* n = r.child(*g, "n", "grid", true)) {
    if (!n->is_array() || n->size() != 3) {
      r.problem("grid.n", "expected an array of 3 positive integers");
    } else {
      for (std::size_t i = 0; i < 3; ++i) {
        if (!(*n)[i].is_number_integer() || (*n)[i].get<long long>() < 1)
          r.problem("grid.n[" + std::to_string(i) + "]", "expected a positive integer");
        else
          c.n[i] = static_cast<std::size_t>((*n)[i].get<long long>());
      }
    }
  }
  if (auto L = r.vec3(*g, "L", "grid", true)) {
    for (std::size_t i = 0; i < 3; ++i)
      if (!((*L)[i] > 0.0)) r.problem("grid.L[" + std::to_string(i) + "]", "must be positive");
    c.L = *L;
  }
}

void read_medium(Reader& r, const json& root, RunConfig& c) {
  const json* m = r.child(root, "medium", "config", true);
  if (!m) return;
  if (!m->is_object()) return r.problem("medium", "expected an object");
  auto type = r.string(*m, "type", "medium", true);
  if (!type) return;
  MediumConfig& mc = c.medium;
  if (*type == "constant") {
    mc.type = MediumConfig::Type::constant;
    r.no_unknown(*m, "medium", {"type", "eps", "mu"});
    if (auto v = r.number(*m, "eps", "medium", true, true)) mc.eps = *v;
    if (auto v = r.number(*m, "mu", "medium", true, true)) mc.mu = *v;
  } else if (*type == "constant_n_eta") {
    mc.type = MediumConfig::Type::constant_n_eta;
    r.no_unknown(*m, "medium", {"type", "n", "eta"});
    if (auto v = r.number(*m, "n", "medium", true, true)) mc.n = *v;
    if (auto v = r.number(*m, "eta", "medium", true, true)) mc.eta = *v;
  } else if (*type == "analytic") {
    mc.type = MediumConfig::Type::analytic;
    r.no_unknown(*m, "medium", {"type", "eps", "mu"});
    r.quantity(*m, "eps", "medium", mc.eps, mc.eps_expr);
    r.quantity(*m, "mu", "medium", mc.mu, mc.mu_expr);
  } else if (*type == "analytic_n_eta") {
    mc.type = MediumConfig::Type::analytic_n_eta;
    r.no_unknown(*m, "medium", {"type", "n", "eta"});
    r.quantity(*m, "n", "medium", mc.n, mc.n_expr);
    r.quantity(*m, "eta", "medium", mc.eta, mc.eta_expr);
  } else if (*type == "file") {
    mc.type = MediumConfig::Type::file;
    r.no_unknown(*m, "medium", {"type", "path"});
    if (auto p = r.string(*m, "path", "medium", true)) mc.path = r.existing_file(*p, "medium.path");
  } else {
    r.problem("medium.type", "unknown type '" + *type + "' (constant, constant_n_eta, analytic, analytic_n_eta, file)");
  }
}

void read_initial(Reader& r, const json& root, RunConfig& c) {
  const json* j = r.child(root, "initial", "config", false);
  if (!j) return;
  if (!j->is_object()) return r.problem("initial", "expected an object");
  auto type = r.string(*j, "type", "initial", true);
  if (!type) return;
  InitialConfig& ic = c.initial;
  if (*type == "zero") {
    ic.type = InitialConfig::Type::zero;
    r.no_unknown(*j, "initial", {"type"});
  } else if (*type == "plane_wave") {
    ic.type = InitialConfig::Type::plane_wave;
    r.no_unknown(*j, "initial", {"type", "k", "E0"});
    if (auto k = r.vec3(*j, "k", "initial", true)) ic.k = *k;
    if (auto e = r.cvec3(*j, "E0", "initial", true)) ic.E0 = *e;
  } else if (*type == "gaussian_packet") {
    ic.type = InitialConfig::Type::gaussian_packet;
    r.no_unknown(*j, "initial", {"type", "center", "width", "k0", "E0"});
    if (auto v = r.vec3(*j, "center", "initial", true)) ic.center = *v;
    if (auto v = r.number(*j, "width", "initial", true, true)) ic.width = *v;
    if (auto k = r.vec3(*j, "k0", "initial", true)) ic.k = *k;
    if (auto e = r.cvec3(*j, "E0", "initial", true)) ic.E0 = *e;
  } else if (*type == "file") {
    ic.type = InitialConfig::Type::file;
    r.no_unknown(*j, "initial", {"type", "path"});
    if (auto p = r.string(*j, "path", "initial", true)) ic.path = r.existing_file(*p, "initial.path");
  } else {
    r.problem("initial.type", "unknown type '" + *type + "' (zero, plane_wave, gaussian_packet, file)");
  }
}

void read_plan(Reader& r, const json& root, RunConfig& c) {
  const json* j = r.child(root, "propagator", "config", false);
  if (!j) return;
  if (!j->is_object()) return r.problem("propagator", "expected an object");
  r.no_unknown(*j, "propagator", {"kind", "dt", "steps", "duration", "cfl"});
  PlanConfig& pc = c.plan;
  if (auto kind = r.string(*j, "kind", "propagator", false)) {
    if (*kind == "rk4")
      pc.kind = PropagatorPlan::Kind::rk4;
    else if (*kind == "exact_kspace")
      pc.kind = PropagatorPlan::Kind::exact_kspace;
    else
      r.problem("propagator.kind", "unknown kind '" + *kind + "' (rk4, exact_kspace)");
  }
  pc.dt = r.number(*j, "dt", "propagator", false, true);
  pc.duration = r.number(*j, "duration", "propagator", false, true);
  pc.steps = r.count(*j, "steps", "propagator", false, true);
  if (auto v = r.number(*j, "cfl", "propagator", false, true)) pc.cfl = *v;
  if (pc.dt && pc.duration && pc.steps) r.problem("propagator", "give at most two of dt, steps, duration");
}

void read_sources(Reader& r, const json& root, RunConfig& c) {
  const json* j = r.child(root, "sources", "config", false);
  if (!j) return;
  if (!j->is_object()) return r.problem("sources", "expected an object");
  r.no_unknown(*j, "sources", {"J", "rho"});
  SourceSpec s;
  if (const json* J = r.child(*j, "J", "sources", false)) {
    if (!J->is_array() || J->size() != 3) {
      r.problem("sources.J", "expected an array of 3 expression strings");
    } else {
      for (std::size_t i = 0; i < 3; ++i) {
        const std::string at = "sources.J[" + std::to_string(i) + "]";
        if ((*J)[i].is_number()) {
          s.J[i] = Expr::constant((*J)[i].get<double>());
        } else if ((*J)[i].is_string()) {
          r.check_expr((*J)[i].get<std::string>(), at);
          try {
            s.J[i] = parse_expr((*J)[i].get<std::string>());
          } catch (const ExprParseError&) {
          }
        } else {
          r.problem(at, "expected a number or an expression string");
        }
      }
    }
  }
  if (const json* rho = r.child(*j, "rho", "sources", false)) {
    if (rho->is_number()) {
      s.rho = Expr::constant(rho->get<double>());
    } else if (rho->is_string()) {
      r.check_expr(rho->get<std::string>(), "sources.rho");
      try {
        s.rho = parse_expr(rho->get<std::string>());
      } catch (const ExprParseError&) {
      }
    } else {
      r.problem("sources.rho", "expected a number or an expression string");
    }
  }
  c.sources = s;
}

void read_output(Reader& r, const json& root, RunConfig& c) {
  const json* j = r.child(root, "output", "config", false);
  if (!j) return;
  if (!j->is_object()) return r.problem("output", "expected an object");
  r.no_unknown(*j, "output", {"diagnostic_every", "snapshot_every", "csv_slice_y"});
  if (auto v = r.count(*j, "diagnostic_every", "output", false)) c.output.diagnostic_every = *v;
  if (auto v = r.count(*j, "snapshot_every", "output", false)) c.output.snapshot_every = *v;
  if (c.output.diagnostic_every > 0 && c.output.snapshot_every % c.output.diagnostic_every != 0)
    r.problem("output.snapshot_every", "must be a multiple of output.diagnostic_every");
  c.output.csv_slice_y = r.count(*j, "csv_slice_y", "output", false);
  if (c.output.csv_slice_y && c.n[1] > 0 && *c.output.csv_slice_y >= c.n[1])
    r.problem("output.csv_slice_y", "must be below grid.n[1]");
}

void read_tolerances(Reader& r, const json& root, RunConfig& c) {
  const json* j = r.child(root, "tolerances", "config", false);
  if (!j) return;
  if (!j->is_object()) return r.problem("tolerances", "expected an object");
  Tolerances& t = c.tolerances;
  const std::pair<const char*, double*> fields[] = {
      {"energy_drift", &t.energy_drift},         {"phase_error", &t.phase_error},
      {"oracle", &t.oracle},                     {"divergence_growth", &t.divergence_growth},
      {"divergence_floor", &t.divergence_floor}, {"dispersion", &t.dispersion},
      {"beam_commutation", &t.beam_commutation}, {"beam_residual", &t.beam_residual},
      {"refractive_part", &t.refractive_part},
  };
  for (auto it = j->begin(); it != j->end(); ++it) {
    bool known = false;
    for (const auto& [name, slot] : fields)
      if (it.key() == name) {
        known = true;
        if (auto v = r.number(*j, name, "tolerances", true, true)) *slot = *v;
      }
    if (!known) r.problem("tolerances." + it.key(), "unknown key");
  }
}

void read_dispersion(Reader& r, const json& root, RunConfig& c) {
  const json* j = r.child(root, "dispersion", "config", false);
  if (!j) return;
  if (!j->is_object()) return r.problem("dispersion", "expected an object");
  r.no_unknown(*j, "dispersion", {"modes", "periods", "samples"});
  DispersionConfig d;
  if (const json* modes = r.child(*j, "modes", "dispersion", true)) {
    if (!modes->is_array() || modes->empty()) {
      r.problem("dispersion.modes", "expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < modes->size(); ++i) {
        const std::string at = "dispersion.modes[" + std::to_string(i) + "]";
        const json& m = (*modes)[i];
        if (!m.is_object()) {
          r.problem(at, "expected an object with k and optional E0");
          continue;
        }
        r.no_unknown(m, at, {"k", "E0"});
        DispersionMode dm;
        if (auto k = r.vec3(m, "k", at, true)) dm.k = *k;
        if (m.contains("E0"))
          if (auto e = r.cvec3(m, "E0", at, true)) dm.E0 = *e;
        d.modes.push_back(dm);
      }
    }
  }
  if (auto v = r.number(*j, "periods", "dispersion", false, true)) d.options.periods = *v;
  if (auto v = r.count(*j, "samples", "dispersion", false, true)) {
    if (*v < 3) r.problem("dispersion.samples", "need at least 3 samples");
    d.options.samples = *v;
  }
  c.dispersion = d;
}

void read_beam(Reader& r, const json& root, RunConfig& c) {
  const json* j = r.child(root, "beam", "config", false);
  if (!j) return;
  if (!j->is_object()) return r.problem("beam", "expected an object");
  r.no_unknown(*j, "beam", {"lambda", "n0", "trials", "max_mode"});
  BeamConfig b;
  if (auto v = r.number(*j, "lambda", "beam", true, true)) b.lambda = *v;
  if (auto v = r.number(*j, "n0", "beam", true, true)) b.n0 = *v;
  if (auto v = r.count(*j, "trials", "beam", false, true)) b.trials = *v;
  if (auto v = r.count(*j, "max_mode", "beam", false, true)) b.max_mode = static_cast<int>(*v);
  c.beam = b;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config: malformed JSON: ") + e.what()});
  }
  if (!root.is_object()) throw ConfigError({"config: top level must be an object"});

  Reader r(base_dir);
  r.no_unknown(root, "config",
               {"grid", "units", "medium", "initial", "propagator", "sources", "output", "tolerances", "seed", "oracle",
                "dispersion", "beam"});
  RunConfig c;
  read_grid(r, root, c);
  if (auto u = r.string(root, "units", "config", false)) {
    if (*u == "natural")
      c.units = UnitMode::natural;
    else if (*u == "si")
      c.units = UnitMode::si;
    else
      r.problem("config.units", "expected 'natural' or 'si'");
  }
  read_medium(r, root, c);
  read_initial(r, root, c);
  read_plan(r, root, c);
  read_sources(r, root, c);
  read_output(r, root, c);
  read_tolerances(r, root, c);
  read_dispersion(r, root, c);
  read_beam(r, root, c);
  if (const json* s = r.child(root, "seed", "config", false)) {
    if (!s->is_number_unsigned())
      r.problem("config.seed", "expected a non-negative integer");
    else
      c.seed = s->get<std::uint64_t>();
  }
  if (const json* o = r.child(root, "oracle", "config", false)) {
    if (!o->is_boolean())
      r.problem("config.oracle", "expected true or false");
    else
      c.oracle = o->get<bool>();
  }
  if (!r.problems().empty()) throw ConfigError(r.problems());
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open " + path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path().empty() ? "." : path.parent_path());
}

MediumSpec RunConfig::build_medium() const {
  const MediumConfig& m = medium;
  switch (m.type) {
    case MediumConfig::Type::constant:
      return MediumSpec::constant(m.eps, m.mu, units);
    case MediumConfig::Type::constant_n_eta:
      return MediumSpec::constant_n_eta(m.n, m.eta, units);
    case MediumConfig::Type::analytic:
      return MediumSpec::analytic(parse_expr(m.eps_expr), parse_expr(m.mu_expr), units);
    case MediumConfig::Type::analytic_n_eta:
      return MediumSpec::analytic_n_eta(parse_expr(m.n_expr), parse_expr(m.eta_expr), units);
    case MediumConfig::Type::file: {
      const MediumFile f = read_medium_file(m.path);
      if (!(f.grid == grid())) throw ConfigError({"medium.path: file grid does not match grid"});
      if (f.units != units) throw ConfigError({"medium.path: file unit mode does not match units"});
      return f.spec();
    }
  }
  throw ConfigError({"medium.type: unhandled"});
}

namespace {

// Transverse part of a field per Fourier mode; the k = 0 mode is dropped.
VectorField3 transverse(const VectorField3& f) {
  std::array<std::vector<cplx>, 3> s{fft_forward(f[0]), fft_forward(f[1]), fft_forward(f[2])};
  const Grid3& g = f.grid();
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto k = g.deriv_wavevector(p);
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 == 0.0) {
      for (auto& c : s) c[p] = 0.0;
      continue;
    }
    const cplx along = (k[0] * s[0][p] + k[1] * s[1][p] + k[2] * s[2][p]) / k2;
    for (std::size_t a = 0; a < 3; ++a) s[a][p] -= along * k[a];
  }
  VectorField3 out(g);
  for (std::size_t a = 0; a < 3; ++a) out[a] = fft_inverse(g, std::move(s[a]));
  return out;
}

// khat x f per Fourier mode.
VectorField3 khat_cross(const VectorField3& f) {
  std::array<std::vector<cplx>, 3> s{fft_forward(f[0]), fft_forward(f[1]), fft_forward(f[2])};
  const Grid3& g = f.grid();
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto k = g.deriv_wavevector(p);
    const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (kn == 0.0) {
      for (auto& c : s) c[p] = 0.0;
      continue;
    }
    const cplx x = s[0][p], y = s[1][p], z = s[2][p];
    s[0][p] = (k[1] * z - k[2] * y) / kn;
    s[1][p] = (k[2] * x - k[0] * z) / kn;
    s[2][p] = (k[0] * y - k[1] * x) / kn;
  }
  VectorField3 out(g);
  for (std::size_t a = 0; a < 3; ++a) out[a] = fft_inverse(g, std::move(s[a]));
  return out;
}

double mean_real(const ScalarField& f) {
  double s = 0.0;
  for (std::size_t p = 0; p < f.size(); ++p) s += f[p].real();
  return s / static_cast<double>(f.size());
}

}  // namespace

EMState RunConfig::build_initial(const MediumFrame& med) const {
  const Grid3& g = med.grid;
  switch (initial.type) {
    case InitialConfig::Type::zero:
      return EMState(g);
    case InitialConfig::Type::plane_wave: {
      if (!med.is_constant) throw ConfigError({"initial: plane_wave needs a constant medium"});
      return make_plane_wave(initial.k, initial.E0, med).state;
    }
    case InitialConfig::Type::gaussian_packet: {
      // Transverse displacement profile P; D = eps_avg P so div D = 0, and
      // B = khat x P / v_avg mode by mode (exact plane-wave superposition in a
      // constant medium).
      VectorField3 raw(g);
      const double w2 = initial.width * initial.width;
      for (std::size_t p = 0; p < g.size(); ++p) {
        const auto r = g.position(p);
        double d2 = 0.0, phase = 0.0;
        for (std::size_t a = 0; a < 3; ++a) {
          if (g.degenerate(all_axes[a])) continue;
          // nearest periodic image of the center
          double d = r[a] - initial.center[a];
          d -= g.lengths()[a] * std::round(d / g.lengths()[a]);
          d2 += d * d;
        }
        for (std::size_t a = 0; a < 3; ++a) phase += initial.k[a] * r[a];
        const cplx env = std::exp(-0.5 * d2 / w2) * std::exp(I * phase);
        for (std::size_t a = 0; a < 3; ++a) raw[a][p] = initial.E0[a] * env;
      }
      const VectorField3 P = transverse(raw);
      const double eps_avg = mean_real(med.eps), v_avg = mean_real(med.v);
      EMState em(g);
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t p = 0; p < g.size(); ++p) em.E[a][p] = eps_avg * P[a][p] / med.eps[p];
      em.B = khat_cross(P);
      for (auto* b : {&em.B[0], &em.B[1], &em.B[2]}) *b *= 1.0 / v_avg;
      return em;
    }
    case InitialConfig::Type::file: {
      const StateFile f = read_state_file(initial.path);
      if (!(f.grid == g)) throw ConfigError({"initial.path: file grid does not match grid"});
      switch (f.rep) {
        case Representation::em:
          return unpack_em(f.data, 0.0);
        case Representation::F: {
          FState s(g);
          s.f = f.data;
          return F_to_em(s, med);
        }
        case Representation::psi: {
          PsiState s(g);
          s.psi = f.data;
          return psi_to_em(s, med);
        }
        case Representation::phi: {
          PhiState s(g);
          s.phi = f.data;
          return psi_to_em(phi_to_psi(s), med);
        }
      }
    }
  }
  throw ConfigError({"initial.type: unhandled"});
}

PropagatorPlan RunConfig::build_plan(const MediumFrame& med) const {
  PropagatorPlan p;
  p.kind = plan.kind;
  p.cfl = plan.cfl;
  if (plan.dt && plan.steps) {
    p.dt = *plan.dt;
    p.steps = *plan.steps;
  } else if (plan.duration && plan.steps) {
    p.steps = *plan.steps;
    p.dt = *plan.duration / static_cast<double>(p.steps);
  } else if (plan.duration && plan.dt) {
    p.steps = static_cast<std::size_t>(std::llround(*plan.duration / *plan.dt));
    if (p.steps == 0 || std::abs(static_cast<double>(p.steps) * *plan.dt - *plan.duration) > 1e-9 * *plan.duration)
      throw ConfigError({"propagator: duration is not a whole number of dt steps"});
    p.dt = *plan.dt;
  } else if (plan.duration) {
    if (p.kind == PropagatorPlan::Kind::exact_kspace) {
      p.steps = 1;
      p.dt = *plan.duration;
    } else {
      p = PropagatorPlan::rk4_covering(*plan.duration, med, plan.cfl);
    }
  } else {
    throw ConfigError({"propagator: give steps with dt or duration, or a duration"});
  }
  return p;
}

}  // namespace rsw
