#include "rsw/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "rsw/config.hpp"
#include "rsw/evolve.hpp"
#include "rsw/io.hpp"
#include "rsw/operators.hpp"
#include "rsw/verify.hpp"

namespace rsw {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return exit_config_error;
  } catch (const RuntimeAbort& e) {
    err << "runtime abort at step " << e.step() << ": " << e.what() << '\n';
    return exit_runtime_abort;
  } catch (const CflError& e) {
    err << "propagator: " << e.what() << " (dt " << format_double(e.dt()) << ", limit " << format_double(e.limit())
        << ")\n";
    return exit_config_error;
  } catch (const IoError& e) {
    err << "io: " << e.what() << '\n';
    return exit_config_error;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return exit_config_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_runtime_abort;
  }
}

RunConfig load(const CommandOptions& opts) {
  if (!opts.config) throw ConfigError({"--config: required for this command"});
  RunConfig c = load_config(*opts.config);
  if (opts.seed) c.seed = *opts.seed;
  if (opts.oracle) c.oracle = *opts.oracle;
  return c;
}

fs::path output_dir(const CommandOptions& opts) {
  const fs::path dir = opts.output.value_or(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

ordered_json check_json(const std::string& name, double norm, double tol) {
  ordered_json j;
  j["check_name"] = name;
  if (std::isfinite(norm))
    j["norm"] = norm;
  else
    j["norm"] = nullptr;
  j["tolerance"] = tol;
  j["pass"] = std::isfinite(norm) && norm <= tol;
  return j;
}

ordered_json diagnostics_json(std::size_t step, const Diagnostics& d) {
  ordered_json j;
  j["step"] = step;
  j["t"] = d.t;
  j["energy"] = d.energy;
  j["div_plus"] = d.div_plus;
  j["div_minus"] = d.div_minus;
  j["null_norm"] = d.null_norm;
  return j;
}

StateFile state_file(const PsiState& s, UnitMode units) {
  StateFile f(s.psi.grid());
  f.units = units;
  f.rep = Representation::psi;
  f.t = s.t;
  f.data = s.psi;
  return f;
}

std::string step_name(std::size_t step) {
  std::ostringstream os;
  os << "step_" << std::setw(6) << std::setfill('0') << step << ".rsw";
  return os.str();
}

// Runs the exact propagator with the same recording rules as the RK4 path.
RunResult run_exact(const PsiState& psi0, const MediumFrame& med, const PropagatorPlan& plan,
                    const RunOptions& opts) {
  RunResult r{psi0, {}};
  auto record = [&](std::size_t step) {
    r.record.append(diagnose(r.state, med));
    if (opts.observer) opts.observer(step, r.state, r.record.samples.back());
  };
  record(0);
  for (std::size_t step = 1; step <= plan.steps; ++step) {
    const double t = static_cast<double>(step) * plan.dt;
    r.state = evolve_exact(psi0, med, t);
    r.state.t = psi0.t + t;
    if (!r.state.psi.all_finite()) throw RuntimeAbort("non-finite state", step);
    if (step == plan.steps || (opts.diagnostic_every > 0 && step % opts.diagnostic_every == 0)) record(step);
  }
  return r;
}

}  // namespace

int cmd_verify(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const VerifyScope scope = parse_scope(opts.scope);
    std::uint64_t seed = 1;
    if (opts.config) seed = load_config(*opts.config).seed;
    if (opts.seed) seed = *opts.seed;
    MatrixSet set = MatrixSet::library();
    if (opts.mutation) {
      const Mutation m = load_mutation(*opts.mutation);
      apply_mutation(set, m);
      out << "mutation " << m.name << ": " << m.matrix << "[" << m.row << "][" << m.col << "]\n";
    }
    const VerifyReport report = run_verify(scope, seed, set);
    out << report.to_table();
    for (const auto& name : report.failed_names()) out << "failed: " << name << '\n';
    if (opts.output) write_text(output_dir(opts) / "verify_report.json", report.to_json());
    return report.failed() == 0 ? exit_ok : exit_check_failed;
  });
}

int cmd_evolve(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load(opts);
    const Grid3 g = cfg.grid();
    const MediumSpec spec = cfg.build_medium();
    const MediumFrame med0 = sample(spec, g, 0.0);
    const EMState em0 = cfg.build_initial(med0);
    const PropagatorPlan plan = cfg.build_plan(med0);
    plan.check(med0);
    const SourceSpec* src = cfg.sources ? &*cfg.sources : nullptr;
    const bool exact = plan.kind == PropagatorPlan::Kind::exact_kspace;
    if (exact && (!med0.is_constant || src))
      throw ConfigError({"propagator.kind: exact_kspace needs a constant medium and no sources"});

    const fs::path dir = output_dir(opts);
    if (cfg.output.snapshot_every > 0) fs::create_directories(dir / "snapshots");
    std::ofstream ndjson(dir / "run.ndjson", std::ios::trunc);
    if (!ndjson) throw IoError("cannot write " + (dir / "run.ndjson").string());

    RunOptions ro;
    ro.diagnostic_every = cfg.output.diagnostic_every > 0 ? cfg.output.diagnostic_every : cfg.output.snapshot_every;
    std::vector<std::string> snapshots;
    ro.observer = [&](std::size_t step, const PsiState& s, const Diagnostics& d) {
      ndjson << diagnostics_json(step, d).dump() << '\n';
      if (cfg.output.snapshot_every > 0 && step % cfg.output.snapshot_every == 0) {
        const std::string name = "snapshots/" + step_name(step);
        write_state_file(dir / name, state_file(s, cfg.units));
        snapshots.push_back(name);
      }
    };

    const PsiState psi0 = em_to_psi(em0, med0);
    RunResult run = exact ? run_exact(psi0, med0, plan, ro) : evolve_rk4(psi0, spec, plan, src, ro);
    run.record.snapshots = snapshots;
    ndjson.close();
    write_state_file(dir / "final.rsw", state_file(run.state, cfg.units));
    if (cfg.output.csv_slice_y) {
      std::ofstream csv(dir / "final_slice.csv", std::ios::trunc);
      write_csv_slice(csv, run.state.psi, *cfg.output.csv_slice_y);
    }

    const Tolerances& tol = cfg.tolerances;
    ordered_json checks = ordered_json::array();
    const double drift = run.record.energy_drift();
    // energy is only conserved without sources in a static medium
    const bool conservative = !src && spec.time_independent();
    if (conservative) checks.push_back(check_json("energy_drift", drift, tol.energy_drift));
    const double div0 = run.record.initial_divergence();
    const double div_max = run.record.max_divergence();
    checks.push_back(
        check_json("divergence_growth", div_max / std::max(div0, tol.divergence_floor), tol.divergence_growth));

    std::optional<double> oracle_err, phase_err;
    const MediumFrame med_end = sample(spec, g, run.state.t);
    if (cfg.oracle) {
      const EMState ref = reference_curl_solver(em0, spec, plan, src);
      oracle_err = relative_l2(run.state.psi, em_to_psi(ref, med_end).psi);
      checks.push_back(check_json("oracle_rel_l2", *oracle_err, tol.oracle));
    }
    if (cfg.initial.type == InitialConfig::Type::plane_wave && med0.is_constant && !src) {
      // analytic solution E0 exp(i(k.r - v|k|t))
      const auto& k = cfg.initial.k;
      const double omega = med0.v[0].real() * std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
      StateField8 expect = psi0.psi;
      expect *= std::exp(-I * omega * run.state.t);
      phase_err = relative_l2(run.state.psi, expect);
      checks.push_back(check_json("phase_error", *phase_err, tol.phase_error));
    }

    bool pass = true;
    for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
    ordered_json summary;
    summary["steps"] = plan.steps;
    summary["dt"] = plan.dt;
    summary["t_final"] = run.state.t;
    summary["propagator"] = exact ? "exact_kspace" : "rk4";
    summary["energy_drift"] = drift;
    summary["initial_constraint_residual"] = div0;
    summary["max_constraint_residual"] = div_max;
    if (oracle_err) summary["oracle_rel_l2"] = *oracle_err;
    if (phase_err) summary["phase_error"] = *phase_err;
    summary["snapshots"] = run.record.snapshots;
    summary["checks"] = checks;
    summary["pass"] = pass;
    write_text(dir / "summary.json", summary.dump(2) + "\n");

    out << "summary: steps=" << plan.steps << " t=" << format_double(run.state.t)
        << " energy_drift=" << format_double(drift) << " max_constraint_residual=" << format_double(div_max);
    if (oracle_err) out << " oracle_rel_l2=" << format_double(*oracle_err);
    if (phase_err) out << " phase_error=" << format_double(*phase_err);
    out << " status=" << (pass ? "pass" : "fail") << '\n';
    return pass ? exit_ok : exit_check_failed;
  });
}

int cmd_dispersion(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load(opts);
    if (!cfg.dispersion) throw ConfigError({"dispersion: section required for this command"});
    const MediumFrame med = sample(cfg.build_medium(), cfg.grid(), 0.0);
    if (!med.is_constant) throw ConfigError({"medium: dispersion needs a constant medium"});
    const auto rows = dispersion_scan(cfg.dispersion->modes, med, cfg.dispersion->options);
    const fs::path dir = output_dir(opts);
    {
      std::ofstream csv(dir / "dispersion.csv", std::ios::trunc);
      if (!csv) throw IoError("cannot write " + (dir / "dispersion.csv").string());
      write_dispersion_csv(csv, rows);
    }
    double worst = 0.0;
    for (const auto& r : rows) {
      worst = std::max(worst, r.rel_err);
      if (r.projected)
        out << "note: seed for k=(" << format_double(r.k[0]) << "," << format_double(r.k[1]) << ","
            << format_double(r.k[2]) << ") had a longitudinal part; projected\n";
    }
    const bool pass = worst <= cfg.tolerances.dispersion;
    out << "dispersion: modes=" << rows.size() << " max_rel_err=" << format_double(worst)
        << " tolerance=" << format_double(cfg.tolerances.dispersion) << " status=" << (pass ? "pass" : "fail") << '\n';
    return pass ? exit_ok : exit_check_failed;
  });
}

int cmd_beam(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load(opts);
    if (!cfg.beam) throw ConfigError({"beam: section required for this command"});
    const Grid3 g = cfg.grid();
    const MediumFrame med = sample(cfg.build_medium(), g, 0.0);
    const BeamContext ctx(cfg.beam->lambda, cfg.beam->n0);
    const auto beam = beam_hamiltonian(ctx, med);

    Rng rng(cfg.seed);
    double be = 0.0, bo = 0.0, mono = 0.0, refr = 0.0;
    for (std::size_t trial = 0; trial < cfg.beam->trials; ++trial) {
      const auto phi = random_bandlimited_set<8>(g, cfg.beam->max_mode, rng);
      StateField8 c1 = beam.apply_B(beam.apply_E(phi));
      c1 -= beam.apply_E(beam.apply_B(phi));
      StateField8 c2 = beam.apply_B(beam.apply_O(phi));
      c2 += beam.apply_O(beam.apply_B(phi));
      be = std::max(be, max_abs(c1));
      bo = std::max(bo, max_abs(c2));
      mono = std::max(mono, beam.monochromatic_residual(phi));
      refr = std::max(refr, max_abs(beam.refractive_part(phi)));
    }
    const Tolerances& tol = cfg.tolerances;
    ordered_json checks = ordered_json::array();
    checks.push_back(check_json("BE_commutator", be, tol.beam_commutation));
    checks.push_back(check_json("BO_anticommutator", bo, tol.beam_commutation));
    checks.push_back(check_json("monochromatic_residual", mono, tol.beam_residual));
    const bool at_n0 = med.is_constant && med.n[0].real() == cfg.beam->n0;
    if (at_n0) checks.push_back(check_json("refractive_part", refr, tol.refractive_part));

    bool pass = true;
    for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
    ordered_json report;
    report["lambda"] = ctx.lambda;
    report["n0"] = ctx.n0;
    report["trials"] = cfg.beam->trials;
    report["seed"] = cfg.seed;
    report["homogeneous_at_n0"] = at_n0;
    report["refractive_part_norm"] = refr;
    report["checks"] = checks;
    report["pass"] = pass;
    const std::string text = report.dump(2) + "\n";
    write_text(output_dir(opts) / "beam_report.json", text);
    out << text;
    return pass ? exit_ok : exit_check_failed;
  });
}

}  // namespace rsw
