#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "rsw/config.hpp"
#include "rsw/io.hpp"

using namespace rsw;
namespace fs = std::filesystem;

namespace {

const std::string minimal = R"j({
  "grid": {"n": [8, 8, 8], "L": [1, 1, 1]},
  "medium": {"type": "constant", "eps": 2, "mu": 1}
})j";

bool mentions(const ConfigError& e, const std::string& where) {
  const auto& p = e.problems();
  return std::any_of(p.begin(), p.end(), [&](const std::string& s) { return s.rfind(where, 0) == 0; });
}

ConfigError error_of(const std::string& text, const fs::path& base = ".") {
  try {
    parse_config(text, base);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config was accepted");
  return ConfigError({});
}

fs::path temp_dir() {
  const auto d = fs::temp_directory_path() / ("rsw_test_config_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("minimal config and defaults") {
  const auto c = parse_config(minimal);
  CHECK(c.n == std::array<std::size_t, 3>{8, 8, 8});
  CHECK(c.units == UnitMode::natural);
  CHECK(c.initial.type == InitialConfig::Type::zero);
  CHECK(c.plan.cfl == 0.25);
  CHECK(c.tolerances.energy_drift == 1e-6);
  CHECK(c.tolerances.oracle == 1e-10);
  CHECK(!c.sources);
  CHECK(!c.oracle);
  const auto med = sample(c.build_medium(), c.grid(), 0.0);
  CHECK(med.eps[0].real() == 2.0);
}

TEST_CASE("every bad field is reported with its location") {
  const auto e = error_of(R"j({
    "grid": {"n": [8, 0, 8], "L": [1, -1, 1]},
    "medium": {"type": "constant", "eps": -2},
    "propagator": {"kind": "leapfrog", "cfl": 0},
    "colour": "blue"
  })j");
  CHECK(mentions(e, "grid.n[1]"));
  CHECK(mentions(e, "grid.L[1]"));
  CHECK(mentions(e, "medium.eps"));
  CHECK(mentions(e, "medium.mu"));
  CHECK(mentions(e, "propagator.kind"));
  CHECK(mentions(e, "propagator.cfl"));
  CHECK(mentions(e, "config.colour"));
  CHECK(e.problems().size() == 7);
}

TEST_CASE("config errors") {
  SUBCASE("malformed JSON") { CHECK(mentions(error_of("{\"grid\": "), "config")); }
  SUBCASE("missing sections") {
    const auto e = error_of("{}");
    CHECK(mentions(e, "config.grid"));
    CHECK(mentions(e, "config.medium"));
  }
  SUBCASE("bad expressions carry the column") {
    const auto e = error_of(R"j({
      "grid": {"n": [8, 8, 8], "L": [1, 1, 1]},
      "medium": {"type": "analytic_n_eta", "n": "1 + sin(", "eta": 1},
      "sources": {"J": ["0", "t*", 0], "rho": "q"}
    })j");
    CHECK(mentions(e, "medium.n"));
    CHECK(mentions(e, "sources.J[1]"));
    CHECK(mentions(e, "sources.rho"));
    CHECK(e.problems()[0].find("column") != std::string::npos);
  }
  SUBCASE("unknown medium type") {
    CHECK(mentions(error_of(R"j({"grid": {"n": [8, 8, 8], "L": [1, 1, 1]}, "medium": {"type": "plasma"}})j"),
                   "medium.type"));
  }
  SUBCASE("referenced files must exist") {
    const auto e = error_of(R"j({
      "grid": {"n": [8, 8, 8], "L": [1, 1, 1]},
      "medium": {"type": "file", "path": "nowhere.rsw"},
      "initial": {"type": "file", "path": "nothing.rsw"}
    })j");
    CHECK(mentions(e, "medium.path"));
    CHECK(mentions(e, "initial.path"));
  }
  SUBCASE("over-determined plan") {
    CHECK(mentions(error_of(R"j({"grid": {"n": [8, 8, 8], "L": [1, 1, 1]},
                                "medium": {"type": "constant", "eps": 1, "mu": 1},
                                "propagator": {"dt": 0.01, "steps": 3, "duration": 0.03}})j"),
                   "propagator"));
  }
  SUBCASE("snapshot cadence must line up with diagnostics") {
    CHECK(mentions(error_of(R"j({"grid": {"n": [8, 8, 8], "L": [1, 1, 1]},
                                "medium": {"type": "constant", "eps": 1, "mu": 1},
                                "output": {"diagnostic_every": 4, "snapshot_every": 6}})j"),
                   "output.snapshot_every"));
  }
  SUBCASE("csv slice inside the grid") {
    CHECK(mentions(error_of(R"j({"grid": {"n": [8, 2, 8], "L": [1, 1, 1]},
                                "medium": {"type": "constant", "eps": 1, "mu": 1},
                                "output": {"csv_slice_y": 2}})j"),
                   "output.csv_slice_y"));
  }
  SUBCASE("tolerances") {
    CHECK(mentions(error_of(R"j({"grid": {"n": [8, 8, 8], "L": [1, 1, 1]},
                                "medium": {"type": "constant", "eps": 1, "mu": 1},
                                "tolerances": {"oracle": -1, "speed": 2}})j"),
                   "tolerances.oracle"));
  }
  SUBCASE("unreadable file") { CHECK_THROWS_AS(load_config("/nonexistent/run.json"), ConfigError); }
}

TEST_CASE("plan resolution") {
  auto with_plan = [](const std::string& plan) {
    return parse_config(R"j({"grid": {"n": [32, 1, 1], "L": [1, 1, 1]},
                            "medium": {"type": "constant", "eps": 1, "mu": 1},
                            "propagator": )j" + plan + "}");
  };
  const Grid3 g({32, 1, 1}, {1, 1, 1});
  const auto med = sample(MediumSpec::constant(1, 1), g, 0.0);

  auto p = with_plan(R"j({"dt": 0.005, "steps": 10})j").build_plan(med);
  CHECK(p.dt == 0.005);
  CHECK(p.steps == 10);
  p = with_plan(R"j({"duration": 0.1, "steps": 4})j").build_plan(med);
  CHECK(p.dt == doctest::Approx(0.025));
  p = with_plan(R"j({"duration": 0.1, "dt": 0.005})j").build_plan(med);
  CHECK(p.steps == 20);
  // dt limit is 0.25 / 32
  p = with_plan(R"j({"duration": 0.1})j").build_plan(med);
  CHECK(p.steps == 13);
  CHECK(p.dt <= 0.25 / 32);
  p = with_plan(R"j({"kind": "exact_kspace", "duration": 0.7})j").build_plan(med);
  CHECK(p.steps == 1);
  CHECK(p.dt == 0.7);
  CHECK_THROWS_AS(with_plan(R"j({"duration": 0.1, "dt": 0.03})j").build_plan(med), ConfigError);
  CHECK_THROWS_AS(with_plan(R"j({"steps": 5})j").build_plan(med), ConfigError);
}

TEST_CASE("initial conditions") {
  SUBCASE("plane wave") {
    const auto c = parse_config(R"j({"grid": {"n": [16, 1, 1], "L": [1, 1, 1]},
                                    "medium": {"type": "constant", "eps": 4, "mu": 1},
                                    "initial": {"type": "plane_wave", "k": [6.283185307179586, 0, 0],
                                                "E0": [0, 1, [0, 2]]}})j");
    const auto med = sample(c.build_medium(), c.grid(), 0.0);
    const auto em = c.build_initial(med);
    CHECK(em.E[1][0] == cplx(1.0));
    CHECK(em.E[2][0] == cplx(0.0, 2.0));
    // B = khat x E / v with v = 1/2
    CHECK(std::abs(em.B[2][0] - cplx(2.0)) <= 1e-15);
  }
  SUBCASE("gaussian packet is transverse and a forward wave") {
    const auto c = parse_config(R"j({"grid": {"n": [32, 32, 1], "L": [1, 1, 1]},
                                    "medium": {"type": "constant", "eps": 2.25, "mu": 1},
                                    "initial": {"type": "gaussian_packet", "center": [0.5, 0.5, 0],
                                                "width": 0.08, "k0": [25.132741228718345, 0, 0],
                                                "E0": [1, 1, [0, 1]]}})j");
    const auto med = sample(c.build_medium(), c.grid(), 0.0);
    const auto em = c.build_initial(med);
    CHECK(l2_norm(div(em.E)) <= 1e-12 * l2_norm(em.E));
    CHECK(l2_norm(div(em.B)) <= 1e-12 * l2_norm(em.B));
    // electric and magnetic energies match for a one-directional packet
    double ee = 0, eb = 0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t p = 0; p < c.grid().size(); ++p) {
        ee += 2.25 * std::norm(em.E[a][p]);
        eb += std::norm(em.B[a][p]);
      }
    CHECK(ee == doctest::Approx(eb).epsilon(1e-12));
    CHECK(ee > 0.0);
  }
  SUBCASE("zero") {
    const auto c = parse_config(minimal);
    const auto em = c.build_initial(sample(c.build_medium(), c.grid(), 0.0));
    CHECK(max_abs(em.E) == 0.0);
    CHECK(max_abs(em.B) == 0.0);
  }
  SUBCASE("plane wave needs a constant medium") {
    const auto c = parse_config(R"j({"grid": {"n": [16, 1, 1], "L": [1, 1, 1]},
                                    "medium": {"type": "analytic", "eps": "2 + sin(2*pi*x)", "mu": 1},
                                    "initial": {"type": "plane_wave", "k": [6.283185307179586, 0, 0],
                                                "E0": [0, 1, 0]}})j");
    CHECK_THROWS_AS(c.build_initial(sample(c.build_medium(), c.grid(), 0.0)), ConfigError);
  }
}

TEST_CASE("files referenced relative to the config") {
  const auto dir = temp_dir();
  const Grid3 g({4, 2, 1}, {1, 1, 1});
  MediumFile m{g, UnitMode::natural, std::vector<double>(8, 2.0), std::vector<double>(8, 1.5)};
  write_medium_file(dir / "medium.rsw", m);
  StateFile s(g);
  s.rep = Representation::em;
  s.data[1][3] = cplx(0.5, -0.25);
  write_state_file(dir / "initial.rsw", s);
  const std::string text = R"j({"grid": {"n": [4, 2, 1], "L": [1, 1, 1]},
                               "medium": {"type": "file", "path": "medium.rsw"},
                               "initial": {"type": "file", "path": "initial.rsw"}})j";
  {
    std::ofstream out(dir / "run.json");
    out << text;
  }
  const auto c = load_config(dir / "run.json");
  const auto med = sample(c.build_medium(), c.grid(), 0.0);
  CHECK(med.mu[5].real() == 1.5);
  const auto em = c.build_initial(med);
  CHECK(em.E[1][3] == cplx(0.5, -0.25));

  // grid mismatch is caught when the file is read
  const auto other = parse_config(R"j({"grid": {"n": [4, 4, 1], "L": [1, 1, 1]},
                                      "medium": {"type": "file", "path": "medium.rsw"}})j",
                                  dir);
  CHECK_THROWS_AS(other.build_medium(), ConfigError);
  fs::remove_all(dir);
}
