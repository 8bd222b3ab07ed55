// Serialization round trips and the command-line driver, the latter
// exercised end to end through spawned processes.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kummer/field.hpp"
#include "kummer/io.hpp"
#include "kummer/kummer_core.hpp"
#include "kummer/raytrace.hpp"
#include "kummer/shapes.hpp"
#include "kummer/solver.hpp"
#include "kummer/tensor.hpp"

using namespace kummer;
using geom::GridPtr;
using geom::ScalarField;
using geom::SphereGrid;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(KUMMER_CLI_PATH) + " " + args + " 2>/dev/null";
  const int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -2;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::path("cli_io_tmp") / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("scalar fields survive a JSON round trip bitwise") {
  for (int n : {1, 2}) {
    const GridPtr g = SphereGrid::build(n, n == 1 ? 24 : 6);
    const ScalarField f = geom::random_band_limited(g, 99, 1.0, 0.2);
    const json j = json::parse(io::field_to_json(f).dump());
    const ScalarField f2 = io::field_from_json(j);
    CHECK(f2.grid()->dimension() == n);
    CHECK(f2.grid()->resolution() == g->resolution());
    CHECK(sup_norm(f.values() - f2.values()) == 0.0);
  }
  CHECK_THROWS_AS(
      io::field_from_json(json::parse(
          R"({"dimension":3,"grid":{"points":8},"values":[1,1,1,1,1,1,1,1]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      io::field_from_json(
          json::parse(R"({"dimension":1,"grid":{"points":8},"values":[1,2]})")),
      std::invalid_argument);
}

TEST_CASE("fixed number format parses back to the same double") {
  for (double v : {1.0 / 3.0, kPi, 1e-300, -2.5e17, 0.1, 0.0}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("tensor export carries chart components and frame eigenvalues") {
  const GridPtr g = SphereGrid::build(2, 6);
  const json j = io::tensor_to_json(geom::metric_tensor(g), "metric");
  CHECK(j.at("name") == "metric");
  CHECK(j.at("dimension") == 2);
  CHECK(int(j.at("chart").at("tt").size()) == g->points());
  CHECK(int(j.at("chart").at("pp").size()) == g->points());
  CHECK(int(j.at("frame_eigenvalues").at("lo").size()) == g->points());
  // The round-sphere metric has unit frame eigenvalues everywhere.
  for (const auto& v : j.at("frame_eigenvalues").at("hi"))
    CHECK(v.get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analysis and histogram tables have one row per entry") {
  const GridPtr g = SphereGrid::build(1, 16);
  const auto R = core::RadialHypersurface::from_field(
      ScalarField::constant(g, 1.5));
  const std::string csv = io::intensity_csv(R);
  CHECK(csv.rfind("point,theta,rho,S1,lambda1\n", 0) == 0);
  CHECK(count_lines(csv) == g->points() + 1);

  const auto unit = core::RadialHypersurface::from_field(
      ScalarField::constant(SphereGrid::build(1, 8), 1.0));
  const auto batch = rt::trace_batch(unit, {}, 400, 21u);
  const auto bins = rt::EqualAreaBins::build(1, 12);
  const auto hist = rt::farfield_density(batch, bins);
  const std::string hcsv = io::histogram_csv(hist);
  CHECK(hcsv.rfind("bin,colat,lon,area,count,density,stderr\n", 0) == 0);
  CHECK(count_lines(hcsv) == 12 + 1);

  const json side = io::histogram_sidecar(hist, 21u, 400, {{"note", "x"}});
  CHECK(side.at("seed") == 21);
  CHECK(side.at("rays") == 400);
  CHECK(side.at("bins") == 12);
  CHECK(side.at("note") == "x");
}

TEST_CASE("shape catalog parses kinds and validates parameters") {
  const auto sphere = io::shape_from_json(json{{"kind", "sphere"}, {"p", 2.0}});
  CHECK(sphere.F(0.3) == doctest::Approx(2.0).epsilon(1e-15));

  const auto plane = io::shape_from_json(json{{"kind", "plane"}, {"c", 1.0}});
  CHECK(plane.F(0.5) == doctest::Approx(2.0).epsilon(1e-15));

  const auto tilted = io::shape_from_json(
      json{{"kind", "paraboloid"}, {"axis", {0.0, 0.0, 2.0}}});
  CHECK((tilted.axis - Vec3::UnitZ()).norm() == 0.0);

  CHECK_THROWS_AS(
      io::shape_from_json(json{{"kind", "ellipsoid"}, {"ecc", 1.2}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      io::shape_from_json(json{{"kind", "hyperboloid"}, {"ecc", 0.8}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      io::shape_from_json(json{{"kind", "sphere"}, {"axis", {1.0, 0.0}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      io::shape_from_json(json{{"kind", "sphere"}, {"axis", {0.0, 0.0, 0.0}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(io::shape_from_json(json{{"kind", "torus"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::shape_from_json(json{{"kind", "perturbed-sphere"},
                                           {"amp", 2.0},
                                           {"base", 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("cli analyze writes a per-point table for a closed shape") {
  const fs::path d = fresh_dir("analyze");
  REQUIRE(run_cli("analyze --n 2 --L 8 --shape sphere --p 2 --out " +
                  d.string()) == 0);
  const std::string csv = io::read_text_file((d / "analysis.csv").string());
  REQUIRE(csv.rfind("point,theta,phi,rho,S1,S2,lambda1,lambda2,h_meridian\n",
                    0) == 0);
  // Sphere of radius 2: S1 = 2, S2 = 1, eigenvalues 1, meridian distance 2.
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);  // header
  int parsed = 0;
  while (std::getline(rows, line)) {
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> f;
    while (std::getline(ls, tok, ',')) f.push_back(tok);
    REQUIRE(f.size() == 9);
    CHECK(std::stod(f[3]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::stod(f[4]) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::stod(f[5]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::stod(f[8]) == doctest::Approx(2.0).epsilon(1e-9));
    ++parsed;
  }
  CHECK(parsed == 9 * 18);  // every grid point lies in the sphere's domain
  CHECK(fs::exists(d / "intensity_form.json"));
}

TEST_CASE("cli analyze rejects ambiguous shape selection") {
  const fs::path d = fresh_dir("analyze_bad");
  CHECK(run_cli("analyze --n 1 --M 16 --shape sphere --field nope.json --out " +
                d.string()) == 2);
  CHECK(run_cli("analyze --n 1 --M 16 --out " + d.string()) == 2);
}

TEST_CASE("cli verify shape suite passes on the circle") {
  const fs::path d = fresh_dir("verify");
  REQUIRE(run_cli("verify --suite shapes --n 1 --M 128 --out " + d.string()) ==
          0);
  const json rep = io::read_json_file((d / "verify.json").string());
  CHECK(rep.at("pass") == true);
  CHECK(rep.at("shapes").at("cases").size() == 8);
}

TEST_CASE("cli solve runs a bundled problem end to end") {
  const fs::path d = fresh_dir("solve");
  const std::string problem =
      std::string(KUMMER_FIXTURES_DIR) + "/problem_power_s2.json";
  REQUIRE(run_cli("solve --problem " + problem + " --L 12 --out " +
                  d.string()) == 0);
  const json rep = io::read_json_file((d / "report.json").string());
  CHECK(rep.at("pass") == true);
  CHECK(rep.at("barrier") == "strictly interior");
  // g = 1/rho forces the unit sphere.
  const ScalarField rho =
      io::field_from_json(io::read_json_file((d / "rho.json").string()));
  CHECK(sup_norm(rho.values() - 1.0) < 1e-6);
  const std::string trace = io::read_text_file((d / "trace.csv").string());
  CHECK(trace.rfind("t,iteration,step,residual\n", 0) == 0);

  CHECK(run_cli("solve --problem /definitely/missing.json --out " +
                d.string()) != 0);
}

TEST_CASE("cli raytrace is byte-reproducible for a fixed seed") {
  const fs::path d1 = fresh_dir("rt_a"), d2 = fresh_dir("rt_b"),
                 d3 = fresh_dir("rt_c");
  const std::string base = "raytrace --n 2 --shape sphere --rays 20000 ";
  REQUIRE(run_cli(base + "--seed 7 --out " + d1.string()) == 0);
  REQUIRE(run_cli(base + "--seed 7 --out " + d2.string()) == 0);
  REQUIRE(run_cli(base + "--seed 8 --out " + d3.string()) == 0);
  const std::string h1 = io::read_text_file((d1 / "histogram.csv").string());
  const std::string h2 = io::read_text_file((d2 / "histogram.csv").string());
  const std::string h3 = io::read_text_file((d3 / "histogram.csv").string());
  CHECK(h1 == h2);
  CHECK(h1 != h3);
  const json side = io::read_json_file((d1 / "run.json").string());
  CHECK(side.at("seed") == 7);
  CHECK(side.at("pass") == true);
}

TEST_CASE("cli raytrace configuration errors exit with code 2") {
  const fs::path d = fresh_dir("rt_bad");
  CHECK(run_cli("raytrace --n 2 --shape sphere --out " + d.string()) == 2);
  CHECK(run_cli("raytrace --n 2 --shape torus --seed 3 --out " + d.string()) ==
        2);
}

TEST_CASE("cli raytrace reports check failure through the exit code") {
  const fs::path d = fresh_dir("rt_fail");
  // An impossible tolerance turns the (tiny) focal drift into a failure.
  CHECK(run_cli("raytrace --n 2 --shape ellipsoid --ecc 0.5 --rays 2000 "
                "--seed 5 --focal-tol 0 --out " +
                d.string()) == 1);
  const json side = io::read_json_file((d / "run.json").string());
  CHECK(side.at("pass") == false);
}

TEST_CASE("cli convergence study writes a refinement table") {
  const fs::path d = fresh_dir("conv");
  REQUIRE(run_cli("convergence --family exp-axis --n 1 --levels 64 128 --out " +
                  d.string()) == 0);
  const std::string csv =
      io::read_text_file((d / "convergence.csv").string());
  CHECK(csv.rfind("level,points,sup_rel_error,order\n", 0) == 0);
  CHECK(count_lines(csv) == 3);
}
