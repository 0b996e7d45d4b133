#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "csl/cli/commands.hpp"
#include "csl/cli/figures.hpp"
#include "csl/cli/scenario.hpp"
#include "csl/continuum_rates.hpp"

using namespace csl;
using namespace csl::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "cslrate_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string data(const std::string& name) { return std::string(CSL_DATA_DIR) + "/" + name; }

const char* kCube = R"({
  "params": {"lambda": 1e-8, "r_c": 1e-7},
  "geometry": {"kind": "cube", "density": 1e30, "dims": {"l": 1e-6}},
  "displacement": {"dz": 1e-10}
})";

int shell(const std::string& args) {
  const std::string cmd = std::string(CSLRATE_BIN) + " " + args + " > " +
                          (scratch() / "stdout.txt").string() + " 2> " +
                          (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& name) { return read_file((scratch() / name).string()); }

}  // namespace

TEST_CASE("rate: cube scenario happy path and round trip") {
  std::ostringstream out, err;
  REQUIRE(run_rate({write("cube.json", kCube), "continuous"}, out, err) == kOk);
  const json report = json::parse(out.str());
  CHECK(report["method"] == "continuous");
  CHECK(std::isfinite(report["gamma"].get<double>()));
  CHECK(report["gamma"].get<double>() > 0.0);
  CHECK(report["validity"].empty());
  CHECK(report["nucleon_count"].get<double>() == doctest::Approx(1e12));

  // The echo re-parses as a scenario and gives the same rate.
  const Scenario again = parse_scenario(out.str());
  CHECK(continuum::gamma_cuboid(*again.geometry, again.displacement, again.params).gamma ==
        report["gamma"].get<double>());
}

TEST_CASE("rate: gpr with a small delta carries a violated flag") {
  std::ostringstream out, err;
  REQUIRE(run_rate({write("cube.json", kCube), "gpr"}, out, err) == kOk);
  const json report = json::parse(out.str());
  bool found = false;
  for (const auto& f : report["validity"]) {
    if (f["name"] == "delta_regime") {
      found = true;
      CHECK(f["status"] == "violated");
    }
  }
  CHECK(found);
}

TEST_CASE("rate: discrete needs a lattice") {
  std::ostringstream out, err;
  CHECK(run_rate({write("cube.json", kCube), "discrete"}, out, err) == kSchemaError);
  CHECK(out.str().empty());
  std::ostringstream out2, err2;
  REQUIRE(run_rate({data("cube_scenario.json"), "discrete"}, out2, err2) == kOk);
  CHECK(json::parse(out2.str())["method"] == "discrete");
}

TEST_CASE("rate: error paths produce no output") {
  std::ostringstream out, err;
  CHECK(run_rate({write("bad.json", "{\n  \"params\": {\n"), "continuous"}, out, err) ==
        kSchemaError);
  CHECK(out.str().empty());
  CHECK(err.str().find("line") != std::string::npos);

  std::ostringstream out2, err2;
  const std::string missing = R"({
  "params": {"lambda": 1e-8, "r_c": 1e-7},
  "geometry": {"kind": "cube", "density": 1e30, "dims": {}},
  "displacement": {"dz": 1e-10}
})";
  CHECK(run_rate({write("missing.json", missing), "continuous"}, out2, err2) == kSchemaError);
  CHECK(err2.str().find("geometry.dims.l") != std::string::npos);
  CHECK(err2.str().find("line 3") != std::string::npos);

  std::ostringstream out3, err3;
  const std::string sphere = R"({"params": {"lambda": 1e-8, "r_c": 1e-7},
  "geometry": {"kind": "sphere", "density": 1e30, "r": 1e-6}, "displacement": {"dz": 1e-9}})";
  CHECK(run_rate({write("sphere.json", sphere), "continuous"}, out3, err3) == kRegimeError);
  CHECK(out3.str().empty());
  std::ostringstream out4, err4;
  CHECK(run_rate({write("sphere.json", sphere), "small-delta"}, out4, err4) == kOk);

  std::ostringstream out5, err5;
  CHECK(run_rate({"/nonexistent/none.json", "continuous"}, out5, err5) == kIoError);
}

TEST_CASE("scenario parsing: kg/m^3 and inline dims") {
  const std::string text = R"({"params": {"lambda": 1e-8, "r_c": 1e-7, "m_n": 2.0},
  "geometry": {"kind": "cuboid", "density": 4.0, "density_unit": "kg/m^3",
               "lx": 1e-6, "ly": 2e-6, "lz": 3e-6},
  "displacement": {"dx": 1e-9}})";
  const Scenario s = parse_scenario(text);
  CHECK(s.geometry->density_n() == 2.0);
  CHECK(s.displacement.dx == 1e-9);
  CHECK(s.displacement.dz == 0.0);
  CHECK(to_json(s)["geometry"]["density_unit"] == "kg/m^3");
  CHECK_THROWS_AS(parse_scenario(R"({"params": {"lambda": -1, "r_c": 1e-7}})"), SchemaError);
}

TEST_CASE("layering: shipped stacks") {
  std::ostringstream out, err;
  REQUIRE(run_layering({data("cantilever_stack.json")}, out, err) == kOk);
  const json cant = json::parse(out.str());
  CHECK(cant["n_layers"] == 47);
  CHECK(cant["ratio"].get<double>() == doctest::Approx(27.3).epsilon(0.15));
  CHECK(cant["ratio_formula"].get<double>() == doctest::Approx(27.3).epsilon(0.01));
  CHECK(cant["uniform_reference"]["density"].get<double>() == doctest::Approx(4.7e3));
  CHECK(cant["decomposition"]["interface"].get<double>() > 0.0);
  // Odd layer count: no order decomposition.
  CHECK_FALSE(cant.contains("orders"));

  std::ostringstream out2, err2;
  REQUIRE(run_layering({data("uniform_stack.json")}, out2, err2) == kOk);
  const json uni = json::parse(out2.str());
  CHECK(uni["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  std::ostringstream out3, err3;
  REQUIRE(run_layering({data("ligo_stack.json")}, out3, err3) == kOk);
  const json ligo = json::parse(out3.str());
  CHECK(ligo["n_layers"] == 100000);
  CHECK(ligo["ratio"].get<double>() > 1e5 / std::sqrt(10.0));
  CHECK(ligo["ratio"].get<double>() < 1e5 * std::sqrt(10.0));
  CHECK(ligo.contains("orders"));

  // The report re-parses as a layer stack.
  CHECK_NOTHROW(parse_layer_scenario(out3.str()));
}

TEST_CASE("layering: schema errors") {
  std::ostringstream out, err;
  CHECK(run_layering({write("l1.json", R"({"d": 1e-4})")}, out, err) == kSchemaError);
  std::ostringstream out2, err2;
  CHECK(run_layering({write("l2.json", R"({"d": 1e-4, "layers": [{"thickness": -1, "density": 1}]})")},
                     out2, err2) == kSchemaError);
  std::ostringstream out3, err3;
  CHECK(run_layering({write("l3.json",
                            R"({"d": 1e-4, "alternating": {"n_pairs": 2.5, "l_odd": 1e-6,
                                "l_even": 1e-6, "rho_odd": 1, "rho_even": 2}})")},
                     out3, err3) == kSchemaError);
  CHECK(out.str().empty());
}

TEST_CASE("figure: columns, comments and determinism") {
  FigureArgs args{"fig1L", (scratch() / "fig1L.csv").string(), {}};
  std::ostringstream out, err;
  REQUIRE(run_figure(args, out, err) == kOk);
  const std::string first = read_file(args.out);
  std::ostringstream out2, err2;
  REQUIRE(run_figure(args, out2, err2) == kOk);
  CHECK(read_file(args.out) == first);

  std::istringstream lines(first);
  std::string line, header;
  int comments = 0, rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("# ", 0) == 0) ++comments;
    else if (header.empty()) header = line;
    else ++rows;
  }
  CHECK(header == "sweep_value,gamma_c,gamma_d,gamma_gpr,gamma_adler,gamma_alt_geometry");
  CHECK(rows == 201);
  CHECK(first.find("# density = 1e+30") != std::string::npos);
  CHECK(first.find("# Delta = ") != std::string::npos);
  CHECK(first.find(",,") != std::string::npos);  // absent series stay empty
}

TEST_CASE("figure tables: shapes and expected features") {
  const auto fig2 = figure_table("fig2L", {});
  bool note = false;
  for (const auto& c : fig2.comments) note |= c.find("unscaled") != std::string::npos;
  CHECK(note);
  // Plateau for L >= 10 r_c.
  double lo = 1e300, hi = 0.0;
  for (const auto& row : fig2.rows) {
    if (*row[0] >= 10.0 - 1e-9) {
      lo = std::min(lo, *row[1]);
      hi = std::max(hi, *row[1]);
    }
  }
  CHECK((hi - lo) / hi <= 0.01);

  const auto fig8 = figure_table("fig8R", {});
  for (const auto& row : fig8.rows) {
    REQUIRE(row[2].has_value());
    const double ratio = *row[2] / *row[1];
    CHECK(ratio >= 1e3);
    CHECK(ratio <= 1e5);
  }

  FigureOptions big;
  big.l = 1e-8;  // n up to 1e4 per side: the guard empties gamma_d beyond 464
  const auto guarded = figure_table("fig8R", big);
  CHECK_FALSE(guarded.rows.back()[2].has_value());
  bool explained = false;
  for (const auto& c : guarded.comments) explained |= c.find("1e8") != std::string::npos;
  CHECK(explained);
  CHECK_THROWS(figure_table("fig3", {}));
}

TEST_CASE("sweep and em-error") {
  SweepArgs s;
  s.scenario = write("cube.json", kCube);
  s.variable = "L";
  s.min = 1e-7;
  s.max = 1e-5;
  s.points = 5;
  s.scale = "log";
  std::ostringstream out, err;
  REQUIRE(run_sweep(s, out, err) == kOk);
  CHECK(out.str().find("sweep_value,gamma_c") != std::string::npos);

  s.min = 0.0;
  std::ostringstream out2, err2;
  CHECK(run_sweep(s, out2, err2) == kSchemaError);
  CHECK(out2.str().empty());

  SweepArgs layers;
  layers.scenario = data("ligo_stack.json");
  layers.variable = "N_layers";
  layers.min = 1;
  layers.max = 100;
  layers.points = 4;
  std::ostringstream out3, err3;
  REQUIRE(run_sweep(layers, out3, err3) == kOk);
  CHECK(out3.str().find("sweep_value,eta_total,eta_boundary,eta_interface,ratio") !=
        std::string::npos);

  EmErrorArgs em;
  em.points = 4;
  std::ostringstream out4, err4;
  REQUIRE(run_em_error(em, out4, err4) == kOk);
  CHECK(out4.str().find("relative_error") != std::string::npos);
}

TEST_CASE("binary: exit codes and thread-count independence") {
  const std::string cube = write("cube.json", kCube);
  CHECK(shell("rate " + cube) == 0);
  CHECK(slurp("stdout.txt").find("\"gamma\"") != std::string::npos);
  CHECK(shell("rate " + write("bad.json", "{")) == 2);
  CHECK(slurp("stdout.txt").empty());
  CHECK(shell("rate " + cube + " --method nonsense") == 2);
  CHECK(shell("") == 2);
  CHECK(shell("figure fig5 --out /nonexistent/dir/x.csv") == 4);
  CHECK(shell("layering " + data("cantilever_stack.json")) == 0);

  const std::string a = (scratch() / "t1.csv").string(), b = (scratch() / "t8.csv").string();
  CHECK(std::system(("CSLRATE_THREADS=1 " + std::string(CSLRATE_BIN) + " figure fig7R --out " + a).c_str()) == 0);
  CHECK(std::system(("CSLRATE_THREADS=8 " + std::string(CSLRATE_BIN) + " figure fig7R --out " + b).c_str()) == 0);
  CHECK(read_file(a) == read_file(b));
}
