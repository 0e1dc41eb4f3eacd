#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "doctest.h"
#include "qhhg/config.hpp"
#include "qhhg/run.hpp"

using namespace qhhg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qhhg_test_" + name);
  fs::remove_all(dir);
  return dir;
}

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("a full spectrum config parses") {
    const RunConfig c = parse_config(
        "# ZnO, coherent drive\n"
        "run.kind = spectrum\n"
        "field.kind = coherent\n"
        "field.mean_photons = 7.35e11\n"
        "pulse.omega0 = 0.005\n"
        "pulse.g0 = 4e-8\n"
        "pulse.flat_cycles = 10\n"
        "pulse.ramp_cycles = 3\n"
        "grid.samples_per_cycle = 512   # per optical cycle\n");
    CHECK(c.kind == RunKind::Spectrum);
    REQUIRE(c.field.has_value());
    CHECK(c.field->kind == FieldKind::Coherent);
    CHECK(std::abs(c.field->alpha) == doctest::Approx(8.5732e5).epsilon(1e-4));
    CHECK(c.samples_per_cycle == 512);
    CHECK(c.entries.size() == 8);
    CHECK(c.band.hash() == BandModel::zno().hash());
  }

  TEST_CASE("custom band coefficients") {
    const RunConfig c = parse_config(
        "run.kind = floquet\nfield.kind = bsv\nfield.r = 2\nband.a = 4\nband.b1 = -0.1\nband.b2 = 0.01\n");
    CHECK(c.band.l_max() == 2);
    CHECK(c.band.a() == 4.0);
    CHECK(c.field->r == 2.0);
  }

  TEST_CASE("errors name the key and line") {
    CHECK(error_line("run.kind = floquet\nfield.kind = thermal\nfield.mean_photons = 1e6\nbogus.key = 1\n") == 4);
    CHECK(error_key("run.kind = floquet\nfield.kind = thermal\nfield.mean_photons = 1e6\nbogus.key = 1\n") == "bogus.key");
    CHECK(error_line("run.kind = floquet\nrun.kind = floquet\n") == 2);
    CHECK(error_line("run.kind = floquet\nfield.kind = thermal\nfield.mean_photons = lots\n") == 3);
    CHECK(error_key("run.kind = spectrum\n") == "field.kind");
    CHECK(error_key("run.kind = cutoff\nfield.kind = fock\n") == "field.mean_photons");
    CHECK(error_key("field.kind = fock\n") == "run.kind");
    CHECK(error_key("run.kind = floquet\nfield.kind = laser\n") == "field.kind");
    CHECK(error_key("run.kind = floquet\nfield.kind = coherent\nfield.mean_photons = 1\nfloquet.n_max = 10\n") ==
          "floquet.n_max");
    CHECK(error_line("run.kind floquet\n") == 1);
    CHECK(error_line("run.kind =\n") == 1);
  }

  TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(load_config("/nonexistent/qhhg.cfg"), ConfigError);
  }
}

TEST_SUITE("run") {
  TEST_CASE("floquet run is byte-identical on repeat and writes a manifest") {
    const std::string text =
        "run.kind = floquet\nfield.kind = thermal\nfield.mean_photons = 7.35e11\nfloquet.n_max = 41\n";
    RunConfig c = parse_config(text);
    c.out_dir = scratch("floquet_a").string();
    const RunSummary a = run(c);
    c.out_dir = scratch("floquet_b").string();
    const RunSummary b = run(c);
    CHECK(slurp(fs::path(a.out_dir) / "floquet.csv") == slurp(fs::path(b.out_dir) / "floquet.csv"));
    const auto manifest = nlohmann::json::parse(slurp(fs::path(a.out_dir) / "manifest.json"));
    CHECK(manifest.at("run_kind") == "floquet");
    CHECK(manifest.at("band_hash") == BandModel::zno().hash());
    const auto& conv = manifest.at("convergence");
    CHECK(conv.at("tail_mass").get<double>() < 1e-12);
    CHECK(conv.at("radial_doubling_delta").get<double>() < 0.01);
    CHECK(a.files.back().ends_with("manifest.json"));
  }

  TEST_CASE("cutoff run covers every field kind") {
    RunConfig c = parse_config("run.kind = cutoff\nfield.mean_photons = 7.35e11\n");
    c.out_dir = scratch("cutoff").string();
    run(c);
    const auto j = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "cutoff.json"));
    CHECK(j.at("cutoff").at("coherent").get<double>() == doctest::Approx(25.8).epsilon(0.004));
    CHECK(j.at("cutoff").at("thermal").get<double>() > j.at("cutoff").at("fock").get<double>());
  }

  TEST_CASE("validate-app run writes the report") {
    RunConfig c = parse_config("run.kind = validate-app\napp.fock_n = 50\napp.bsv_r = 0.5\n");
    c.out_dir = scratch("app").string();
    run(c);
    const auto j = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "app_report.json"));
    CHECK(j.at("fock_n") == 50);
    CHECK(j.at("photon_number_app").get<double>() == doctest::Approx(51.0).epsilon(1e-6));
  }
}
