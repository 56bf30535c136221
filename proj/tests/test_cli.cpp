#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sbldoa/commands.hpp"

using namespace sbldoa;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sbldoa_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("single mode writes spectrum, estimates, and trace") {
  const fs::path dir = fresh_dir("single");
  ExperimentConfig cfg;
  cfg.num_sources = 2;
  cfg.angle_min = -30.0;
  cfg.angle_max = 30.0;
  cfg.snapshots = 80;
  cfg.snr_db = 15.0;
  cfg.seed = 4;
  cfg.grid_step = 2.0;
  cfg.out_dir = dir.string();

  REQUIRE(run_command("single", cfg) == kExitOk);

  const auto spectrum = lines_of(slurp(dir / "spectrum.csv"));
  REQUIRE(spectrum.size() == 1 + 91);  // header + grid points
  CHECK(spectrum[0] == "angle_deg,power_db,is_peak");
  int peak_rows = 0;
  for (std::size_t i = 1; i < spectrum.size(); ++i)
    if (spectrum[i].size() >= 2 && spectrum[i].substr(spectrum[i].size() - 2) == ",1")
      ++peak_rows;
  CHECK(peak_rows == 2);

  const auto estimates = lines_of(slurp(dir / "estimates.csv"));
  REQUIRE(estimates.size() == 1 + 2);
  CHECK(estimates[0] == "true_deg,estimated_deg,abs_error_deg");

  const auto trace = lines_of(slurp(dir / "trace.csv"));
  CHECK(trace[0] == "iter,delta_change,alpha,grid_moves");
  CHECK(trace.size() >= 2);
}

TEST_CASE("single mode is byte-for-byte reproducible") {
  ExperimentConfig cfg;
  cfg.num_sources = 2;
  cfg.angle_min = -20.0;
  cfg.angle_max = 20.0;
  cfg.snapshots = 60;
  cfg.seed = 11;
  cfg.grid_step = 2.0;

  const fs::path a = fresh_dir("repeat_a");
  cfg.out_dir = a.string();
  REQUIRE(run_command("single", cfg) == kExitOk);

  const fs::path b = fresh_dir("repeat_b");
  cfg.out_dir = b.string();
  REQUIRE(run_command("single", cfg) == kExitOk);

  CHECK(slurp(a / "spectrum.csv") == slurp(b / "spectrum.csv"));
  CHECK(slurp(a / "estimates.csv") == slurp(b / "estimates.csv"));
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));

  const fs::path c = fresh_dir("repeat_c");
  cfg.seed = 12;
  cfg.out_dir = c.string();
  REQUIRE(run_command("single", cfg) == kExitOk);
  CHECK(slurp(a / "estimates.csv") != slurp(c / "estimates.csv"));
}

TEST_CASE("sweep mode writes one row per value") {
  const fs::path dir = fresh_dir("sweep");
  ExperimentConfig cfg;
  cfg.num_sources = 2;
  cfg.angle_min = -30.0;
  cfg.angle_max = 30.0;
  cfg.snapshots = 50;
  cfg.grid_step = 2.0;
  cfg.has_sweep = true;
  cfg.sweep_variable = SweepVariable::snr_db;
  cfg.sweep_values = {0.0, 20.0};
  cfg.sweep_trials = 2;
  cfg.threads = 1;
  cfg.out_dir = dir.string();

  REQUIRE(run_command("sweep", cfg) == kExitOk);
  const auto rows = lines_of(slurp(dir / "sweep.csv"));
  REQUIRE(rows.size() == 1 + 2);
  CHECK(rows[0] == "sweep_value,rmse_deg,conv_rate,mean_iters,failures");
  CHECK(rows[1].substr(0, rows[1].find(',')) == "0.000000");
  CHECK(rows[2].substr(0, rows[2].find(',')) == "20.000000");
}

TEST_CASE("mode and config errors map to exit codes") {
  ExperimentConfig cfg;
  cfg.out_dir = fresh_dir("badmode").string();
  CHECK(run_command("triangulate", cfg) == kExitConfig);
  // sweep mode without a sweep block is a config error.
  CHECK(run_command("sweep", cfg) == kExitConfig);
}

TEST_CASE("default full-size run finds ten peaks on the one-degree grid") {
  const fs::path dir = fresh_dir("fullsize");
  ExperimentConfig cfg;  // documented defaults: 10 sources, 181-point grid
  cfg.source_mode = SourceMode::even;
  cfg.out_dir = dir.string();

  REQUIRE(run_command("single", cfg) == kExitOk);
  const auto spectrum = lines_of(slurp(dir / "spectrum.csv"));
  REQUIRE(spectrum.size() == 1 + 181);
  int peak_rows = 0;
  for (std::size_t i = 1; i < spectrum.size(); ++i)
    if (spectrum[i].size() >= 2 && spectrum[i].substr(spectrum[i].size() - 2) == ",1")
      ++peak_rows;
  CHECK(peak_rows == 10);

  const auto estimates = lines_of(slurp(dir / "estimates.csv"));
  REQUIRE(estimates.size() == 1 + 10);
  // Ten evenly spaced sources between -60 and 60 recovered to within a degree.
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    const std::string& row = estimates[i];
    const std::size_t last = row.rfind(',');
    const double err = std::stod(row.substr(last + 1));
    CHECK(err <= 1.0);
  }
}
