#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "conc/errors.hpp"
#include "conc/run.hpp"

namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (ch != ' ') {
      item += ch;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify sharp Gaussian and Euclidean concentration inequalities on grids"};
  std::string config_path, out, families, radii;
  std::optional<int> grid_m, jobs;
  std::optional<std::uint64_t> seed;
  std::optional<double> c_gauss, c_n;
  app.add_option("--config", config_path, "config file (key = value sections)")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory (default: [run] out, then $CONC_OUT_DIR, then conc-out)");
  app.add_option("--grid-m", grid_m, "cells per axis for n = 2 scenarios");
  app.add_option("--families", families, "comma-separated family names to run");
  app.add_option("--radii", radii, "comma-separated enlargement radii");
  app.add_option("--seed", seed, "seed for randomized generators");
  app.add_option("--c-gauss", c_gauss, "constant of the Gaussian deficit bound");
  app.add_option("--c-n", c_n, "constant of the Euclidean deficit bound (all n)");
  app.add_option("--jobs", jobs, "worker threads");
  CLI11_PARSE(app, argc, argv);

  try {
    conc::RunConfig config = config_path.empty() ? conc::default_config() : conc::load_config(config_path);
    if (!out.empty()) config.out_dir = out;
    if (grid_m) {
      config.cells = *grid_m;
      for (auto& sc : config.scenarios) {
        if (sc.family.dim == 2) sc.cells.reset();
      }
    }
    if (!families.empty()) config.families = split(families);
    if (!radii.empty()) {
      config.radii = conc::parse_list(radii);
      for (auto& sc : config.scenarios) sc.radii.reset();
    }
    if (seed) config.seed = *seed;
    if (c_gauss) config.constants.c_gauss = *c_gauss;
    if (c_n) config.constants.c_n_override = *c_n;
    if (jobs) config.jobs = *jobs;
    config.constants.validate();

    const auto dir = conc::output_directory(config);
    std::filesystem::create_directories(dir);
    const conc::RunResult result = conc::evaluate(config);
    const int status = conc::run_outputs(result, config, dir);
    for (const auto& row : result.rows) {
      if (!row.report.pass) {
        fmt::print(stderr, "FAIL {} {} r={:g} slack={:.3g}\n", row.scenario_id, row.report.id, row.report.r,
                   row.report.slack);
      }
    }
    for (const auto& e : result.errors) fmt::print(stderr, "ERROR {}\n", e);
    const auto exponent = [](const conc::SharpnessResult& s) {
      return s.fit ? fmt::format("{:.3f}", s.fit->exponent) : std::string("n/a");
    };
    fmt::print("{} checks, {} failed, {} errors; gauss_exponent {} ({}), euclid_exponent {} ({}); output in {}\n",
               result.rows.size(), result.failed(), result.errors.size(), exponent(result.gauss_sharpness),
               result.gauss_sharpness.family, exponent(result.euclid_sharpness), result.euclid_sharpness.family,
               dir.string());
    return status;
  } catch (const conc::ConfigError& ex) {
    fmt::print(stderr, "config error: {}\n", ex.what());
    return 2;
  } catch (const std::exception& ex) {
    fmt::print(stderr, "error: {}\n", ex.what());
    return 2;
  }
}
