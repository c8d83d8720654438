#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conc/scenario.hpp"
#include "conc/verify.hpp"

namespace conc {

/// One [scenario.<name>] section: a family swept over several eps values.
struct ScenarioConfig {
  std::string name;
  ScenarioFamily family;  // eps is taken from the list below
  std::vector<double> eps{0.0};
  std::optional<int> cells;
  std::optional<double> half_width;
  std::optional<std::vector<double>> radii;
  std::optional<std::uint64_t> seed;
};

/// Closed-form eps sweep used for the fitted sharpness exponents.
struct SharpnessConfig {
  Family gauss_family = Family::TwoHalfspaceUnion;
  Family euclid_family = Family::Box;
  double r = 0.5;
  double mass = 0.5;
  std::vector<double> eps{0.02, 0.04, 0.08, 0.16};
};

struct RunConfig {
  int cells = 512;
  int cells_3d = 128;
  std::optional<double> gauss_half_width;  // unset: max(6, |s| + max r + 2)
  double euclid_half_width = 3.2;
  std::vector<double> radii{0.1, 0.25, 0.5, 1.0, 2.0};
  int layercake_steps = 8;
  Constants constants;
  std::optional<std::filesystem::path> out_dir;
  std::uint64_t seed = 1;
  int jobs = 1;
  SharpnessConfig sharpness;
  std::vector<ScenarioConfig> scenarios;
  /// Family names to keep; empty keeps everything.
  std::vector<std::string> families;
};

/// The shipped corpus.
RunConfig default_config();

/// Parses the key = value config format. Keys that are not given keep their defaults; if
/// any [scenario.<name>] section is present the listed scenarios replace the default corpus.
/// Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Comma-separated list of reals. Throws ConfigError.
std::vector<double> parse_list(const std::string& text);

struct ScenarioJob {
  ScenarioFamily family;
  GridSpec spec;
  std::vector<double> radii;
};

/// One job per (scenario, eps), in config order, after the family filter.
std::vector<ScenarioJob> expand(const RunConfig& config);

struct ReportRow {
  std::string scenario_id;
  std::string family;
  double eps = 0.0;
  int n = 2;
  int m = 0;
  DeficitReport report;
};

struct SharpnessResult {
  std::string family;
  std::vector<std::pair<double, double>> points;  // (alpha, deficit), closed form
  std::optional<SharpnessFit> fit;
  std::string error;
};

struct RunResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> errors;
  SharpnessResult gauss_sharpness;
  SharpnessResult euclid_sharpness;
  std::vector<SharpnessResult> family_sharpness;

  std::size_t failed() const;
  bool ok() const { return failed() == 0 && errors.empty(); }
};

/// Every report for one job. Covering-lemma checks over the direction grid are folded into
/// one row per radius holding the direction with the least margin.
std::vector<ReportRow> evaluate_job(const ScenarioJob& job, const RunConfig& config);

/// Closed-form (alpha, deficit) points of `family` over the sharpness eps list.
SharpnessResult sharpness_points(Setting setting, Family family, const RunConfig& config);

/// Runs every job (on config.jobs threads) and the sharpness fits. No file output.
RunResult evaluate(const RunConfig& config);

std::string to_csv(const RunResult& result);
std::string to_summary_json(const RunResult& result, const RunConfig& config);
/// Log-log scatter of deficit against asymmetry for one family key ("gauss:box").
std::string to_svg(const RunResult& result, const std::string& family_key);

/// Evaluates and writes results.csv, summary.json and one SVG per family into the output
/// directory. Returns the process exit status: 0 iff no check failed and no job errored.
int run(const RunConfig& config);
/// Writes the files of an already evaluated run; same return value as run().
int run_outputs(const RunResult& result, const RunConfig& config, const std::filesystem::path& dir);

/// Output directory: config value, else $CONC_OUT_DIR, else "conc-out".
std::filesystem::path output_directory(const RunConfig& config);

}  // namespace conc
