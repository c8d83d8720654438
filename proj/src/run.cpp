#include "conc/run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "conc/errors.hpp"
#include "conc/parallel.hpp"
#include "conc/scalar_gauss.hpp"

#ifndef CONC_BUILD_ID
#define CONC_BUILD_ID "unknown"
#endif

namespace conc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, v));
  }
  return out;
}

long long parse_integer(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, v));
  }
  return out;
}

int parse_positive_int(const std::string& key, const std::string& raw) {
  const long long v = parse_integer(key, raw);
  if (v <= 0 || v > 1'000'000) throw ConfigError(fmt::format("{}: must be a positive integer", key));
  return static_cast<int>(v);
}

std::vector<double> parse_radii(const std::string& key, const std::string& raw) {
  std::vector<double> radii = parse_list(raw);
  if (radii.empty()) throw ConfigError(key + ": empty list");
  for (double r : radii) {
    if (!(r > 0.0)) throw ConfigError(fmt::format("{}: radii must be positive", key));
  }
  return radii;
}

/// "cube", "ball:<radius>" or "box:<a>,<b>[,<c>]" (half-extents).
ConvexBody parse_body(const std::string& raw, int dim) {
  const std::string v = trim(raw);
  if (v == "cube") return ConvexBody::unit_cube(dim);
  const auto colon = v.find(':');
  const std::string kind = trim(v.substr(0, colon));
  const std::string args = colon == std::string::npos ? std::string{} : v.substr(colon + 1);
  try {
    if (kind == "ball") return ConvexBody::ball(dim, parse_real("body", args));
    if (kind == "box") {
      const auto e = parse_list(args);
      if (e.size() != static_cast<std::size_t>(dim)) {
        throw ConfigError(fmt::format("body: box needs {} half-extents", dim));
      }
      return ConvexBody::box(dim, {e[0], e[1], dim == 3 ? e[2] : 0.0});
    }
  } catch (const InvalidArgument& ex) {
    throw ConfigError(std::string("body: ") + ex.what());
  }
  throw ConfigError("body: expected cube, ball:<r> or box:<half-extents>, got '" + v + "'");
}

template <typename T>
T named(const std::string& key, const std::string& value, T (*from)(const std::string&)) {
  try {
    return from(trim(value));
  } catch (const InvalidArgument& ex) {
    throw ConfigError(key + ": " + ex.what());
  }
}

ScenarioConfig parse_scenario(const std::string& name, const boost::property_tree::ptree& tree) {
  ScenarioConfig sc;
  sc.name = name;
  std::map<std::string, std::string> kv;
  for (const auto& [k, v] : tree) kv[k] = v.data();
  const auto key = [&](const std::string& k) { return "scenario." + name + "." + k; };
  if (!kv.count("setting") || !kv.count("family")) {
    throw ConfigError("scenario." + name + ": setting and family are required");
  }
  sc.family.setting = named(key("setting"), kv["setting"], setting_from_string);
  sc.family.family = named(key("family"), kv["family"], family_from_string);
  std::optional<std::string> body;
  for (const auto& [k, v] : kv) {
    if (k == "setting" || k == "family") continue;
    if (k == "dim") {
      const long long d = parse_integer(key(k), v);
      if (d != 2 && d != 3) throw ConfigError(key(k) + ": must be 2 or 3");
      sc.family.dim = static_cast<int>(d);
    } else if (k == "eps") {
      sc.eps = parse_list(v);
      if (sc.eps.empty()) throw ConfigError(key(k) + ": empty list");
    } else if (k == "mass") {
      sc.family.mass = parse_real(key(k), v);
    } else if (k == "volume") {
      sc.family.volume = parse_real(key(k), v);
    } else if (k == "body") {
      body = v;
    } else if (k == "seed") {
      sc.seed = static_cast<std::uint64_t>(parse_integer(key(k), v));
    } else if (k == "cells") {
      sc.cells = parse_positive_int(key(k), v);
    } else if (k == "half_width") {
      sc.half_width = parse_real(key(k), v);
    } else if (k == "radii") {
      sc.radii = parse_radii(key(k), v);
    } else {
      throw ConfigError("unknown key " + key(k));
    }
  }
  if (body) sc.family.body = parse_body(*body, sc.family.dim);
  return sc;
}

ScenarioConfig scenario(std::string name, Setting setting, Family family, std::vector<double> eps,
                        int dim = 2) {
  ScenarioConfig sc;
  sc.name = std::move(name);
  sc.family.setting = setting;
  sc.family.family = family;
  sc.family.dim = dim;
  sc.eps = std::move(eps);
  return sc;
}

std::string family_key(const ScenarioFamily& f) { return to_string(f.setting) + ":" + to_string(f.family); }

bool selected(const RunConfig& config, const ScenarioFamily& f) {
  if (config.families.empty()) return true;
  for (const std::string& name : config.families) {
    if (name == to_string(f.family) || name == family_key(f)) return true;
    if (name == "shifted-slab" && f.family == Family::ShiftedSlab) return true;
  }
  return false;
}

ReportRow row_for(const ScenarioJob& job, DeficitReport report) {
  ReportRow row;
  row.scenario_id = job.family.id();
  row.family = to_string(job.family.family);
  row.eps = job.family.eps;
  row.n = job.family.dim;
  row.m = job.spec.cells;
  row.report = std::move(report);
  return row;
}

double margin(const DeficitReport& r) { return r.slack + r.lhs.err + r.rhs.err; }

std::vector<ReportRow> gaussian_rows(const ScenarioJob& job, const RunConfig& config) {
  const Scenario sc = generate_family(job.family, job.spec);
  const GaussianSubject subject(sc.set);
  const std::vector<Vec> directions = sphere_directions(job.family.dim);
  std::vector<ReportRow> rows;
  for (double r : job.radii) {
    rows.push_back(row_for(job, concentration_check(subject, r)));
    rows.push_back(row_for(job, gauss_deficit_report(subject, r, config.constants)));
    if (r <= 1.0) {
      std::optional<DeficitReport> worst;
      for (const Vec& w : directions) {
        DeficitReport rep = covering_lemma_check(subject, w, r);
        if (!worst || margin(rep) < margin(*worst)) worst = std::move(rep);
      }
      rows.push_back(row_for(job, std::move(*worst)));
    }
    rows.push_back(row_for(job, layercake_check(subject, r, config.layercake_steps)));
  }
  return rows;
}

std::vector<ReportRow> euclidean_rows(const ScenarioJob& job, const RunConfig& config) {
  const Scenario sc = generate_family(job.family, job.spec);
  const ConvexBody K = job.family.reference();
  const EuclideanSubject subject(sc.set, K);
  const bool matching = std::abs(job.family.target_volume() - K.volume()) <= 1e-12 * K.volume();
  std::vector<ReportRow> rows;
  for (double r : job.radii) {
    if (matching) {
      rows.push_back(row_for(job, euclid_deficit_report(subject, r, config.constants)));
      rows.push_back(row_for(job, monotone_cover_check(subject, r)));
    }
    rows.push_back(row_for(job, layercake_euclid_check(subject, r, config.layercake_steps)));
  }
  rows.push_back(row_for(job, bm_report(subject, config.constants)));
  return rows;
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.12g}", v);
}

nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::ordered_json sharpness_json(const SharpnessResult& s) {
  nlohmann::ordered_json j;
  j["family"] = s.family;
  j["exponent"] = s.fit ? json_number(s.fit->exponent) : nlohmann::ordered_json(nullptr);
  j["intercept"] = s.fit ? json_number(s.fit->intercept) : nlohmann::ordered_json(nullptr);
  auto pts = nlohmann::ordered_json::array();
  for (const auto& [a, d] : s.points) pts.push_back({json_number(a), json_number(d)});
  j["points"] = pts;
  if (!s.error.empty()) j["error"] = s.error;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real("list", item));
  return out;
}

RunConfig default_config() {
  using S = Setting;
  using F = Family;
  RunConfig c;
  auto& v = c.scenarios;
  v.push_back(scenario("tilted", S::Gaussian, F::TiltedHalfspace, {0.0, 0.1}));
  v.push_back(scenario("slab", S::Gaussian, F::ShiftedSlab, {0.0, 0.02, 0.05}));
  v.push_back(scenario("union", S::Gaussian, F::TwoHalfspaceUnion, {0.0, 0.05, 0.16}));
  v.push_back(scenario("gauss-ball", S::Gaussian, F::CenteredBall, {0.0, 0.3}));
  v.push_back(scenario("gauss-box", S::Gaussian, F::Box, {0.0, 0.5}));
  v.push_back(scenario("tilted-heavy", S::Gaussian, F::TiltedHalfspace, {0.1}));
  v.back().family.mass = 0.8;
  v.push_back(scenario("slab-light", S::Gaussian, F::ShiftedSlab, {0.05}));
  v.back().family.mass = 0.3;
  v.push_back(scenario("tilted-3d", S::Gaussian, F::TiltedHalfspace, {0.1}, 3));
  v.back().radii = std::vector<double>{0.25, 1.0};
  v.push_back(scenario("gauss-ball-3d", S::Gaussian, F::CenteredBall, {0.0}, 3));
  v.back().radii = std::vector<double>{0.25, 1.0};
  v.push_back(scenario("box", S::Euclidean, F::Box, {0.0, 0.25, 1.0}));
  v.push_back(scenario("disk", S::Euclidean, F::CenteredBall, {0.0, 0.3}));
  v.push_back(scenario("perturbed", S::Euclidean, F::PerturbedK, {0.0, 0.2}));
  v.push_back(scenario("homothety", S::Euclidean, F::PerturbedK, {0.0}));
  v.back().family.volume = 4.0;
  v.push_back(scenario("box-3d", S::Euclidean, F::Box, {3.0}, 3));
  v.back().radii = std::vector<double>{0.25, 1.0};
  return c;
}

RunConfig parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& ex) {
    throw ConfigError(fmt::format("config line {}: {}", ex.line(), ex.message()));
  }
  RunConfig c = default_config();
  std::vector<ScenarioConfig> scenarios;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("key '" + section + "' must be inside a section");
    const auto unknown = [&](const std::string& k) { return ConfigError("unknown key " + section + "." + k); };
    if (section == "grid") {
      for (const auto& [k, v] : body) {
        const std::string key = "grid." + k;
        if (k == "cells") c.cells = parse_positive_int(key, v.data());
        else if (k == "cells_3d") c.cells_3d = parse_positive_int(key, v.data());
        else if (k == "gauss_half_width") {
          if (trim(v.data()) == "auto") c.gauss_half_width.reset();
          else c.gauss_half_width = parse_real(key, v.data());
        } else if (k == "euclid_half_width") c.euclid_half_width = parse_real(key, v.data());
        else throw unknown(k);
      }
    } else if (section == "run") {
      for (const auto& [k, v] : body) {
        const std::string key = "run." + k;
        if (k == "radii") c.radii = parse_radii(key, v.data());
        else if (k == "layercake_steps") c.layercake_steps = parse_positive_int(key, v.data());
        else if (k == "seed") c.seed = static_cast<std::uint64_t>(parse_integer(key, v.data()));
        else if (k == "jobs") c.jobs = parse_positive_int(key, v.data());
        else if (k == "out") c.out_dir = trim(v.data());
        else if (k == "families") {
          c.families.clear();
          std::stringstream ss(v.data());
          for (std::string item; std::getline(ss, item, ',');) {
            if (!trim(item).empty()) c.families.push_back(trim(item));
          }
        } else throw unknown(k);
      }
    } else if (section == "constants") {
      for (const auto& [k, v] : body) {
        const std::string val = trim(v.data());
        if (k == "c_gauss") c.constants.c_gauss = val == "default" ? kDefaultCGauss : parse_real("constants.c_gauss", val);
        else if (k == "c_n") {
          if (val == "default") c.constants.c_n_override.reset();
          else c.constants.c_n_override = parse_real("constants.c_n", val);
        } else throw unknown(k);
      }
    } else if (section == "sharpness") {
      for (const auto& [k, v] : body) {
        const std::string key = "sharpness." + k;
        if (k == "gauss_family") c.sharpness.gauss_family = named(key, v.data(), family_from_string);
        else if (k == "euclid_family") c.sharpness.euclid_family = named(key, v.data(), family_from_string);
        else if (k == "r") c.sharpness.r = parse_real(key, v.data());
        else if (k == "mass") c.sharpness.mass = parse_real(key, v.data());
        else if (k == "eps") c.sharpness.eps = parse_list(v.data());
        else throw unknown(k);
      }
    } else if (section.rfind("scenario.", 0) == 0 && section.size() > 9) {
      scenarios.push_back(parse_scenario(section.substr(9), body));
    } else {
      throw ConfigError("unknown section [" + section + "]");
    }
  }
  if (!scenarios.empty()) c.scenarios = std::move(scenarios);
  try {
    c.constants.validate();
  } catch (const InvalidArgument& ex) {
    throw ConfigError(ex.what());
  }
  if (!(c.sharpness.r > 0.0)) throw ConfigError("sharpness.r must be positive");
  if (!(c.euclid_half_width > 0.0)) throw ConfigError("grid.euclid_half_width must be positive");
  if (c.gauss_half_width && !(*c.gauss_half_width > 0.0)) throw ConfigError("grid.gauss_half_width must be positive");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<ScenarioJob> expand(const RunConfig& config) {
  std::vector<ScenarioJob> jobs;
  for (const ScenarioConfig& sc : config.scenarios) {
    if (!selected(config, sc.family)) continue;
    for (double eps : sc.eps) {
      ScenarioJob job;
      job.family = sc.family;
      job.family.eps = eps;
      job.family.seed = sc.seed.value_or(config.seed);
      job.radii = sc.radii.value_or(config.radii);
      const int dim = job.family.dim;
      const int cells = sc.cells.value_or(dim == 3 ? config.cells_3d : config.cells);
      if (job.family.setting == Setting::Gaussian) {
        const std::optional<double> hw = sc.half_width ? sc.half_width : config.gauss_half_width;
        if (hw) {
          job.spec = GridSpec{dim, *hw, cells};
        } else {
          const double r_max = *std::max_element(job.radii.begin(), job.radii.end());
          job.spec = gaussian_window(dim, cells, phi_inv(job.family.mass), r_max);
        }
      } else {
        job.spec = GridSpec{dim, sc.half_width.value_or(config.euclid_half_width), cells};
      }
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

std::size_t RunResult::failed() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.report.pass; }));
}

std::vector<ReportRow> evaluate_job(const ScenarioJob& job, const RunConfig& config) {
  return job.family.setting == Setting::Gaussian ? gaussian_rows(job, config) : euclidean_rows(job, config);
}

SharpnessResult sharpness_points(Setting setting, Family family, const RunConfig& config) {
  SharpnessResult out;
  out.family = to_string(setting) + ":" + to_string(family);
  const double r = config.sharpness.r;
  try {
    for (double eps : config.sharpness.eps) {
      ScenarioFamily f;
      f.family = family;
      f.setting = setting;
      f.eps = eps;
      f.mass = config.sharpness.mass;
      f.seed = config.seed;
      const ExactData ex = family_region(f).second;
      if (!ex.alpha || !ex.enlarged) throw GenerationError(out.family + " has no closed-form deficit");
      double deficit = 0.0;
      if (setting == Setting::Gaussian) {
        deficit = ex.enlarged(r) - phi(ex.s + r);
      } else {
        deficit = ex.enlarged(r) - std::pow(1.0 + r, f.dim) * f.reference().volume();
      }
      out.points.emplace_back(*ex.alpha, deficit);
    }
    out.fit = sharpness_fit(out.points);
  } catch (const std::exception& ex) {
    out.error = ex.what();
  }
  return out;
}

RunResult evaluate(const RunConfig& config) {
  config.constants.validate();
  const std::vector<ScenarioJob> jobs = expand(config);
  std::vector<std::vector<ReportRow>> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
  parallel_for(jobs.size(), config.jobs, [&](std::size_t i) {
    try {
      rows[i] = evaluate_job(jobs[i], config);
    } catch (const std::exception& ex) {
      errors[i] = jobs[i].family.id() + ": " + ex.what();
    }
  });
  RunResult result;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    result.rows.insert(result.rows.end(), rows[i].begin(), rows[i].end());
    if (!errors[i].empty()) result.errors.push_back(errors[i]);
  }
  result.gauss_sharpness = sharpness_points(Setting::Gaussian, config.sharpness.gauss_family, config);
  result.euclid_sharpness = sharpness_points(Setting::Euclidean, config.sharpness.euclid_family, config);
  std::set<std::pair<Setting, Family>> seen;
  for (const ScenarioJob& job : jobs) {
    if (seen.insert({job.family.setting, job.family.family}).second) {
      result.family_sharpness.push_back(sharpness_points(job.family.setting, job.family.family, config));
    }
  }
  return result;
}

std::string to_csv(const RunResult& result) {
  std::string out =
      "scenario_id,family,eps,n,m,r,inequality_id,lhs,lhs_err,rhs,rhs_err,slack,pass,alpha,beta,s,rho_hat\n";
  for (const ReportRow& row : result.rows) {
    const DeficitReport& d = row.report;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", row.scenario_id, row.family,
                       number(row.eps), row.n, row.m, number(d.r), d.id, number(d.lhs.value),
                       number(d.lhs.err), number(d.rhs.value), number(d.rhs.err), number(d.slack),
                       d.pass ? "true" : "false", number(d.alpha), number(d.beta), number(d.s),
                       number(d.rho_hat));
  }
  return out;
}

std::string to_summary_json(const RunResult& result, const RunConfig& config) {
  using json = nlohmann::ordered_json;
  json j;
  j["checks"] = result.rows.size();
  j["passed"] = result.rows.size() - result.failed();
  j["failed"] = result.failed();
  j["errors"] = result.errors;
  j["ok"] = result.ok();

  std::map<std::string, std::pair<std::size_t, std::size_t>> by_id;
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_family;
  for (const ReportRow& row : result.rows) {
    auto& a = by_id[row.report.id];
    auto& b = by_family[row.scenario_id.substr(0, row.scenario_id.find(":n"))];
    (row.report.pass ? a.first : a.second)++;
    (row.report.pass ? b.first : b.second)++;
  }
  const auto counts = [](const auto& m) {
    json o = json::object();
    for (const auto& [k, v] : m) o[k] = {{"passed", v.first}, {"failed", v.second}};
    return o;
  };
  j["by_inequality"] = counts(by_id);
  j["by_family"] = counts(by_family);

  j["constants"] = {{"c_gauss", config.constants.c_gauss},
                    {"c_2", config.constants.c_n(2)},
                    {"c_3", config.constants.c_n(3)}};
  j["sharpness"] = {{"r", config.sharpness.r}, {"eps", config.sharpness.eps},
                    {"gauss", sharpness_json(result.gauss_sharpness)},
                    {"euclid", sharpness_json(result.euclid_sharpness)}};
  j["gauss_exponent"] = result.gauss_sharpness.fit ? json_number(result.gauss_sharpness.fit->exponent) : json(nullptr);
  j["euclid_exponent"] = result.euclid_sharpness.fit ? json_number(result.euclid_sharpness.fit->exponent) : json(nullptr);
  json fam = json::object();
  for (const SharpnessResult& s : result.family_sharpness) fam[s.family] = sharpness_json(s);
  j["family_exponents"] = fam;
  return j.dump(2) + "\n";
}

std::string to_svg(const RunResult& result, const std::string& key) {
  constexpr double W = 520, H = 380, L = 70, R = 20, T = 40, B = 50;
  std::vector<std::pair<double, double>> grid;
  for (const ReportRow& row : result.rows) {
    const DeficitReport& d = row.report;
    if (row.scenario_id.rfind(key + ":", 0) != 0) continue;
    if (d.id != "gauss_deficit" && d.id != "euclid_deficit") continue;
    if (d.alpha > 0.0 && d.lhs.value > 0.0) grid.emplace_back(std::log10(d.alpha), std::log10(d.lhs.value));
  }
  std::vector<std::pair<double, double>> exact;
  for (const SharpnessResult& s : result.family_sharpness) {
    if (s.family != key) continue;
    for (const auto& [a, d] : s.points) {
      if (a > 0.0 && d > 0.0) exact.emplace_back(std::log10(a), std::log10(d));
    }
  }
  double x0 = -3, x1 = 0, y0 = -6, y1 = 0;
  if (!grid.empty() || !exact.empty()) {
    x0 = y0 = 1e300;
    x1 = y1 = -1e300;
    for (const auto* v : {&grid, &exact}) {
      for (const auto& [x, y] : *v) {
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
      }
    }
    x0 = std::floor(x0 - 0.1); x1 = std::ceil(x1 + 0.1);
    y0 = std::floor(y0 - 0.1); y1 = std::ceil(y1 + 0.1);
  }
  const auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", W, H);
  s += fmt::format("<!-- build: {} -->\n", CONC_BUILD_ID);
  s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", W, H);
  s += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                   W / 2, key);
  s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", L, H - B, W - R);
  s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", L, H - B, T);
  for (double x = x0; x <= x1 + 1e-9; x += 1.0) {
    s += fmt::format("<text x=\"{:.1f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">1e{}</text>\n",
                     px(x), H - B + 16, x);
  }
  for (double y = y0; y <= y1 + 1e-9; y += 1.0) {
    s += fmt::format("<text x=\"{}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e{}</text>\n",
                     L - 6, py(y) + 4, y);
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">asymmetry</text>\n",
                   (L + W - R) / 2, H - 12);
  s += fmt::format("<text x=\"16\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">deficit</text>\n",
                   (T + H - B) / 2, (T + H - B) / 2);
  for (const auto& [x, y] : exact) {
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"5\" fill=\"none\" stroke=\"#c03030\"/>\n", px(x), py(y));
  }
  for (const auto& [x, y] : grid) {
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"#3060c0\"/>\n", px(x), py(y));
  }
  if (grid.empty() && exact.empty()) {
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">no positive points</text>\n",
                     W / 2, H / 2);
  }
  s += "</svg>\n";
  return s;
}

std::filesystem::path output_directory(const RunConfig& config) {
  if (config.out_dir) return *config.out_dir;
  if (const char* env = std::getenv("CONC_OUT_DIR"); env && *env) return env;
  return "conc-out";
}

int run_outputs(const RunResult& result, const RunConfig& config, const std::filesystem::path& dir) {
  write_file(dir / "results.csv", to_csv(result));
  write_file(dir / "summary.json", to_summary_json(result, config));
  std::set<std::string> keys;
  for (const ReportRow& row : result.rows) keys.insert(row.scenario_id.substr(0, row.scenario_id.find(":n")));
  for (const std::string& key : keys) {
    std::string file = key;
    std::replace(file.begin(), file.end(), ':', '_');
    write_file(dir / ("plot_" + file + ".svg"), to_svg(result, key));
  }
  return result.ok() ? 0 : 1;
}

int run(const RunConfig& config) {
  const std::filesystem::path dir = output_directory(config);
  std::filesystem::create_directories(dir);
  return run_outputs(evaluate(config), config, dir);
}

}  // namespace conc
