#include "conc/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conc/errors.hpp"

namespace conc {

using nlohmann::json;

namespace {

json policy_json(const OutsidePolicy& p) {
  json out;
  switch (p.kind()) {
    case OutsidePolicy::Kind::Empty: out["kind"] = "empty"; break;
    case OutsidePolicy::Kind::Unknown: out["kind"] = "unknown"; break;
    case OutsidePolicy::Kind::HalfSpaces: {
      out["kind"] = "half_spaces";
      out["half_spaces"] = json::array();
      for (const HalfSpace& h : p.half_spaces()) {
        out["half_spaces"].push_back({{"direction", h.direction()}, {"offset", h.offset()}});
      }
      break;
    }
  }
  return out;
}

OutsidePolicy policy_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "empty") return OutsidePolicy::empty();
  if (kind == "unknown") return OutsidePolicy::unknown();
  if (kind != "half_spaces") throw InvalidArgument("unknown outside policy '" + kind + "'");
  std::vector<HalfSpace> hs;
  for (const json& h : j.at("half_spaces")) {
    hs.emplace_back(h.at("direction").get<Vec>(), h.at("offset").get<double>());
  }
  return OutsidePolicy::below_any(std::move(hs));
}

}  // namespace

std::string to_json(const GridSet& set) {
  std::vector<std::size_t> runs;
  std::uint8_t current = 0;
  std::size_t run = 0;
  for (std::uint8_t c : set.cells()) {
    if (c == current) {
      ++run;
    } else {
      runs.push_back(run);
      current = c;
      run = 1;
    }
  }
  runs.push_back(run);

  json j;
  j["dim"] = set.spec().dim;
  j["half_width"] = set.spec().half_width;
  j["cells"] = set.spec().cells;
  j["outside"] = policy_json(set.outside());
  j["reach"] = set.reach();
  j["runs"] = runs;
  return j.dump();
}

GridSet from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    GridSpec spec{j.at("dim").get<int>(), j.at("half_width").get<double>(), j.at("cells").get<int>()};
    spec.validate();
    std::vector<std::uint8_t> cells;
    cells.reserve(spec.size());
    std::uint8_t value = 0;
    for (const json& r : j.at("runs")) {
      const auto len = r.get<std::size_t>();
      if (cells.size() + len > spec.size()) throw InvalidArgument("run lengths exceed m^n");
      cells.insert(cells.end(), len, value);
      value ^= 1;
    }
    return GridSet(spec, std::move(cells), policy_from(j.at("outside")), j.at("reach").get<double>());
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed grid set: ") + e.what());
  }
}

void save(const GridSet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(set) << '\n';
}

GridSet load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace conc
