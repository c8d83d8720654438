#pragma once

#include <filesystem>
#include <string>

#include "conc/grid.hpp"

namespace conc {

/// JSON container: GridSpec header, outside policy, reach and a run-length encoded
/// indicator (alternating run lengths, starting with a run of zeros).
std::string to_json(const GridSet& set);
/// Throws InvalidArgument on malformed input.
GridSet from_json(const std::string& text);

void save(const GridSet& set, const std::filesystem::path& path);
GridSet load(const std::filesystem::path& path);

}  // namespace conc
