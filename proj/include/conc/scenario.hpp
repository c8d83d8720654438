#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "conc/geometry.hpp"
#include "conc/grid.hpp"

namespace conc {

enum class Family { TiltedHalfspace, ShiftedSlab, CenteredBall, Box, TwoHalfspaceUnion, PerturbedK };
enum class Setting { Gaussian, Euclidean };

std::string to_string(Family f);
std::string to_string(Setting s);
/// Throws InvalidArgument on an unknown name.
Family family_from_string(const std::string& name);
Setting setting_from_string(const std::string& name);

/// One member of a perturbation family.
///
/// Gaussian families hit the mass `mass`; Euclidean families hit the volume `volume`
/// (0 means |K|) and are measured against the reference body K (default: unit cube).
struct ScenarioFamily {
  Family family = Family::TiltedHalfspace;
  Setting setting = Setting::Gaussian;
  double eps = 0.0;
  int dim = 2;
  double mass = 0.5;
  double volume = 0.0;
  std::uint64_t seed = 1;
  std::optional<ConvexBody> body;

  ConvexBody reference() const { return body ? *body : ConvexBody::unit_cube(dim); }
  double target_volume() const { return volume > 0.0 ? volume : reference().volume(); }
  std::string id() const;
};

/// Closed-form facts about a generated set, where the family admits them.
struct ExactData {
  /// Gaussian: phi^{-1}(gamma(E)). Euclidean: unused (NaN).
  double s = std::numeric_limits<double>::quiet_NaN();
  /// Euclidean: |E|. Gaussian: gamma(E).
  double measure = std::numeric_limits<double>::quiet_NaN();
  /// Exact asymmetry alpha_gamma(E) or alpha(E).
  std::optional<double> alpha;
  /// gamma(E + B_r) (Gaussian) or |E + rK| (Euclidean) as a function of r.
  std::function<double(double)> enlarged;
  /// True if the eps = 0 member is an equality case of the corresponding theorem.
  bool equality_at_zero = false;
};

struct Scenario {
  ScenarioFamily family;
  Region region;
  GridSet set;
  ExactData exact;
};

/// Region and metadata without rasterizing. Throws GenerationError if the requested
/// eps and mass cannot be realised.
std::pair<Region, ExactData> family_region(const ScenarioFamily& family);

/// Rasterized family member. Also throws GenerationError if a bounded member does not fit
/// in the window.
Scenario generate_family(const ScenarioFamily& family, const GridSpec& spec);

/// Default Gaussian window: R = max(6, |s| + r_max + 2).
GridSpec gaussian_window(int dim, int cells, double s, double r_max);

}  // namespace conc
