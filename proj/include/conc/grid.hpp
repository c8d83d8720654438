#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "conc/geometry.hpp"

namespace conc {

/// Regular grid over the window [-R, R]^n with m cells per axis.
/// Cell (i0, i1, i2) has linear index i0 + m*i1 + m*m*i2 and center -R + (i + 1/2) h.
struct GridSpec {
  int dim = 2;
  double half_width = 6.0;
  int cells = 512;

  /// Throws InvalidArgument unless n in {2,3}, m >= 16, m even and R > 0.
  void validate() const;
  double spacing() const { return 2.0 * half_width / cells; }
  double center(int i) const { return -half_width + (i + 0.5) * spacing(); }
  std::size_t size() const;
  Vec center_of(std::size_t index) const;

  bool operator==(const GridSpec&) const = default;
};

/// Gaussian mass outside the cube [-L, L]^n, i.e. 1 - (2 phi(L) - 1)^n. Equals 1 for L <= 0.
double cube_tail(int dim, double L);

/// What is known about a set beyond the grid window.
///
/// Empty: the set lies inside the window. HalfSpaces: outside the window the set is
/// contained in the union of the listed half-spaces (an envelope, not an exact description).
/// Unknown: nothing is known. Only the first kind allows Lebesgue volumes.
class OutsidePolicy {
 public:
  enum class Kind { Empty, HalfSpaces, Unknown };

  OutsidePolicy() = default;
  static OutsidePolicy empty() { return {}; }
  static OutsidePolicy below(const HalfSpace& h) { return below_any({h}); }
  static OutsidePolicy below_any(std::vector<HalfSpace> hs);
  static OutsidePolicy unknown();

  Kind kind() const { return kind_; }
  const std::vector<HalfSpace>& half_spaces() const { return halves_; }

  /// Envelope after adding B_r.
  OutsidePolicy grown(double r) const;
  /// Envelope after adding rK: each H_{w,t} becomes H_{w, t + r ||w||_*}.
  OutsidePolicy grown(const ConvexBody& K, double r) const;
  /// True if x lies within `slack` of the envelope.
  bool explains(const Vec& x, double slack) const;

  friend OutsidePolicy unite(const OutsidePolicy& a, const OutsidePolicy& b);
  friend OutsidePolicy intersect(const OutsidePolicy& a, const OutsidePolicy& b);
  friend OutsidePolicy subtract(const OutsidePolicy& a, const OutsidePolicy& b);

  bool operator==(const OutsidePolicy&) const = default;

 private:
  Kind kind_ = Kind::Empty;
  std::vector<HalfSpace> halves_;
};

/// Indicator field of a set on a GridSpec, immutable once built.
///
/// `reach` is how far (in distance units) enlargements have pushed the set since it was
/// rasterized; the Gaussian mass within `reach` of the window edge is treated as unknown.
class GridSet {
 public:
  GridSet(GridSpec spec, std::vector<std::uint8_t> cells, OutsidePolicy outside = {},
          double reach = 0.0);

  static GridSet empty(const GridSpec& spec);
  static GridSet full(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }
  const OutsidePolicy& outside() const { return outside_; }
  double reach() const { return reach_; }

  bool at(std::size_t index) const { return cells_[index] != 0; }
  bool at(int i0, int i1, int i2 = 0) const;
  std::size_t count() const;
  bool is_empty() const { return count() == 0; }
  bool subset_of(const GridSet& other) const;

  GridSet with_outside(OutsidePolicy outside, double reach) const;
  /// Translate by whole cells; cells pushed out of the window are dropped.
  GridSet shifted(const std::array<int, 3>& by) const;

  friend GridSet operator|(const GridSet& a, const GridSet& b);
  friend GridSet operator&(const GridSet& a, const GridSet& b);
  friend GridSet operator-(const GridSet& a, const GridSet& b);
  friend GridSet operator^(const GridSet& a, const GridSet& b);

  /// Same spec and same indicator. The outside policy is bookkeeping and is not compared.
  bool operator==(const GridSet& o) const { return spec_ == o.spec_ && cells_ == o.cells_; }

 private:
  GridSpec spec_;
  std::vector<std::uint8_t> cells_;
  OutsidePolicy outside_;
  double reach_;
};

/// A point predicate plus the matching outside envelope.
class Region {
 public:
  using Predicate = std::function<bool(const Vec&)>;

  Region(Predicate contains, OutsidePolicy outside)
      : contains_(std::move(contains)), outside_(std::move(outside)) {}

  static Region half_space(const HalfSpace& h);
  /// center + scale * K.
  static Region body(const ConvexBody& K, double scale = 1.0, const Vec& center = {0.0, 0.0, 0.0});
  /// Bounded set given by an arbitrary predicate.
  static Region bounded(Predicate contains) { return Region(std::move(contains), OutsidePolicy::empty()); }

  bool contains(const Vec& x) const { return contains_(x); }
  const OutsidePolicy& outside() const { return outside_; }

  friend Region operator|(const Region& a, const Region& b);
  friend Region operator&(const Region& a, const Region& b);
  friend Region operator-(const Region& a, const Region& b);
  friend Region operator^(const Region& a, const Region& b);

 private:
  Predicate contains_;
  OutsidePolicy outside_;
};

/// Cell-center rasterization. Throws InvalidArgument on an invalid spec.
GridSet rasterize(const Region& region, const GridSpec& spec);
inline GridSet rasterize(const HalfSpace& h, const GridSpec& spec) {
  return rasterize(Region::half_space(h), spec);
}
inline GridSet rasterize(const ConvexBody& K, const GridSpec& spec, double scale = 1.0,
                         const Vec& center = {0.0, 0.0, 0.0}) {
  return rasterize(Region::body(K, scale, center), spec);
}

}  // namespace conc
