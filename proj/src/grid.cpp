#include "conc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "conc/errors.hpp"
#include "conc/scalar_gauss.hpp"

namespace conc {

void GridSpec::validate() const {
  if (dim != 2 && dim != 3) throw InvalidArgument("GridSpec: dimension must be 2 or 3");
  if (cells < 16) throw InvalidArgument("GridSpec: need at least 16 cells per axis");
  if (cells % 2 != 0) throw InvalidArgument("GridSpec: cells per axis must be even");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("GridSpec: half-width must be positive");
  }
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int k = 0; k < dim; ++k) n *= static_cast<std::size_t>(cells);
  return n;
}

Vec GridSpec::center_of(std::size_t index) const {
  const auto m = static_cast<std::size_t>(cells);
  Vec c{0.0, 0.0, 0.0};
  for (int k = 0; k < dim; ++k) {
    c[static_cast<std::size_t>(k)] = center(static_cast<int>(index % m));
    index /= m;
  }
  return c;
}

double cube_tail(int dim, double L) {
  if (L <= 0.0) return 1.0;
  const double inside = 1.0 - 2.0 * phi_complement(L);
  return 1.0 - std::pow(inside, dim);
}

OutsidePolicy OutsidePolicy::below_any(std::vector<HalfSpace> hs) {
  OutsidePolicy p;
  if (hs.empty()) return p;
  p.kind_ = Kind::HalfSpaces;
  p.halves_ = std::move(hs);
  return p;
}

OutsidePolicy OutsidePolicy::unknown() {
  OutsidePolicy p;
  p.kind_ = Kind::Unknown;
  return p;
}

OutsidePolicy OutsidePolicy::grown(double r) const {
  OutsidePolicy p = *this;
  for (HalfSpace& h : p.halves_) h = h.shifted(r);
  return p;
}

OutsidePolicy OutsidePolicy::grown(const ConvexBody& K, double r) const {
  OutsidePolicy p = *this;
  for (HalfSpace& h : p.halves_) h = h.shifted(r * K.support(h.direction()));
  return p;
}

bool OutsidePolicy::explains(const Vec& x, double slack) const {
  return std::any_of(halves_.begin(), halves_.end(),
                     [&](const HalfSpace& h) { return dot(x, h.direction()) < h.offset() + slack; });
}

OutsidePolicy unite(const OutsidePolicy& a, const OutsidePolicy& b) {
  using Kind = OutsidePolicy::Kind;
  if (a.kind_ == Kind::Unknown || b.kind_ == Kind::Unknown) return OutsidePolicy::unknown();
  if (a.kind_ == Kind::Empty) return b;
  if (b.kind_ == Kind::Empty) return a;
  std::vector<HalfSpace> hs = a.halves_;
  for (const HalfSpace& h : b.halves_) {
    if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(h);
  }
  return OutsidePolicy::below_any(std::move(hs));
}

OutsidePolicy intersect(const OutsidePolicy& a, const OutsidePolicy& b) {
  using Kind = OutsidePolicy::Kind;
  if (a.kind_ == Kind::Empty || b.kind_ == Kind::Empty) return OutsidePolicy::empty();
  if (a.kind_ == Kind::Unknown) return b;
  // any envelope of one factor is an envelope of the intersection
  return a;
}

OutsidePolicy subtract(const OutsidePolicy& a, const OutsidePolicy&) { return a; }

GridSet::GridSet(GridSpec spec, std::vector<std::uint8_t> cells, OutsidePolicy outside, double reach)
    : spec_(spec), cells_(std::move(cells)), outside_(std::move(outside)), reach_(reach) {
  spec_.validate();
  if (cells_.size() != spec_.size()) {
    throw InvalidArgument("GridSet: indicator length " + std::to_string(cells_.size()) +
                          " does not match m^n = " + std::to_string(spec_.size()));
  }
  if (!(reach_ >= 0.0)) throw InvalidArgument("GridSet: reach must be nonnegative");
}

GridSet GridSet::empty(const GridSpec& spec) {
  spec.validate();
  return GridSet(spec, std::vector<std::uint8_t>(spec.size(), 0));
}

GridSet GridSet::full(const GridSpec& spec) {
  spec.validate();
  return GridSet(spec, std::vector<std::uint8_t>(spec.size(), 1));
}

bool GridSet::at(int i0, int i1, int i2) const {
  const auto m = static_cast<std::size_t>(spec_.cells);
  return at(static_cast<std::size_t>(i0) + m * (static_cast<std::size_t>(i1) + m * static_cast<std::size_t>(i2)));
}

std::size_t GridSet::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

bool GridSet::subset_of(const GridSet& other) const {
  if (!(spec_ == other.spec_)) throw SpecMismatch("subset_of: grid specs differ");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] && !other.cells_[i]) return false;
  }
  return true;
}

GridSet GridSet::with_outside(OutsidePolicy outside, double reach) const {
  return GridSet(spec_, cells_, std::move(outside), reach);
}

GridSet GridSet::shifted(const std::array<int, 3>& by) const {
  const int m = spec_.cells;
  const int m2 = spec_.dim == 3 ? m : 1;
  std::vector<std::uint8_t> out(cells_.size(), 0);
  for (int i2 = 0; i2 < m2; ++i2) {
    const int j2 = i2 + (spec_.dim == 3 ? by[2] : 0);
    if (j2 < 0 || j2 >= m2) continue;
    for (int i1 = 0; i1 < m; ++i1) {
      const int j1 = i1 + by[1];
      if (j1 < 0 || j1 >= m) continue;
      for (int i0 = 0; i0 < m; ++i0) {
        const int j0 = i0 + by[0];
        if (j0 < 0 || j0 >= m) continue;
        out[static_cast<std::size_t>(j0 + m * (j1 + m * j2))] =
            cells_[static_cast<std::size_t>(i0 + m * (i1 + m * i2))];
      }
    }
  }
  return GridSet(spec_, std::move(out), outside_, reach_);
}

namespace {

template <typename Op>
GridSet combine(const GridSet& a, const GridSet& b, Op op, OutsidePolicy outside) {
  if (!(a.spec() == b.spec())) throw SpecMismatch("cannot combine grid sets with different specs");
  std::vector<std::uint8_t> out(a.cells().size());
  const auto& x = a.cells();
  const auto& y = b.cells();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(op(x[i], y[i]) ? 1 : 0);
  return GridSet(a.spec(), std::move(out), std::move(outside), std::max(a.reach(), b.reach()));
}

}  // namespace

GridSet operator|(const GridSet& a, const GridSet& b) {
  return combine(a, b, [](auto p, auto q) { return p || q; }, unite(a.outside_, b.outside_));
}

GridSet operator&(const GridSet& a, const GridSet& b) {
  return combine(a, b, [](auto p, auto q) { return p && q; }, intersect(a.outside_, b.outside_));
}

GridSet operator-(const GridSet& a, const GridSet& b) {
  return combine(a, b, [](auto p, auto q) { return p && !q; }, subtract(a.outside_, b.outside_));
}

GridSet operator^(const GridSet& a, const GridSet& b) {
  return combine(a, b, [](auto p, auto q) { return p != q; }, unite(a.outside_, b.outside_));
}

Region Region::half_space(const HalfSpace& h) {
  return Region([h](const Vec& x) { return h.contains(x); }, OutsidePolicy::below(h));
}

Region Region::body(const ConvexBody& K, double scale, const Vec& center) {
  if (!(scale > 0.0)) throw InvalidArgument("Region::body: scale must be positive");
  return Region([K, scale, center](const Vec& x) { return K.gauge(x - center) < scale; },
                OutsidePolicy::empty());
}

Region operator|(const Region& a, const Region& b) {
  return Region([p = a.contains_, q = b.contains_](const Vec& x) { return p(x) || q(x); },
                unite(a.outside_, b.outside_));
}

Region operator&(const Region& a, const Region& b) {
  return Region([p = a.contains_, q = b.contains_](const Vec& x) { return p(x) && q(x); },
                intersect(a.outside_, b.outside_));
}

Region operator-(const Region& a, const Region& b) {
  return Region([p = a.contains_, q = b.contains_](const Vec& x) { return p(x) && !q(x); },
                subtract(a.outside_, b.outside_));
}

Region operator^(const Region& a, const Region& b) {
  return Region([p = a.contains_, q = b.contains_](const Vec& x) { return p(x) != q(x); },
                unite(a.outside_, b.outside_));
}

GridSet rasterize(const Region& region, const GridSpec& spec) {
  spec.validate();
  const int m = spec.cells;
  const int m2 = spec.dim == 3 ? m : 1;
  std::vector<std::uint8_t> cells(spec.size());
  std::size_t idx = 0;
  for (int i2 = 0; i2 < m2; ++i2) {
    for (int i1 = 0; i1 < m; ++i1) {
      for (int i0 = 0; i0 < m; ++i0, ++idx) {
        const Vec c{spec.center(i0), spec.center(i1), spec.dim == 3 ? spec.center(i2) : 0.0};
        cells[idx] = region.contains(c) ? 1 : 0;
      }
    }
  }
  return GridSet(spec, std::move(cells), region.outside());
}

}  // namespace conc
