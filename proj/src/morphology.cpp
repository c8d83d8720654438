#include "conc/morphology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "conc/errors.hpp"

namespace conc {

namespace {

constexpr double kFar = 1e20;

// Felzenszwalb-Huttenlocher lower envelope of parabolas along one line.
// Entries equal to kFar do not seed parabolas.
void edt_line(std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] >= kFar) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -std::numeric_limits<double>::infinity();
      z[1] = std::numeric_limits<double>::infinity();
      continue;
    }
    double s = 0.0;
    while (true) {  // z[0] = -inf stops the walk at k = 0
      const int p = v[k];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), kFar);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double dq = q - v[j];
    d[q] = dq * dq + f[v[j]];
  }
}

std::array<int, 3> coords(std::size_t index, int m, int dim) {
  std::array<int, 3> c{0, 0, 0};
  for (int k = 0; k < dim; ++k) {
    c[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(m));
    index /= static_cast<std::size_t>(m);
  }
  return c;
}

bool on_window_edge(const std::array<int, 3>& c, int m, int dim) {
  for (int k = 0; k < dim; ++k) {
    if (c[static_cast<std::size_t>(k)] == 0 || c[static_cast<std::size_t>(k)] == m - 1) return true;
  }
  return false;
}

Vec virtual_center(const GridSpec& spec, const std::array<int, 3>& c) {
  return {spec.center(c[0]), spec.center(c[1]), spec.dim == 3 ? spec.center(c[2]) : 0.0};
}

void reject(const char* what) {
  throw WindowOverflow(std::string(what) + ": enlargement reaches the window edge; increase the half-width");
}

// New cells on the outer layer must be explained by the grown envelope.
void check_window(const GridSet& before, const std::vector<std::uint8_t>& after, const OutsidePolicy& grown,
                  const char* what) {
  const GridSpec& spec = before.spec();
  const double slack = spec.spacing() * std::sqrt(static_cast<double>(spec.dim));
  for (std::size_t i = 0; i < after.size(); ++i) {
    if (!after[i] || before.at(i)) continue;
    const auto c = coords(i, spec.cells, spec.dim);
    if (!on_window_edge(c, spec.cells, spec.dim)) continue;
    if (grown.kind() != OutsidePolicy::Kind::HalfSpaces || !grown.explains(spec.center_of(i), slack)) reject(what);
  }
}

}  // namespace

DistanceField::DistanceField(GridSet source) : source_(std::move(source)) {
  if (source_.is_empty()) throw InvalidArgument("DistanceField: source set is empty");
  const GridSpec& spec = source_.spec();
  const int m = spec.cells;
  const auto total = spec.size();
  sq_.resize(total);
  for (std::size_t i = 0; i < total; ++i) sq_[i] = source_.at(i) ? 0.0 : kFar;

  std::vector<double> f(static_cast<std::size_t>(m)), d(static_cast<std::size_t>(m));
  std::vector<int> v(static_cast<std::size_t>(m));
  std::vector<double> z(static_cast<std::size_t>(m) + 1);
  std::size_t stride = 1;
  for (int axis = 0; axis < spec.dim; ++axis) {
    const std::size_t block = stride * static_cast<std::size_t>(m);
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t start = base + off;
        for (int q = 0; q < m; ++q) f[static_cast<std::size_t>(q)] = sq_[start + static_cast<std::size_t>(q) * stride];
        edt_line(f, d, v, z);
        for (int q = 0; q < m; ++q) sq_[start + static_cast<std::size_t>(q) * stride] = d[static_cast<std::size_t>(q)];
      }
    }
    stride = block;
  }
}

double DistanceField::distance(std::size_t index) const {
  return sq_[index] >= kFar ? std::numeric_limits<double>::infinity() : std::sqrt(sq_[index]) * spec().spacing();
}

GridSet DistanceField::enlarged(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("enlarge_ball: radius must be nonnegative");
  if (r == 0.0) return source_;
  const double rc = r / spec().spacing();
  std::vector<std::uint8_t> out(sq_.size());
  for (std::size_t i = 0; i < sq_.size(); ++i) out[i] = within_enlargement(sq_[i], rc) ? 1 : 0;
  OutsidePolicy grown = source_.outside().grown(r);
  check_window(source_, out, grown, "enlarge_ball");
  return GridSet(spec(), std::move(out), std::move(grown), source_.reach() + r);
}

GridSet enlarge_ball(const GridSet& E, double r) { return DistanceField(E).enlarged(r); }

GridSet enlarge_convex(const GridSet& E, const ConvexBody& K, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("enlarge_convex: radius must be nonnegative");
  const GridSpec& spec = E.spec();
  if (K.dim() != spec.dim) throw InvalidArgument("enlarge_convex: body and grid dimensions differ");
  if (E.is_empty()) throw InvalidArgument("enlarge_convex: set is empty");
  if (r == 0.0) return E;

  const int m = spec.cells;
  const int dim = spec.dim;
  const double h = spec.spacing();

  // structuring element
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int k = 0; k < dim; ++k) {
    const auto a = static_cast<std::size_t>(k);
    hi[a] = static_cast<int>(std::ceil(r * K.support(axis_direction(k)) / h + 0.5));
    lo[a] = -static_cast<int>(std::ceil(r * K.support(-1.0 * axis_direction(k)) / h + 0.5));
  }
  const auto* ball = std::get_if<ConvexBody::Ball>(&K.shape());
  std::vector<std::array<int, 3>> offsets;
  for (int d2 = lo[2]; d2 <= hi[2]; ++d2) {
    for (int d1 = lo[1]; d1 <= hi[1]; ++d1) {
      for (int d0 = lo[0]; d0 <= hi[0]; ++d0) {
        const bool in = ball ? within_enlargement(double(d0) * d0 + double(d1) * d1 + double(d2) * d2,
                                                  r * ball->radius / h)
                             : K.distance({d0 * h, d1 * h, d2 * h}, r) < 0.5 * h;
        if (in) offsets.push_back({d0, d1, d2});
      }
    }
  }
  std::vector<std::ptrdiff_t> linear;
  linear.reserve(offsets.size());
  for (const auto& d : offsets) linear.push_back(d[0] + std::ptrdiff_t(m) * (d[1] + std::ptrdiff_t(m) * d[2]));

  OutsidePolicy grown = E.outside().grown(K, r);
  const double slack = h * std::sqrt(static_cast<double>(dim));
  const bool boundary_only = K.is_unconditional();
  std::vector<std::uint8_t> out = E.cells();
  const auto& in = E.cells();
  std::array<std::size_t, 3> stride{1, static_cast<std::size_t>(m), static_cast<std::size_t>(m) * m};

  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    if (!in[idx]) continue;
    const auto c = coords(idx, m, dim);
    if (boundary_only && !on_window_edge(c, m, dim)) {
      bool interior = true;
      for (int k = 0; k < dim && interior; ++k) {
        const auto a = static_cast<std::size_t>(k);
        interior = in[idx - stride[a]] && in[idx + stride[a]];
      }
      if (interior) continue;
    }
    bool safe = true;
    for (int k = 0; k < dim; ++k) {
      const auto a = static_cast<std::size_t>(k);
      safe = safe && c[a] + lo[a] >= 0 && c[a] + hi[a] < m;
    }
    if (safe) {
      for (std::ptrdiff_t off : linear) out[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(idx) + off)] = 1;
      continue;
    }
    for (const auto& d : offsets) {
      std::array<int, 3> t{c[0] + d[0], c[1] + d[1], c[2] + d[2]};
      bool inside = true;
      for (int k = 0; k < dim; ++k) inside = inside && t[static_cast<std::size_t>(k)] >= 0 && t[static_cast<std::size_t>(k)] < m;
      if (inside) {
        out[static_cast<std::size_t>(t[0] + m * (t[1] + m * t[2]))] = 1;
      } else if (grown.kind() != OutsidePolicy::Kind::HalfSpaces ||
                 !grown.explains(virtual_center(spec, t), slack)) {
        reject("enlarge_convex");
      }
    }
  }
  check_window(E, out, grown, "enlarge_convex");
  return GridSet(spec, std::move(out), std::move(grown), E.reach() + r * K.circumradius());
}

}  // namespace conc
