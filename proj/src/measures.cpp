#include "conc/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "conc/errors.hpp"
#include "conc/morphology.hpp"
#include "conc/scalar_gauss.hpp"

namespace conc {

namespace {

std::size_t row_count(const GridSpec& spec) { return spec.size() / static_cast<std::size_t>(spec.cells); }

std::vector<double> row_weights(const GridSpec& spec, const std::vector<double>& w) {
  const std::size_t m = w.size();
  std::vector<double> rw(row_count(spec));
  for (std::size_t r = 0; r < rw.size(); ++r) {
    rw[r] = spec.dim == 2 ? w[r] : w[r % m] * w[r / m];
  }
  return rw;
}

// Calls face(a, b) for every pair of face-adjacent cells that disagree.
template <typename Face>
void visit_boundary(const GridSet& E, Face&& face) {
  const GridSpec& spec = E.spec();
  const std::size_t m = static_cast<std::size_t>(spec.cells);
  const auto& c = E.cells();
  std::size_t stride = 1;
  for (int axis = 0; axis < spec.dim; ++axis) {
    const std::size_t block = stride * m;
    for (std::size_t base = 0; base < c.size(); base += block) {
      for (std::size_t i = base; i + stride < base + block; ++i) {
        if (c[i] != c[i + stride]) face(i, i + stride);
      }
    }
    stride = block;
  }
}

double content(const GridSpec& spec, const std::vector<double>& w, std::size_t idx) {
  const std::size_t m = static_cast<std::size_t>(spec.cells);
  double v = 1.0;
  for (int k = 0; k < spec.dim; ++k) {
    v *= w[idx % m];
    idx /= m;
  }
  return v;
}

}  // namespace

std::vector<double> axis_weights(const GridSpec& spec, Weight w) {
  spec.validate();
  const double h = spec.spacing();
  std::vector<double> out(static_cast<std::size_t>(spec.cells));
  for (int i = 0; i < spec.cells; ++i) {
    const double lo = -spec.half_width + i * h;
    out[static_cast<std::size_t>(i)] = w == Weight::Gauss ? phi_interval(lo, lo + h) : h;
  }
  return out;
}

double cell_sum(const GridSet& E, Weight weight) {
  const GridSpec& spec = E.spec();
  const auto w = axis_weights(spec, weight);
  const auto rw = row_weights(spec, w);
  const std::size_t m = w.size();
  const auto& c = E.cells();
  double total = 0.0;
  for (std::size_t r = 0; r < rw.size(); ++r) {
    double row = 0.0;
    const std::uint8_t* p = c.data() + r * m;
    for (std::size_t i = 0; i < m; ++i) {
      if (p[i]) row += w[i];
    }
    total += row * rw[r];
  }
  return total;
}

double boundary_error(const GridSet& E, Weight weight) {
  const auto w = axis_weights(E.spec(), weight);
  double err = 0.0;
  visit_boundary(E, [&](std::size_t a, std::size_t b) {
    err += 0.5 * std::max(content(E.spec(), w, a), content(E.spec(), w, b));
  });
  return err;
}

double window_error(const GridSet& E) {
  if (E.outside().kind() == OutsidePolicy::Kind::Empty) return 0.0;
  return cube_tail(E.spec().dim, E.spec().half_width - E.reach());
}

MeasureEstimate gaussian_measure(const GridSet& E) {
  return {cell_sum(E, Weight::Gauss), boundary_error(E, Weight::Gauss) + window_error(E)};
}

MeasureEstimate volume(const GridSet& E) {
  if (E.outside().kind() != OutsidePolicy::Kind::Empty) {
    throw DomainError("volume: set is not contained in the grid window");
  }
  return {cell_sum(E, Weight::Lebesgue), boundary_error(E, Weight::Lebesgue)};
}

MeasureEstimate sym_diff_measure(const GridSet& E, const GridSet& F, Weight w) {
  if (!(E.spec() == F.spec())) throw SpecMismatch("sym_diff_measure: grid specs differ");
  if (w == Weight::Lebesgue) {
    const MeasureEstimate a = volume(E);
    const MeasureEstimate b = volume(F);
    return {cell_sum(E ^ F, w), a.err + b.err};
  }
  return {cell_sum(E ^ F, w), gaussian_measure(E).err + gaussian_measure(F).err};
}

double quotient_step(const GridSpec& spec, double hq) {
  const double h = spec.spacing();
  if (hq <= 0.0) return 4.0 * h;
  if (hq < 2.0 * h * (1.0 - 1e-12)) throw InvalidArgument("perimeter: quotient step must be at least two cells");
  return hq;
}

namespace {

PerimeterEstimate quotient(MeasureEstimate m0, MeasureEstimate m1, MeasureEstimate m2, double hq, double scale) {
  PerimeterEstimate p;
  p.estimate.value = scale * (m1.value - m0.value) / hq;
  p.estimate.err = scale * (m1.err + m0.err) / hq;
  p.quotient_bias = scale * std::abs(m2.value - 2.0 * m1.value + m0.value) / (2.0 * hq);
  return p;
}

}  // namespace

PerimeterEstimate gaussian_perimeter(const GridSet& E, double hq) {
  return gaussian_perimeter(DistanceField(E), 0.0, hq);
}

PerimeterEstimate gaussian_perimeter(const DistanceField& field, double rho, double hq) {
  hq = quotient_step(field.spec(), hq);
  return quotient(gaussian_measure(field.enlarged(rho)), gaussian_measure(field.enlarged(rho + hq)),
                  gaussian_measure(field.enlarged(rho + 2.0 * hq)), hq, kSqrt2Pi);
}

PerimeterEstimate anisotropic_perimeter(const GridSet& E, const ConvexBody& K, double hq) {
  hq = quotient_step(E.spec(), hq);
  return quotient(volume(E), volume(enlarge_convex(E, K, hq)), volume(enlarge_convex(E, K, 2.0 * hq)), hq, 1.0);
}

Barycenter gauss_barycenter(const GridSet& E) {
  const GridSpec& spec = E.spec();
  const auto w = axis_weights(spec, Weight::Gauss);
  const std::size_t m = w.size();
  const double h = spec.spacing();
  std::vector<double> mu(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = -spec.half_width + static_cast<double>(i) * h;
    mu[i] = gauss_density(lo) - gauss_density(lo + h);
  }

  Barycenter out;
  const auto& c = E.cells();
  for (std::size_t r = 0; r < row_count(spec); ++r) {
    double sw = 0.0;
    double smu = 0.0;
    const std::uint8_t* p = c.data() + r * m;
    for (std::size_t i = 0; i < m; ++i) {
      if (p[i]) {
        sw += w[i];
        smu += mu[i];
      }
    }
    const std::size_t i1 = r % m;
    const std::size_t i2 = r / m;
    if (spec.dim == 2) {
      out.b[0] += smu * w[i1];
      out.b[1] += sw * mu[i1];
    } else {
      out.b[0] += smu * w[i1] * w[i2];
      out.b[1] += sw * mu[i1] * w[i2];
      out.b[2] += sw * w[i1] * mu[i2];
    }
  }

  const double half_diag = 0.5 * h * std::sqrt(static_cast<double>(spec.dim));
  visit_boundary(E, [&](std::size_t a, std::size_t b) {
    const double ma = content(spec, w, a) * (norm(spec.center_of(a)) + half_diag);
    const double mb = content(spec, w, b) * (norm(spec.center_of(b)) + half_diag);
    out.err += 0.5 * std::max(ma, mb);
  });
  if (E.outside().kind() != OutsidePolicy::Kind::Empty) {
    const double L = std::max(0.0, spec.half_width - E.reach());
    const double n = spec.dim;
    out.err += n * (2.0 * gauss_density(L) + (n - 1.0) * 2.0 * phi_complement(L));
  }
  return out;
}

HalfSpaceSweeper::HalfSpaceSweeper(const GridSet& F)
    : spec_(F.spec()), w_(axis_weights(F.spec(), Weight::Gauss)) {
  const std::size_t m = w_.size();
  wsum_.assign(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) wsum_[i + 1] = wsum_[i] + w_[i];
  row_w_ = row_weights(spec_, w_);
  prefix_.assign(row_w_.size() * (m + 1), 0.0);
  const auto& c = F.cells();
  for (std::size_t r = 0; r < row_w_.size(); ++r) {
    double* pre = prefix_.data() + r * (m + 1);
    const std::uint8_t* p = c.data() + r * m;
    for (std::size_t i = 0; i < m; ++i) pre[i + 1] = pre[i] + (p[i] ? w_[i] : 0.0);
    total_ += pre[m] * row_w_[r];
  }
}

int HalfSpaceSweeper::threshold(const HalfSpace& H, const Vec& row) const {
  const int m = spec_.cells;
  const Vec& w = H.direction();
  auto in = [&](int i) { return H.contains({spec_.center(i), row[1], row[2]}); };
  if (w[0] == 0.0) return in(0) ? (prefix(H) ? m : 0) : (prefix(H) ? 0 : m);

  const double rest = w[1] * row[1] + w[2] * row[2];
  const double x = (H.offset() - rest) / w[0];
  const double guess = (x + spec_.half_width) / spec_.spacing() - 0.5;
  int k = static_cast<int>(std::clamp(std::ceil(guess), 0.0, static_cast<double>(m)));
  if (prefix(H)) {
    // cells [0, k) are inside
    while (k < m && in(k)) ++k;
    while (k > 0 && !in(k - 1)) --k;
  } else {
    // cells [k, m) are inside
    while (k < m && !in(k)) ++k;
    while (k > 0 && in(k - 1)) --k;
  }
  return k;
}

namespace {

Vec row_point(const GridSpec& spec, std::size_t r) {
  const std::size_t m = static_cast<std::size_t>(spec.cells);
  return {0.0, spec.center(static_cast<int>(r % m)), spec.dim == 3 ? spec.center(static_cast<int>(r / m)) : 0.0};
}

}  // namespace

double HalfSpaceSweeper::inside(const HalfSpace& H) const {
  const std::size_t m = w_.size();
  double total = 0.0;
  for (std::size_t r = 0; r < row_w_.size(); ++r) {
    const auto k = static_cast<std::size_t>(threshold(H, row_point(spec_, r)));
    const double* pre = prefix_.data() + r * (m + 1);
    total += row_w_[r] * (prefix(H) ? pre[k] : pre[m] - pre[k]);
  }
  return total;
}

double HalfSpaceSweeper::halfspace_mass(const HalfSpace& H) const {
  const std::size_t m = w_.size();
  double total = 0.0;
  for (std::size_t r = 0; r < row_w_.size(); ++r) {
    const auto k = static_cast<std::size_t>(threshold(H, row_point(spec_, r)));
    total += row_w_[r] * (prefix(H) ? wsum_[k] : wsum_[m] - wsum_[k]);
  }
  return total;
}

double HalfSpaceSweeper::sym_diff(const HalfSpace& H) const {
  const std::size_t m = w_.size();
  double in = 0.0;
  double hm = 0.0;
  for (std::size_t r = 0; r < row_w_.size(); ++r) {
    const auto k = static_cast<std::size_t>(threshold(H, row_point(spec_, r)));
    const double* pre = prefix_.data() + r * (m + 1);
    in += row_w_[r] * (prefix(H) ? pre[k] : pre[m] - pre[k]);
    hm += row_w_[r] * (prefix(H) ? wsum_[k] : wsum_[m] - wsum_[k]);
  }
  return total_ + hm - 2.0 * in;
}

double HalfSpaceSweeper::halfspace_error(const HalfSpace& H) const {
  const std::size_t m = w_.size();
  const std::size_t rows = row_w_.size();
  std::vector<std::size_t> ks(rows);
  for (std::size_t r = 0; r < rows; ++r) ks[r] = static_cast<std::size_t>(threshold(H, row_point(spec_, r)));

  double err = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t k = ks[r];
    if (k > 0 && k < m) err += 0.5 * std::max(w_[k - 1], w_[k]) * row_w_[r];
  }
  auto across = [&](std::size_t a, std::size_t b) {
    const std::size_t lo = std::min(ks[a], ks[b]);
    const std::size_t hi = std::max(ks[a], ks[b]);
    err += 0.5 * std::max(row_w_[a], row_w_[b]) * (wsum_[hi] - wsum_[lo]);
  };
  const std::size_t m1 = spec_.dim == 3 ? m : rows;
  for (std::size_t r = 0; r < rows; ++r) {
    if ((r % m1) + 1 < m1) across(r, r + 1);                     // axis 1 neighbour
    if (spec_.dim == 3 && r + m < rows) across(r, r + m);        // axis 2 neighbour
  }
  return err;
}

}  // namespace conc
