#include "conc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "conc/errors.hpp"
#include "conc/scalar_gauss.hpp"

namespace conc {

namespace {

// Largest deviation of f over the listed argument combinations from its value at the
// first entry of each list.
template <typename F>
double spread(F f, std::initializer_list<double> xs, std::initializer_list<double> ys) {
  const double f0 = f(*xs.begin(), *ys.begin());
  double worst = 0.0;
  for (double x : xs) {
    for (double y : ys) worst = std::max(worst, std::abs(f(x, y) - f0));
  }
  return worst;
}

double clamp0(double x) { return std::max(0.0, x); }

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("radius must be positive");
}

}  // namespace

double Constants::c_n(int n) const {
  if (c_n_override) return *c_n_override;
  return std::pow(9.0, -n) / 100.0;
}

void Constants::validate() const {
  if (!(c_gauss > 0.0)) throw InvalidArgument("c_gauss must be positive");
  if (c_n_override && !(*c_n_override > 0.0)) throw InvalidArgument("c_n must be positive");
}

DeficitReport make_report(std::string id, MeasureEstimate lhs, MeasureEstimate rhs) {
  DeficitReport rep;
  rep.id = std::move(id);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.slack = lhs.value - rhs.value;
  rep.pass = rep.slack >= -(lhs.err + rhs.err);
  return rep;
}

GaussianSubject::GaussianSubject(GridSet E) : set_(std::move(E)), offset_(gauss_offset(set_)), field_(set_) {}

GaussianSubject::~GaussianSubject() = default;

const AsymmetryResult& GaussianSubject::alpha() const {
  if (!alpha_) alpha_ = alpha_gauss(set_);
  return *alpha_;
}

MeasureEstimate GaussianSubject::beta() const {
  if (!beta_) beta_ = beta_strong(set_);
  return *beta_;
}

const HalfSpaceSweeper& GaussianSubject::sweeper() const {
  if (!sweeper_) sweeper_ = std::make_unique<HalfSpaceSweeper>(set_);
  return *sweeper_;
}

const HalfSpaceSweeper& GaussianSubject::enlarged_sweeper(double r) const {
  auto& slot = enlarged_sweepers_[r];
  if (!slot) slot = std::make_unique<HalfSpaceSweeper>(enlarged(r));
  return *slot;
}

const MeasureEstimate& GaussianSubject::enlarged_measure(double r) const {
  auto it = enlarged_measures_.find(r);
  if (it == enlarged_measures_.end()) it = enlarged_measures_.emplace(r, gaussian_measure(enlarged(r))).first;
  return it->second;
}

DeficitReport concentration_check(const GaussianSubject& E, double r) {
  require_radius(r);
  const GaussOffset& g = E.offset();
  const MeasureEstimate grown = E.enlarged_measure(r);
  const double target = phi(g.s + r);
  const MeasureEstimate rhs{target, std::max(phi(g.s_hi + r) - target, target - phi(g.s_lo + r))};
  DeficitReport rep = make_report("concentration", grown, rhs);
  rep.s = g.s;
  rep.r = r;
  rep.rho_hat = grown.value < 1.0 ? phi_inv(grown.value) - g.s : DeficitReport::kNaN;
  return rep;
}

DeficitReport gauss_deficit_report(const GaussianSubject& E, double r, const Constants& c) {
  require_radius(r);
  c.validate();
  const GaussOffset& g = E.offset();
  const MeasureEstimate grown = E.enlarged_measure(r);
  const double target = phi(g.s + r);
  const double target_err = std::max(phi(g.s_hi + r) - target, target - phi(g.s_lo + r));
  const MeasureEstimate lhs{grown.value - target, grown.err + target_err};

  const AsymmetryResult& a = E.alpha();
  auto rhs_at = [&](double s, double alpha) {
    const double t = std::abs(s) + r + 4.0;
    return c.c_gauss * std::exp(s * s - 0.5 * t * t) * r * alpha * alpha;
  };
  const double a_lo = clamp0(a.value - a.err);
  double rhs_err = spread(rhs_at, {g.s, g.s_lo, g.s_hi}, {a.value, a_lo, a.value + a.err});
  if (g.s_lo < 0.0 && g.s_hi > 0.0) rhs_err = std::max(rhs_err, std::abs(rhs_at(0.0, a.value + a.err) - rhs_at(g.s, a.value)));
  const MeasureEstimate rhs{rhs_at(g.s, a.value), rhs_err};

  DeficitReport rep = make_report("gauss_deficit", lhs, rhs);
  rep.s = g.s;
  rep.r = r;
  rep.rho_hat = grown.value < 1.0 ? phi_inv(grown.value) - g.s : DeficitReport::kNaN;
  rep.alpha = a.value;
  rep.beta = E.beta().value;
  rep.constant = c.c_gauss;
  rep.direction = a.minimizer;
  return rep;
}

DeficitReport gauss_deficit_report(const GridSet& E, double r, const Constants& c) {
  return gauss_deficit_report(GaussianSubject(E), r, c);
}

DeficitReport covering_lemma_check(const GaussianSubject& E, const Vec& w, double r) {
  require_radius(r);
  if (r > 1.0) throw InvalidArgument("covering_lemma_check: r must lie in (0, 1]");
  const GaussOffset& g = E.offset();
  const HalfSpace outer(w, g.s + r);
  const HalfSpace inner(w, g.s);

  const HalfSpaceSweeper& grown = E.enlarged_sweeper(r);
  const MeasureEstimate grown_mass = E.enlarged_measure(r);
  const MeasureEstimate lhs{grown.outside(outer),
                            grown_mass.err + grown.halfspace_error(outer) + phi(g.s_hi + r) - phi(g.s_lo + r)};

  const HalfSpaceSweeper& base = E.sweeper();
  const double out_value = base.outside(inner);
  const double out_err = g.mass.err + base.halfspace_error(inner) + phi(g.s_hi) - phi(g.s_lo);
  auto factor = [](double s) { return std::exp(-std::max(s, 0.0)) / 5.0; };
  const double f0 = factor(g.s);
  const double f_hi = factor(g.s_lo);  // e^{-s+} is nonincreasing in s
  const MeasureEstimate rhs{f0 * out_value, f_hi * (out_value + out_err) - f0 * out_value};

  DeficitReport rep = make_report("covering_lemma", lhs, rhs);
  rep.s = g.s;
  rep.r = r;
  rep.direction = w;
  return rep;
}

DeficitReport covering_lemma_check(const GridSet& E, const Vec& w, double r) {
  return covering_lemma_check(GaussianSubject(E), w, r);
}

namespace {

MeasureEstimate riemann(const std::vector<PerimeterEstimate>& samples, double step, double scale) {
  MeasureEstimate sum;
  double variation = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    sum.value += samples[k].estimate.value * step * scale;
    sum.err += (samples[k].estimate.err + samples[k].quotient_bias) * step * scale;
    if (k > 0) variation += std::abs(samples[k].estimate.value - samples[k - 1].estimate.value);
  }
  sum.err += variation * step * scale;
  return sum;
}

void require_steps(int steps) {
  if (steps < 4) throw InvalidArgument("layer-cake checks need at least 4 steps");
}

}  // namespace

DeficitReport layercake_check(const GaussianSubject& E, double r, int steps, double hq) {
  require_radius(r);
  require_steps(steps);
  const double step = r / steps;
  std::vector<PerimeterEstimate> samples;
  for (int k = 0; k < steps; ++k) samples.push_back(gaussian_perimeter(E.field(), k * step, hq));
  const MeasureEstimate lhs = E.enlarged_measure(r) - E.offset().mass;
  DeficitReport rep = make_report("layercake_gauss", lhs, riemann(samples, step, kInvSqrt2Pi));
  rep.s = E.offset().s;
  rep.r = r;
  return rep;
}

DeficitReport layercake_check(const GridSet& E, double r, int steps, double hq) {
  return layercake_check(GaussianSubject(E), r, steps, hq);
}

EuclideanSubject::EuclideanSubject(GridSet E, ConvexBody K)
    : set_(std::move(E)), body_(std::move(K)), volume_(volume(set_)) {
  if (body_.dim() != set_.spec().dim) throw InvalidArgument("EuclideanSubject: body and grid dimensions differ");
  if (set_.is_empty()) throw InvalidArgument("EuclideanSubject: set is empty");
}

const GridSet& EuclideanSubject::enlarged(double r) const {
  auto it = enlarged_.find(r);
  if (it == enlarged_.end()) it = enlarged_.emplace(r, enlarge_convex(set_, body_, r)).first;
  return it->second;
}

const AsymmetryResult& EuclideanSubject::alpha() const {
  if (!alpha_) alpha_ = alpha_convex(set_, body_);
  return *alpha_;
}

void EuclideanSubject::require_matching_volume() const {
  const double k = body_.volume();
  if (std::abs(volume_.value - k) > volume_.err + 1e-12 * k) {
    throw VolumeMismatch("|E| = " + std::to_string(volume_.value) + " differs from |K| = " + std::to_string(k));
  }
}

DeficitReport euclid_deficit_report(const EuclideanSubject& E, double r, const Constants& c) {
  require_radius(r);
  c.validate();
  E.require_matching_volume();
  const int n = E.set().spec().dim;
  const MeasureEstimate grown = volume(E.enlarged(r));
  const MeasureEstimate lhs{grown.value - std::pow(1.0 + r, n) * E.body().volume(), grown.err};

  const AsymmetryResult& a = E.alpha();
  const double cn = c.c_n(n);
  const double vol = E.measure().value;
  auto rhs_at = [&](double v, double alpha) { return cn * std::max(std::pow(r, n - 1), r) * alpha * alpha / v; };
  const double v_lo = std::max(vol - E.measure().err, 0.5 * vol);
  const MeasureEstimate rhs{rhs_at(vol, a.value),
                            spread(rhs_at, {vol, v_lo, vol + E.measure().err}, {a.value, clamp0(a.value - a.err), a.value + a.err})};
  DeficitReport rep = make_report("euclid_deficit", lhs, rhs);
  rep.r = r;
  rep.alpha = a.value;
  rep.constant = cn;
  rep.direction = a.minimizer;
  return rep;
}

DeficitReport euclid_deficit_report(const GridSet& E, const ConvexBody& K, double r, const Constants& c) {
  return euclid_deficit_report(EuclideanSubject(E, K), r, c);
}

DeficitReport monotone_cover_check(const EuclideanSubject& E, double r) {
  require_radius(r);
  E.require_matching_volume();
  const GridSpec& spec = E.set().spec();
  const GridSet grown_k = rasterize(E.body(), spec, 1.0 + r);
  const GridSet k = rasterize(E.body(), spec);
  const GridSet& grown = E.enlarged(r);
  const MeasureEstimate lhs{volume(grown - grown_k).value, volume(grown).err + volume(grown_k).err};
  const MeasureEstimate rhs{volume(E.set() - k).value, E.measure().err + volume(k).err};
  DeficitReport rep = make_report("monotone_cover", lhs, rhs);
  rep.r = r;
  return rep;
}

DeficitReport monotone_cover_check(const GridSet& E, const ConvexBody& K, double r) {
  return monotone_cover_check(EuclideanSubject(E, K), r);
}

DeficitReport layercake_euclid_check(const EuclideanSubject& E, double r, int steps, double hq) {
  require_radius(r);
  require_steps(steps);
  hq = quotient_step(E.set().spec(), hq);
  const double step = r / steps;
  std::vector<PerimeterEstimate> samples;
  for (int k = 0; k < steps; ++k) {
    const double rho = k * step;
    const MeasureEstimate m0 = volume(E.enlarged(rho));
    const MeasureEstimate m1 = volume(E.enlarged(rho + hq));
    const MeasureEstimate m2 = volume(E.enlarged(rho + 2.0 * hq));
    PerimeterEstimate p;
    p.estimate = {(m1.value - m0.value) / hq, (m1.err + m0.err) / hq};
    p.quotient_bias = std::abs(m2.value - 2.0 * m1.value + m0.value) / (2.0 * hq);
    samples.push_back(p);
  }
  const MeasureEstimate lhs = volume(E.enlarged(r)) - E.measure();
  DeficitReport rep = make_report("layercake_euclid", lhs, riemann(samples, step, 1.0));
  rep.r = r;
  return rep;
}

DeficitReport bm_report(const EuclideanSubject& E, const Constants& c) {
  c.validate();
  const int n = E.set().spec().dim;
  const double inv = 1.0 / n;
  auto root = [inv](double v) { return std::pow(std::max(v, 0.0), inv); };
  // |d v^{1/n}| <= v_lo^{1/n - 1} dv / n
  auto root_err = [inv](const MeasureEstimate& m) {
    const double lo = std::max(m.value - m.err, 0.5 * m.value);
    return inv * std::pow(lo, inv - 1.0) * m.err;
  };
  const MeasureEstimate sum = volume(E.enlarged(1.0));
  const MeasureEstimate& vol = E.measure();
  const double f = E.body().volume();
  const MeasureEstimate lhs{root(sum.value) - root(vol.value) - root(f), root_err(sum) + root_err(vol)};

  const AsymmetryResult& a = E.alpha();
  const double cn = c.c_n(n);
  auto rhs_at = [&](double v, double alpha) { return cn * root(std::min(v, f)) * alpha * alpha / (v * v); };
  const double v_lo = std::max(vol.value - vol.err, 0.5 * vol.value);
  const MeasureEstimate rhs{rhs_at(vol.value, a.value),
                            spread(rhs_at, {vol.value, v_lo, vol.value + vol.err}, {a.value, clamp0(a.value - a.err), a.value + a.err})};
  DeficitReport rep = make_report("brunn_minkowski", lhs, rhs);
  rep.r = 1.0;
  rep.alpha = a.value;
  rep.constant = cn;
  rep.direction = a.minimizer;
  return rep;
}

DeficitReport bm_report(const GridSet& E, const ConvexBody& F, const Constants& c) {
  return bm_report(EuclideanSubject(E, F), c);
}

SharpnessFit sharpness_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw InvalidArgument("sharpness_fit: need at least 4 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [alpha, deficit] : points) {
    if (!(alpha > 0.0) || !(deficit > 0.0)) throw InvalidArgument("sharpness_fit: points must be positive");
    const double x = std::log(alpha);
    const double y = std::log(deficit);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double den = n * sxx - sx * sx;
  if (!(den > 1e-300)) throw InvalidArgument("sharpness_fit: all alphas coincide");
  SharpnessFit fit;
  fit.exponent = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.exponent * sx) / n;
  fit.points = points.size();
  return fit;
}

}  // namespace conc
