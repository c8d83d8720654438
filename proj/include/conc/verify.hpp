#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conc/asymmetry.hpp"
#include "conc/geometry.hpp"
#include "conc/grid.hpp"
#include "conc/measures.hpp"
#include "conc/morphology.hpp"

namespace conc {

/// c_iso = 1 / (48 sqrt(2 pi)).
inline constexpr double kCIso = 1.0 / (48.0 * 2.5066282746310002);
inline constexpr double kDefaultCGauss = kCIso / 2000.0;

struct Constants {
  double c_gauss = kDefaultCGauss;
  std::optional<double> c_n_override;

  /// 9^{-n} / 100 unless overridden.
  double c_n(int n) const;
  /// Throws InvalidArgument unless every constant is positive.
  void validate() const;
};

/// One inequality check. pass <=> slack >= -(lhs.err + rhs.err).
struct DeficitReport {
  std::string id;
  MeasureEstimate lhs;
  MeasureEstimate rhs;
  double slack = 0.0;
  bool pass = false;

  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  double s = kNaN;
  double r = kNaN;
  double rho_hat = kNaN;
  double alpha = kNaN;
  double beta = kNaN;
  double constant = kNaN;
  Vec direction{kNaN, kNaN, kNaN};
};

DeficitReport make_report(std::string id, MeasureEstimate lhs, MeasureEstimate rhs);

/// A Gaussian test set with the quantities every check needs, computed on first use.
/// Not thread-safe; use one subject per worker.
class GaussianSubject {
 public:
  explicit GaussianSubject(GridSet E);
  ~GaussianSubject();

  const GridSet& set() const { return set_; }
  const GaussOffset& offset() const { return offset_; }
  const DistanceField& field() const { return field_; }
  GridSet enlarged(double r) const { return field_.enlarged(r); }
  const AsymmetryResult& alpha() const;
  MeasureEstimate beta() const;
  const HalfSpaceSweeper& sweeper() const;
  const HalfSpaceSweeper& enlarged_sweeper(double r) const;
  /// gamma(E + B_r), cached per radius.
  const MeasureEstimate& enlarged_measure(double r) const;

 private:
  GridSet set_;
  GaussOffset offset_;
  DistanceField field_;
  mutable std::optional<AsymmetryResult> alpha_;
  mutable std::optional<MeasureEstimate> beta_;
  mutable std::unique_ptr<HalfSpaceSweeper> sweeper_;
  mutable std::map<double, std::unique_ptr<HalfSpaceSweeper>> enlarged_sweepers_;
  mutable std::map<double, MeasureEstimate> enlarged_measures_;
};

/// gamma(E + B_r) against phi(s + r).
DeficitReport concentration_check(const GaussianSubject& E, double r);

/// gamma(E + B_r) - phi(s + r) against c e^{s^2} e^{-(|s|+r+4)^2/2} r alpha^2.
DeficitReport gauss_deficit_report(const GaussianSubject& E, double r, const Constants& c = {});
DeficitReport gauss_deficit_report(const GridSet& E, double r, const Constants& c = {});

/// gamma((E + B_r) \ H_{w,s+r}) against e^{-s^+}/5 gamma(E \ H_{w,s}), r in (0, 1].
DeficitReport covering_lemma_check(const GaussianSubject& E, const Vec& w, double r);
DeficitReport covering_lemma_check(const GridSet& E, const Vec& w, double r);

/// gamma(E + B_r) - gamma(E) against the left Riemann sum of P_gamma(E + B_rho)/sqrt(2 pi).
/// The right side's error adds the quotient bias and the total variation of the samples.
DeficitReport layercake_check(const GaussianSubject& E, double r, int steps = 8, double hq = 0.0);
DeficitReport layercake_check(const GridSet& E, double r, int steps = 8, double hq = 0.0);

/// A bounded Euclidean test set together with its reference body K.
class EuclideanSubject {
 public:
  EuclideanSubject(GridSet E, ConvexBody K);

  const GridSet& set() const { return set_; }
  const ConvexBody& body() const { return body_; }
  const MeasureEstimate& measure() const { return volume_; }
  /// E + rK, cached per radius.
  const GridSet& enlarged(double r) const;
  const AsymmetryResult& alpha() const;
  /// Throws VolumeMismatch unless |E| = |K| within the volume error.
  void require_matching_volume() const;

 private:
  GridSet set_;
  ConvexBody body_;
  MeasureEstimate volume_;
  mutable std::map<double, GridSet> enlarged_;
  mutable std::optional<AsymmetryResult> alpha_;
};

/// |E + rK| - |(1 + r)K| against c_n max{r^{n-1}, r} alpha^2 / |E|.
DeficitReport euclid_deficit_report(const EuclideanSubject& E, double r, const Constants& c = {});
DeficitReport euclid_deficit_report(const GridSet& E, const ConvexBody& K, double r, const Constants& c = {});

/// |(E + rK) \ (1 + r)K| against |E \ K|.
DeficitReport monotone_cover_check(const EuclideanSubject& E, double r);
DeficitReport monotone_cover_check(const GridSet& E, const ConvexBody& K, double r);

/// |E + rK| - |E| against the left Riemann sum of P_K(E + rho K).
DeficitReport layercake_euclid_check(const EuclideanSubject& E, double r, int steps = 8, double hq = 0.0);

/// |E + F|^{1/n} - |E|^{1/n} - |F|^{1/n} against c_n min{|E|,|F|}^{1/n} alpha(E,F)^2 / |E|^2.
DeficitReport bm_report(const EuclideanSubject& E, const Constants& c = {});
DeficitReport bm_report(const GridSet& E, const ConvexBody& F, const Constants& c = {});

struct SharpnessFit {
  double exponent = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Least-squares slope of log(deficit) against log(alpha). Needs at least four points with
/// positive coordinates and two distinct alphas; throws InvalidArgument otherwise.
SharpnessFit sharpness_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace conc
