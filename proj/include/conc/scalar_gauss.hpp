#pragma once

namespace conc {

inline constexpr double kSqrt2Pi = 2.5066282746310002;
inline constexpr double kInvSqrt2Pi = 0.3989422804014327;

/// Gaussian mass of a half-space, strictly inside (0, 1).
class Probability {
 public:
  explicit Probability(double p);
  double value() const { return p_; }

 private:
  double p_;
};

/// Standard normal density e^{-s^2/2} / sqrt(2 pi).
double gauss_density(double s);

/// Standard normal CDF, the Gaussian measure of {x : <x, w> < s}.
/// Accurate to ~1e-16 absolute; throws InvalidArgument on non-finite input.
double phi(double s);

/// 1 - phi(s) without cancellation in the upper tail.
double phi_complement(double s);

/// phi(b) - phi(a) for a <= b, evaluated on the tail that avoids cancellation.
double phi_interval(double a, double b);

/// Inverse of phi. Throws DomainError unless 0 < p < 1.
/// Returns s with |phi(s) - p| <= 1e-12.
double phi_inv(double p);

/// Overload taking the strong type.
inline double phi_inv(Probability p) { return phi_inv(p.value()); }

}  // namespace conc
