#include "conc/scalar_gauss.hpp"

#include <cmath>
#include <string>

#include "conc/errors.hpp"

namespace conc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_finite(double s, const char* what) {
  if (!std::isfinite(s)) {
    throw InvalidArgument(std::string(what) + ": argument is not finite");
  }
}

}  // namespace

Probability::Probability(double p) : p_(p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("Probability must lie strictly inside (0, 1)");
  }
}

double gauss_density(double s) { return kInvSqrt2Pi * std::exp(-0.5 * s * s); }

double phi(double s) {
  require_finite(s, "phi");
  return 0.5 * std::erfc(-s * kInvSqrt2);
}

double phi_complement(double s) {
  require_finite(s, "phi_complement");
  return 0.5 * std::erfc(s * kInvSqrt2);
}

double phi_interval(double a, double b) {
  if (b <= a) return 0.0;
  // Difference of upper tails is exact-ish on the right, of lower tails on the left.
  if (a >= 0.0) return phi_complement(a) - phi_complement(b);
  if (b <= 0.0) return phi(b) - phi(a);
  return 1.0 - phi(a) - phi_complement(b);
}

double phi_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("phi_inv: probability must lie strictly inside (0, 1)");
  }
  if (p == 0.5) return 0.0;

  double lo = -9.0;
  double hi = 9.0;
  while (phi(lo) > p) lo -= 9.0;  // phi(-38) is ~1e-316, so this terminates
  while (phi(hi) < p) hi += 9.0;

  double s = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = phi(s) - p;
    if (f == 0.0) return s;
    if (f < 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    const double dens = gauss_density(s);
    double next = dens > 0.0 ? s - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-15 * std::max(1.0, std::abs(s)) || hi - lo <= 1e-15) {
      return next;
    }
    s = next;
  }
  return s;
}

}  // namespace conc
