#include "bloch/sigma.hpp"

#include <algorithm>
#include <cmath>

#include "bloch/error.hpp"
#include "bloch/weights.hpp"

namespace bloch {

complex principal_pow(complex z, double p) { return std::exp(p * std::log(z)); }

complex expm1(complex w) {
  const double x = w.real();
  const double y = w.imag();
  const double half_sin = std::sin(0.5 * y);
  // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

SigmaFamily::SigmaFamily(double alpha_, DiskPoint a_) : alpha(alpha_), a(a_) {
  if (!(alpha > 0.0 && alpha <= kMaxAlpha)) throw ParameterError("alpha must lie in (0, 8]");
}

complex SigmaFamily::eval(complex z) const {
  const complex abar = std::conj(a.value());
  const complex w = 1.0 - abar * z;
  return (1.0 - a.modulus()) * expm1(-alpha * std::log(w));
}

complex SigmaFamily::derivative(complex z) const {
  const complex abar = std::conj(a.value());
  const complex w = 1.0 - abar * z;
  return alpha * abar * (1.0 - a.modulus()) * principal_pow(w, -alpha - 1.0);
}

double SigmaFamily::norm_bound() const { return alpha * std::pow(2.0, alpha); }

bool check_derivative_lower_bound(double alpha, const DiskPoint& a) {
  const double m = a.modulus();
  if (!(m > 0.5 && m < 1.0)) throw DomainError("derivative lower bound needs 1/2 < |a| < 1");
  const SigmaFamily family(alpha, a);
  const double lhs = std::abs(family.derivative(a.value()));
  const double rhs = alpha / (4.0 * std::pow((1.0 - m) * (1.0 + m), alpha));
  return lhs >= rhs - 1e-12 * rhs;
}

std::vector<double> check_uniform_vanishing(double alpha, double rho,
                                            const std::vector<double>& radii) {
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("rho must lie in (0, 1)");
  constexpr int kRings = 64;
  constexpr int kAngles = 256;
  std::vector<double> sups;
  sups.reserve(radii.size());
  for (double m : radii) {
    const SigmaFamily family(alpha, DiskPoint(m, 0.0));
    double best = 0.0;
    for (int k = 0; k <= kRings; ++k) {
      const double r = rho * k / kRings;
      for (int i = 0; i < kAngles; ++i) {
        best = std::max(best, std::abs(family.eval(std::polar(r, kTwoPi * i / kAngles))));
        if (r == 0.0) break;
      }
    }
    sups.push_back(best);
  }
  return sups;
}

}  // namespace bloch
