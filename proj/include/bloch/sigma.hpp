#pragma once

#include <vector>

#include "bloch/disk.hpp"

namespace bloch {

/// Test functions sigma_a(z) = (1 - |a|) ((1 - conj(a) z)^(-alpha) - 1).
///
/// 1 - conj(a) z lies in the disk of centre 1 and radius 1 for a, z in D,
/// so the principal logarithm is defined along the whole family.
struct SigmaFamily {
  double alpha;
  DiskPoint a;

  SigmaFamily(double alpha, DiskPoint a);

  complex eval(complex z) const;
  /// alpha conj(a) (1 - |a|) (1 - conj(a) z)^(-alpha - 1)
  complex derivative(complex z) const;

  /// alpha 2^alpha, the uniform bound on the B^alpha norms of the family.
  double norm_bound() const;
  /// f_a = sigma_a / (alpha 2^alpha).
  complex normalized_eval(complex z) const { return eval(z) / norm_bound(); }
  complex normalized_derivative(complex z) const { return derivative(z) / norm_bound(); }
};

/// z^p computed as exp(p log z) with the principal branch.
complex principal_pow(complex z, double p);

/// e^w - 1 without cancellation for small w.
complex expm1(complex w);

/// |sigma_a'(a)| >= alpha / (4 (1 - |a|^2)^alpha) using closed forms, with
/// 1e-12 relative slack.  Throws DomainError unless 1/2 < |a| < 1.
bool check_derivative_lower_bound(double alpha, const DiskPoint& a);

/// For each |a| in `radii`, sup over |z| <= rho of |sigma_a(z)| on a polar
/// grid (a taken on the positive real axis).
std::vector<double> check_uniform_vanishing(double alpha, double rho,
                                            const std::vector<double>& radii);

}  // namespace bloch
