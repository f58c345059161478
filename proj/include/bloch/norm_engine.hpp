#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bloch/disk.hpp"
#include "bloch/symbol.hpp"
#include "bloch/weights.hpp"

namespace bloch {

/// Controls for the supremum search of mu(z)|g'(z)| over the disk.
struct SearchSettings {
  int depth = 20;                 // rings of the global grid
  double eps_boundary = kDefaultBoundaryEps;
  int max_angles = kDefaultMaxAngles;
  int refine_rounds = 3;          // minimum number of local refinement levels
  double shrink = 0.25;           // spacing ratio between refinement levels
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;           // in units of sup mu
  int seeds = 4;                  // local maxima of the global grid refined further
  int max_levels = 80;            // hard cap on refinement levels
  bool radial_fast_path = true;   // 1-D search for c z^j under a radial weight

  /// Throws ParameterError on out-of-range values.
  void validate() const;
};

/// Grid-plus-refinement estimate of sup_z mu(z)|g'(z)|.  `value` is the
/// objective at `witness`, hence a lower bound for the true supremum.
struct SeminormEstimate {
  double value = 0.0;
  DiskPoint witness;
  RefinementTrace trace;
  bool is_converged = false;
  /// The maximiser sits on the outermost admissible radius and the
  /// objective still grows beyond it: the supremum is approached at the
  /// boundary (possibly infinite).
  bool rising_tail = false;
  bool radial_path = false;
  std::size_t evaluations = 0;
};

/// |f(0)| + ||f||_mu
struct BlochNorm {
  double value_at_zero = 0.0;
  SeminormEstimate seminorm;
  double total = 0.0;
};

/// ||f||_mu = sup mu(z)|f'(z)|.  Throws NumericError if the objective is not
/// finite somewhere on the search grid.
SeminormEstimate bloch_seminorm(const AnalyticMap& f, const Weight& mu,
                                const SearchSettings& settings = {});

/// ||f||_{B^mu} = |f(0)| + ||f||_mu
BlochNorm bloch_norm(const AnalyticMap& f, const Weight& mu, const SearchSettings& settings = {});

/// Composition objective mu(z)|f'(phi(z))||phi'(z)| for many outer
/// functions f and one symbol phi.  The constructor certifies phi (throws
/// NotSelfMap) and caches phi, phi' and mu on the global grid.
class CompositionSearch {
 public:
  CompositionSearch(AnalyticMap phi, Weight mu, SearchSettings settings = {});
  ~CompositionSearch();
  CompositionSearch(CompositionSearch&&) noexcept;
  CompositionSearch& operator=(CompositionSearch&&) noexcept;

  const SelfMapCertificate& certificate() const noexcept { return certificate_; }
  const AnalyticMap& symbol() const noexcept { return phi_; }
  const Weight& weight() const noexcept { return mu_; }
  const SearchSettings& settings() const noexcept { return settings_; }

  /// ||f o phi||_mu
  SeminormEstimate seminorm(const AnalyticMap& outer) const;
  /// |f(phi(0))| + ||f o phi||_mu
  BlochNorm norm(const AnalyticMap& outer) const;

 private:
  struct Cache;
  AnalyticMap phi_;
  Weight mu_;
  SearchSettings settings_;
  SelfMapCertificate certificate_;
  std::unique_ptr<Cache> cache_;
};

/// ||f o phi||_mu, certifying phi first.  Equals
/// bloch_seminorm(compose(f, phi), mu).
SeminormEstimate composition_seminorm(const AnalyticMap& f, const AnalyticMap& phi,
                                      const Weight& mu, const SearchSettings& settings = {});

/// (||f||_{B^alpha}, ||K_r f||_{B^alpha}) with (K_r f)(z) = f(r z).
std::pair<BlochNorm, BlochNorm> dilate_and_norm(const AnalyticMap& f, double r, double alpha,
                                                const SearchSettings& settings = {});

}  // namespace bloch
