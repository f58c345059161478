#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bloch/norm_engine.hpp"

namespace bloch {

/// Boundary scan over a = |a|_k e^{i theta_m}, |a|_k = min(1 - 2^-k, 1 - eps).
struct ScanSettings {
  int k_min = 3;
  int k_max = 20;
  int angles = 64;
  int tail_window = 4;
  double compact_tol = 1e-3;
  double noncompact_factor = 10.0;  // NonCompact needs L > factor * compact_tol
  int j_max = 256;
  double rel_tol = 1e-3;            // tail convergence of the scan
  double abs_tol = 1e-9;
  double zhao_rel_tol = 1e-2;       // agreement of the last two quarters of j

  void validate() const;
  double noncompact_floor() const { return noncompact_factor * compact_tol; }
};

enum class ScanKind { Sigma, Mobius };
enum class Verdict { Compact, NonCompact, Inconclusive };

const char* to_string(ScanKind kind);
const char* to_string(Verdict verdict);

/// Norms of tau_a o phi on the a-grid.  For the sigma scan the tracked
/// quantity is the full norm ||sigma_a o phi||_{B^mu}; for the Mobius scan
/// it is the seminorm ||phi_a o phi||_mu.  Both are always recorded.
struct BoundaryScan {
  ScanKind kind = ScanKind::Sigma;
  double alpha = 1.0;  // family parameter for the sigma scan
  std::vector<double> radii;
  std::vector<double> angles;
  std::vector<double> norms;      // radii.size() x angles.size(), row-major
  std::vector<double> seminorms;  // same layout
  std::vector<double> tail_max;   // max over angles of the tracked quantity
  std::vector<double> tail_max_norm;
  std::vector<double> tail_max_seminorm;
  int tail_window = 4;
  double L_estimate = 0.0;  // tracked quantity
  double L_norm = 0.0;
  double L_seminorm = 0.0;
  bool converged = false;
  std::size_t cells_unconverged = 0;
  std::size_t cells_rising_tail = 0;

  double norm_at(std::size_t radius, std::size_t angle) const {
    return norms[radius * angles.size() + angle];
  }
  double seminorm_at(std::size_t radius, std::size_t angle) const {
    return seminorms[radius * angles.size() + angle];
  }
};

/// Two-sided estimate L/(alpha 2^alpha) <= ||C_phi||_e <= (8/alpha) L.
struct EssentialNormBounds {
  double L = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> zhao;
  Verdict verdict = Verdict::Inconclusive;
};

struct ZhaoEstimate {
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<double> terms;  // j^(alpha-1) ||phi^j||_{B^beta}, j = 1..j_max
  double prefactor = 0.0;     // (e / (2 alpha))^alpha
  double value = 0.0;         // prefactor * max over the last quarter
  double previous_quarter = 0.0;  // prefactor * max over the third quarter
  bool converged = false;
};

struct CriteriaReport {
  double alpha = 1.0;
  double beta = 1.0;
  BoundaryScan sigma;
  EssentialNormBounds bounds;
  ZhaoEstimate zhao;
  std::optional<BoundaryScan> tjani;
  Verdict sigma_verdict = Verdict::Inconclusive;
  Verdict zhao_verdict = Verdict::Inconclusive;
  std::optional<Verdict> tjani_verdict;
  bool agreement = false;
  std::optional<bool> zhao_in_sandwich;  // set when scan and Zhao both converged
  std::vector<std::string> disagreements;
};

/// Scan radii |a|_k for k = k_min..k_max, capped at 1 - eps.
std::vector<double> scan_radii(const ScanSettings& scan, double eps_boundary);

/// ||sigma_a o phi||_{B^mu} over the a-grid; L = limsup |a| -> 1.
BoundaryScan sigma_scan(const AnalyticMap& phi, double alpha, const Weight& mu,
                        const ScanSettings& scan = {}, const SearchSettings& search = {});
BoundaryScan sigma_scan(const CompositionSearch& search, double alpha, const ScanSettings& scan);

/// ||phi_a o phi||_mu with the Mobius automorphisms phi_a.
BoundaryScan tjani_scan(const AnalyticMap& phi, const Weight& mu, const ScanSettings& scan = {},
                        const SearchSettings& search = {});
BoundaryScan tjani_scan(const CompositionSearch& search, const ScanSettings& scan);

/// Verdict from a limit estimate: Compact below compact_tol, NonCompact above
/// the floor when the estimate converged, Inconclusive otherwise.
Verdict classify(double limit, bool converged, const ScanSettings& scan);

/// Interval [L/(alpha 2^alpha), (8/alpha) L] and compactness verdict.
/// Compact additionally requires a finite ||phi||_{B^mu}.
EssentialNormBounds essential_bounds(const BoundaryScan& scan, double alpha,
                                     const BlochNorm& phi_norm, const ScanSettings& settings = {});

/// (e/(2 alpha))^alpha limsup_j j^(alpha-1) ||phi^j||_{B^beta}, the limsup
/// replaced by the maximum over the last quarter of j in [1, j_max].
ZhaoEstimate zhao_estimate(const AnalyticMap& phi, double alpha, double beta, int j_max,
                           const SearchSettings& search = {});
ZhaoEstimate zhao_estimate(const CompositionSearch& search, double alpha, int j_max,
                           double zhao_rel_tol = 1e-2);

/// Runs the sigma scan, the Zhao estimate and (for alpha = beta = 1) the
/// Mobius scan, and checks that the verdicts agree.  Throws UnsupportedWeight
/// unless mu is a standard weight v_beta.
CriteriaReport criteria_compare(const AnalyticMap& phi, double alpha, const Weight& mu,
                                const ScanSettings& scan = {}, const SearchSettings& search = {});

}  // namespace bloch
