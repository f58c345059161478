#include "bloch/essential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bloch/error.hpp"

namespace bloch {

void ScanSettings::validate() const {
  if (k_min < 1 || k_max < k_min) throw ParameterError("need 1 <= k_min <= k_max");
  if (angles < 1) throw ParameterError("angle grid must not be empty");
  if (tail_window < 1 || tail_window > k_max - k_min + 1) {
    throw ParameterError("tail_window must lie in [1, number of radii]");
  }
  if (!(compact_tol > 0.0)) throw ParameterError("compact_tol must be positive");
  if (!(noncompact_factor >= 1.0)) throw ParameterError("noncompact_factor must be >= 1");
  if (j_max < 16) throw ParameterError("j_max must be >= 16");
  if (!(rel_tol >= 0.0) || !(abs_tol >= 0.0) || !(zhao_rel_tol >= 0.0)) {
    throw ParameterError("tolerances must be >= 0");
  }
}

const char* to_string(ScanKind kind) { return kind == ScanKind::Sigma ? "sigma" : "mobius"; }

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Compact: return "Compact";
    case Verdict::NonCompact: return "NonCompact";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::vector<double> scan_radii(const ScanSettings& scan, double eps_boundary) {
  std::vector<double> radii;
  for (int k = scan.k_min; k <= scan.k_max; ++k) {
    radii.push_back(std::min(1.0 - std::ldexp(1.0, -k), 1.0 - eps_boundary));
  }
  return radii;
}

namespace {

double window_max(const std::vector<double>& v, std::size_t end, std::size_t window) {
  return *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(end - window),
                           v.begin() + static_cast<std::ptrdiff_t>(end));
}

BoundaryScan run_scan(const CompositionSearch& search, ScanKind kind, double alpha,
                      const ScanSettings& settings) {
  settings.validate();
  BoundaryScan scan;
  scan.kind = kind;
  scan.alpha = alpha;
  scan.tail_window = settings.tail_window;
  scan.radii = scan_radii(settings, search.settings().eps_boundary);
  for (int m = 0; m < settings.angles; ++m) scan.angles.push_back(kTwoPi * m / settings.angles);

  const std::size_t nr = scan.radii.size();
  const std::size_t na = scan.angles.size();
  scan.norms.assign(nr * na, 0.0);
  scan.seminorms.assign(nr * na, 0.0);
  std::vector<char> unconverged(nr * na, 0);
  std::vector<char> rising(nr * na, 0);

  parallel_for(nr * na, [&](std::size_t cell) {
    const DiskPoint a = DiskPoint::polar(scan.radii[cell / na], scan.angles[cell % na]);
    const AnalyticMap outer = kind == ScanKind::Sigma
                                  ? AnalyticMap::sigma(SigmaFamily(alpha, a))
                                  : AnalyticMap::mobius(a);
    const BlochNorm n = search.norm(outer);
    scan.norms[cell] = n.total;
    scan.seminorms[cell] = n.seminorm.value;
    unconverged[cell] = !n.seminorm.is_converged;
    rising[cell] = n.seminorm.rising_tail;
  });
  scan.cells_unconverged = static_cast<std::size_t>(std::count(unconverged.begin(), unconverged.end(), 1));
  scan.cells_rising_tail = static_cast<std::size_t>(std::count(rising.begin(), rising.end(), 1));

  for (std::size_t k = 0; k < nr; ++k) {
    const auto row = static_cast<std::ptrdiff_t>(k * na);
    scan.tail_max_norm.push_back(*std::max_element(scan.norms.begin() + row,
                                                   scan.norms.begin() + row + static_cast<std::ptrdiff_t>(na)));
    scan.tail_max_seminorm.push_back(*std::max_element(
        scan.seminorms.begin() + row, scan.seminorms.begin() + row + static_cast<std::ptrdiff_t>(na)));
  }
  scan.tail_max = kind == ScanKind::Sigma ? scan.tail_max_norm : scan.tail_max_seminorm;

  const auto w = static_cast<std::size_t>(settings.tail_window);
  scan.L_norm = window_max(scan.tail_max_norm, nr, w);
  scan.L_seminorm = window_max(scan.tail_max_seminorm, nr, w);
  scan.L_estimate = window_max(scan.tail_max, nr, w);
  if (nr > w) {
    const double previous = window_max(scan.tail_max, nr - 1, w);
    scan.converged = std::abs(scan.L_estimate - previous) <
                     settings.rel_tol * scan.L_estimate + settings.abs_tol;
  }
  return scan;
}

}  // namespace

BoundaryScan sigma_scan(const CompositionSearch& search, double alpha, const ScanSettings& scan) {
  if (!(alpha > 0.0 && alpha <= kMaxAlpha)) throw ParameterError("alpha must lie in (0, 8]");
  return run_scan(search, ScanKind::Sigma, alpha, scan);
}

BoundaryScan sigma_scan(const AnalyticMap& phi, double alpha, const Weight& mu,
                        const ScanSettings& scan, const SearchSettings& search) {
  return sigma_scan(CompositionSearch(phi, mu, search), alpha, scan);
}

BoundaryScan tjani_scan(const CompositionSearch& search, const ScanSettings& scan) {
  return run_scan(search, ScanKind::Mobius, 1.0, scan);
}

BoundaryScan tjani_scan(const AnalyticMap& phi, const Weight& mu, const ScanSettings& scan,
                        const SearchSettings& search) {
  return tjani_scan(CompositionSearch(phi, mu, search), scan);
}

Verdict classify(double limit, bool converged, const ScanSettings& scan) {
  if (limit < scan.compact_tol) return Verdict::Compact;
  if (limit > scan.noncompact_floor() && converged) return Verdict::NonCompact;
  return Verdict::Inconclusive;
}

EssentialNormBounds essential_bounds(const BoundaryScan& scan, double alpha,
                                     const BlochNorm& phi_norm, const ScanSettings& settings) {
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
  EssentialNormBounds b;
  b.L = scan.L_estimate;
  b.lower = b.L / (alpha * std::pow(2.0, alpha));
  b.upper = 8.0 / alpha * b.L;
  b.verdict = classify(b.L, scan.converged, settings);
  if (b.verdict == Verdict::Compact && !std::isfinite(phi_norm.total)) {
    b.verdict = Verdict::Inconclusive;
  }
  return b;
}

ZhaoEstimate zhao_estimate(const CompositionSearch& search, double alpha, int j_max,
                           double zhao_rel_tol) {
  if (!(alpha > 0.0 && alpha <= kMaxAlpha)) throw ParameterError("alpha must lie in (0, 8]");
  if (j_max < 16) throw ParameterError("j_max must be >= 16");
  ZhaoEstimate z;
  z.alpha = alpha;
  z.beta = search.weight().standard_alpha();
  z.terms.assign(static_cast<std::size_t>(j_max), 0.0);
  parallel_for(z.terms.size(), [&](std::size_t i) {
    const int j = static_cast<int>(i) + 1;
    const BlochNorm n = search.norm(AnalyticMap::monomial(j));
    z.terms[i] = std::pow(static_cast<double>(j), alpha - 1.0) * n.total;
  });
  z.prefactor = std::pow(std::numbers::e / (2.0 * alpha), alpha);
  const std::size_t quarter = z.terms.size() / 4;
  z.value = z.prefactor * window_max(z.terms, z.terms.size(), quarter);
  z.previous_quarter = z.prefactor * window_max(z.terms, z.terms.size() - quarter, quarter);
  z.converged = std::abs(z.value - z.previous_quarter) <= zhao_rel_tol * z.value + 1e-12;
  return z;
}

ZhaoEstimate zhao_estimate(const AnalyticMap& phi, double alpha, double beta, int j_max,
                           const SearchSettings& search) {
  return zhao_estimate(CompositionSearch(phi, Weight::standard(beta), search), alpha, j_max);
}

CriteriaReport criteria_compare(const AnalyticMap& phi, double alpha, const Weight& mu,
                                const ScanSettings& scan, const SearchSettings& search) {
  scan.validate();
  CriteriaReport report;
  report.alpha = alpha;
  report.beta = mu.standard_alpha();
  const CompositionSearch composition(phi, mu, search);

  report.sigma = sigma_scan(composition, alpha, scan);
  const BlochNorm phi_norm = composition.norm(AnalyticMap::identity());
  report.bounds = essential_bounds(report.sigma, alpha, phi_norm, scan);
  report.sigma_verdict = report.bounds.verdict;

  report.zhao = zhao_estimate(composition, alpha, scan.j_max, scan.zhao_rel_tol);
  report.bounds.zhao = report.zhao.value;
  report.zhao_verdict = classify(report.zhao.value, report.zhao.converged, scan);

  report.agreement = report.sigma_verdict == report.zhao_verdict;
  if (!report.agreement) {
    report.disagreements.push_back(std::string("sigma scan says ") + to_string(report.sigma_verdict) +
                                   ", Zhao criterion says " + to_string(report.zhao_verdict));
  }
  if (alpha == 1.0 && report.beta == 1.0) {
    report.tjani = tjani_scan(composition, scan);
    report.tjani_verdict = classify(report.tjani->L_seminorm, report.tjani->converged, scan);
    if (*report.tjani_verdict != report.sigma_verdict) {
      report.agreement = false;
      report.disagreements.push_back(std::string("sigma scan says ") +
                                     to_string(report.sigma_verdict) + ", Mobius criterion says " +
                                     to_string(*report.tjani_verdict));
    }
  }
  if (report.sigma.converged && report.zhao.converged) {
    constexpr double kSandwichSlack = 0.05;
    const double slack = scan.compact_tol;
    const bool inside =
        report.zhao.value >= report.bounds.lower * (1.0 - kSandwichSlack) - slack &&
        report.zhao.value <= report.bounds.upper * (1.0 + kSandwichSlack) + slack;
    report.zhao_in_sandwich = inside;
    if (!inside) {
      report.agreement = false;
      report.disagreements.push_back("Zhao estimate lies outside the essential-norm bounds");
    }
  }
  return report;
}

}  // namespace bloch
