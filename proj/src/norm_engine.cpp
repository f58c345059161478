#include "bloch/norm_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bloch/error.hpp"

namespace bloch {

void SearchSettings::validate() const {
  if (depth < 1) throw ParameterError("depth must be >= 1");
  if (!(eps_boundary > 0.0 && eps_boundary < 0.5)) {
    throw ParameterError("eps_boundary must lie in (0, 0.5)");
  }
  if (max_angles < kMinAnglesPerRing) throw ParameterError("max_angles must be >= 8");
  if (refine_rounds < 0) throw ParameterError("refine_rounds must be >= 0");
  if (!(shrink > 0.0 && shrink < 1.0)) throw ParameterError("shrink must lie in (0, 1)");
  if (!(rel_tol >= 0.0) || !(abs_tol >= 0.0)) throw ParameterError("tolerances must be >= 0");
  if (seeds < 1) throw ParameterError("seeds must be >= 1");
  if (max_levels < refine_rounds) throw ParameterError("max_levels must be >= refine_rounds");
}

namespace {

struct GridCache {
  DiskGrid grid;
  std::vector<complex> z;
  std::vector<double> mu;
  std::vector<std::size_t> ring_offset;  // rings + 1 entries
  std::vector<complex> phi;              // empty for a plain seminorm search
  std::vector<complex> dphi;
};

GridCache build_cache(const Weight& mu, const SearchSettings& s, const AnalyticMap* phi) {
  GridCache cache;
  cache.grid = make_geometric_grid(s.depth, s.eps_boundary, s.max_angles);
  const std::size_t n = cache.grid.size();
  cache.z.reserve(n);
  cache.mu.reserve(n);
  cache.ring_offset.push_back(0);
  for (std::size_t k = 0; k < cache.grid.radii.size(); ++k) {
    const double r = cache.grid.radii[k];
    const double w = mu.at_radius(r);
    const std::size_t m = cache.grid.ring_size(k);
    for (std::size_t i = 0; i < m; ++i) {
      cache.z.push_back(std::polar(r, cache.grid.angle(k, i)));
      cache.mu.push_back(w);
    }
    cache.ring_offset.push_back(cache.z.size());
  }
  if (phi) {
    cache.phi.reserve(n);
    cache.dphi.reserve(n);
    for (complex z : cache.z) {
      const Jet j = phi->jet(z);
      cache.phi.push_back(j.value);
      cache.dphi.push_back(j.derivative);
    }
  }
  return cache;
}

/// mu(z) |outer'(phi(z))| |phi'(z)|, or mu(z) |outer'(z)| without a symbol.
struct Objective {
  const AnalyticMap& outer;
  const AnalyticMap* phi;
  const Weight& mu;

  double operator()(complex z) const {
    const double w = mu.at_radius(std::abs(z));
    if (phi) {
      const Jet inner = phi->jet(z);
      return w * outer.derivative_modulus(inner.value) * std::abs(inner.derivative);
    }
    return w * outer.derivative_modulus(z);
  }
};

void require_finite(double v, complex z) {
  if (!std::isfinite(v)) {
    throw NumericError("objective is not finite at z = " + format_complex(z), z);
  }
}

std::vector<double> grid_values(const GridCache& cache, const AnalyticMap& outer) {
  const std::size_t n = cache.z.size();
  std::vector<double> values(n);
  if (cache.phi.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = cache.mu[i] * outer.derivative_modulus(cache.z[i]);
      require_finite(values[i], cache.z[i]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = cache.mu[i] * outer.derivative_modulus(cache.phi[i]) * std::abs(cache.dphi[i]);
      require_finite(values[i], cache.z[i]);
    }
  }
  return values;
}

/// Indices of grid points that are >= all ring and cross-ring neighbours,
/// best first.
std::vector<std::size_t> local_maxima(const GridCache& cache, const std::vector<double>& v,
                                      std::size_t limit) {
  const auto& off = cache.ring_offset;
  const std::size_t rings = off.size() - 1;
  auto ring_len = [&](std::size_t k) { return off[k + 1] - off[k]; };
  auto nearest = [&](std::size_t k, double theta) {
    const std::size_t n = ring_len(k);
    if (n == 1) return off[k];
    const auto idx = static_cast<std::size_t>(std::llround(theta / kTwoPi * n)) % n;
    return off[k] + idx;
  };

  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < rings; ++k) {
    const std::size_t n = ring_len(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double val = v[off[k] + i];
      bool is_max = true;
      if (n == 1) {
        if (k + 1 < rings) {
          for (std::size_t j = off[k + 1]; j < off[k + 2] && is_max; ++j) is_max = val >= v[j];
        }
      } else {
        const double theta = cache.grid.angle(k, i) - cache.grid.theta_start;
        is_max = val >= v[off[k] + (i + 1) % n] && val >= v[off[k] + (i + n - 1) % n];
        if (is_max && k > 0) is_max = val >= v[nearest(k - 1, theta)];
        if (is_max && k + 1 < rings) is_max = val >= v[nearest(k + 1, theta)];
      }
      if (is_max) candidates.push_back(off[k] + i);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  if (candidates.size() > limit) candidates.resize(limit);
  return candidates;
}

struct Seed {
  complex center;
  double value;
  double half_radius;
  double half_angle;
  bool active = true;
};

void check_rising_tail(SeminormEstimate& est, double cap, double eps,
                       const std::function<double(complex)>& objective) {
  const complex w = est.witness.value();
  if (std::abs(w) < cap * (1.0 - 1e-15)) return;
  const double beyond = 1.0 - 0.6 * eps;
  const complex probe = std::polar(beyond, std::arg(w));
  const double v = objective(probe);
  ++est.evaluations;
  if (v > est.value) {
    est.rising_tail = true;
    est.is_converged = false;
    est.trace.converged = false;
  }
}

SeminormEstimate refine(const GridCache& cache, const std::vector<double>& values,
                        const Objective& objective, const SearchSettings& s) {
  SeminormEstimate est;
  est.evaluations = values.size();
  const auto best_it = std::max_element(values.begin(), values.end());
  double best = *best_it;
  complex best_z = cache.z[static_cast<std::size_t>(best_it - values.begin())];
  est.trace.record(values.size(), best, best_z);

  std::vector<Seed> seeds;
  for (std::size_t idx : local_maxima(cache, values, static_cast<std::size_t>(s.seeds))) {
    const auto [hr, ht] = local_spacing(cache.grid, cache.z[idx]);
    seeds.push_back(Seed{cache.z[idx], values[idx], hr, ht});
  }

  const int points = std::max(kMinAnglesPerRing, static_cast<int>(std::ceil(2.0 / s.shrink))) + 1;
  const double cap = cache.grid.cap();
  // abs_tol is measured in units of sup mu
  const double abs_tol = s.abs_tol * objective.mu.bound();
  double last_gap = 0.0;
  bool settled = false;
  for (int level = 1; level <= s.max_levels; ++level) {
    std::size_t evaluated = 0;
    settled = true;
    const double before = best;
    for (Seed& seed : seeds) {
      if (!seed.active) continue;
      const DiskGrid patch =
          polar_patch(seed.center, seed.half_radius, seed.half_angle, points, s.eps_boundary);
      std::vector<std::vector<double>> sampled(patch.radii.size());
      double patch_best = -1.0;
      complex patch_z{};
      std::size_t patch_ring = 0;
      std::size_t patch_idx = 0;
      patch.for_each_point([&](std::size_t k, std::size_t i, complex z) {
        const double v = objective(z);
        require_finite(v, z);
        ++evaluated;
        sampled[k].push_back(v);
        if (v > patch_best) {
          patch_best = v;
          patch_z = z;
          patch_ring = k;
          patch_idx = i;
        }
      });
      // Largest drop from the best sample to an adjacent one; bounds what a
      // finer patch can still gain near a smooth maximum.
      double drop = 0.0;
      auto neighbour = [&](std::size_t k, std::size_t i) {
        if (k < sampled.size() && !sampled[k].empty()) {
          drop = std::max(drop, patch_best - sampled[k][std::min(i, sampled[k].size() - 1)]);
        }
      };
      const std::size_t width = sampled[patch_ring].size();
      if (patch_ring > 0) neighbour(patch_ring - 1, patch_idx);
      neighbour(patch_ring + 1, patch_idx);
      if (width > 1) {
        if (patch_idx > 0 || patch.full_circle) neighbour(patch_ring, (patch_idx + width - 1) % width);
        if (patch_idx + 1 < width || patch.full_circle) neighbour(patch_ring, (patch_idx + 1) % width);
      }

      const bool moved = patch_best > seed.value;
      const double gain = moved ? patch_best - seed.value : 0.0;
      bool edge = false;
      if (moved) {
        seed.center = patch_z;
        seed.value = patch_best;
        const double r = patch.radii[patch_ring];
        const bool inner_edge = patch_ring == 0 && r > 0.0;
        const bool outer_edge = patch_ring + 1 == patch.radii.size() && r < cap;
        const bool side_edge = !patch.full_circle && (patch_idx == 0 || patch_idx + 1 == width);
        edge = inner_edge || outer_edge || side_edge;
      }
      if (!edge) {
        seed.half_radius *= s.shrink;
        seed.half_angle *= s.shrink;
      }
      const double tol = s.rel_tol * std::max(best, seed.value) + abs_tol;
      if (edge || gain > tol || drop > tol) settled = false;
      if (seed.value > best) {
        best = seed.value;
        best_z = seed.center;
      }
      if (seed.half_radius < 1e-17 && seed.half_angle < 1e-17) seed.active = false;
    }
    est.evaluations += evaluated;
    est.trace.record(evaluated, best, best_z);
    last_gap = best - before;
    if (level >= s.refine_rounds && settled) break;
  }

  est.value = best;
  est.witness = DiskPoint(best_z);
  est.is_converged = settled;
  est.trace.converged = settled;
  est.trace.final_gap = last_gap;
  check_rising_tail(est, cap, s.eps_boundary, objective);
  return est;
}

SeminormEstimate radial_search(const MonomialForm& form, const Weight& mu,
                               const SearchSettings& s) {
  SeminormEstimate est;
  est.radial_path = true;
  const double c = std::abs(form.coefficient);
  const int j = form.power;
  if (j == 0 || c == 0.0) {
    est.value = 0.0;
    est.witness = DiskPoint(0.0, 0.0);
    est.trace.record(1, 0.0, 0.0);
    est.is_converged = est.trace.converged = true;
    est.evaluations = 1;
    return est;
  }
  auto objective = [&](double r) {
    return mu.at_radius(r) * c * j * (j == 1 ? 1.0 : std::pow(r, j - 1));
  };
  const double cap = 1.0 - s.eps_boundary;

  std::vector<double> radii = make_geometric_grid(s.depth, s.eps_boundary, s.max_angles).radii;
  constexpr int kUniform = 4096;
  for (int i = 0; i <= kUniform; ++i) radii.push_back(cap * i / kUniform);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  std::size_t best_i = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double v = objective(radii[i]);
    require_finite(v, radii[i]);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  est.evaluations = radii.size();
  est.trace.record(radii.size(), best, radii[best_i]);

  // Golden-section search on the bracket around the best sample.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = radii[best_i == 0 ? 0 : best_i - 1];
  double hi = radii[std::min(best_i + 1, radii.size() - 1)];
  double best_r = radii[best_i];
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  std::size_t evaluated = 2;
  while (hi - lo > 1e-16 && evaluated < 400) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
    ++evaluated;
  }
  const double prev = best;
  if (f1 > best) {
    best = f1;
    best_r = x1;
  }
  if (f2 > best) {
    best = f2;
    best_r = x2;
  }
  est.evaluations += evaluated;
  est.trace.record(evaluated, best, best_r);
  est.trace.final_gap = best - prev;
  est.value = best;
  est.witness = DiskPoint(best_r, 0.0);
  est.is_converged = est.trace.converged = true;
  check_rising_tail(est, cap, s.eps_boundary, [&](complex z) { return objective(std::abs(z)); });
  return est;
}

}  // namespace

struct CompositionSearch::Cache {
  GridCache grid;
};

SeminormEstimate bloch_seminorm(const AnalyticMap& f, const Weight& mu,
                                const SearchSettings& settings) {
  settings.validate();
  if (settings.radial_fast_path) {
    if (auto form = f.monomial_form()) return radial_search(*form, mu, settings);
  }
  const GridCache cache = build_cache(mu, settings, nullptr);
  return refine(cache, grid_values(cache, f), Objective{f, nullptr, mu}, settings);
}

BlochNorm bloch_norm(const AnalyticMap& f, const Weight& mu, const SearchSettings& settings) {
  BlochNorm norm;
  norm.value_at_zero = std::abs(f.eval(0.0));
  norm.seminorm = bloch_seminorm(f, mu, settings);
  norm.total = norm.value_at_zero + norm.seminorm.value;
  return norm;
}

CompositionSearch::CompositionSearch(AnalyticMap phi, Weight mu, SearchSettings settings)
    : phi_(std::move(phi)), mu_(std::move(mu)), settings_(settings) {
  settings_.validate();
  cache_ = std::make_unique<Cache>(Cache{build_cache(mu_, settings_, &phi_)});
  certificate_ = certify_self_map(phi_, cache_->grid.grid);
}

CompositionSearch::~CompositionSearch() = default;
CompositionSearch::CompositionSearch(CompositionSearch&&) noexcept = default;
CompositionSearch& CompositionSearch::operator=(CompositionSearch&&) noexcept = default;

SeminormEstimate CompositionSearch::seminorm(const AnalyticMap& outer) const {
  if (settings_.radial_fast_path) {
    if (auto form = AnalyticMap::compose(outer, phi_).monomial_form()) {
      return radial_search(*form, mu_, settings_);
    }
  }
  return refine(cache_->grid, grid_values(cache_->grid, outer), Objective{outer, &phi_, mu_},
                settings_);
}

BlochNorm CompositionSearch::norm(const AnalyticMap& outer) const {
  BlochNorm norm;
  norm.value_at_zero = std::abs(outer.eval(phi_.eval(0.0)));
  norm.seminorm = seminorm(outer);
  norm.total = norm.value_at_zero + norm.seminorm.value;
  return norm;
}

SeminormEstimate composition_seminorm(const AnalyticMap& f, const AnalyticMap& phi,
                                      const Weight& mu, const SearchSettings& settings) {
  return CompositionSearch(phi, mu, settings).seminorm(f);
}

std::pair<BlochNorm, BlochNorm> dilate_and_norm(const AnalyticMap& f, double r, double alpha,
                                                const SearchSettings& settings) {
  if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("dilation radius must lie in [0, 1]");
  const Weight mu = Weight::standard(alpha);
  return {bloch_norm(f, mu, settings), bloch_norm(AnalyticMap::dilate(r, f), mu, settings)};
}

}  // namespace bloch
