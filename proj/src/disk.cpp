#include "bloch/disk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "bloch/error.hpp"

namespace bloch {

DiskPoint::DiskPoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw ParameterError("disk point must be finite");
  }
  if (re * re + im * im >= 1.0) {
    throw ParameterError("point (" + std::to_string(re) + ", " + std::to_string(im) +
                         ") is not inside the unit disk");
  }
}

DiskPoint DiskPoint::polar(double radius, double theta) {
  const complex z = std::polar(radius, theta);
  return DiskPoint(z.real(), z.imag());
}

std::size_t DiskGrid::ring_size(std::size_t k) const noexcept {
  if (radii[k] == 0.0) return 1;
  return static_cast<std::size_t>(angles_per_radius[k]);
}

std::size_t DiskGrid::size() const noexcept {
  std::size_t total = 0;
  for (std::size_t k = 0; k < radii.size(); ++k) total += ring_size(k);
  return total;
}

double DiskGrid::angle(std::size_t ring, std::size_t i) const noexcept {
  const double n = static_cast<double>(angles_per_radius[ring]);
  if (full_circle) return theta_start + kTwoPi * static_cast<double>(i) / n;
  return theta_start + theta_span * static_cast<double>(i) / (n - 1.0);
}

double DiskGrid::angular_spacing(std::size_t ring) const noexcept {
  const double n = static_cast<double>(angles_per_radius[ring]);
  return full_circle ? kTwoPi / n : theta_span / (n - 1.0);
}

void RefinementTrace::record(std::size_t grid_size, double value, complex where) {
  RefinementLevel level{grid_size, value, where};
  if (!levels.empty() && levels.back().running_max >= value) {
    level.running_max = levels.back().running_max;
    level.argmax = levels.back().argmax;
  }
  levels.push_back(level);
}

DiskGrid make_geometric_grid(int depth, double eps_boundary, int max_angles) {
  if (depth < 1) throw ParameterError("grid depth must be >= 1");
  if (!(eps_boundary > 0.0 && eps_boundary < 0.5)) {
    throw ParameterError("eps_boundary must lie in (0, 0.5)");
  }
  if (max_angles < kMinAnglesPerRing) {
    throw ParameterError("max_angles must be >= 8");
  }
  DiskGrid grid;
  grid.eps_boundary = eps_boundary;
  grid.radii.reserve(static_cast<std::size_t>(depth) + 1);
  grid.radii.push_back(0.0);
  grid.angles_per_radius.push_back(kMinAnglesPerRing);
  const double log_eps = std::log(eps_boundary);
  for (int k = 1; k <= depth; ++k) {
    const double gap = k == depth ? eps_boundary : std::exp(log_eps * k / depth);
    const double r = 1.0 - gap;
    const double wanted = std::ceil(kTwoPi / gap);
    const int count = static_cast<int>(
        std::max<double>(kMinAnglesPerRing, std::min<double>(max_angles, wanted)));
    grid.radii.push_back(r);
    grid.angles_per_radius.push_back(count);
  }
  return grid;
}

DiskGrid polar_patch(complex center, double half_radius, double half_angle, int points,
                     double eps_boundary) {
  points = std::max(points, kMinAnglesPerRing + 1);
  const double cap = 1.0 - eps_boundary;
  const double rc = std::min(std::abs(center), cap);
  DiskGrid grid;
  grid.eps_boundary = eps_boundary;

  auto push_radius = [&](double r, int count) {
    r = std::clamp(r, 0.0, cap);
    if (!grid.radii.empty() && r <= grid.radii.back()) return;
    grid.radii.push_back(r);
    grid.angles_per_radius.push_back(count);
  };

  const double step = 2.0 * half_radius / (points - 1);
  if (rc - half_radius <= 0.0 || half_angle >= std::numbers::pi) {
    // Window covers the origin: sample the whole disk of radius rc + h.
    const double outer = std::min(rc + half_radius, cap);
    const double dr = outer / (points - 1);
    const double spacing = 2.0 * std::min(half_angle, std::numbers::pi) / (points - 1);
    const int count = static_cast<int>(std::clamp(std::ceil(kTwoPi / spacing),
                                                  double(kMinAnglesPerRing),
                                                  4.0 * kDefaultMaxAngles));
    for (int i = 0; i < points; ++i) push_radius(dr * i, count);
    grid.full_circle = true;
    grid.theta_start = std::arg(center);
    grid.theta_span = kTwoPi;
    return grid;
  }
  for (int i = 0; i < points; ++i) push_radius(rc - half_radius + step * i, points);
  grid.full_circle = false;
  grid.theta_start = std::arg(center) - half_angle;
  grid.theta_span = 2.0 * half_angle;
  return grid;
}

std::pair<double, double> local_spacing(const DiskGrid& grid, complex z) {
  const double r = std::abs(z);
  const auto& radii = grid.radii;
  auto it = std::lower_bound(radii.begin(), radii.end(), r);
  std::size_t k;
  if (it == radii.end()) {
    k = radii.size() - 1;
  } else if (it == radii.begin()) {
    k = 0;
  } else {
    const std::size_t hi = static_cast<std::size_t>(it - radii.begin());
    k = (r - radii[hi - 1] <= radii[hi] - r) ? hi - 1 : hi;
  }
  double gap_r = 0.0;
  if (k + 1 < radii.size()) gap_r = std::max(gap_r, radii[k + 1] - radii[k]);
  if (k > 0) gap_r = std::max(gap_r, radii[k] - radii[k - 1]);
  if (gap_r == 0.0) gap_r = std::max(radii[k], grid.eps_boundary);
  return {gap_r, grid.angular_spacing(k)};
}

DiskGrid refine_near(const DiskGrid& grid, const DiskPoint& witness, double shrink) {
  if (!(shrink > 0.0 && shrink < 1.0)) throw ParameterError("shrink must lie in (0, 1)");
  if (grid.radii.empty()) throw ParameterError("cannot refine an empty grid");
  const auto [gap_r, gap_theta] = local_spacing(grid, witness.value());
  const int points = std::max(kMinAnglesPerRing, static_cast<int>(std::ceil(2.0 / shrink))) + 1;
  return polar_patch(witness.value(), gap_r, gap_theta, points, grid.eps_boundary);
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BLOCH_SCOPE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bloch
