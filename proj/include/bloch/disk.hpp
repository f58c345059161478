#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace bloch {

using complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDefaultBoundaryEps = 1e-6;
inline constexpr int kDefaultMaxAngles = 4096;
inline constexpr int kMinAnglesPerRing = 8;

/// A point of the open unit disk.  Construction rejects |p| >= 1.
class DiskPoint {
 public:
  DiskPoint() = default;
  DiskPoint(double re, double im);
  explicit DiskPoint(complex z) : DiskPoint(z.real(), z.imag()) {}

  static DiskPoint polar(double radius, double theta);

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  complex value() const noexcept { return {re_, im_}; }
  double modulus() const noexcept { return std::hypot(re_, im_); }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  double re_ = 0.0;
  double im_ = 0.0;
};

/// Polar sampling grid.  Each ring samples either the full circle
/// (theta_start + 2*pi*i/n, i < n) or a closed angular window
/// (theta_start + theta_span*i/(n-1), i < n).  A ring of radius 0
/// contributes a single point.
struct DiskGrid {
  std::vector<double> radii;
  std::vector<int> angles_per_radius;
  double eps_boundary = kDefaultBoundaryEps;
  double theta_start = 0.0;
  double theta_span = kTwoPi;
  bool full_circle = true;

  double cap() const noexcept { return 1.0 - eps_boundary; }
  double max_radius() const noexcept { return radii.empty() ? 0.0 : radii.back(); }

  /// Number of distinct sample points.
  std::size_t size() const noexcept;
  /// Points contributed by ring k.
  std::size_t ring_size(std::size_t k) const noexcept;
  double angle(std::size_t ring, std::size_t i) const noexcept;
  double angular_spacing(std::size_t ring) const noexcept;

  /// Calls fn(ring, index, z) for every point, ring by ring.
  template <class Fn>
  void for_each_point(Fn&& fn) const {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const std::size_t n = ring_size(k);
      for (std::size_t i = 0; i < n; ++i) {
        fn(k, i, std::polar(radii[k], angle(k, i)));
      }
    }
  }
};

/// Levels of a refinement run: size of the grid evaluated at that level,
/// the running maximum so far, and where it was attained.
struct RefinementLevel {
  std::size_t grid_size = 0;
  double running_max = 0.0;
  complex argmax{};
};

struct RefinementTrace {
  std::vector<RefinementLevel> levels;
  bool converged = false;
  double final_gap = 0.0;

  /// Appends a level; the running maximum never decreases.
  void record(std::size_t grid_size, double value, complex where);
};

/// Rings at radius 0 and 1 - eps^(k/depth), k = 1..depth, so the outermost
/// ring sits exactly at the cap 1 - eps.  Ring k carries
/// max(8, min(max_angles, ceil(2*pi / (1 - r_k)))) angles.
DiskGrid make_geometric_grid(int depth, double eps_boundary,
                             int max_angles = kDefaultMaxAngles);

/// Polar patch around `center`: `points` radii in [|c| - half_radius,
/// |c| + half_radius] clamped to [0, 1 - eps] and `points` angles in
/// [arg c - half_angle, arg c + half_angle].  If the radial window reaches
/// the origin the patch becomes a full disk of that radius.
DiskGrid polar_patch(complex center, double half_radius, double half_angle, int points,
                     double eps_boundary);

/// Denser local grid around `witness`.  The neighbourhood spans one sample
/// spacing of `grid` on each side of the witness; the new spacing is
/// `shrink` times the old one.
DiskGrid refine_near(const DiskGrid& grid, const DiskPoint& witness, double shrink);

/// Local spacing of `grid` around `z`: (radial gap, angular gap).
std::pair<double, double> local_spacing(const DiskGrid& grid, complex z);

/// Number of worker threads: BLOCH_SCOPE_THREADS if set, else the hardware
/// concurrency.  Always >= 1.
unsigned worker_count();

/// Runs fn(i) for i in [0, n).  Each index is processed exactly once; the
/// result is independent of the thread count when fn writes only to slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bloch
