#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bloch/disk.hpp"

namespace bloch {

inline constexpr double kMaxAlpha = 8.0;

/// v_alpha(z) = (1 - |z|^2)^alpha, alpha in (0, 8].
struct StandardWeight {
  double alpha = 1.0;
};

/// mu_1(z) = w log(2 / w), w = 1 - |z|^2.
struct LogarithmicWeight {};

/// Radial profile given as (r, mu(r)) knots, linearly interpolated and held
/// constant beyond the last knot.
struct CustomRadialWeight {
  std::vector<double> r;
  std::vector<double> mu;
  std::string source;
};

/// Positive, bounded, radial weight on the disk, optionally multiplied by a
/// positive constant.
class Weight {
 public:
  using Kind = std::variant<StandardWeight, LogarithmicWeight, CustomRadialWeight>;

  static Weight standard(double alpha);
  static Weight logarithmic();
  static Weight custom(std::vector<double> r, std::vector<double> mu, std::string source = {});
  /// "valpha:<alpha>", "log", or "custom:<path>".
  static Weight parse(std::string_view spec);

  /// mu at any point of modulus `radius` (0 <= radius < 1).
  double at_radius(double radius) const;
  double at(const DiskPoint& z) const { return at_radius(z.modulus()); }

  /// sup of mu over the disk.
  double bound() const;
  double scale() const noexcept { return scale_; }
  Weight scaled(double factor) const;

  const Kind& kind() const noexcept { return kind_; }
  bool is_standard() const noexcept { return std::holds_alternative<StandardWeight>(kind_); }
  /// alpha of a StandardWeight; throws UnsupportedWeight otherwise.
  double standard_alpha() const;

  /// Canonical spec string ("valpha:1", "log", "custom:path"); a non-unit
  /// scale is appended as "*<scale>".
  std::string describe() const;

 private:
  explicit Weight(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
  double scale_ = 1.0;
};

/// Standard weight v_alpha evaluated at a point.
double standard_weight(double alpha, complex z);

struct DilationSample {
  double r;
  complex z;
};

/// True iff r * v_alpha(z) < v_alpha(r z) + 1e-15 for every sample.
bool check_dilation_inequality(double alpha, const std::vector<DilationSample>& samples);

}  // namespace bloch
