#include "bloch/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bloch/error.hpp"

namespace bloch {

namespace {

double parse_real(std::string_view text, std::string_view what) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ConfigError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

Weight load_custom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weight profile '" + path + "'");
  std::vector<double> r, mu;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a)) continue;
    if (!(fields >> b)) throw ConfigError("weight profile line needs two columns: '" + line + "'");
    r.push_back(parse_real(a, "profile radius"));
    mu.push_back(parse_real(b, "profile value"));
  }
  return Weight::custom(std::move(r), std::move(mu), path);
}

}  // namespace

Weight Weight::standard(double alpha) {
  if (!(alpha > 0.0 && alpha <= kMaxAlpha)) {
    throw ParameterError("alpha must lie in (0, 8]");
  }
  return Weight(StandardWeight{alpha});
}

Weight Weight::logarithmic() { return Weight(LogarithmicWeight{}); }

Weight Weight::custom(std::vector<double> r, std::vector<double> mu, std::string source) {
  if (r.empty() || r.size() != mu.size()) {
    throw ConfigError("custom weight needs matching, non-empty (r, mu) columns");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] >= 0.0 && r[i] < 1.0)) throw ConfigError("custom weight radius outside [0, 1)");
    if (i > 0 && !(r[i] > r[i - 1])) throw ConfigError("custom weight radii must increase");
    if (!(mu[i] > 0.0) || !std::isfinite(mu[i])) {
      throw ConfigError("custom weight values must be finite and positive");
    }
  }
  return Weight(CustomRadialWeight{std::move(r), std::move(mu), std::move(source)});
}

Weight Weight::parse(std::string_view spec) {
  std::string lower(spec);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "log") return logarithmic();
  if (lower.rfind("valpha:", 0) == 0) {
    return standard(parse_real(std::string_view(lower).substr(7), "alpha in weight"));
  }
  if (lower.rfind("custom:", 0) == 0) {
    // Paths keep their original case.
    return load_custom(std::string(spec.substr(7)));
  }
  throw ConfigError("unknown weight '" + std::string(spec) +
                    "' (expected valpha:<a>, log, or custom:<path>)");
}

double Weight::at_radius(double radius) const {
  const double w = (1.0 - radius) * (1.0 + radius);
  const double base = std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, StandardWeight>) {
          return k.alpha == 1.0 ? w : std::pow(w, k.alpha);
        } else if constexpr (std::is_same_v<K, LogarithmicWeight>) {
          return w * std::log(2.0 / w);
        } else {
          if (radius <= k.r.front()) return k.mu.front();
          if (radius >= k.r.back()) return k.mu.back();
          const auto hi = static_cast<std::size_t>(
              std::upper_bound(k.r.begin(), k.r.end(), radius) - k.r.begin());
          const double t = (radius - k.r[hi - 1]) / (k.r[hi] - k.r[hi - 1]);
          return k.mu[hi - 1] + t * (k.mu[hi] - k.mu[hi - 1]);
        }
      },
      kind_);
  return scale_ * base;
}

double Weight::bound() const {
  const double base = std::visit(
      [](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, StandardWeight>) {
          return 1.0;
        } else if constexpr (std::is_same_v<K, LogarithmicWeight>) {
          // w log(2/w) peaks at w = 2/e.
          return 2.0 / std::numbers::e;
        } else {
          return *std::max_element(k.mu.begin(), k.mu.end());
        }
      },
      kind_);
  return scale_ * base;
}

Weight Weight::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw ParameterError("weight scale must be positive");
  Weight copy = *this;
  copy.scale_ *= factor;
  return copy;
}

double Weight::standard_alpha() const {
  if (const auto* s = std::get_if<StandardWeight>(&kind_)) return s->alpha;
  throw UnsupportedWeight("weight '" + describe() + "' is not a standard weight valpha:<beta>");
}

std::string Weight::describe() const {
  std::string text = std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, StandardWeight>) {
          std::ostringstream os;
          os.precision(17);
          os << "valpha:" << k.alpha;
          return os.str();
        } else if constexpr (std::is_same_v<K, LogarithmicWeight>) {
          return "log";
        } else {
          return "custom:" + k.source;
        }
      },
      kind_);
  if (scale_ != 1.0) {
    std::ostringstream os;
    os.precision(17);
    os << '*' << scale_;
    text += os.str();
  }
  return text;
}

double standard_weight(double alpha, complex z) {
  const double r = std::abs(z);
  return std::pow((1.0 - r) * (1.0 + r), alpha);
}

bool check_dilation_inequality(double alpha, const std::vector<DilationSample>& samples) {
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
  return std::all_of(samples.begin(), samples.end(), [alpha](const DilationSample& s) {
    return s.r * standard_weight(alpha, s.z) < standard_weight(alpha, s.r * s.z) + 1e-15;
  });
}

}  // namespace bloch
