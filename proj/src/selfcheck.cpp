#include "bloch/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bloch/norm_engine.hpp"
#include "bloch/sigma.hpp"
#include "bloch/weights.hpp"

namespace bloch {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

DiskPoint random_point(std::mt19937_64& rng, double max_radius) {
  return DiskPoint::polar(max_radius * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, kTwoPi));
}

complex random_complex(std::mt19937_64& rng, double max_modulus) {
  return std::polar(max_modulus * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, kTwoPi));
}

AnalyticMap self_map_leaf(std::mt19937_64& rng) {
  switch (pick(rng, 0, 5)) {
    case 0: return AnalyticMap::identity();
    case 1: return AnalyticMap::mobius(random_point(rng, 0.9));
    case 2: {
      std::vector<DiskPoint> zeros;
      const int n = pick(rng, 1, 3);
      for (int i = 0; i < n; ++i) zeros.push_back(random_point(rng, 0.9));
      return AnalyticMap::blaschke(std::move(zeros), std::polar(1.0, uniform(rng, 0.0, kTwoPi)));
    }
    case 3: return AnalyticMap::monomial(pick(rng, 1, 5));
    case 4: {
      const double total = uniform(rng, 0.1, 0.95);
      const double split = uniform(rng, 0.0, 1.0);
      return AnalyticMap::affine(std::polar(total * split, uniform(rng, 0.0, kTwoPi)),
                                 std::polar(total * (1.0 - split), uniform(rng, 0.0, kTwoPi)));
    }
    default: return AnalyticMap::affine(0.0, uniform(rng, 0.2, 1.0));
  }
}

AnalyticMap symbol_leaf(std::mt19937_64& rng) {
  switch (pick(rng, 0, 4)) {
    case 0: return AnalyticMap::constant(random_complex(rng, 2.0));
    case 1: {
      std::vector<complex> coefficients(static_cast<std::size_t>(pick(rng, 1, 7)));
      for (auto& c : coefficients) c = random_complex(rng, 1.5);
      return AnalyticMap::polynomial(std::move(coefficients));
    }
    case 2: return AnalyticMap::sigma(SigmaFamily(uniform(rng, 0.2, 4.0), random_point(rng, 0.95)));
    default: return self_map_leaf(rng);
  }
}

}  // namespace

AnalyticMap random_self_map(std::mt19937_64& rng, int max_depth) {
  if (max_depth <= 1 || pick(rng, 0, 2) == 0) return self_map_leaf(rng);
  switch (pick(rng, 0, 3)) {
    case 0: return AnalyticMap::compose(random_self_map(rng, max_depth - 1), random_self_map(rng, max_depth - 1));
    case 1: return AnalyticMap::dilate(uniform(rng, 0.2, 1.0), random_self_map(rng, max_depth - 1));
    case 2: return AnalyticMap::scale(random_complex(rng, 1.0), random_self_map(rng, max_depth - 1));
    default: return AnalyticMap::product(random_self_map(rng, max_depth - 1), random_self_map(rng, max_depth - 1));
  }
}

AnalyticMap random_symbol(std::mt19937_64& rng, int max_depth) {
  if (max_depth <= 1 || pick(rng, 0, 3) == 0) return symbol_leaf(rng);
  switch (pick(rng, 0, 4)) {
    case 0: return AnalyticMap::sum(random_symbol(rng, max_depth - 1), random_symbol(rng, max_depth - 1));
    case 1: return AnalyticMap::product(random_symbol(rng, max_depth - 1), random_symbol(rng, max_depth - 1));
    case 2: return AnalyticMap::scale(random_complex(rng, 2.0), random_symbol(rng, max_depth - 1));
    case 3: return AnalyticMap::dilate(uniform(rng, 0.2, 1.0), random_symbol(rng, max_depth - 1));
    default: return AnalyticMap::compose(random_symbol(rng, max_depth - 1), random_self_map(rng, max_depth - 1));
  }
}

std::vector<CheckResult> run_selfcheck(unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> results;
  SearchSettings light;
  light.depth = 12;
  light.max_angles = 512;

  {
    CheckResult r{"sigma norm bound", true, {}};
    double worst = -1e300;
    for (int i = 0; i < 12; ++i) {
      const double alpha = uniform(rng, 0.05, 8.0);
      const SigmaFamily family(alpha, random_point(rng, 0.999));
      const double total = bloch_norm(AnalyticMap::sigma(family), Weight::standard(alpha), light).total;
      worst = std::max(worst, total - family.norm_bound());
      if (total > family.norm_bound() + 1e-9) r.passed = false;
    }
    r.detail = "max excess " + format_real(worst);
    results.push_back(r);
  }
  {
    CheckResult r{"derivative lower bound", true, {}};
    for (double m : {0.51, 0.6, 0.75, 0.9, 0.99, 0.999}) {
      for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
        if (!check_derivative_lower_bound(alpha, DiskPoint(m, 0.0))) r.passed = false;
      }
    }
    r.detail = "24 (alpha, |a|) pairs";
    results.push_back(r);
  }
  {
    CheckResult r{"dilation weight inequality", true, "1000 samples"};
    for (int i = 0; i < 1000; ++i) {
      const double alpha = uniform(rng, 0.05, 8.0);
      const DilationSample s{uniform(rng, 0.0, 1.0), random_complex(rng, 0.999)};
      if (!check_dilation_inequality(alpha, {s})) r.passed = false;
    }
    results.push_back(r);
  }
  {
    CheckResult r{"dilation contracts", true, {}};
    double worst = -1e300;
    for (int i = 0; i < 4; ++i) {
      std::vector<complex> coefficients(static_cast<std::size_t>(pick(rng, 1, 11)));
      for (auto& c : coefficients) c = random_complex(rng, 1.0);
      const auto f = AnalyticMap::polynomial(std::move(coefficients));
      const auto [full, dilated] = dilate_and_norm(f, uniform(rng, 0.3, 0.95), 1.0, light);
      worst = std::max(worst, dilated.total - full.total);
      if (dilated.total > full.total + 1e-9) r.passed = false;
    }
    r.detail = "max excess " + format_real(worst);
    results.push_back(r);
  }
  {
    CheckResult r{"structural derivatives", true, {}};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto f = random_symbol(rng, 4);
      for (int k = 0; k < 5; ++k) {
        const complex z = random_complex(rng, 0.9);
        const double h = 1e-4;
        const complex fd = (-f.eval(z + 2.0 * h) + 8.0 * f.eval(z + h) - 8.0 * f.eval(z - h) +
                            f.eval(z - 2.0 * h)) / (12.0 * h);
        const double err = std::abs(f.derivative(z) - fd) / std::max(std::abs(fd), 1e-3);
        worst = std::max(worst, err);
        if (!(err < 1e-6)) r.passed = false;
      }
    }
    r.detail = "max relative error " + format_real(worst);
    results.push_back(r);
  }
  {
    CheckResult r{"parse round trip", true, {}};
    for (int i = 0; i < 20; ++i) {
      const auto f = random_symbol(rng, 4);
      const auto g = parse_symbol(f.to_string());
      const complex z = random_complex(rng, 0.9);
      if (g.to_string() != f.to_string() || std::abs(g.eval(z) - f.eval(z)) > 1e-12 * (1.0 + std::abs(f.eval(z)))) {
        r.passed = false;
        r.detail = f.to_string();
      }
    }
    if (r.passed) r.detail = "20 trees";
    results.push_back(r);
  }
  {
    CheckResult r{"identity norm", true, {}};
    const double total = bloch_norm(AnalyticMap::identity(), Weight::standard(1.0), light).total;
    r.passed = std::abs(total - 1.0) < 1e-9;
    std::ostringstream detail;
    detail.precision(17);
    detail << "||z||_{B^1} = " << total;
    r.detail = detail.str();
    results.push_back(r);
  }
  return results;
}

}  // namespace bloch
