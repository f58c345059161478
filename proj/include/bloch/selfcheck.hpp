#pragma once

#include <random>
#include <string>
#include <vector>

#include "bloch/symbol.hpp"

namespace bloch {

/// Random expression tree, analytic on |z| <= 0.95.  Inner arguments of
/// compose nodes are self-maps, so every node stays finite there.
AnalyticMap random_symbol(std::mt19937_64& rng, int max_depth);

/// Random self-map of the disk built from Mobius maps, finite Blaschke
/// products, dilations, powers and contractive affine maps.
AnalyticMap random_self_map(std::mt19937_64& rng, int max_depth);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Small, fast versions of the library's property checks.
std::vector<CheckResult> run_selfcheck(unsigned long long seed = 20240611ULL);

}  // namespace bloch
