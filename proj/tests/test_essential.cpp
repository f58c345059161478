#include <doctest.h>

#include <cmath>

#include "bloch/error.hpp"
#include "bloch/essential.hpp"
#include "oracles.hpp"

using namespace bloch;

namespace {

const Weight v1 = Weight::standard(1.0);
const AnalyticMap identity = AnalyticMap::identity();
const AnalyticMap half_dilation = AnalyticMap::dilate(0.5, AnalyticMap::identity());
const AnalyticMap half_affine = AnalyticMap::affine(0.5, 0.5);

AnalyticMap rotate(const AnalyticMap& phi, double theta) {
  const auto forward = AnalyticMap::scale(std::polar(1.0, theta), AnalyticMap::identity());
  const auto back = AnalyticMap::scale(std::polar(1.0, -theta), AnalyticMap::identity());
  return AnalyticMap::compose(forward, AnalyticMap::compose(phi, back));
}

}  // namespace

TEST_CASE("scan radii") {
  const auto r = scan_radii(ScanSettings{}, 1e-6);
  REQUIRE(r.size() == 18);
  CHECK(r.front() == 0.875);
  CHECK(r[16] == 1.0 - std::ldexp(1.0, -19));
  CHECK(r.back() == 1.0 - 1e-6);
  ScanSettings bad;
  bad.angles = 0;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = {};
  bad.tail_window = 30;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("sigma scan of the identity") {
  const auto scan = sigma_scan(identity, 1.0, v1);
  CHECK(std::abs(scan.L_estimate - 0.5) <= 1e-3);
  CHECK(scan.converged);
  CHECK(scan.norms.size() == scan.radii.size() * scan.angles.size());
  for (std::size_t k = 0; k < scan.radii.size(); ++k) {
    CHECK(scan.tail_max[k] == doctest::Approx(oracle::sigma_norm_alpha1(scan.radii[k])).epsilon(1e-5));
    CHECK(scan.tail_max[k] <= oracle::sigma_norm_alpha1(scan.radii[k]) + 1e-15 / (1.0 - scan.radii[k]));
    if (k > 0) CHECK(scan.tail_max[k] >= scan.tail_max[k - 1] - 1e-9);
  }
  CHECK(scan.L_norm == scan.L_estimate);
  CHECK(scan.L_seminorm == scan.L_norm);
}

TEST_CASE("sigma scan verdicts") {
  const auto compact = sigma_scan(half_dilation, 1.0, v1);
  CHECK(compact.L_estimate < 1e-3);
  CHECK(classify(compact.L_estimate, compact.converged, ScanSettings{}) == Verdict::Compact);
  const auto noncompact = sigma_scan(half_affine, 1.0, v1);
  CHECK(noncompact.L_estimate > 0.05);
  CHECK(classify(noncompact.L_estimate, noncompact.converged, ScanSettings{}) == Verdict::NonCompact);
  CHECK_THROWS_AS(sigma_scan(AnalyticMap::affine(0.5, 0.6), 1.0, v1), NotSelfMap);
  CHECK_THROWS_AS(sigma_scan(identity, 0.0, v1), ParameterError);
}

TEST_CASE("essential bounds arithmetic") {
  BoundaryScan scan;
  scan.converged = true;
  BlochNorm finite;
  finite.total = 1.0;

  scan.L_estimate = 0.0;
  auto b = essential_bounds(scan, 1.0, finite);
  CHECK(b.lower == 0.0);
  CHECK(b.upper == 0.0);
  CHECK(b.verdict == Verdict::Compact);

  scan.L_estimate = 0.5;
  b = essential_bounds(scan, 1.0, finite);
  CHECK(b.lower == 0.25);
  CHECK(b.upper == 4.0);
  CHECK(b.verdict == Verdict::NonCompact);

  scan.L_estimate = 1.0;
  b = essential_bounds(scan, 2.0, finite);
  CHECK(b.lower == 0.125);
  CHECK(b.upper == 4.0);
  CHECK(b.upper / b.lower == 32.0);

  scan.converged = false;
  CHECK(essential_bounds(scan, 2.0, finite).verdict == Verdict::Inconclusive);
  scan.L_estimate = 0.005;
  scan.converged = true;
  CHECK(essential_bounds(scan, 1.0, finite).verdict == Verdict::Inconclusive);
}

TEST_CASE("Zhao estimates") {
  const auto id = zhao_estimate(identity, 1.0, 1.0, 256);
  CHECK(std::abs(id.value - 1.0) <= 5e-3);
  CHECK(id.converged);
  CHECK(id.terms.size() == 256);
  CHECK(id.prefactor == doctest::Approx(std::exp(1.0) / 2.0));
  for (int j : {1, 2, 10, 256}) {
    CHECK(id.terms[static_cast<std::size_t>(j - 1)] ==
          doctest::Approx(oracle::monomial_standard_sup(j, 1.0)).epsilon(1e-9));
  }
  CHECK(zhao_estimate(half_dilation, 1.0, 1.0, 256).value < 1e-6);
  CHECK(zhao_estimate(AnalyticMap::constant(0.0), 1.0, 1.0, 64).value == 0.0);
  CHECK_THROWS_AS(zhao_estimate(identity, 1.0, 1.0, 8), ParameterError);
}

TEST_CASE("Mobius scans") {
  const auto id = tjani_scan(identity, v1);
  CHECK(std::abs(id.L_seminorm - 1.0) <= 1e-3);
  CHECK(id.converged);
  CHECK(id.kind == ScanKind::Mobius);
  CHECK(tjani_scan(half_dilation, v1).L_seminorm < 1e-2);
  const auto zero = tjani_scan(AnalyticMap::constant(0.0), v1);
  CHECK(zero.L_seminorm == 0.0);
  for (std::size_t k = 0; k < zero.radii.size(); ++k) {
    CHECK(zero.norm_at(k, 0) == doctest::Approx(zero.radii[k]).epsilon(1e-15));
  }
}

TEST_CASE("criteria comparison") {
  const auto id = criteria_compare(identity, 1.0, v1);
  CHECK(id.agreement);
  CHECK(id.sigma_verdict == Verdict::NonCompact);
  REQUIRE(id.tjani_verdict.has_value());
  CHECK(*id.tjani_verdict == Verdict::NonCompact);
  CHECK(std::abs(id.zhao.value - 1.0) <= 5e-3);
  CHECK(id.zhao.value >= id.bounds.lower);
  CHECK(id.zhao.value <= id.bounds.upper);
  REQUIRE(id.zhao_in_sandwich.has_value());
  CHECK(*id.zhao_in_sandwich);

  const auto strict = criteria_compare(AnalyticMap::dilate(0.9, AnalyticMap::identity()), 1.0, v1);
  CHECK(strict.agreement);
  CHECK(strict.sigma_verdict == Verdict::Compact);
  CHECK(strict.zhao_verdict == Verdict::Compact);
  CHECK(*strict.tjani_verdict == Verdict::Compact);
  CHECK(strict.disagreements.empty());

  CHECK_THROWS_AS(criteria_compare(identity, 1.0, Weight::logarithmic()), UnsupportedWeight);
  const auto no_mobius = criteria_compare(half_dilation, 2.0, Weight::standard(2.0));
  CHECK_FALSE(no_mobius.tjani.has_value());
  CHECK(no_mobius.sigma_verdict == Verdict::Compact);
}

TEST_CASE("scan values scale with the weight") {
  ScanSettings scan;
  scan.angles = 16;
  for (double c : {0.5, 2.0}) {
    for (const auto& phi : {identity, half_affine}) {
      const auto base = sigma_scan(phi, 1.0, v1, scan);
      const auto scaled = sigma_scan(phi, 1.0, v1.scaled(c), scan);
      for (std::size_t i = 0; i < base.seminorms.size(); ++i) {
        CHECK(scaled.seminorms[i] == c * base.seminorms[i]);
      }
      CHECK(scaled.L_seminorm == c * base.L_seminorm);
    }
    const auto base = sigma_scan(identity, 1.0, v1, scan);
    const auto scaled = sigma_scan(identity, 1.0, v1.scaled(c), scan);
    CHECK(scaled.L_estimate == c * base.L_estimate);
  }
}

TEST_CASE("scan limit is rotation covariant") {
  ScanSettings scan;
  scan.angles = 32;
  const double base = sigma_scan(half_affine, 1.0, v1, scan).L_estimate;
  for (int m : {3, 11}) {
    const double theta = kTwoPi * m / scan.angles;
    CHECK(std::abs(sigma_scan(rotate(half_affine, theta), 1.0, v1, scan).L_estimate - base) <= 1e-6);
  }
}

TEST_CASE("verdicts are stable when the scan is refined") {
  ScanSettings coarse;
  coarse.k_max = 10;
  coarse.angles = 32;
  const ScanSettings fine;
  for (const auto& phi : {identity, half_dilation, half_affine, AnalyticMap::dilate(0.9, AnalyticMap::identity())}) {
    const auto a = sigma_scan(phi, 1.0, v1, coarse);
    const auto b = sigma_scan(phi, 1.0, v1, fine);
    const Verdict va = classify(a.L_estimate, a.converged, coarse);
    const Verdict vb = classify(b.L_estimate, b.converged, fine);
    if (va != Verdict::Inconclusive && vb != Verdict::Inconclusive) CHECK(va == vb);
  }
}
