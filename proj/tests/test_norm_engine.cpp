#include <doctest.h>

#include <cmath>
#include <random>

#include "bloch/error.hpp"
#include "bloch/norm_engine.hpp"
#include "oracles.hpp"

using namespace bloch;

namespace {

const Weight v1 = Weight::standard(1.0);

SearchSettings light() {
  SearchSettings s;
  s.depth = 14;
  s.max_angles = 1024;
  return s;
}

AnalyticMap random_polynomial(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::vector<complex> c(static_cast<std::size_t>(degree(rng)) + 1);
  for (auto& x : c) x = oracle::random_in_disk(rng, 1.0);
  return AnalyticMap::polynomial(std::move(c));
}

}  // namespace

TEST_CASE("seminorm examples") {
  const auto id = bloch_seminorm(AnalyticMap::identity(), v1);
  CHECK(std::abs(id.value - 1.0) <= 1e-9);
  CHECK(id.witness.modulus() < 1e-6);
  CHECK(id.is_converged);

  const auto sq = bloch_seminorm(AnalyticMap::monomial(2), v1);
  CHECK(std::abs(sq.value - 4.0 / (3.0 * std::sqrt(3.0))) <= 1e-6);
  CHECK(sq.witness.modulus() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-3));

  const auto c = bloch_seminorm(AnalyticMap::constant(complex(2, 1)), v1);
  CHECK(c.value == 0.0);
}

TEST_CASE("seminorm of z^2 without the radial shortcut") {
  SearchSettings s;
  s.radial_fast_path = false;
  const auto sq = bloch_seminorm(AnalyticMap::monomial(2), v1, s);
  CHECK_FALSE(sq.radial_path);
  CHECK(std::abs(sq.value - 4.0 / (3.0 * std::sqrt(3.0))) <= 1e-6);
  CHECK(sq.value <= 4.0 / (3.0 * std::sqrt(3.0)) + 1e-15);
  CHECK(sq.trace.levels.size() >= 2);
  for (std::size_t i = 1; i < sq.trace.levels.size(); ++i) {
    CHECK(sq.trace.levels[i].running_max >= sq.trace.levels[i - 1].running_max);
  }
}

TEST_CASE("norm examples") {
  for (const Weight& mu : {v1, Weight::standard(3.0), Weight::logarithmic()}) {
    CHECK(bloch_norm(AnalyticMap::constant(3.0), mu).total == 3.0);
  }
  CHECK(bloch_norm(AnalyticMap::identity(), v1).total == doctest::Approx(1.0).epsilon(1e-12));
  const auto sigma = AnalyticMap::sigma(SigmaFamily(1.0, DiskPoint(0.9, 0)));
  const auto n = bloch_norm(sigma, v1);
  CHECK(n.value_at_zero == 0.0);
  CHECK(std::abs(n.total - 0.9 / 1.9) <= 1e-5);
  CHECK(n.total <= 0.9 / 1.9 + 1e-15);
}

TEST_CASE("composition seminorm examples") {
  const auto f = AnalyticMap::sigma(SigmaFamily(1.5, DiskPoint(0.3, 0.6)));
  const double direct = bloch_seminorm(f, v1).value;
  const double composed = composition_seminorm(f, AnalyticMap::identity(), v1).value;
  CHECK(composed == doctest::Approx(direct).epsilon(1e-12));

  const auto s = AnalyticMap::sigma(SigmaFamily(1.0, DiskPoint(0.999, 0)));
  CHECK(composition_seminorm(s, AnalyticMap::dilate(0.5, AnalyticMap::identity()), v1).value < 1e-2);

  const auto m = composition_seminorm(AnalyticMap::monomial(1), AnalyticMap::mobius(DiskPoint(0.5, 0)), v1);
  CHECK(std::abs(m.value - 1.0) <= 1e-6);

  CHECK_THROWS_AS(composition_seminorm(f, AnalyticMap::affine(0.2, 0.9), v1), NotSelfMap);
}

TEST_CASE("composition search reuses its grid") {
  const CompositionSearch search(AnalyticMap::affine(0.5, 0.5), v1, light());
  CHECK_FALSE(search.certificate().is_strict);
  const auto f = AnalyticMap::monomial(3);
  const auto a = search.norm(f);
  const auto b = bloch_norm(AnalyticMap::compose(f, AnalyticMap::affine(0.5, 0.5)), v1, light());
  CHECK(a.total == doctest::Approx(b.total).epsilon(1e-9));
  CHECK(a.value_at_zero == doctest::Approx(0.125));
}

TEST_CASE("dilation examples") {
  std::mt19937_64 rng(17);
  const auto f = random_polynomial(rng, 6);
  const auto [full, same] = dilate_and_norm(f, 1.0, 1.0, light());
  CHECK(full.total == same.total);
  const auto [full0, zero] = dilate_and_norm(f, 0.0, 1.0, light());
  CHECK(zero.total == doctest::Approx(std::abs(f.eval(0.0))).epsilon(1e-15));
  CHECK(zero.seminorm.value == 0.0);
  CHECK_THROWS_AS(dilate_and_norm(f, 1.5, 1.0), ParameterError);
}

TEST_CASE("dilation contracts random polynomials") {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_polynomial(rng, 10);
    for (double r : {0.3, 0.7, 0.95}) {
      for (double alpha : {0.5, 1.0, 2.0}) {
        const auto [full, dilated] = dilate_and_norm(f, r, alpha, light());
        CHECK(dilated.total <= full.total + 1e-9);
      }
    }
  }
}

TEST_CASE("seminorms agree with the radial oracle for monomials") {
  SearchSettings s;
  s.radial_fast_path = false;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int j : {1, 2, 5, 17, 64}) {
      const double expected = oracle::monomial_standard_sup(j, alpha);
      const auto grid = bloch_seminorm(AnalyticMap::monomial(j), Weight::standard(alpha), s);
      const auto fast = bloch_seminorm(AnalyticMap::monomial(j), Weight::standard(alpha));
      CHECK(std::abs(grid.value - expected) <= 1e-6 * expected);
      CHECK(std::abs(fast.value - expected) <= 1e-9 * expected);
      CHECK(fast.radial_path);
    }
  }
}

TEST_CASE("radial oracle for the logarithmic weight") {
  const Weight mu = Weight::logarithmic();
  for (int j : {1, 3, 10}) {
    const double expected =
        oracle::maximize_1d([&](double r) { return mu.at_radius(r) * j * std::pow(r, j - 1); }, 0.0, 1.0 - 1e-6);
    SearchSettings s;
    s.radial_fast_path = false;
    CHECK(bloch_seminorm(AnalyticMap::monomial(j), mu, s).value == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("search values never exceed the true supremum") {
  for (int depth : {6, 10, 14, 20}) {
    SearchSettings s;
    s.depth = depth;
    s.radial_fast_path = false;
    s.refine_rounds = 1;
    const double v = bloch_seminorm(AnalyticMap::monomial(7), v1, s).value;
    CHECK(v <= oracle::monomial_standard_sup(7, 1.0) + 1e-15);
  }
  const auto f = AnalyticMap::mobius(DiskPoint(0.6, 0.2));
  SearchSettings coarse;
  coarse.depth = 8;
  coarse.max_angles = 256;
  coarse.refine_rounds = 1;
  const double weak = bloch_seminorm(f, v1, coarse).value;
  const double strong = bloch_seminorm(f, v1).value;
  CHECK(strong >= weak - 1e-12);
  CHECK(strong <= 1.0 + 1e-12);
  CHECK(strong == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("seminorm is rotation invariant under a radial weight") {
  std::mt19937_64 rng(19);
  SearchSettings tight;
  tight.rel_tol = 1e-13;
  tight.abs_tol = 1e-15;
  for (int i = 0; i < 5; ++i) {
    const auto f = AnalyticMap::sum(random_polynomial(rng, 6),
                                    AnalyticMap::mobius(DiskPoint(oracle::random_in_disk(rng, 0.8))));
    const double base = bloch_seminorm(f, v1, tight).value;
    for (double theta : {0.5, 2.5}) {
      const auto rotated = AnalyticMap::compose(f, AnalyticMap::scale(std::polar(1.0, theta), AnalyticMap::identity()));
      CHECK(std::abs(bloch_seminorm(rotated, v1, tight).value - base) <= 1e-9 * std::max(1.0, base));
    }
  }
}

TEST_CASE("triangle inequality") {
  std::mt19937_64 rng(20);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_polynomial(rng, 8);
    const auto g = AnalyticMap::blaschke({DiskPoint(oracle::random_in_disk(rng, 0.9))});
    const double lhs = bloch_seminorm(AnalyticMap::sum(f, g), v1, light()).value;
    const double rhs = bloch_seminorm(f, v1, light()).value + bloch_seminorm(g, v1, light()).value;
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("objective growing into the boundary is flagged") {
  const Weight flat = Weight::custom({0.0, 0.5}, {1.0, 1.0});
  const auto s = bloch_seminorm(AnalyticMap::monomial(2), flat);
  CHECK(s.rising_tail);
  CHECK_FALSE(s.is_converged);
  CHECK(s.value == doctest::Approx(2.0 * (1.0 - 1e-6)).epsilon(1e-9));
  CHECK_FALSE(bloch_seminorm(AnalyticMap::monomial(2), v1).rising_tail);
}

TEST_CASE("non-finite objectives raise NumericError") {
  const auto bad = parse_symbol("product(compose(mobius(0.5), const(2)), identity)");
  CHECK_THROWS_AS(bloch_seminorm(bad, v1), NumericError);
}

TEST_CASE("settings are validated") {
  SearchSettings s;
  s.shrink = 1.0;
  CHECK_THROWS_AS(bloch_seminorm(AnalyticMap::identity(), v1, s), ParameterError);
  s = {};
  s.depth = 0;
  CHECK_THROWS_AS(s.validate(), ParameterError);
  s = {};
  s.rel_tol = -1.0;
  CHECK_THROWS_AS(s.validate(), ParameterError);
}
