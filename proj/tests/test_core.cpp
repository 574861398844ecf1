#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "satake/core.hpp"
#include "test_support.hpp"

using namespace satake;
using satake::testing::all_ones;
using satake::testing::random_tuple;
using std::numbers::pi;

TEST_CASE("from_free_angles solves the central constraint") {
  SUBCASE("identity configuration") {
    const auto t = SatakeTuple::from_free_angles(2, {0.0, 0.0}, Branch::Plus);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(t.param(i) - 1.0) < 1e-15);
  }
  SUBCASE("genus one") {
    const auto t = SatakeTuple::from_free_angles(1, {-2.0 * pi / 3.0}, Branch::Plus);
    CHECK(std::abs(t.param(1) - std::polar(1.0, -2.0 * pi / 3.0)) < 1e-15);
    CHECK(std::abs(t.param(0) - std::polar(1.0, pi / 3.0)) < 1e-15);
    CHECK(t.constraint_residual() < 1e-15);
  }
  SUBCASE("branches give the two square roots") {
    const auto plus = SatakeTuple::from_free_angles(2, {pi, 0.0}, Branch::Plus);
    const auto minus = SatakeTuple::from_free_angles(2, {pi, 0.0}, Branch::Minus);
    CHECK(std::abs(plus.param(0) * plus.param(0) + 1.0) < 1e-15);
    CHECK(std::abs(plus.param(0) + minus.param(0)) < 1e-15);
    CHECK(std::abs(std::abs(plus.param(0).imag()) - 1.0) < 1e-15);
  }
  SUBCASE("shape errors") {
    CHECK_THROWS_AS(SatakeTuple::from_free_angles(0, {}, Branch::Plus), std::invalid_argument);
    CHECK_THROWS_AS(SatakeTuple::from_free_angles(2, {0.0}, Branch::Plus), std::invalid_argument);
    CHECK_THROWS_AS(SatakeTuple::from_angles(1, {0.0, 0.0, 0.0}), std::invalid_argument);
  }
}

TEST_CASE("validate reports constraint violations as data") {
  CHECK(validate(all_ones(2), 1e-12).empty());
  const auto broken = SatakeTuple::from_angles(2, {0.1, 0.0, 0.0});
  const auto report = validate(broken, 1e-12);
  REQUIRE(report.size() == 1);
  CHECK(report.front().find("central constraint") != std::string::npos);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) CHECK(validate(random_tuple(rng, 1 + i % 4), 1e-12).empty());
}

TEST_CASE("mu examples") {
  CHECK(mu(all_ones(2)) == doctest::Approx(4.0).epsilon(1e-15));
  const double theta = pi / 3.0;
  const auto st = SatakeTuple::from_angles(1, {theta, -2.0 * theta});
  CHECK(std::abs(mu(st) - 1.0) < 1e-12);
  const auto zero = SatakeTuple::from_angles(2, {pi / 2.0, pi, 0.0});
  CHECK(std::abs(mu(zero)) < 1e-12);

  CHECK(mu_expanded(all_ones(2)) == doctest::Approx(4.0));
  CHECK(mu_expanded(all_ones(1)) == doctest::Approx(2.0));
}

TEST_CASE("mu signals a non-real result when the constraint is broken") {
  const auto broken = SatakeTuple::from_angles(1, {0.3, 0.0});
  CHECK_THROWS_AS(mu(broken), NonRealError);
  CHECK_THROWS_AS(mu_expanded(broken), NonRealError);
}

TEST_CASE("local factor roots") {
  const auto spin1 = local_factor(all_ones(1), FactorKind::Spin);
  CHECK(spin1.degree() == 2);
  for (auto r : spin1.roots) CHECK(std::abs(r - 1.0) < 1e-15);
  const auto std1 = local_factor(all_ones(1), FactorKind::Std);
  CHECK(std1.degree() == 3);
  for (auto r : std1.roots) CHECK(std::abs(r - 1.0) < 1e-15);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_tuple(rng, 2);
    Complex prod = 1.0;
    for (auto r : local_factor(t, FactorKind::Spin).roots) prod *= r;
    CHECK(std::abs(prod - 1.0) < 1e-10);
  }
}

TEST_CASE("is_tempered") {
  std::mt19937_64 rng(3);
  CHECK(is_tempered(random_tuple(rng, 2), 0.0));
  const auto t = all_ones(1);
  CHECK(is_tempered(t.with_moduli({1.0, 1.0}), 1e-6));
  CHECK_FALSE(is_tempered(t.with_moduli({1.1, 1.0}), 1e-6));
  CHECK_THROWS_AS(t.with_moduli({1.0}), std::invalid_argument);
}

TEST_CASE("core invariants over random tuples") {
  std::mt19937_64 rng(20261018);
  for (int i = 0; i < 10000; ++i) {
    const int g = 1 + i % 4;
    const auto t = random_tuple(rng, g);
    CHECK(t.constraint_residual() <= 1e-10);
    const double m = mu(t);
    CHECK(std::abs(m - mu_expanded(t)) <= 1e-10);
    CHECK(std::abs(m) <= std::ldexp(1.0, g) + 1e-12);
    double prod = 1.0;
    for (int k = 1; k <= g; ++k) prod *= 2.0 + 2.0 * std::cos(t.angle(static_cast<std::size_t>(k)));
    CHECK(std::abs(m * m - prod) <= 1e-10);

    const auto spin = local_factor(t, FactorKind::Spin);
    const auto std_f = local_factor(t, FactorKind::Std);
    CHECK(spin.degree() == (std::size_t{1} << g));
    CHECK(std_f.degree() == static_cast<std::size_t>(2 * g + 1));
    CHECK(std::abs(std_f.roots.front() - 1.0) < 1e-15);
    CHECK(conjugation_closed(spin.roots, 1e-10));
    CHECK(conjugation_closed(std_f.roots, 1e-10));
  }
}
