#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "satake/series.hpp"
#include "satake/sim.hpp"
#include "satake/verify.hpp"
#include "test_support.hpp"

using namespace satake;
using satake::testing::all_ones;
using satake::testing::random_tuple;
using std::numbers::pi;

TEST_CASE("lemma_ineq_check examples") {
  auto r = lemma_ineq_check(all_ones(2), 4.0);
  CHECK(r.applicable);
  CHECK(r.lhs == doctest::Approx(5.0));
  CHECK(r.rhs == doctest::Approx(5.0));

  const auto st = SatakeTuple::from_angles(1, {pi / 3.0, -2.0 * pi / 3.0});
  r = lemma_ineq_check(st, 1.0);
  CHECK(r.applicable);
  CHECK(std::abs(r.lhs) < 1e-12);
  CHECK(std::abs(r.rhs) < 1e-12);

  CHECK_FALSE(lemma_ineq_check(all_ones(2), 4.5).applicable);
  CHECK_THROWS_AS(lemma_ineq_check(all_ones(2), 0.0), std::invalid_argument);
}

TEST_CASE("lemma_ineq holds on random applicable tuples") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  int applicable = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto t = random_tuple(rng, 1 + i % 4);
    const double c = std::abs(mu(t)) * frac(rng);
    if (!(c > 0.0)) continue;
    const auto r = lemma_ineq_check(t, c);
    REQUIRE(r.applicable);
    ++applicable;
    CHECK(r.lhs >= r.rhs - kEqualityTol);
  }
  CHECK(applicable > 19000);
}

TEST_CASE("extremal_tuple") {
  const auto id = extremal_tuple(2, 4.0);
  for (double th : id.angles()) CHECK(std::abs(th) < 1e-15);
  CHECK(mu(id) == doctest::Approx(4.0));

  const auto tiny = extremal_tuple(1, 1e-6);
  CHECK(tiny.angle(1) == doctest::Approx(pi).epsilon(1e-5));
  CHECK(std::abs(mu(tiny) - 1e-6) < 1e-9);

  const auto mid = extremal_tuple(3, std::pow(2.0, 1.5));
  CHECK(mid.angle(1) == doctest::Approx(pi / 2.0).epsilon(1e-12));
  CHECK(std::abs(mu(mid) - std::pow(2.0, 1.5)) < 1e-9);

  for (int g = 1; g <= 4; ++g) {
    const double top = std::ldexp(1.0, g);
    for (int k = 0; k < 32; ++k) {
      const double c = top * std::pow(1e-3, 1.0 - k / 31.0);
      const auto t = extremal_tuple(g, c);
      CHECK(validate(t, 1e-12).empty());
      CHECK(std::abs(mu(t) - c) <= kEqualityTol);
      const auto r = lemma_ineq_check(t, c);
      CHECK(std::abs(r.lhs - r.rhs) <= kEqualityTol);
    }
  }
  CHECK_THROWS_AS(extremal_tuple(2, 4.5), std::domain_error);
  CHECK_THROWS_AS(extremal_tuple(2, 0.0), std::domain_error);
}

TEST_CASE("theorem bounds") {
  CHECK(theorem1_bound(2, 2.0) == 0.75);
  CHECK(theorem1_bound(1, 1.0) == 1.0);
  CHECK(theorem1_bound(2, 4.0) == 0.375);
  CHECK(theorem2_bound(4.0) == 0.5);
  CHECK(theorem2_bound(1e-12) == doctest::Approx(1.0));
  CHECK(theorem2_bound(12.0 / 5.0) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(theorem1_bound(2, 12.0 / 5.0) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(theorem_bound(2, 1.0, ExceedMode::Signed) == theorem2_bound(1.0));
  CHECK(theorem_bound(3, 2.0, ExceedMode::Signed) == doctest::Approx(8.0 / 10.0));

  for (int k = 1; k <= 2000; ++k) {
    const double c = 4.0 * k / 2000.0;
    if (std::abs(c - 2.4) < 1e-12) continue;
    const bool theorem1_stronger = theorem1_bound(2, c) <= theorem2_bound(c);
    CHECK(theorem1_stronger == (c >= 12.0 / 5.0));
  }
}

TEST_CASE("exceptional sets") {
  const auto t = sieve(1000);
  const auto ones = build_assignment({SamplerKind::ExtremalConstant, 2, 4.0}, t);
  CHECK(exceptional_set(ones, 4.0, ExceedMode::Abs).count() == t->size());
  CHECK(exceptional_set(ones, 4.1, ExceedMode::Abs).count() == 0);

  SamplerSpec spec{SamplerKind::UniformTorus, 2};
  spec.seed = 12;
  const auto a = build_assignment(spec, t);
  double prev_c = 0.25;
  for (double c : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (auto mode : {ExceedMode::Abs, ExceedMode::Signed}) {
      CHECK(exceptional_set(a, c, mode).is_subset_of(exceptional_set(a, prev_c, mode)));
    }
    CHECK(exceptional_set(a, c, ExceedMode::Signed)
              .is_subset_of(exceptional_set(a, c, ExceedMode::Abs)));
    prev_c = c;
  }
}

TEST_CASE("verify_theorem") {
  SUBCASE("genus-one Sato-Tate, c = 1") {
    const auto t = sieve(1'000'000);
    SamplerSpec spec{SamplerKind::SatoTateG1, 1};
    spec.seed = 2024;
    const auto a = build_assignment(spec, t);
    const auto r = verify_theorem(a, 1.0, ExceedMode::Abs, default_s_grid(), default_x_grid(t->bound()));
    const double q = satotate_exceed_measure(1.0);
    CHECK(std::abs(r.estimate.natural_ratios.back() - q) < 0.01);
    CHECK(r.bound == 1.0);
    CHECK(r.margin > 0.0);
    CHECK_FALSE(r.extrapolated);
    REQUIRE(r.divergence.has_value());
    CHECK(r.divergence->series == "R");
  }
  SUBCASE("constant extremal assignment violates the bound and shows divergence") {
    const auto t = sieve(100'000);
    const auto a = build_assignment({SamplerKind::ExtremalConstant, 2, 4.0}, t);
    const auto r = verify_theorem(a, 4.0, ExceedMode::Abs, default_s_grid(), default_x_grid(t->bound()));
    CHECK(r.estimate.upper_dirichlet() == 1.0);
    CHECK(r.bound == 0.375);
    CHECK(r.margin < 0.0);
    REQUIRE(r.divergence.has_value());
    CHECK(r.divergence->monotone_increasing);
    CHECK(r.divergence->growth > 5.0);
    CHECK(r.lemma_C == 3.0);
    CHECK(r.lemma_D == doctest::Approx(5.0));
    CHECK(r.lemma_E == 5.0);
  }
  SUBCASE("empty exceptional set has margin equal to the bound") {
    const auto t = sieve(1000);
    const auto a = build_assignment({SamplerKind::ExtremalConstant, 2, 4.0}, t);
    const auto r = verify_theorem(a, 4.5, ExceedMode::Abs, default_s_grid(), default_x_grid(1000));
    CHECK(r.exceptional_count == 0);
    CHECK(r.margin == r.bound);
  }
  SUBCASE("signed mode outside genus two is flagged") {
    const auto t = sieve(1000);
    SamplerSpec spec{SamplerKind::UniformTorus, 3};
    const auto a = build_assignment(spec, t);
    const auto r = verify_theorem(a, 1.0, ExceedMode::Signed, default_s_grid(), default_x_grid(1000), 3);
    CHECK(r.extrapolated);
    CHECK(r.witnesses.size() <= 3);
    for (const auto& [p, m] : r.witnesses) CHECK(m >= 1.0);
    REQUIRE(r.divergence.has_value());
    CHECK(r.divergence->series == "T");
  }
  SUBCASE("bare mu assignments skip the standard-side diagnostic") {
    const auto t = sieve(100);
    const auto a = SatakeAssignment::from_mu(2, t, std::vector<double>(t->size(), 1.5));
    const auto r = verify_theorem(a, 1.0, ExceedMode::Abs, default_s_grid(), default_x_grid(100));
    CHECK_FALSE(r.divergence.has_value());
    CHECK(r.exceptional_count == t->size());
    CHECK_THROWS_AS(log_L_decomposition(a, FactorKind::Std, 2.0), MissingAnglesError);
  }
}

TEST_CASE("log_L_decomposition") {
  const auto t = sieve(100'000);
  SUBCASE("identity genus-one standard assignment matches the closed form") {
    const auto a = build_assignment({SamplerKind::ExtremalConstant, 1, 2.0}, t);
    const auto d = log_L_decomposition(a, FactorKind::Std, 2.0);
    double expected = 0.0;
    for (auto p : t->primes()) expected += -3.0 * std::log1p(-std::pow(static_cast<double>(p), -2.0));
    CHECK(d.log_L == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::abs(d.remainder) <= d.remainder_cap);
  }
  SUBCASE("remainder stays under its cap") {
    for (int g = 1; g <= 2; ++g) {
      for (auto kind : {SamplerKind::UniformTorus, SamplerKind::AngleFamily}) {
        SamplerSpec spec{kind, g};
        spec.seed = 8;
        const auto a = build_assignment(spec, t);
        for (double s : {1.01, 1.1, 2.0}) {
          for (auto fk : {FactorKind::Spin, FactorKind::Std}) {
            const auto d = log_L_decomposition(a, fk, s);
            CHECK(std::abs(d.remainder) <= d.remainder_cap);
            CHECK(d.remainder == doctest::Approx(d.log_L - d.first_order));
          }
        }
      }
    }
  }
  SUBCASE("single prime table") {
    const auto two = sieve(2);
    const auto a = build_assignment({SamplerKind::ExtremalConstant, 1, 2.0}, two);
    const auto d = log_L_decomposition(a, FactorKind::Spin, 2.0);
    CHECK(d.log_L == doctest::Approx(-2.0 * std::log1p(-0.25)));
    CHECK(d.first_order == doctest::Approx(0.5));
  }
}

TEST_CASE("lfunc sharpness harness") {
  const auto t = sieve(1'000'000);
  const auto balanced = lfunc_sharpness_harness(1.0, 1.0, t);
  CHECK(balanced.bounded);
  CHECK(balanced.max_abs_L < 10.0);
  CHECK(balanced.predicted_bound == 0.5);
  CHECK(std::abs(balanced.density.natural_ratios.back() - 0.5) < 0.05);

  const auto heavy = lfunc_sharpness_harness(1.0, 2.0, t);
  CHECK(heavy.monotone_growth);

  CHECK_THROWS_AS(lfunc_sharpness_harness(0.0, 1.0, t), std::invalid_argument);
}
