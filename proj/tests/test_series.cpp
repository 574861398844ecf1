#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "satake/series.hpp"
#include "test_support.hpp"

using namespace satake;
using satake::testing::all_ones;
using satake::testing::random_tuple;

namespace {

// log of the factor straight from its product form: -sum_j log(1 - alpha_j x).
double direct_log(const SatakeTuple& t, FactorKind kind, double p, double s) {
  const double x = std::pow(p, -s);
  Complex acc = 0.0;
  for (auto a : local_factor(t, kind).roots) acc -= std::log(1.0 - a * x);
  return acc.real();
}

}  // namespace

TEST_CASE("expand closed-form examples") {
  const auto spin = expand(local_factor(all_ones(1), FactorKind::Spin), 5);
  for (int r = 0; r <= 5; ++r) CHECK(spin[r] == doctest::Approx(r + 1.0));
  const auto std1 = expand(local_factor(all_ones(1), FactorKind::Std), 3);
  const double expected[] = {1, 3, 6, 10};
  for (int r = 0; r <= 3; ++r) CHECK(std1[r] == doctest::Approx(expected[r]));

  const auto oracle = expand_oracle(local_factor(all_ones(2), FactorKind::Spin), 2);
  CHECK(oracle[0] == 1.0);
  CHECK(oracle[1] == doctest::Approx(4.0));
  CHECK(oracle[2] == doctest::Approx(10.0));

  CHECK_THROWS_AS(expand(local_factor(all_ones(1), FactorKind::Spin), 0), std::invalid_argument);
}

TEST_CASE("expand agrees with the brute-force oracle") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 250; ++i) {
    const int g = 1 + i % 4;
    const auto t = random_tuple(rng, g);
    for (auto kind : {FactorKind::Spin, FactorKind::Std}) {
      const auto f = local_factor(t, kind);
      const auto a = expand(f, 20);
      const auto b = expand_oracle(f, 20);
      CHECK(a[0] == 1.0);
      for (int r = 0; r <= 20; ++r) CHECK(std::abs(a[r] - b[r]) <= 1e-9);
    }
  }
}

TEST_CASE("expand rejects large imaginary residues") {
  const auto broken = SatakeTuple::from_angles(1, {0.4, 0.0});
  CHECK_THROWS_AS(expand(local_factor(broken, FactorKind::Spin), 3), NonRealError);
  CHECK_THROWS_AS(expand_oracle(local_factor(broken, FactorKind::Spin), 3), NonRealError);
}

TEST_CASE("coefficient bounds are exact binomials") {
  CHECK(coeff_bound(FactorKind::Spin, 2, 2) == 10);
  CHECK(coeff_bound(FactorKind::Std, 2, 1) == 4);
  CHECK(coeff_bound(FactorKind::Spin, 1, 7) == 8);
  CHECK(coeff_bound(FactorKind::Spin, 4, 20) == 3247943160ULL);  // binom(35, 15)
  CHECK(binomial(67, 33) == 14226520737620288370ULL);
  CHECK_THROWS_AS(binomial(68, 34), std::overflow_error);
  CHECK_THROWS_AS(coeff_bound(FactorKind::Spin, 8, 40), std::overflow_error);
}

TEST_CASE("coefficient bounds hold and are attained at the identity tuple") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const int g = 1 + i % 4;
    const auto t = random_tuple(rng, g);
    const auto spin = expand(local_factor(t, FactorKind::Spin), 20);
    const auto std_s = expand(local_factor(t, FactorKind::Std), 20);
    for (int r = 0; r <= 20; ++r) {
      CHECK(std::abs(spin[r]) <= coeff_bound(FactorKind::Spin, g, r) * (1 + 1e-12));
      const double diff = std_s[r] - (r ? std_s[r - 1] : 0.0);
      CHECK(std::abs(diff) <= coeff_bound(FactorKind::Std, g, r) * (1 + 1e-12));
    }
  }
  for (int g = 1; g <= 4; ++g) {
    const auto spin = expand(local_factor(all_ones(g), FactorKind::Spin), 20);
    const auto std_s = expand(local_factor(all_ones(g), FactorKind::Std), 20);
    for (int r = 0; r <= 20; ++r) {
      CHECK(std::llround(spin[r]) == static_cast<long long>(coeff_bound(FactorKind::Spin, g, r)));
      const double diff = std_s[r] - (r ? std_s[r - 1] : 0.0);
      CHECK(std::llround(diff) == static_cast<long long>(coeff_bound(FactorKind::Std, g, r)));
    }
  }
}

TEST_CASE("first coefficient identities") {
  auto f = first_coefficient_identities(all_ones(2));
  CHECK(f.m1 == doctest::Approx(4.0));
  CHECK(f.rho1 == doctest::Approx(5.0));
  const double theta = std::numbers::pi / 3.0;
  f = first_coefficient_identities(SatakeTuple::from_angles(1, {theta, -2.0 * theta}));
  CHECK(std::abs(f.m1 - 1.0) < 1e-12);
  CHECK(std::abs(f.rho1) < 1e-12);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_tuple(rng, 1 + i % 4);
    f = first_coefficient_identities(t);
    double rho = 1.0;
    for (std::size_t k = 1; k < t.size(); ++k) rho += 2.0 * std::cos(t.angle(k));
    CHECK(std::abs(f.m1 - mu(t)) <= 1e-10);
    CHECK(std::abs(f.rho1 - rho) <= 1e-10);
  }
}

TEST_CASE("trace powers") {
  CHECK(trace_power(all_ones(1), FactorKind::Std, 3) == doctest::Approx(3.0));
  for (int r = 1; r <= 6; ++r) CHECK(trace_power(all_ones(2), FactorKind::Spin, r) == doctest::Approx(4.0));
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const int g = 1 + i % 4;
    const auto t = random_tuple(rng, g);
    const int r = 1 + i % 9;
    CHECK(std::abs(trace_power(t, FactorKind::Spin, r)) <= std::ldexp(1.0, g) + 1e-12);
    CHECK(std::abs(trace_power(t, FactorKind::Std, r)) <= 2 * g + 1 + 1e-12);
  }
}

TEST_CASE("log_local") {
  SUBCASE("closed form for the identity genus-one standard factor") {
    const auto v = log_local(all_ones(1), FactorKind::Std, 2, 2.0, 50);
    CHECK(v.value == doctest::Approx(0.8630462173553428).epsilon(1e-14));
    CHECK(v.tail_bound < 1e-30);
  }
  SUBCASE("default cut leaves a negligible tail") {
    CHECK(log_local(all_ones(2), FactorKind::Spin, 2, 1.01).tail_bound < 1e-18);
  }
  SUBCASE("direct product oracle and first-order remainder") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 400; ++i) {
      const int g = 1 + i % 3;
      const auto t = random_tuple(rng, g);
      for (std::uint64_t p : {2u, 3u, 5u, 101u}) {
        for (double s : {1.01, 1.1, 1.5, 2.0}) {
          for (auto kind : {FactorKind::Spin, FactorKind::Std}) {
            const auto v = log_local(t, kind, p, s);
            CHECK(std::abs(v.value - direct_log(t, kind, static_cast<double>(p), s)) <=
                  v.tail_bound + 1e-13);
            const double x = std::pow(static_cast<double>(p), -s);
            const double D = static_cast<double>(factor_degree(kind, g));
            const double c1 = expand(local_factor(t, kind), 1)[1];
            CHECK(std::abs(v.value - c1 * x) <= D / 2.0 * x * x / (1.0 - x) + 1e-15);
          }
        }
      }
    }
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(log_local(all_ones(1), FactorKind::Std, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(log_local(all_ones(1), FactorKind::Std, 1, 2.0), std::invalid_argument);
  }
}
