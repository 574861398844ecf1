#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satake/assignment.hpp"
#include "satake/core.hpp"

namespace satake {

/// Stateless counter-based generator: the n-th output of stream (seed, key)
/// is a fixed function of (seed, key, n), so substreams can be built in any
/// order or in parallel with identical results.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t key) : seed_(seed), key_(key) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double next_unit();
  bool next_bit() { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class SamplerKind { UniformTorus, SatoTateG1, ExtremalConstant, AngleFamily };

const char* to_string(SamplerKind kind);
SamplerKind sampler_kind_from_string(const std::string& name);

/// Deterministic angle rules for AngleFamily. For genus g, free angle i of
/// prime p is 2*pi*frac(p * sqrt(q_i)) with q_i the i-th prime (2, 3, 5, ...).
enum class AngleRule { FracSqrt };

struct SamplerSpec {
  SamplerKind kind = SamplerKind::UniformTorus;
  int genus = 1;
  double c = 0.0;  // ExtremalConstant only
  AngleRule angle_rule = AngleRule::FracSqrt;
  std::uint64_t seed = 0;
};

SatakeTuple sample_uniform(int genus, CounterRng& rng);

/// theta from the Sato-Tate density (2/pi) sin^2(theta) on [0, pi];
/// returns (e^{i theta}, e^{-2 i theta}) so that mu = 2 cos(theta).
SatakeTuple sample_satotate_g1(CounterRng& rng);

/// Inverse Sato-Tate CDF from a monotone table of 2^16 + 1 nodes with linear
/// interpolation.
double satotate_inverse_cdf(double u);

/// Closed-form Sato-Tate CDF (2 theta - sin 2 theta) / (2 pi).
double satotate_cdf(double theta);

/// Sato-Tate measure of {theta : |2 cos theta| >= c} by adaptive Simpson
/// quadrature of (2/pi) sin^2(theta).
double satotate_exceed_measure(double c);

/// Closed form (2a - sin 2a) / pi with a = arccos(c/2), for cross-checking.
double satotate_exceed_measure_closed(double c);

SatakeAssignment build_assignment(const SamplerSpec& spec, PrimeTablePtr table);

}  // namespace satake
