#include "satake/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "satake/parallel.hpp"
#include "satake/verify.hpp"

namespace satake {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t stream = mix64(seed_ ^ mix64(key_ + 0x9e3779b97f4a7c15ULL));
  return mix64(stream + (++counter_) * 0x9e3779b97f4a7c15ULL);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

const char* to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::UniformTorus: return "uniform_torus";
    case SamplerKind::SatoTateG1: return "satotate_g1";
    case SamplerKind::ExtremalConstant: return "extremal_constant";
    case SamplerKind::AngleFamily: return "angle_family";
  }
  return "unknown";
}

SamplerKind sampler_kind_from_string(const std::string& name) {
  for (SamplerKind k : {SamplerKind::UniformTorus, SamplerKind::SatoTateG1,
                        SamplerKind::ExtremalConstant, SamplerKind::AngleFamily}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown sampler kind '" + name + "'");
}

SatakeTuple sample_uniform(int genus, CounterRng& rng) {
  std::vector<double> free(static_cast<std::size_t>(std::max(genus, 0)));
  for (double& a : free) a = kTwoPi * rng.next_unit();
  const Branch b = rng.next_bit() ? Branch::Minus : Branch::Plus;
  return SatakeTuple::from_free_angles(genus, free, b);
}

double satotate_cdf(double theta) {
  theta = std::clamp(theta, 0.0, std::numbers::pi);
  return (2.0 * theta - std::sin(2.0 * theta)) / kTwoPi;
}

namespace {

constexpr std::size_t kCdfNodes = (1 << 16) + 1;

struct CdfTable {
  std::vector<double> theta;
  std::vector<double> cdf;

  CdfTable() : theta(kCdfNodes), cdf(kCdfNodes) {
    for (std::size_t i = 0; i < kCdfNodes; ++i) {
      theta[i] = std::numbers::pi * static_cast<double>(i) / (kCdfNodes - 1);
      cdf[i] = satotate_cdf(theta[i]);
    }
    cdf.front() = 0.0;
    cdf.back() = 1.0;
  }
};

const CdfTable& cdf_table() {
  static const CdfTable table;
  return table;
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace

double satotate_inverse_cdf(double u) {
  const CdfTable& t = cdf_table();
  u = std::clamp(u, 0.0, 1.0);
  auto it = std::upper_bound(t.cdf.begin(), t.cdf.end(), u);
  if (it == t.cdf.end()) return std::numbers::pi;
  const std::size_t hi = static_cast<std::size_t>(it - t.cdf.begin());
  const std::size_t lo = hi - 1;
  const double span = t.cdf[hi] - t.cdf[lo];
  const double w = span > 0.0 ? (u - t.cdf[lo]) / span : 0.0;
  return t.theta[lo] + w * (t.theta[hi] - t.theta[lo]);
}

SatakeTuple sample_satotate_g1(CounterRng& rng) {
  const double theta = satotate_inverse_cdf(rng.next_unit());
  return SatakeTuple::from_angles(1, {theta, -2.0 * theta});
}

double satotate_exceed_measure(double c) {
  if (!(c >= 0.0 && c <= 2.0)) throw std::domain_error("c must lie in [0, 2]");
  // {|2 cos theta| >= c} = [0, a] U [pi - a, pi], and the density is symmetric
  // about pi/2.
  const double a = std::acos(c / 2.0);
  auto density = [](double th) {
    const double s = std::sin(th);
    return 2.0 / std::numbers::pi * s * s;
  };
  return std::clamp(2.0 * adaptive_simpson(density, 0.0, a, 1e-14), 0.0, 1.0);
}

double satotate_exceed_measure_closed(double c) {
  if (!(c >= 0.0 && c <= 2.0)) throw std::domain_error("c must lie in [0, 2]");
  const double a = std::acos(c / 2.0);
  return (2.0 * a - std::sin(2.0 * a)) / std::numbers::pi;
}

namespace {

std::vector<double> angle_family_free(int genus, std::uint64_t p) {
  static constexpr std::array<double, 16> kBases{2, 3, 5, 7, 11, 13, 17, 19,
                                                 23, 29, 31, 37, 41, 43, 47, 53};
  if (genus > static_cast<int>(kBases.size())) {
    throw std::invalid_argument("angle family supports genus up to 16");
  }
  std::vector<double> free;
  for (int i = 0; i < genus; ++i) {
    const double v = static_cast<double>(p) * std::sqrt(kBases[static_cast<std::size_t>(i)]);
    free.push_back(kTwoPi * (v - std::floor(v)));
  }
  return free;
}

}  // namespace

SatakeAssignment build_assignment(const SamplerSpec& spec, PrimeTablePtr table) {
  if (spec.genus < 1) throw std::invalid_argument("sampler genus must be at least 1");
  if (spec.kind == SamplerKind::SatoTateG1 && spec.genus != 1) {
    throw std::invalid_argument("the Sato-Tate sampler is genus 1 only");
  }
  const PrimeTable& t = *table;
  std::vector<std::optional<SatakeTuple>> slots(t.size());

  std::optional<SatakeTuple> constant;
  if (spec.kind == SamplerKind::ExtremalConstant) constant = extremal_tuple(spec.genus, spec.c);

  parallel_chunks(t.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(spec.seed, i);
      switch (spec.kind) {
        case SamplerKind::UniformTorus: slots[i] = sample_uniform(spec.genus, rng); break;
        case SamplerKind::SatoTateG1: slots[i] = sample_satotate_g1(rng); break;
        case SamplerKind::ExtremalConstant: slots[i] = *constant; break;
        case SamplerKind::AngleFamily:
          slots[i] = SatakeTuple::from_free_angles(spec.genus, angle_family_free(spec.genus, t[i]),
                                                   Branch::Plus);
          break;
      }
    }
  });

  std::vector<SatakeTuple> tuples;
  tuples.reserve(slots.size());
  for (auto& s : slots) tuples.push_back(std::move(*s));
  return SatakeAssignment(spec.genus, std::move(table), std::move(tuples));
}

}  // namespace satake
