#include "satake/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "satake/parallel.hpp"
#include "satake/series.hpp"

namespace satake {

const char* to_string(ExceedMode mode) { return mode == ExceedMode::Abs ? "abs" : "signed"; }

ExceedMode exceed_mode_from_string(const std::string& name) {
  if (name == "abs") return ExceedMode::Abs;
  if (name == "signed") return ExceedMode::Signed;
  throw std::invalid_argument("unknown mode '" + name + "' (expected abs or signed)");
}

namespace {

double rho1(const SatakeTuple& t) {
  double r = 1.0;
  for (std::size_t i = 1; i < t.size(); ++i) r += 2.0 * std::cos(t.angle(i));
  return r;
}

void require_positive_c(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
}

}  // namespace

LemmaIneqCheck lemma_ineq_check(const SatakeTuple& t, double c) {
  require_positive_c(c);
  const double g = t.genus();
  return {std::abs(mu(t)) >= c, rho1(t), g * std::pow(c, 2.0 / g) - 2.0 * g + 1.0};
}

SatakeTuple extremal_tuple(int genus, double c) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  const double top = std::ldexp(1.0, genus);
  if (!(c > 0.0 && c <= top)) throw std::domain_error("c must lie in (0, 2^g]");
  const double cos_phi = std::clamp(std::pow(c, 2.0 / genus) / 2.0 - 1.0, -1.0, 1.0);
  const double phi = std::acos(cos_phi);
  std::vector<double> angles(static_cast<std::size_t>(genus) + 1, phi);
  angles[0] = -0.5 * genus * phi;
  return SatakeTuple::from_angles(genus, std::move(angles));
}

double theorem1_bound(int genus, double c) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  require_positive_c(c);
  // (2g - 1) / (g c^{2/g}); for g = 2 this is 3 / (2c) with a single rounding.
  return (2.0 * genus - 1.0) / (genus * std::pow(c, 2.0 / genus));
}

double theorem2_bound(double c) {
  require_positive_c(c);
  return 4.0 / (c + 4.0);
}

double theorem_bound(int genus, double c, ExceedMode mode) {
  if (mode == ExceedMode::Abs) return theorem1_bound(genus, c);
  if (genus == 2) return theorem2_bound(c);
  return lfunc_density_bound(std::ldexp(1.0, genus), c);
}

PrimeSubset exceptional_set(const SatakeAssignment& a, double c, ExceedMode mode) {
  require_positive_c(c);
  const auto& mu_values = a.mu_values();
  std::vector<bool> m(mu_values.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double v = mode == ExceedMode::Abs ? std::abs(mu_values[i]) : mu_values[i];
    m[i] = v >= c;
  }
  return PrimeSubset(a.table_ptr(), std::move(m));
}

double first_order_sum(const SatakeAssignment& a, FactorKind kind, double s) {
  if (!(s > 1.0)) throw std::invalid_argument("s must be greater than 1");
  const PrimeTable& t = a.table();
  if (kind == FactorKind::Spin) {
    const auto& mu_values = a.mu_values();
    return chunked_sum(t.size(), [&](std::size_t i) {
      return mu_values[i] * std::pow(static_cast<double>(t[i]), -s);
    });
  }
  const auto& tuples = a.tuples();
  return chunked_sum(t.size(), [&](std::size_t i) {
    return rho1(tuples[i]) * std::pow(static_cast<double>(t[i]), -s);
  });
}

namespace {

DivergenceDiagnostic divergence(const SatakeAssignment& a, ExceedMode mode,
                                const std::vector<double>& s_grid) {
  DivergenceDiagnostic d;
  const FactorKind kind = mode == ExceedMode::Abs ? FactorKind::Std : FactorKind::Spin;
  d.series = kind == FactorKind::Std ? "R" : "T";
  d.s_grid = s_grid;
  for (double s : s_grid) d.values.push_back(first_order_sum(a, kind, s));
  d.growth = d.values.back() - d.values.front();
  d.monotone_increasing = d.values.size() > 1 &&
                          std::is_sorted(d.values.begin(), d.values.end(),
                                         [](double x, double y) { return x < y; }) &&
                          d.growth > 0.0;
  return d;
}

}  // namespace

BoundReport verify_theorem(const SatakeAssignment& a, double c, ExceedMode mode,
                           std::vector<double> s_grid, std::vector<std::uint64_t> x_grid,
                           std::size_t max_witnesses) {
  require_positive_c(c);
  const int g = a.genus();
  const PrimeSubset set = exceptional_set(a, c, mode);

  BoundReport r;
  r.c = c;
  r.mode = mode;
  r.genus = g;
  r.estimate = density_profile(set, std::move(s_grid), std::move(x_grid));
  r.bound = theorem_bound(g, c, mode);
  r.exceptional_count = set.count();
  r.margin = r.bound - (r.exceptional_count == 0 ? 0.0 : r.estimate.upper_dirichlet());
  if (mode == ExceedMode::Abs) {
    r.lemma_C = 2.0 * g - 1.0;
    r.lemma_D = g * std::pow(c, 2.0 / g) - 2.0 * g + 1.0;
    r.lemma_E = 2.0 * g + 1.0;
  } else {
    r.lemma_C = std::ldexp(1.0, g);
    r.lemma_D = c;
    r.lemma_E = std::ldexp(1.0, g);
  }
  r.extrapolated = mode == ExceedMode::Signed && g != 2;
  r.nontrivial_range = {std::pow(2.0 - 1.0 / g, g / 2.0), std::ldexp(1.0, g)};
  if (mode == ExceedMode::Signed || a.has_tuples()) {
    r.divergence = divergence(a, mode, r.estimate.s_grid);
  }
  for (std::size_t i = 0; i < set.table().size() && r.witnesses.size() < max_witnesses; ++i) {
    if (set.contains_index(i)) r.witnesses.emplace_back(set.table()[i], a.mu_at(i));
  }
  return r;
}

LogLDecomposition log_L_decomposition(const SatakeAssignment& a, FactorKind kind, double s) {
  if (!(s > 1.0)) throw std::invalid_argument("s must be greater than 1");
  const PrimeTable& t = a.table();
  const auto& tuples = a.tuples();
  const double degree = static_cast<double>(factor_degree(kind, a.genus()));
  const double log_L = chunked_sum(t.size(), [&](std::size_t i) {
    return log_local(tuples[i], kind, t[i], s).value;
  });
  const double first = first_order_sum(a, kind, s);
  const double cap = chunked_sum(t.size(), [&](std::size_t i) {
    const double x = std::pow(static_cast<double>(t[i]), -s);
    return 0.5 * degree * x * x / (1.0 - x);
  });
  return {log_L, first, log_L - first, cap};
}

SharpnessReport lfunc_sharpness_harness(double C, double D, PrimeTablePtr table,
                                        std::uint64_t modulus, std::uint64_t residue,
                                        std::vector<double> s_grid) {
  if (!(C > 0.0) || !(D > 0.0)) throw std::invalid_argument("C and D must be positive");
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  if (s_grid.empty()) throw std::invalid_argument("s grid must be non-empty");
  std::sort(s_grid.begin(), s_grid.end(), std::greater<>());

  const PrimeSubset set = PrimeSubset::from_predicate(
      table, [&](std::uint64_t p) { return p % modulus == residue % modulus; });
  std::vector<double> f(table->size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = set.contains_index(i) ? D : -C;

  SharpnessReport r;
  r.C = C;
  r.D = D;
  r.modulus = modulus;
  r.residue = residue;
  r.s_grid = s_grid;
  for (double s : s_grid) {
    r.L_values.push_back(weighted_L(*table, f, s));
    r.max_abs_L = std::max(r.max_abs_L, std::abs(r.L_values.back()));
  }
  r.bounded = r.max_abs_L <= r.threshold;
  r.monotone_growth = r.L_values.size() > 1;
  for (std::size_t k = 1; k < r.L_values.size(); ++k) {
    if (!(r.L_values[k] > r.L_values[k - 1])) r.monotone_growth = false;
  }
  r.predicted_bound = lfunc_density_bound(C, D);
  r.density = density_profile(set, s_grid, default_x_grid(table->bound()));
  return r;
}

}  // namespace satake
