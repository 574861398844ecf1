#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "satake/assignment.hpp"
#include "satake/core.hpp"
#include "satake/density.hpp"

namespace satake {

inline constexpr double kEqualityTol = 1e-9;

enum class ExceedMode { Abs, Signed };

const char* to_string(ExceedMode mode);
ExceedMode exceed_mode_from_string(const std::string& name);

struct LemmaIneqCheck {
  bool applicable;  // |mu| >= c
  double lhs;       // 1 + sum (a_i + 1/a_i)
  double rhs;       // g c^{2/g} - 2g + 1
};

LemmaIneqCheck lemma_ineq_check(const SatakeTuple& t, double c);

/// Equal-angle tuple attaining the AM-GM inequality: a_i = e^{i phi} with
/// cos phi = c^{2/g}/2 - 1 and a_0 = e^{-i g phi / 2}, so mu = c >= 0.
/// Throws std::domain_error unless 0 < c <= 2^g.
SatakeTuple extremal_tuple(int genus, double c);

/// (2 - 1/g) c^{-2/g}
double theorem1_bound(int genus, double c);
/// 4 / (c + 4)
double theorem2_bound(double c);

/// Primes with |mu(p)| >= c (Abs) or mu(p) >= c (Signed).
PrimeSubset exceptional_set(const SatakeAssignment& a, double c, ExceedMode mode);

/// Growth of R(s) (Abs, standard side) or T(s) (Signed, spin side) along the
/// s grid. Steady growth as s decreases means the assignment behaves like an
/// L-function with a pole at 1, outside the theorems' hypotheses.
struct DivergenceDiagnostic {
  std::string series;           // "R" or "T"
  std::vector<double> s_grid;   // descending
  std::vector<double> values;
  double growth = 0.0;          // value at s_min minus value at s_max
  bool monotone_increasing = false;
};

struct BoundReport {
  double c = 0.0;
  ExceedMode mode = ExceedMode::Abs;
  int genus = 1;
  DensityEstimate estimate;
  double bound = 0.0;
  double margin = 0.0;  // bound - max Dirichlet ratio; may be negative
  std::size_t exceptional_count = 0;
  // Constants fed to the density lemma: -C <= f <= E, f >= D on the set.
  double lemma_C = 0.0;
  double lemma_D = 0.0;
  double lemma_E = 0.0;
  bool extrapolated = false;  // Signed mode with genus != 2
  std::pair<double, double> nontrivial_range;  // Abs: [(2-1/g)^{g/2}, 2^g]
  std::optional<DivergenceDiagnostic> divergence;  // absent when angles are missing
  std::vector<std::pair<std::uint64_t, double>> witnesses;
};

/// Theorem bound used for a mode; Signed for genus != 2 uses 2^g / (c + 2^g).
double theorem_bound(int genus, double c, ExceedMode mode);

BoundReport verify_theorem(const SatakeAssignment& a, double c, ExceedMode mode,
                           std::vector<double> s_grid, std::vector<std::uint64_t> x_grid,
                           std::size_t max_witnesses = 0);

struct LogLDecomposition {
  double log_L;
  double first_order;  // R(s) for Std, T(s) for Spin
  double remainder;
  double remainder_cap;
};

LogLDecomposition log_L_decomposition(const SatakeAssignment& a, FactorKind kind, double s);

/// R(s) = sum rho(p) p^{-s} or T(s) = sum mu(p) p^{-s}.
double first_order_sum(const SatakeAssignment& a, FactorKind kind, double s);

struct SharpnessReport {
  double C = 0.0;
  double D = 0.0;
  std::uint64_t modulus = 3;
  std::uint64_t residue = 1;
  std::vector<double> s_grid;
  std::vector<double> L_values;
  double max_abs_L = 0.0;
  double threshold = 10.0;
  bool bounded = false;            // max |L| <= threshold
  bool monotone_growth = false;    // L increases as s decreases
  double predicted_bound = 0.0;    // C / (C + D)
  DensityEstimate density;
};

/// f = +D on {p = residue mod modulus}, -C elsewhere. With D == C and a
/// nontrivial character the truncated L(s) stays bounded while the set has
/// density C/(C+D).
SharpnessReport lfunc_sharpness_harness(double C, double D, PrimeTablePtr table,
                                        std::uint64_t modulus = 3, std::uint64_t residue = 1,
                                        std::vector<double> s_grid = default_s_grid());

}  // namespace satake
