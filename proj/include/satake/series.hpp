#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "satake/core.hpp"

namespace satake {

/// Imaginary residue tolerated on a coefficient before it is reported as
/// non-real, scaled by max(1, |c_r|).
inline constexpr double kImagResidueTol = 1e-9;
inline constexpr int kDefaultLogCut = 64;

/// Dirichlet coefficients c_0..c_rmax of one local factor in the variable
/// x = p^{-s}. They depend only on the Satake tuple, not on p.
struct CoeffSeries {
  FactorKind kind;
  int genus;
  std::vector<double> coeffs;

  int depth() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator[](std::size_t r) const { return coeffs.at(r); }
};

/// Linear recurrence against the denominator polynomial prod_j (1 - alpha_j x).
CoeffSeries expand(const LocalFactor& f, int r_max);

/// Truncated product of the geometric series 1 + alpha_j x + alpha_j^2 x^2 + ...
/// Kept as an independent route for cross-checking expand().
CoeffSeries expand_oracle(const LocalFactor& f, int r_max);

/// Exact binomial bound on the r-th coefficient (Spin) or on the r-th
/// difference c_r - c_{r-1} (Std). Throws std::overflow_error rather than wrap.
std::uint64_t coeff_bound(FactorKind kind, int genus, int r);

/// Exact binomial coefficient with overflow detection.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct FirstCoefficients {
  double m1;    // spin c_1
  double rho1;  // std c_1
};

FirstCoefficients first_coefficient_identities(const SatakeTuple& t);

/// Power sum of the factor's roots, sum_j alpha_j^r.
double trace_power(const SatakeTuple& t, FactorKind kind, int r);

struct LogLocal {
  double value;
  double tail_bound;
};

/// log of the local factor at real s > 1 as sum_{r<=r_cut} tr_r / (r p^{rs}),
/// with a rigorous bound on the discarded tail.
LogLocal log_local(const SatakeTuple& t, FactorKind kind, std::uint64_t p, double s,
                   int r_cut = kDefaultLogCut);

}  // namespace satake
