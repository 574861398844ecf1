#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace satake {

inline constexpr std::uint64_t kDefaultSieveCap = 1'000'000'000;

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All primes up to a bound, ascending. Immutable once built.
class PrimeTable {
 public:
  PrimeTable(std::uint64_t bound, std::vector<std::uint64_t> primes);

  std::uint64_t bound() const { return bound_; }
  std::size_t size() const { return primes_.size(); }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  bool is_prime(std::uint64_t n) const;
  /// Index of p in the table; throws std::out_of_range if p is not a listed prime.
  std::size_t index_of(std::uint64_t p) const;
  /// pi(x) for x <= bound.
  std::size_t count_upto(std::uint64_t x) const;

 private:
  std::uint64_t bound_;
  std::vector<std::uint64_t> primes_;
};

using PrimeTablePtr = std::shared_ptr<const PrimeTable>;

/// Segmented sieve of Eratosthenes over odd numbers.
PrimeTablePtr sieve(std::uint64_t bound, std::uint64_t cap = kDefaultSieveCap);

/// A subset of a table's primes, stored as a membership indicator aligned
/// with the table.
class PrimeSubset {
 public:
  PrimeSubset(PrimeTablePtr table, std::vector<bool> members);

  static PrimeSubset empty(PrimeTablePtr table);
  static PrimeSubset all(PrimeTablePtr table);
  static PrimeSubset from_predicate(PrimeTablePtr table,
                                    const std::function<bool(std::uint64_t)>& pred);

  const PrimeTable& table() const { return *table_; }
  const PrimeTablePtr& table_ptr() const { return table_; }
  const std::vector<bool>& members() const { return members_; }
  bool contains_index(std::size_t i) const { return members_[i]; }
  std::size_t count() const;

  PrimeSubset complement() const;
  /// True if every member of *this is a member of other (same table).
  bool is_subset_of(const PrimeSubset& other) const;

 private:
  PrimeTablePtr table_;
  std::vector<bool> members_;
};

/// sum_{p in S} p^{-s} / sum_{p} p^{-s}, both truncated at the table bound.
double dirichlet_ratio(const PrimeSubset& subset, double s);

/// #{p in S, p <= x} / pi(x).
double natural_ratio(const PrimeSubset& subset, std::uint64_t x);

/// Truncated Dirichlet and natural density estimates over explicit grids.
/// The upper/lower values are max/min over the grid, standing in for the
/// limsup/liminf that cannot be computed.
struct DensityEstimate {
  std::vector<double> s_grid;                // descending, all > 1
  std::vector<std::uint64_t> x_grid;         // ascending, all <= bound
  std::vector<double> dirichlet_ratios;      // per s
  std::vector<double> natural_ratios;        // per x
  std::uint64_t truncation_bound = 0;
  double s_min = 0.0;

  double upper_dirichlet() const;
  double lower_dirichlet() const;
  double upper_natural() const;
  double lower_natural() const;
};

/// {1 + 2^-k : k = 1..7}
std::vector<double> default_s_grid();
/// 10, 100, ... up to the bound, with the bound itself appended.
std::vector<std::uint64_t> default_x_grid(std::uint64_t bound);

DensityEstimate density_profile(const PrimeSubset& subset, std::vector<double> s_grid,
                                std::vector<std::uint64_t> x_grid);

struct PartialSummation {
  double lhs;
  double rhs;
  double gap;
};

/// Compares sum_{p in S, p <= x} p^{-s} against S(x)/x^s + s * int_1^x S(t) t^{-s-1} dt,
/// with the step-function integral evaluated exactly between members of S.
PartialSummation partial_summation_check(const PrimeSubset& subset, std::uint64_t x, double s);

/// sum_p f(p) p^{-s} over the table; f is given per table index.
double weighted_L(const PrimeTable& table, std::span<const double> f, double s);

/// C / (C + D)
double lfunc_density_bound(double C, double D);

}  // namespace satake
