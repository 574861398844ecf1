#include "satake/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "satake/parallel.hpp"

namespace satake {

PrimeTable::PrimeTable(std::uint64_t bound, std::vector<std::uint64_t> primes)
    : bound_(bound), primes_(std::move(primes)) {}

bool PrimeTable::is_prime(std::uint64_t n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::index_of(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) {
    throw std::out_of_range(std::to_string(p) + " is not a prime in the table");
  }
  return static_cast<std::size_t>(it - primes_.begin());
}

std::size_t PrimeTable::count_upto(std::uint64_t x) const {
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                  primes_.begin());
}

PrimeTablePtr sieve(std::uint64_t bound, std::uint64_t cap) {
  if (bound < 2) throw std::invalid_argument("sieve bound must be at least 2");
  if (bound > cap) {
    throw ResourceLimitError("sieve bound " + std::to_string(bound) + " exceeds cap " +
                             std::to_string(cap));
  }
  std::vector<std::uint64_t> primes{2};
  if (bound >= 3) {
    primes.reserve(static_cast<std::size_t>(1.3 * bound / std::log(static_cast<double>(bound))) +
                   16);
  }

  // Base primes up to sqrt(bound) by a plain sieve.
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound)));
  while (root * root > bound) --root;
  while ((root + 1) * (root + 1) <= bound) ++root;
  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = false;
  }

  // Segment over odd n = lo + 2k.
  constexpr std::uint64_t kSegment = 1 << 16;
  std::vector<char> composite(kSegment);
  for (std::uint64_t lo = 3; lo <= bound; lo += 2 * kSegment) {
    const std::uint64_t hi = std::min(bound, lo + 2 * kSegment - 1);
    const std::uint64_t len = (hi - lo) / 2 + 1;
    std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(len), 0);
    for (std::uint64_t q : base) {
      if (q * q > hi) break;
      std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
      if (start % 2 == 0) start += q;
      for (std::uint64_t m = start; m <= hi; m += 2 * q) composite[(m - lo) / 2] = 1;
    }
    for (std::uint64_t k = 0; k < len; ++k) {
      if (!composite[k]) primes.push_back(lo + 2 * k);
    }
  }
  return std::make_shared<const PrimeTable>(bound, std::move(primes));
}

PrimeSubset::PrimeSubset(PrimeTablePtr table, std::vector<bool> members)
    : table_(std::move(table)), members_(std::move(members)) {
  if (!table_) throw std::invalid_argument("subset needs a prime table");
  if (members_.size() != table_->size()) {
    throw std::invalid_argument("membership length does not match table length");
  }
}

PrimeSubset PrimeSubset::empty(PrimeTablePtr table) {
  const std::size_t n = table->size();
  return PrimeSubset(std::move(table), std::vector<bool>(n, false));
}

PrimeSubset PrimeSubset::all(PrimeTablePtr table) {
  const std::size_t n = table->size();
  return PrimeSubset(std::move(table), std::vector<bool>(n, true));
}

PrimeSubset PrimeSubset::from_predicate(PrimeTablePtr table,
                                        const std::function<bool(std::uint64_t)>& pred) {
  std::vector<bool> m(table->size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = pred((*table)[i]);
  return PrimeSubset(std::move(table), std::move(m));
}

std::size_t PrimeSubset::count() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

PrimeSubset PrimeSubset::complement() const {
  std::vector<bool> m(members_);
  m.flip();
  return PrimeSubset(table_, std::move(m));
}

bool PrimeSubset::is_subset_of(const PrimeSubset& other) const {
  if (table_ != other.table_ && table_->primes() != other.table_->primes()) {
    throw std::invalid_argument("subsets belong to different tables");
  }
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] && !other.members_[i]) return false;
  }
  return true;
}

namespace {

double inv_pow(std::uint64_t p, double s) { return std::pow(static_cast<double>(p), -s); }

struct RatioSums {
  double member;
  double total;
};

RatioSums ratio_sums(const PrimeSubset& subset, double s) {
  const PrimeTable& t = subset.table();
  const auto& m = subset.members();
  // Membership is read-only here, so concurrent reads of vector<bool> are safe.
  const double member =
      chunked_sum(t.size(), [&](std::size_t i) { return m[i] ? inv_pow(t[i], s) : 0.0; });
  const double total = chunked_sum(t.size(), [&](std::size_t i) { return inv_pow(t[i], s); });
  return {member, total};
}

void require_s(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("s must be greater than 1");
}

}  // namespace

double dirichlet_ratio(const PrimeSubset& subset, double s) {
  require_s(s);
  const RatioSums r = ratio_sums(subset, s);
  return std::clamp(r.member / r.total, 0.0, 1.0);
}

double natural_ratio(const PrimeSubset& subset, std::uint64_t x) {
  const PrimeTable& t = subset.table();
  if (x > t.bound()) throw std::invalid_argument("cutoff exceeds table bound");
  const std::size_t n = t.count_upto(x);
  if (n == 0) throw std::invalid_argument("cutoff below the smallest prime");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += subset.contains_index(i) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(n);
}

double DensityEstimate::upper_dirichlet() const {
  return *std::max_element(dirichlet_ratios.begin(), dirichlet_ratios.end());
}
double DensityEstimate::lower_dirichlet() const {
  return *std::min_element(dirichlet_ratios.begin(), dirichlet_ratios.end());
}
double DensityEstimate::upper_natural() const {
  return *std::max_element(natural_ratios.begin(), natural_ratios.end());
}
double DensityEstimate::lower_natural() const {
  return *std::min_element(natural_ratios.begin(), natural_ratios.end());
}

std::vector<double> default_s_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 7; ++k) g.push_back(1.0 + std::ldexp(1.0, -k));
  return g;
}

std::vector<std::uint64_t> default_x_grid(std::uint64_t bound) {
  std::vector<std::uint64_t> g;
  for (std::uint64_t x = 10; x < bound; x *= 10) g.push_back(x);
  g.push_back(bound);
  return g;
}

DensityEstimate density_profile(const PrimeSubset& subset, std::vector<double> s_grid,
                                std::vector<std::uint64_t> x_grid) {
  if (s_grid.empty() || x_grid.empty()) throw std::invalid_argument("grids must be non-empty");
  for (double s : s_grid) require_s(s);
  std::sort(s_grid.begin(), s_grid.end(), std::greater<>());
  std::sort(x_grid.begin(), x_grid.end());
  const PrimeTable& t = subset.table();
  if (x_grid.back() > t.bound()) throw std::invalid_argument("x grid exceeds table bound");
  if (x_grid.front() < 2) throw std::invalid_argument("x grid values must be at least 2");

  DensityEstimate est;
  est.truncation_bound = t.bound();
  est.s_min = s_grid.back();
  for (double s : s_grid) est.dirichlet_ratios.push_back(dirichlet_ratio(subset, s));

  std::size_t idx = 0;
  std::size_t hits = 0;
  for (std::uint64_t x : x_grid) {
    const std::size_t n = t.count_upto(x);
    for (; idx < n; ++idx) hits += subset.contains_index(idx) ? 1 : 0;
    est.natural_ratios.push_back(static_cast<double>(hits) / static_cast<double>(n));
  }
  est.s_grid = std::move(s_grid);
  est.x_grid = std::move(x_grid);
  return est;
}

PartialSummation partial_summation_check(const PrimeSubset& subset, std::uint64_t x, double s) {
  require_s(s);
  const PrimeTable& t = subset.table();
  if (x > t.bound()) throw std::invalid_argument("cutoff exceeds table bound");
  const std::size_t n = t.count_upto(x);

  CompensatedSum lhs;
  std::vector<double> member_terms;
  for (std::size_t i = 0; i < n; ++i) {
    if (!subset.contains_index(i)) continue;
    const double w = inv_pow(t[i], s);
    lhs.add(w);
    member_terms.push_back(w);
  }

  // S(t) = k on [q_k, q_{k+1}), so s * int t^{-s-1} over that piece is
  // k * (q_k^{-s} - q_{k+1}^{-s}); the last piece ends at x.
  const double x_term = x == 0 ? 0.0 : std::pow(static_cast<double>(x), -s);
  CompensatedSum rhs;
  const std::size_t count = member_terms.size();
  rhs.add(static_cast<double>(count) * x_term);
  for (std::size_t k = 1; k <= count; ++k) {
    const double right = k < count ? member_terms[k] : x_term;
    rhs.add(static_cast<double>(k) * member_terms[k - 1]);
    rhs.add(-static_cast<double>(k) * right);
  }
  const double l = lhs.value();
  const double r = rhs.value();
  return {l, r, std::abs(l - r)};
}

double weighted_L(const PrimeTable& table, std::span<const double> f, double s) {
  require_s(s);
  if (f.size() != table.size()) {
    throw std::invalid_argument("weight vector length does not match table length");
  }
  return chunked_sum(table.size(), [&](std::size_t i) { return f[i] * inv_pow(table[i], s); });
}

double lfunc_density_bound(double C, double D) {
  if (!(C > 0.0) || !(D > 0.0)) throw std::invalid_argument("C and D must be positive");
  return C / (C + D);
}

}  // namespace satake
