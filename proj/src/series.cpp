#include "satake/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace satake {

namespace {

// Both expansion routes accumulate in extended precision: genus-4 spin
// coefficients reach ~1e9 at depth 20 and double rounding alone exceeds the
// 1e-9 agreement tolerance.
using WideComplex = std::complex<long double>;

void require_depth(int r_max) {
  if (r_max < 1) throw std::invalid_argument("r_max must be at least 1");
}

CoeffSeries to_real(const LocalFactor& f, const std::vector<WideComplex>& c) {
  CoeffSeries out{f.kind, f.genus, {}};
  out.coeffs.reserve(c.size());
  for (std::size_t r = 0; r < c.size(); ++r) {
    // Relative for large coefficients: a 1e-16 rad constraint residual in the
    // stored angles already leaves ~1e-15 |c_r| of imaginary part.
    const long double allowed = kImagResidueTol * std::max(1.0L, std::abs(c[r].real()));
    if (!(std::abs(c[r].imag()) <= allowed)) {
      std::ostringstream os;
      os << to_string(f.kind) << " coefficient " << r << " has imaginary part "
         << static_cast<double>(c[r].imag());
      throw NonRealError(os.str());
    }
    out.coeffs.push_back(static_cast<double>(c[r].real()));
  }
  out.coeffs[0] = 1.0;
  return out;
}

}  // namespace

CoeffSeries expand(const LocalFactor& f, int r_max) {
  require_depth(r_max);
  const std::size_t n = static_cast<std::size_t>(r_max) + 1;
  // Newton's identities for complete homogeneous sums: r c_r = sum_k p_k c_{r-k}
  // with p_k = sum_j alpha_j^k. The power sums stay bounded by the degree, so
  // the recurrence does not amplify rounding the way the denominator
  // polynomial's coefficients do.
  std::vector<WideComplex> power(n, 0.0L);
  std::vector<WideComplex> walk(f.roots.begin(), f.roots.end());
  for (std::size_t k = 1; k < n; ++k) {
    WideComplex sum = 0.0L;
    for (std::size_t j = 0; j < walk.size(); ++j) {
      sum += walk[j];
      walk[j] *= WideComplex(f.roots[j]);
    }
    power[k] = sum;
  }
  std::vector<WideComplex> c(n, 0.0L);
  c[0] = 1.0L;
  for (std::size_t r = 1; r < n; ++r) {
    WideComplex acc = 0.0L;
    for (std::size_t k = 1; k <= r; ++k) acc += power[k] * c[r - k];
    c[r] = acc / static_cast<long double>(r);
  }
  return to_real(f, c);
}

CoeffSeries expand_oracle(const LocalFactor& f, int r_max) {
  require_depth(r_max);
  const std::size_t n = static_cast<std::size_t>(r_max) + 1;
  std::vector<WideComplex> prod(n, 0.0L);
  prod[0] = 1.0L;
  std::vector<WideComplex> geo(n);
  std::vector<WideComplex> next(n);
  for (const Complex& root : f.roots) {
    const WideComplex a(root);
    geo[0] = 1.0L;
    for (std::size_t k = 1; k < n; ++k) geo[k] = geo[k - 1] * a;
    std::fill(next.begin(), next.end(), WideComplex{0.0L});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; i + j < n; ++j) next[i + j] += prod[i] * geo[j];
    }
    prod.swap(next);
  }
  return to_real(f, prod);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i, reducing by gcd first so the product stays exact.
    std::uint64_t num = n - k + i;
    std::uint64_t den = i;
    const std::uint64_t g1 = std::gcd(num, den);
    num /= g1;
    den /= g1;
    const std::uint64_t g2 = std::gcd(result, den);
    result /= g2;
    den /= g2;
    // den is now 1 because result * num is divisible by i.
    std::uint64_t next = 0;
    if (den != 1 || __builtin_mul_overflow(result, num, &next)) {
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds 64-bit range");
    }
    result = next;
  }
  return result;
}

std::uint64_t coeff_bound(FactorKind kind, int genus, int r) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  std::uint64_t m = 0;
  if (kind == FactorKind::Spin) {
    if (genus >= 63) throw std::overflow_error("2^g exceeds 64-bit range");
    m = (std::uint64_t{1} << genus) - 1;
  } else {
    m = 2 * static_cast<std::uint64_t>(genus) - 1;
  }
  return binomial(static_cast<std::uint64_t>(r) + m, m);
}

FirstCoefficients first_coefficient_identities(const SatakeTuple& t) {
  return {expand(local_factor(t, FactorKind::Spin), 1)[1],
          expand(local_factor(t, FactorKind::Std), 1)[1]};
}

double trace_power(const SatakeTuple& t, FactorKind kind, int r) {
  if (r < 1) throw std::invalid_argument("trace power r must be positive");
  Complex sum = 0.0;
  for (const Complex& a : local_factor(t, kind).roots) sum += std::pow(a, r);
  if (!(std::abs(sum.imag()) <= kImagResidueTol)) {
    throw NonRealError("trace power has imaginary part " + std::to_string(sum.imag()));
  }
  return sum.real();
}

LogLocal log_local(const SatakeTuple& t, FactorKind kind, std::uint64_t p, double s, int r_cut) {
  if (!(s > 1.0)) throw std::invalid_argument("log_local requires s > 1");
  if (p < 2) throw std::invalid_argument("log_local requires p >= 2");
  if (r_cut < 1) throw std::invalid_argument("r_cut must be positive");
  const LocalFactor f = local_factor(t, kind);
  const double x = std::pow(static_cast<double>(p), -s);
  // Power sums by repeated multiplication of each root.
  std::vector<Complex> powers(f.roots);
  double value = 0.0;
  double xr = x;
  for (int r = 1; r <= r_cut; ++r) {
    Complex tr = 0.0;
    for (const Complex& a : powers) tr += a;
    value += tr.real() * xr / r;
    for (std::size_t j = 0; j < powers.size(); ++j) powers[j] *= f.roots[j];
    xr *= x;
    if (xr == 0.0) break;
  }
  const double degree = static_cast<double>(f.degree());
  const double tail = degree * std::pow(x, r_cut + 1) / ((r_cut + 1) * (1.0 - x));
  return {value, tail};
}

}  // namespace satake
