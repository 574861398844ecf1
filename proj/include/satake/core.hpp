#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace satake {

using Complex = std::complex<double>;

inline constexpr double kDefaultConstraintTol = 1e-10;
inline constexpr double kDefaultRealTol = 1e-10;

enum class FactorKind { Spin, Std };
enum class Branch { Plus, Minus };

const char* to_string(FactorKind kind);

/// Raised when a quantity that must be real carries an imaginary part larger
/// than the allowed residue. This means the central constraint is broken
/// somewhere upstream.
class NonRealError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Local Satake data at one unramified prime: genus g and the parameters
/// a_0, ..., a_g stored as angles, so every parameter has modulus one.
///
/// Tuples built from ingested data may carry recorded moduli. They are used
/// only by is_tempered(); all arithmetic uses the unit-modulus parameters.
class SatakeTuple {
 public:
  /// Takes g+1 angles (a_0 first). Throws std::invalid_argument if g == 0 or
  /// the shape is wrong. Does not check the central constraint; see validate().
  static SatakeTuple from_angles(int genus, std::vector<double> angles);

  /// Solves a_0^2 a_1 ... a_g = 1 for a_0 given the g free angles.
  static SatakeTuple from_free_angles(int genus, const std::vector<double>& free_angles,
                                     Branch branch);

  /// Attaches recorded moduli (one per parameter) from an external source.
  SatakeTuple with_moduli(std::vector<double> moduli) const;

  int genus() const { return genus_; }
  std::size_t size() const { return angles_.size(); }
  const std::vector<double>& angles() const { return angles_; }
  const std::vector<double>& moduli() const { return moduli_; }
  double angle(std::size_t i) const { return angles_.at(i); }
  Complex param(std::size_t i) const { return std::polar(1.0, angles_.at(i)); }

  /// |a_0^2 a_1 ... a_g - 1|
  double constraint_residual() const;

  friend bool operator==(const SatakeTuple&, const SatakeTuple&) = default;

 private:
  SatakeTuple(int genus, std::vector<double> angles);

  int genus_ = 0;
  std::vector<double> angles_;
  std::vector<double> moduli_;  // empty unless ingested with magnitudes
};

/// Violated invariants as human-readable strings; empty means valid.
std::vector<std::string> validate(const SatakeTuple& t, double tol = kDefaultConstraintTol);

bool is_tempered(const SatakeTuple& t, double tol);

/// Normalized Hecke eigenvalue via the factored form a_0 * prod(1 + a_i).
double mu(const SatakeTuple& t, double tol_real = kDefaultRealTol);

/// Same value from the literal sum over all 2^g subset products.
double mu_expanded(const SatakeTuple& t, double tol_real = kDefaultRealTol);

/// One unramified Euler factor prod_j (1 - alpha_j p^{-s})^{-1}, stored by its
/// inverse roots alpha_j.
struct LocalFactor {
  FactorKind kind;
  int genus;
  std::vector<Complex> roots;

  std::size_t degree() const { return roots.size(); }
};

std::size_t factor_degree(FactorKind kind, int genus);

LocalFactor local_factor(const SatakeTuple& t, FactorKind kind);

/// Checks that every root has a conjugate partner in the multiset.
bool conjugation_closed(const std::vector<Complex>& roots, double tol);

}  // namespace satake
