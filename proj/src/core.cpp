#include "satake/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace satake {

const char* to_string(FactorKind kind) {
  return kind == FactorKind::Spin ? "spin" : "std";
}

SatakeTuple::SatakeTuple(int genus, std::vector<double> angles)
    : genus_(genus), angles_(std::move(angles)) {}

SatakeTuple SatakeTuple::from_angles(int genus, std::vector<double> angles) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (angles.size() != static_cast<std::size_t>(genus) + 1) {
    throw std::invalid_argument("expected " + std::to_string(genus + 1) + " angles, got " +
                                std::to_string(angles.size()));
  }
  return SatakeTuple(genus, std::move(angles));
}

SatakeTuple SatakeTuple::from_free_angles(int genus, const std::vector<double>& free_angles,
                                          Branch branch) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (free_angles.size() != static_cast<std::size_t>(genus)) {
    throw std::invalid_argument("expected " + std::to_string(genus) + " free angles, got " +
                                std::to_string(free_angles.size()));
  }
  double total = 0.0;
  for (double a : free_angles) total += a;
  // a_0 = exp(-i*total/2), the other square root differs by pi.
  double a0 = -0.5 * total;
  if (branch == Branch::Minus) a0 += std::numbers::pi;
  std::vector<double> angles;
  angles.reserve(free_angles.size() + 1);
  angles.push_back(a0);
  angles.insert(angles.end(), free_angles.begin(), free_angles.end());
  return SatakeTuple(genus, std::move(angles));
}

SatakeTuple SatakeTuple::with_moduli(std::vector<double> moduli) const {
  if (moduli.size() != angles_.size()) {
    throw std::invalid_argument("moduli length does not match parameter count");
  }
  SatakeTuple out = *this;
  out.moduli_ = std::move(moduli);
  return out;
}

double SatakeTuple::constraint_residual() const {
  double phase = 2.0 * angles_[0];
  for (std::size_t i = 1; i < angles_.size(); ++i) phase += angles_[i];
  return std::abs(std::polar(1.0, phase) - 1.0);
}

std::vector<std::string> validate(const SatakeTuple& t, double tol) {
  std::vector<std::string> report;
  if (t.genus() < 1) report.emplace_back("genus must be at least 1");
  if (t.size() != static_cast<std::size_t>(t.genus()) + 1) {
    report.emplace_back("parameter count does not equal genus + 1");
    return report;
  }
  for (double a : t.angles()) {
    if (!std::isfinite(a)) {
      report.emplace_back("non-finite angle");
      return report;
    }
  }
  const double r = t.constraint_residual();
  if (!(r <= tol)) {
    std::ostringstream os;
    os << "central constraint violated: |a0^2 a1...ag - 1| = " << r << " > " << tol;
    report.push_back(os.str());
  }
  return report;
}

bool is_tempered(const SatakeTuple& t, double tol) {
  for (double m : t.moduli()) {
    if (!(std::abs(m - 1.0) <= tol)) return false;
  }
  return true;
}

namespace {

double checked_real(Complex z, double tol_real) {
  if (!(std::abs(z.imag()) <= tol_real)) {
    std::ostringstream os;
    os << "expected a real value, imaginary part " << z.imag();
    throw NonRealError(os.str());
  }
  return z.real();
}

// All 2^g subset products a_0 * a_{i_1} ... a_{i_k}, accumulated in angle space.
std::vector<Complex> spin_roots(const SatakeTuple& t) {
  const std::size_t g = static_cast<std::size_t>(t.genus());
  std::vector<Complex> roots;
  roots.reserve(std::size_t{1} << g);
  for (std::size_t mask = 0; mask < (std::size_t{1} << g); ++mask) {
    double phase = t.angle(0);
    for (std::size_t i = 0; i < g; ++i) {
      if (mask & (std::size_t{1} << i)) phase += t.angle(i + 1);
    }
    roots.push_back(std::polar(1.0, phase));
  }
  return roots;
}

}  // namespace

double mu(const SatakeTuple& t, double tol_real) {
  Complex z = t.param(0);
  for (std::size_t i = 1; i < t.size(); ++i) z *= 1.0 + t.param(i);
  return checked_real(z, tol_real);
}

double mu_expanded(const SatakeTuple& t, double tol_real) {
  Complex z{0.0, 0.0};
  for (const Complex& r : spin_roots(t)) z += r;
  return checked_real(z, tol_real);
}

std::size_t factor_degree(FactorKind kind, int genus) {
  return kind == FactorKind::Spin ? std::size_t{1} << genus
                                  : 2 * static_cast<std::size_t>(genus) + 1;
}

LocalFactor local_factor(const SatakeTuple& t, FactorKind kind) {
  LocalFactor f{kind, t.genus(), {}};
  if (kind == FactorKind::Spin) {
    f.roots = spin_roots(t);
  } else {
    f.roots.reserve(factor_degree(kind, t.genus()));
    f.roots.emplace_back(1.0, 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
      f.roots.push_back(std::polar(1.0, t.angle(i)));
      f.roots.push_back(std::polar(1.0, -t.angle(i)));
    }
  }
  return f;
}

bool conjugation_closed(const std::vector<Complex>& roots, double tol) {
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    const Complex target = std::conj(roots[i]);
    bool matched = false;
    // Self-conjugate roots pair with themselves.
    if (std::abs(roots[i] - target) <= tol) {
      used[i] = true;
      continue;
    }
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - target) <= tol) {
        used[i] = used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace satake
