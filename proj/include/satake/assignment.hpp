#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "satake/core.hpp"
#include "satake/density.hpp"

namespace satake {

/// Raised when a computation needs Satake angles but the assignment only
/// carries bare mu values.
class MissingAnglesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One Satake tuple per table prime (a "virtual form"). Assignments built
/// from bare mu records have no tuples; only mu-side quantities are
/// available for them.
class SatakeAssignment {
 public:
  SatakeAssignment(int genus, PrimeTablePtr table, std::vector<SatakeTuple> tuples);
  static SatakeAssignment from_mu(int genus, PrimeTablePtr table, std::vector<double> mu_values);

  int genus() const { return genus_; }
  const PrimeTable& table() const { return *table_; }
  const PrimeTablePtr& table_ptr() const { return table_; }
  std::size_t size() const { return mu_.size(); }

  bool has_tuples() const { return !tuples_.empty(); }
  /// Throws MissingAnglesError for bare-mu assignments.
  const std::vector<SatakeTuple>& tuples() const;
  const SatakeTuple& tuple(std::size_t i) const { return tuples().at(i); }
  const std::vector<double>& mu_values() const { return mu_; }
  double mu_at(std::size_t i) const { return mu_.at(i); }

 private:
  SatakeAssignment(int genus, PrimeTablePtr table);

  int genus_;
  PrimeTablePtr table_;
  std::vector<SatakeTuple> tuples_;
  std::vector<double> mu_;
};

}  // namespace satake
