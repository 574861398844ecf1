#include "satake/assignment.hpp"

#include <string>

namespace satake {

SatakeAssignment::SatakeAssignment(int genus, PrimeTablePtr table)
    : genus_(genus), table_(std::move(table)) {
  if (genus_ < 1) throw std::invalid_argument("genus must be at least 1");
  if (!table_) throw std::invalid_argument("assignment needs a prime table");
}

SatakeAssignment::SatakeAssignment(int genus, PrimeTablePtr table, std::vector<SatakeTuple> tuples)
    : SatakeAssignment(genus, std::move(table)) {
  if (tuples.size() != table_->size()) {
    throw std::invalid_argument("expected one tuple per table prime");
  }
  mu_.reserve(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (tuples[i].genus() != genus_) {
      throw std::invalid_argument("tuple at p=" + std::to_string((*table_)[i]) +
                                  " has the wrong genus");
    }
    const auto issues = validate(tuples[i]);
    if (!issues.empty()) {
      throw std::invalid_argument("tuple at p=" + std::to_string((*table_)[i]) + ": " +
                                  issues.front());
    }
    mu_.push_back(mu(tuples[i]));
  }
  tuples_ = std::move(tuples);
}

SatakeAssignment SatakeAssignment::from_mu(int genus, PrimeTablePtr table,
                                           std::vector<double> mu_values) {
  SatakeAssignment a(genus, std::move(table));
  if (mu_values.size() != a.table_->size()) {
    throw std::invalid_argument("expected one mu value per table prime");
  }
  a.mu_ = std::move(mu_values);
  return a;
}

const std::vector<SatakeTuple>& SatakeAssignment::tuples() const {
  if (tuples_.empty()) {
    throw MissingAnglesError(
        "assignment carries only mu values; Satake angles are required for this operation");
  }
  return tuples_;
}

}  // namespace satake
