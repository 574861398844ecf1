#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "satake/assignment.hpp"
#include "satake/sim.hpp"
#include "satake/verify.hpp"

namespace satake {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportFormatVersion = "1";
inline constexpr double kIngestConstraintTol = 1e-8;
inline constexpr double kIngestAmbiguityTol = 1e-6;
inline constexpr double kIngestModulusTol = 1e-6;

/// Bad configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IngestError : public std::runtime_error {
 public:
  enum class Kind { Parse, Domain, Ambiguity };
  IngestError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  /// 1-based line (CSV) or record index (JSON); 0 when not tied to a row.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

enum class DataFormat { CSV, JSON };

struct EigenvalueRecord {
  std::uint64_t p = 0;
  std::vector<double> angles;   // g+1 entries, or empty
  std::vector<double> moduli;   // optional recorded magnitudes
  std::optional<double> mu;     // bare or cross-check value
  std::size_t line = 0;
};

/// Parses and validates records. expected_genus = 0 accepts whatever the
/// data declares.
std::vector<EigenvalueRecord> ingest(const std::filesystem::path& path, DataFormat format,
                                     int expected_genus = 0);
std::vector<EigenvalueRecord> ingest_csv(std::istream& in, int expected_genus = 0);
std::vector<EigenvalueRecord> ingest_json(std::istream& in, int expected_genus = 0);

/// Builds an assignment over all primes up to the largest ingested prime.
/// Every such prime must be present exactly once. If any record lacks angles
/// the result is a bare-mu assignment.
SatakeAssignment assemble_assignment(const std::vector<EigenvalueRecord>& records, int genus);

DataFormat data_format_from_string(const std::string& name);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Header p,theta0,...,thetaG (or p,mu for bare assignments).
void emit_assignment_csv(const SatakeAssignment& a, std::ostream& out);

struct ExperimentConfig {
  int genus = 1;
  std::uint64_t prime_bound = 1000;
  std::optional<SamplerSpec> sampler;
  std::optional<std::filesystem::path> input_path;
  DataFormat input_format = DataFormat::CSV;
  std::vector<double> c_values;
  ExceedMode mode = ExceedMode::Abs;
  std::vector<double> s_grid;
  std::vector<std::uint64_t> x_grid;
  std::vector<double> log_s_values;
  std::uint64_t seed = 0;
  std::size_t max_witnesses = 0;
};

/// Reads a config document; missing optional fields take their defaults.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Fully resolved config, defaults included.
nlohmann::json config_to_json(const ExperimentConfig& config);

struct ExperimentOutputs {
  nlohmann::json report;
  std::vector<std::filesystem::path> files;
};

nlohmann::json bound_report_to_json(const BoundReport& r);
nlohmann::json log_decomposition_to_json(FactorKind kind, double s, const LogLDecomposition& d);

struct Experiment {
  SatakeAssignment assignment;
  std::vector<BoundReport> reports;
  nlohmann::json report;
};

/// Builds or ingests the assignment and computes every report, without I/O
/// beyond reading the input data.
Experiment evaluate_experiment(const ExperimentConfig& config);

/// Runs the configured experiment and writes report.json plus the CSV series
/// into out_dir. Negative margins are findings, never failures.
ExperimentOutputs run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir);

/// Writes the per-c CSV files for a set of reports.
void emit_csv(const SatakeAssignment& a, const std::vector<BoundReport>& reports,
              const std::filesystem::path& out_dir, std::vector<std::filesystem::path>& written);

void emit_report(const nlohmann::json& report, const std::filesystem::path& path);

}  // namespace satake
