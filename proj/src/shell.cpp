#include "satake/shell.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "satake/density.hpp"

namespace satake {

namespace fs = std::filesystem;
using nlohmann::json;

IngestError::IngestError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

DataFormat data_format_from_string(const std::string& name) {
  if (name == "csv") return DataFormat::CSV;
  if (name == "json") return DataFormat::JSON;
  throw std::invalid_argument("unknown data format '" + name + "' (expected csv or json)");
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(const std::string& text, std::size_t line, const std::string& column) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr != e || text.empty() || !std::isfinite(v)) {
    throw IngestError(IngestError::Kind::Parse, line,
                      "column '" + column + "': cannot parse '" + text + "' as a number");
  }
  return v;
}

std::uint64_t parse_prime_field(const std::string& text, std::size_t line) {
  std::uint64_t v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr != e || text.empty()) {
    throw IngestError(IngestError::Kind::Parse, line,
                      "column 'p': cannot parse '" + text + "' as a positive integer");
  }
  return v;
}

// Shared checks once a record's fields are known; primality is checked later
// against a table covering all records.
void check_record(const EigenvalueRecord& r, int genus) {
  if (r.angles.empty() && !r.mu) {
    throw IngestError(IngestError::Kind::Parse, r.line, "record has neither angles nor mu");
  }
  if (!r.angles.empty()) {
    const SatakeTuple t = SatakeTuple::from_angles(genus, r.angles);
    const double residual = t.constraint_residual();
    if (!(residual <= kIngestConstraintTol)) {
      std::ostringstream os;
      os << "p=" << r.p << ": central constraint violated (residual " << residual << ")";
      throw IngestError(IngestError::Kind::Domain, r.line, os.str());
    }
    if (!r.moduli.empty() && !is_tempered(t.with_moduli(r.moduli), kIngestModulusTol)) {
      throw IngestError(IngestError::Kind::Domain, r.line,
                        "p=" + std::to_string(r.p) + ": recorded moduli are not all 1 (not tempered)");
    }
    if (r.mu) {
      const double computed = mu(t, kIngestConstraintTol);
      if (std::abs(computed - *r.mu) > kIngestAmbiguityTol) {
        std::ostringstream os;
        os << "p=" << r.p << ": mu column " << *r.mu << " disagrees with angles (mu = " << computed
           << ")";
        throw IngestError(IngestError::Kind::Ambiguity, r.line, os.str());
      }
    }
  } else if (std::abs(*r.mu) > std::ldexp(1.0, genus) + kIngestAmbiguityTol) {
    std::ostringstream os;
    os << "p=" << r.p << ": |mu| = " << std::abs(*r.mu) << " exceeds 2^g";
    throw IngestError(IngestError::Kind::Domain, r.line, os.str());
  }
}

void check_primes(const std::vector<EigenvalueRecord>& records) {
  std::uint64_t top = 2;
  for (const auto& r : records) {
    if (r.p < 2) {
      throw IngestError(IngestError::Kind::Domain, r.line,
                        "p=" + std::to_string(r.p) + " is not prime");
    }
    top = std::max(top, r.p);
  }
  const PrimeTablePtr table = sieve(top);
  for (const auto& r : records) {
    if (!table->is_prime(r.p)) {
      throw IngestError(IngestError::Kind::Domain, r.line,
                        "p=" + std::to_string(r.p) + " is not prime");
    }
  }
}

}  // namespace

std::vector<EigenvalueRecord> ingest_csv(std::istream& in, int expected_genus) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split_csv(line);
      break;
    }
  }
  if (header.empty()) throw IngestError(IngestError::Kind::Parse, 0, "empty input: no header");
  if (header[0] != "p") {
    throw IngestError(IngestError::Kind::Parse, lineno, "first column must be 'p'");
  }

  // Column roles.
  std::map<int, std::size_t> theta_col;
  std::map<int, std::size_t> mod_col;
  std::optional<std::size_t> mu_col;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string& h = header[c];
    auto indexed = [&](const std::string& prefix) -> std::optional<int> {
      if (h.rfind(prefix, 0) != 0 || h.size() == prefix.size()) return std::nullopt;
      int idx = 0;
      auto [ptr, ec] = std::from_chars(h.data() + prefix.size(), h.data() + h.size(), idx);
      if (ec != std::errc{} || ptr != h.data() + h.size() || idx < 0) return std::nullopt;
      return idx;
    };
    if (h == "mu") {
      mu_col = c;
    } else if (auto i = indexed("theta")) {
      theta_col[*i] = c;
    } else if (auto i = indexed("mod")) {
      mod_col[*i] = c;
    } else {
      throw IngestError(IngestError::Kind::Parse, lineno, "unknown column '" + h + "'");
    }
  }
  for (int i = 0; i < static_cast<int>(theta_col.size()); ++i) {
    if (!theta_col.count(i)) {
      throw IngestError(IngestError::Kind::Parse, lineno,
                        "angle columns must be theta0..thetaG without gaps");
    }
  }
  if (theta_col.empty() && !mu_col) {
    throw IngestError(IngestError::Kind::Parse, lineno, "header needs theta columns or mu");
  }
  if (theta_col.size() == 1) {
    throw IngestError(IngestError::Kind::Parse, lineno, "need at least theta0 and theta1");
  }
  if (!mod_col.empty() && mod_col.size() != theta_col.size()) {
    throw IngestError(IngestError::Kind::Parse, lineno, "mod columns must match theta columns");
  }
  int genus = theta_col.empty() ? expected_genus : static_cast<int>(theta_col.size()) - 1;
  if (expected_genus != 0 && genus != expected_genus) {
    throw IngestError(IngestError::Kind::Parse, lineno,
                      "header declares genus " + std::to_string(genus) + ", expected " +
                          std::to_string(expected_genus));
  }
  if (genus < 1) {
    throw IngestError(IngestError::Kind::Parse, lineno, "genus unknown for a bare mu file");
  }

  std::vector<EigenvalueRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw IngestError(IngestError::Kind::Parse, lineno,
                        "expected " + std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    }
    EigenvalueRecord r;
    r.line = lineno;
    r.p = parse_prime_field(fields[0], lineno);
    for (const auto& [i, c] : theta_col) r.angles.push_back(parse_real(fields[c], lineno, header[c]));
    std::size_t blank_mods = 0;
    for (const auto& [i, c] : mod_col) blank_mods += trim(fields[c]).empty();
    if (blank_mods != 0 && blank_mods != mod_col.size()) {
      throw IngestError(IngestError::Kind::Parse, lineno, "mod cells must be all filled or all empty");
    }
    if (blank_mods == 0) {
      for (const auto& [i, c] : mod_col) r.moduli.push_back(parse_real(fields[c], lineno, header[c]));
    }
    if (mu_col && !trim(fields[*mu_col]).empty()) r.mu = parse_real(fields[*mu_col], lineno, "mu");
    check_record(r, genus);
    records.push_back(std::move(r));
  }
  check_primes(records);
  return records;
}

std::vector<EigenvalueRecord> ingest_json(std::istream& in, int expected_genus) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IngestError(IngestError::Kind::Parse, 0, std::string("malformed JSON: ") + e.what());
  }
  int genus = expected_genus;
  const json* list = &doc;
  if (doc.is_object()) {
    if (doc.contains("genus")) {
      if (!doc["genus"].is_number_integer()) {
        throw IngestError(IngestError::Kind::Parse, 0, "field 'genus' must be an integer");
      }
      const int declared = doc["genus"].get<int>();
      if (expected_genus != 0 && declared != expected_genus) {
        throw IngestError(IngestError::Kind::Parse, 0,
                          "document declares genus " + std::to_string(declared) + ", expected " +
                              std::to_string(expected_genus));
      }
      genus = declared;
    }
    if (!doc.contains("records")) {
      throw IngestError(IngestError::Kind::Parse, 0, "missing field 'records'");
    }
    list = &doc["records"];
  }
  if (!list->is_array()) throw IngestError(IngestError::Kind::Parse, 0, "records must be an array");

  std::vector<EigenvalueRecord> records;
  std::size_t index = 0;
  for (const json& item : *list) {
    ++index;
    auto fail = [&](const std::string& what) {
      throw IngestError(IngestError::Kind::Parse, index, "record " + std::to_string(index) + ": " + what);
    };
    if (!item.is_object()) fail("expected an object");
    if (!item.contains("p") || !item["p"].is_number_unsigned()) fail("field 'p' must be a positive integer");
    EigenvalueRecord r;
    r.line = index;
    r.p = item["p"].get<std::uint64_t>();
    auto read_array = [&](const char* key, std::vector<double>& out) {
      if (!item.contains(key)) return;
      if (!item[key].is_array()) fail(std::string("field '") + key + "' must be an array");
      for (const json& v : item[key]) {
        if (!v.is_number()) fail(std::string("field '") + key + "' must hold numbers");
        out.push_back(v.get<double>());
      }
    };
    read_array("theta", r.angles);
    read_array("mod", r.moduli);
    if (item.contains("mu")) {
      if (!item["mu"].is_number()) fail("field 'mu' must be a number");
      r.mu = item["mu"].get<double>();
    }
    if (!r.angles.empty()) {
      const int g = static_cast<int>(r.angles.size()) - 1;
      if (genus == 0) genus = g;
      if (g != genus) fail("expected " + std::to_string(genus + 1) + " angles");
    }
    if (!r.moduli.empty() && r.moduli.size() != r.angles.size()) fail("'mod' must match 'theta'");
    if (genus < 1) fail("genus unknown for a bare mu record");
    check_record(r, genus);
    records.push_back(std::move(r));
  }
  check_primes(records);
  return records;
}

std::vector<EigenvalueRecord> ingest(const fs::path& path, DataFormat format, int expected_genus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return format == DataFormat::CSV ? ingest_csv(in, expected_genus)
                                   : ingest_json(in, expected_genus);
}

SatakeAssignment assemble_assignment(const std::vector<EigenvalueRecord>& records, int genus) {
  if (records.empty()) throw IngestError(IngestError::Kind::Domain, 0, "no records");
  std::vector<const EigenvalueRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->p < b->p; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->p == sorted[i - 1]->p) {
      throw IngestError(IngestError::Kind::Domain, sorted[i]->line,
                        "duplicate record for p=" + std::to_string(sorted[i]->p));
    }
  }
  const PrimeTablePtr table = sieve(std::max<std::uint64_t>(2, sorted.back()->p));
  for (std::size_t i = 0; i < table->size(); ++i) {
    if (i >= sorted.size() || sorted[i]->p != (*table)[i]) {
      throw IngestError(IngestError::Kind::Domain, 0,
                        "missing record for prime p=" + std::to_string((*table)[i]));
    }
  }
  const bool have_angles =
      std::all_of(sorted.begin(), sorted.end(), [](auto* r) { return !r->angles.empty(); });
  if (have_angles) {
    std::vector<SatakeTuple> tuples;
    tuples.reserve(sorted.size());
    for (auto* r : sorted) {
      SatakeTuple t = SatakeTuple::from_angles(genus, r->angles);
      if (t.constraint_residual() > kDefaultConstraintTol) {
        // Ingest tolerates 1e-8; move a_0 onto the nearest exact square root
        // so the tuple meets the library tolerance.
        double rest = 0.0;
        for (std::size_t i = 1; i < r->angles.size(); ++i) rest += r->angles[i];
        std::vector<double> angles = r->angles;
        const double exact = -0.5 * rest;
        angles[0] = exact + std::round((angles[0] - exact) / std::numbers::pi) * std::numbers::pi;
        t = SatakeTuple::from_angles(genus, std::move(angles));
      }
      tuples.push_back(r->moduli.empty() ? t : t.with_moduli(r->moduli));
    }
    return SatakeAssignment(genus, table, std::move(tuples));
  }
  std::vector<double> mu_values;
  mu_values.reserve(sorted.size());
  for (auto* r : sorted) {
    mu_values.push_back(r->mu ? *r->mu : mu(SatakeTuple::from_angles(genus, r->angles),
                                              kIngestConstraintTol));
  }
  return SatakeAssignment::from_mu(genus, table, std::move(mu_values));
}

void emit_assignment_csv(const SatakeAssignment& a, std::ostream& out) {
  const PrimeTable& t = a.table();
  if (a.has_tuples()) {
    out << "p";
    for (int i = 0; i <= a.genus(); ++i) out << ",theta" << i;
    out << '\n';
    for (std::size_t k = 0; k < t.size(); ++k) {
      out << t[k];
      for (double th : a.tuple(k).angles()) out << ',' << format_double(th);
      out << '\n';
    }
  } else {
    out << "p,mu\n";
    for (std::size_t k = 0; k < t.size(); ++k) out << t[k] << ',' << format_double(a.mu_at(k)) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

namespace {

template <typename T>
T field(const json& j, const std::string& name, const T& fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("field '" + name + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known{"genus",  "prime_bound", "sampler",      "input",
                                              "c_values", "mode",      "s_grid",       "x_grid",
                                              "log_s_values", "seed",  "max_witnesses"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("field '" + key + "': unknown field");
    }
  }
  ExperimentConfig c;
  c.genus = field<int>(j, "genus", 1);
  if (c.genus < 1) throw ConfigError("field 'genus': must be at least 1");
  c.seed = field<std::uint64_t>(j, "seed", 0);
  c.max_witnesses = field<std::size_t>(j, "max_witnesses", 0);

  if (j.contains("sampler") == j.contains("input")) {
    throw ConfigError("field 'sampler'/'input': exactly one must be given");
  }
  if (j.contains("sampler")) {
    const json& s = j["sampler"];
    if (!s.is_object()) throw ConfigError("field 'sampler': must be an object");
    SamplerSpec spec;
    try {
      spec.kind = sampler_kind_from_string(field<std::string>(s, "kind", "uniform_torus"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("field 'sampler.kind': ") + e.what());
    }
    spec.genus = c.genus;
    spec.c = field<double>(s, "c", 0.0);
    const auto rule = field<std::string>(s, "angle_rule", "frac_sqrt");
    if (rule != "frac_sqrt") throw ConfigError("field 'sampler.angle_rule': unknown rule '" + rule + "'");
    if (spec.kind == SamplerKind::SatoTateG1 && c.genus != 1) {
      throw ConfigError("field 'sampler.kind': satotate_g1 requires genus 1");
    }
    if (spec.kind == SamplerKind::ExtremalConstant &&
        !(spec.c > 0.0 && spec.c <= std::ldexp(1.0, c.genus))) {
      throw ConfigError("field 'sampler.c': must lie in (0, 2^g]");
    }
    c.sampler = spec;
    c.prime_bound = field<std::uint64_t>(j, "prime_bound", 1000);
    if (c.prime_bound < 2) throw ConfigError("field 'prime_bound': must be at least 2");
  } else {
    const json& in = j["input"];
    if (!in.is_object() || !in.contains("path")) throw ConfigError("field 'input.path': required");
    c.input_path = field<std::string>(in, "path", "");
    try {
      c.input_format = data_format_from_string(field<std::string>(in, "format", "csv"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("field 'input.format': ") + e.what());
    }
    c.prime_bound = field<std::uint64_t>(j, "prime_bound", 0);
  }

  c.c_values = field<std::vector<double>>(j, "c_values", {});
  if (c.c_values.empty()) throw ConfigError("field 'c_values': must be non-empty");
  for (double v : c.c_values) {
    if (!(v > 0.0)) throw ConfigError("field 'c_values': values must be positive");
  }
  try {
    c.mode = exceed_mode_from_string(field<std::string>(j, "mode", "abs"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'mode': ") + e.what());
  }
  c.s_grid = field<std::vector<double>>(j, "s_grid", default_s_grid());
  if (c.s_grid.empty()) throw ConfigError("field 's_grid': must be non-empty");
  for (double s : c.s_grid) {
    if (!(s > 1.0)) throw ConfigError("field 's_grid': values must exceed 1");
  }
  std::sort(c.s_grid.begin(), c.s_grid.end(), std::greater<>());
  c.x_grid = field<std::vector<std::uint64_t>>(j, "x_grid", {});
  std::sort(c.x_grid.begin(), c.x_grid.end());
  if (!c.x_grid.empty() && c.prime_bound != 0 && c.x_grid.back() > c.prime_bound) {
    throw ConfigError("field 'x_grid': values must not exceed prime_bound");
  }
  if (!c.x_grid.empty() && c.x_grid.front() < 2) {
    throw ConfigError("field 'x_grid': values must be at least 2");
  }
  c.log_s_values = field<std::vector<double>>(j, "log_s_values", {1.01, 1.1, 2.0});
  for (double s : c.log_s_values) {
    if (!(s > 1.0)) throw ConfigError("field 'log_s_values': values must exceed 1");
  }
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["genus"] = c.genus;
  j["prime_bound"] = c.prime_bound;
  if (c.sampler) {
    j["sampler"] = {{"kind", to_string(c.sampler->kind)},
                    {"c", c.sampler->c},
                    {"angle_rule", "frac_sqrt"}};
  } else {
    j["input"] = {{"path", c.input_path->generic_string()},
                  {"format", c.input_format == DataFormat::CSV ? "csv" : "json"}};
  }
  j["c_values"] = c.c_values;
  j["mode"] = to_string(c.mode);
  j["s_grid"] = c.s_grid;
  j["x_grid"] = c.x_grid;
  j["log_s_values"] = c.log_s_values;
  j["seed"] = c.seed;
  j["max_witnesses"] = c.max_witnesses;
  return j;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

json bound_report_to_json(const BoundReport& r) {
  const DensityEstimate& e = r.estimate;
  json estimates = {
      {"s_grid", e.s_grid},
      {"dirichlet_ratios", e.dirichlet_ratios},
      {"x_grid", e.x_grid},
      {"natural_ratios", e.natural_ratios},
      {"upper_dirichlet", e.upper_dirichlet()},
      {"lower_dirichlet", e.lower_dirichlet()},
      {"upper_natural", e.upper_natural()},
      {"lower_natural", e.lower_natural()},
      {"truncation", {{"prime_bound", e.truncation_bound}, {"s_min", e.s_min}}},
  };
  json diagnostics = {
      {"exceptional_count", r.exceptional_count},
      {"extrapolated", r.extrapolated},
      {"lemma_constants", {{"C", r.lemma_C}, {"D", r.lemma_D}, {"E", r.lemma_E}}},
      {"nontrivial_range", {r.nontrivial_range.first, r.nontrivial_range.second}},
  };
  if (r.divergence) {
    diagnostics["divergence"] = {{"series", r.divergence->series},
                                 {"s_grid", r.divergence->s_grid},
                                 {"values", r.divergence->values},
                                 {"growth", r.divergence->growth},
                                 {"monotone_increasing", r.divergence->monotone_increasing}};
  } else {
    diagnostics["divergence"] = nullptr;
  }
  if (!r.witnesses.empty()) {
    json w = json::array();
    for (const auto& [p, m] : r.witnesses) w.push_back({{"p", p}, {"mu", m}});
    diagnostics["witnesses"] = w;
  }
  return {{"c", r.c},
          {"mode", to_string(r.mode)},
          {"bound", r.bound},
          {"estimates", estimates},
          {"margin", r.margin},
          {"diagnostics", diagnostics}};
}

json log_decomposition_to_json(FactorKind kind, double s, const LogLDecomposition& d) {
  return {{"kind", to_string(kind)},
          {"s", s},
          {"log_L", d.log_L},
          {"first_order", d.first_order},
          {"remainder", d.remainder},
          {"remainder_cap", d.remainder_cap},
          {"within_cap", std::abs(d.remainder) <= d.remainder_cap}};
}

void emit_report(const json& report, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

std::ofstream open_out(const fs::path& path, std::vector<fs::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  written.push_back(path);
  return out;
}

}  // namespace

void emit_csv(const SatakeAssignment& a, const std::vector<BoundReport>& reports,
              const fs::path& out_dir, std::vector<fs::path>& written) {
  const PrimeTable& t = a.table();
  std::vector<PrimeSubset> sets;
  for (const auto& r : reports) sets.push_back(exceptional_set(a, r.c, r.mode));

  {
    auto out = open_out(out_dir / "assignment.csv", written);
    emit_assignment_csv(a, out);
  }
  {
    auto out = open_out(out_dir / "members.csv", written);
    out << "p,mu";
    for (std::size_t k = 0; k < reports.size(); ++k) out << ",in_c" << k;
    out << '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
      out << t[i] << ',' << format_double(a.mu_at(i));
      for (const auto& s : sets) out << ',' << (s.contains_index(i) ? 1 : 0);
      out << '\n';
    }
  }
  for (std::size_t k = 0; k < reports.size(); ++k) {
    auto out = open_out(out_dir / ("exceptional_c" + std::to_string(k) + ".csv"), written);
    out << "p,mu\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (sets[k].contains_index(i)) out << t[i] << ',' << format_double(a.mu_at(i)) << '\n';
    }
  }
  if (!reports.empty()) {
    auto out = open_out(out_dir / "dirichlet.csv", written);
    out << "s";
    for (std::size_t k = 0; k < reports.size(); ++k) out << ",ratio_c" << k;
    out << '\n';
    const auto& grid = reports.front().estimate.s_grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << format_double(grid[i]);
      for (const auto& r : reports) out << ',' << format_double(r.estimate.dirichlet_ratios[i]);
      out << '\n';
    }
  }
  if (!reports.empty()) {
    auto out = open_out(out_dir / "natural.csv", written);
    out << "x";
    for (std::size_t k = 0; k < reports.size(); ++k) out << ",ratio_c" << k;
    out << '\n';
    const auto& grid = reports.front().estimate.x_grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << grid[i];
      for (const auto& r : reports) out << ',' << format_double(r.estimate.natural_ratios[i]);
      out << '\n';
    }
  }
}

Experiment evaluate_experiment(const ExperimentConfig& config) {
  ExperimentConfig resolved = config;
  std::optional<SatakeAssignment> assignment;
  if (config.sampler) {
    SamplerSpec spec = *config.sampler;
    spec.seed = config.seed;
    spec.genus = config.genus;
    assignment = build_assignment(spec, sieve(config.prime_bound));
  } else {
    const auto records = ingest(*config.input_path, config.input_format, config.genus);
    assignment = assemble_assignment(records, config.genus);
    resolved.prime_bound = assignment->table().bound();
  }
  const SatakeAssignment& a = *assignment;
  if (resolved.x_grid.empty()) resolved.x_grid = default_x_grid(resolved.prime_bound);
  if (resolved.x_grid.back() > resolved.prime_bound) {
    throw ConfigError("field 'x_grid': values must not exceed the prime bound " +
                      std::to_string(resolved.prime_bound));
  }

  std::vector<BoundReport> reports;
  json bounds = json::array();
  for (double c : resolved.c_values) {
    reports.push_back(verify_theorem(a, c, resolved.mode, resolved.s_grid, resolved.x_grid,
                                     resolved.max_witnesses));
    bounds.push_back(bound_report_to_json(reports.back()));
  }

  json logs = json::array();
  if (a.has_tuples()) {
    for (FactorKind kind : {FactorKind::Std, FactorKind::Spin}) {
      for (double s : resolved.log_s_values) {
        logs.push_back(log_decomposition_to_json(kind, s, log_L_decomposition(a, kind, s)));
      }
    }
  }

  json report = {{"config", config_to_json(resolved)},
                 {"bounds", bounds},
                 {"log_decomposition", logs},
                 {"versions", {{"tool", kToolVersion}, {"report_format", kReportFormatVersion}}}};
  return {std::move(*assignment), std::move(reports), std::move(report)};
}

ExperimentOutputs run_experiment(const ExperimentConfig& config, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  Experiment exp = evaluate_experiment(config);

  ExperimentOutputs result;
  result.report = exp.report;
  emit_csv(exp.assignment, exp.reports, out_dir, result.files);
  {
    auto out = open_out(out_dir / "log_decomposition.csv", result.files);
    out << "kind,s,log_L,first_order,remainder,remainder_cap\n";
    for (const json& row : exp.report["log_decomposition"]) {
      out << row["kind"].get<std::string>() << ',' << format_double(row["s"].get<double>()) << ','
          << format_double(row["log_L"].get<double>()) << ','
          << format_double(row["first_order"].get<double>()) << ','
          << format_double(row["remainder"].get<double>()) << ','
          << format_double(row["remainder_cap"].get<double>()) << '\n';
    }
  }
  emit_report(result.report, out_dir / "report.json");
  result.files.push_back(out_dir / "report.json");
  return result;
}

}  // namespace satake
