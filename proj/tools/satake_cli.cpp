// Command-line front end: one subcommand per library surface.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "satake/core.hpp"
#include "satake/density.hpp"
#include "satake/parallel.hpp"
#include "satake/series.hpp"
#include "satake/shell.hpp"
#include "satake/sim.hpp"
#include "satake/verify.hpp"

using nlohmann::json;

namespace {

satake::FactorKind parse_kind(const std::string& k) {
  if (k == "spin") return satake::FactorKind::Spin;
  if (k == "std") return satake::FactorKind::Std;
  throw CLI::ValidationError("--kind", "expected spin or std, got '" + k + "'");
}

int cmd_sieve(std::uint64_t bound, bool list) {
  const auto table = satake::sieve(bound);
  std::cout << "bound " << table->bound() << " count " << table->size() << '\n';
  if (list) {
    for (auto p : table->primes()) std::cout << p << '\n';
  }
  return 0;
}

int cmd_sample(const satake::SamplerSpec& spec, std::uint64_t bound, const std::string& out) {
  const auto a = satake::build_assignment(spec, satake::sieve(bound));
  if (out.empty() || out == "-") {
    satake::emit_assignment_csv(a, std::cout);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out);
    satake::emit_assignment_csv(a, f);
  }
  return 0;
}

int cmd_ingest(const std::string& path, const std::string& format, int genus) {
  const auto records = satake::ingest(path, satake::data_format_from_string(format), genus);
  const int g = genus ? genus
                      : (records.empty() || records.front().angles.empty()
                             ? 0
                             : static_cast<int>(records.front().angles.size()) - 1);
  const auto a = satake::assemble_assignment(records, g);
  json summary = {{"records", records.size()},
                  {"genus", a.genus()},
                  {"prime_bound", a.table().bound()},
                  {"has_angles", a.has_tuples()}};
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int cmd_expand(int genus, const std::vector<double>& free_angles, const std::string& branch,
               const std::string& kind, int r_max) {
  const auto t = satake::SatakeTuple::from_free_angles(
      genus, free_angles, branch == "minus" ? satake::Branch::Minus : satake::Branch::Plus);
  const auto series = satake::expand(satake::local_factor(t, parse_kind(kind)), r_max);
  json out = {{"kind", kind},
              {"genus", genus},
              {"angles", t.angles()},
              {"mu", satake::mu(t)},
              {"coefficients", series.coeffs}};
  json bounds = json::array();
  for (int r = 0; r <= r_max; ++r) bounds.push_back(satake::coeff_bound(parse_kind(kind), genus, r));
  out["bounds"] = bounds;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_check_lemmas(std::size_t samples, std::uint64_t seed, int max_genus) {
  std::size_t violations = 0;
  json per_genus = json::array();
  for (int g = 1; g <= max_genus; ++g) {
    double worst_mu = 0.0, worst_ineq = 0.0, worst_series = 0.0, worst_first = 0.0;
    bool bounds_ok = true;
    std::size_t applicable = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      satake::CounterRng rng(seed + static_cast<std::uint64_t>(g), i);
      const auto t = satake::sample_uniform(g, rng);
      const double m = satake::mu(t);
      worst_mu = std::max(worst_mu, std::abs(m - satake::mu_expanded(t)));
      const double c = std::abs(m) * rng.next_unit();
      if (c > 0.0) {
        const auto chk = satake::lemma_ineq_check(t, c);
        if (chk.applicable) {
          ++applicable;
          worst_ineq = std::max(worst_ineq, chk.rhs - chk.lhs);
        }
      }
      for (auto kind : {satake::FactorKind::Spin, satake::FactorKind::Std}) {
        const auto f = satake::local_factor(t, kind);
        const auto a = satake::expand(f, 20);
        const auto b = satake::expand_oracle(f, 20);
        for (int r = 0; r <= 20; ++r) {
          worst_series = std::max(worst_series, std::abs(a[r] - b[r]));
          const double v = kind == satake::FactorKind::Spin ? a[r] : a[r] - (r ? a[r - 1] : 0.0);
          if (std::abs(v) > static_cast<double>(satake::coeff_bound(kind, g, r)) + 1e-9) {
            bounds_ok = false;
          }
        }
      }
      const auto first = satake::first_coefficient_identities(t);
      double rho = 1.0;
      for (std::size_t k = 1; k < t.size(); ++k) rho += 2.0 * std::cos(t.angle(k));
      worst_first = std::max({worst_first, std::abs(first.m1 - m), std::abs(first.rho1 - rho)});
    }
    const bool ok = worst_mu <= 1e-10 && worst_ineq <= 1e-9 && worst_series <= 1e-9 &&
                    worst_first <= 1e-10 && bounds_ok;
    violations += ok ? 0 : 1;
    per_genus.push_back({{"genus", g},
                         {"samples", samples},
                         {"mu_product_vs_sum", worst_mu},
                         {"lemma_ineq_applicable", applicable},
                         {"lemma_ineq_worst_deficit", worst_ineq},
                         {"series_vs_oracle", worst_series},
                         {"coefficient_bounds_hold", bounds_ok},
                         {"first_coefficient_identities", worst_first},
                         {"ok", ok}});
  }
  std::cout << json{{"results", per_genus}}.dump(2) << '\n';
  return violations == 0 ? 0 : 1;
}

int cmd_density(const std::string& path, const std::string& format, int genus, double c,
                const std::string& mode) {
  const auto records = satake::ingest(path, satake::data_format_from_string(format), genus);
  const auto a = satake::assemble_assignment(records, genus);
  const auto set = satake::exceptional_set(a, c, satake::exceed_mode_from_string(mode));
  const auto est = satake::density_profile(set, satake::default_s_grid(),
                                           satake::default_x_grid(a.table().bound()));
  json out = {{"c", c},
              {"mode", mode},
              {"count", set.count()},
              {"s_grid", est.s_grid},
              {"dirichlet_ratios", est.dirichlet_ratios},
              {"x_grid", est.x_grid},
              {"natural_ratios", est.natural_ratios}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

satake::ExperimentConfig load(const std::string& path, const std::optional<std::uint64_t>& seed) {
  auto cfg = satake::load_config(path);
  if (seed) cfg.seed = *seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satake-parameter local factors and prime-density experiments"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads (affects speed only)")
      ->check(CLI::PositiveNumber);
  app.set_version_flag("--version", satake::kToolVersion);

  std::uint64_t bound = 1000;
  bool list = false;
  auto* sieve_cmd = app.add_subcommand("sieve", "List primes up to a bound");
  sieve_cmd->add_option("--bound,-X", bound, "Upper bound")->required();
  sieve_cmd->add_flag("--list", list, "Print every prime");

  satake::SamplerSpec spec;
  std::string sampler_kind = "uniform_torus";
  std::string out_path;
  auto* sample_cmd = app.add_subcommand("sample", "Generate a synthetic assignment as CSV");
  sample_cmd->add_option("--genus,-g", spec.genus, "Genus")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--bound,-X", bound, "Prime bound")->required();
  sample_cmd->add_option("--kind", sampler_kind,
                         "uniform_torus | satotate_g1 | extremal_constant | angle_family");
  sample_cmd->add_option("--c", spec.c, "Threshold for extremal_constant");
  sample_cmd->add_option("--seed", spec.seed, "Seed");
  sample_cmd->add_option("--output,-o", out_path, "Output CSV (default stdout)");

  std::string input;
  std::string format = "csv";
  int genus = 0;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate an eigenvalue data file");
  ingest_cmd->add_option("--input,-i", input, "Data file")->required();
  ingest_cmd->add_option("--format", format, "csv | json");
  ingest_cmd->add_option("--genus,-g", genus, "Expected genus (0 = from file)");

  int expand_genus = 1;
  std::vector<double> free_angles;
  std::string branch = "plus";
  std::string kind = "spin";
  int r_max = 10;
  auto* expand_cmd = app.add_subcommand("expand", "Dirichlet coefficients of one local factor");
  expand_cmd->add_option("--genus,-g", expand_genus, "Genus")->check(CLI::PositiveNumber);
  expand_cmd->add_option("--angles", free_angles, "Free angles theta_1..theta_g")
      ->delimiter(',')
      ->required();
  expand_cmd->add_option("--branch", branch, "plus | minus");
  expand_cmd->add_option("--kind", kind, "spin | std");
  expand_cmd->add_option("--rmax", r_max, "Depth")->check(CLI::PositiveNumber);

  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  int max_genus = 4;
  auto* lemmas_cmd = app.add_subcommand("check-lemmas", "Randomized checks of the local identities");
  lemmas_cmd->add_option("--samples", samples, "Tuples per genus");
  lemmas_cmd->add_option("--seed", seed, "Seed");
  lemmas_cmd->add_option("--max-genus", max_genus, "Largest genus")->check(CLI::Range(1, 8));

  double c = 1.0;
  std::string mode = "abs";
  auto* density_cmd = app.add_subcommand("density", "Density profile of an exceptional set");
  density_cmd->add_option("--input,-i", input, "Data file")->required();
  density_cmd->add_option("--format", format, "csv | json");
  density_cmd->add_option("--genus,-g", genus, "Genus")->required();
  density_cmd->add_option("--c", c, "Threshold")->required();
  density_cmd->add_option("--mode", mode, "abs | signed");

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  auto* verify_cmd = app.add_subcommand("verify", "Print bound reports for a config");
  verify_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
  verify_cmd->add_option("--seed", seed_override, "Override the config seed");

  std::string out_dir = "out";
  auto* report_cmd = app.add_subcommand("report", "Run an experiment and write report files");
  report_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
  report_cmd->add_option("--out", out_dir, "Output directory");
  report_cmd->add_option("--seed", seed_override, "Override the config seed");

  CLI11_PARSE(app, argc, argv);
  satake::set_thread_count(threads);

  try {
    if (*sieve_cmd) return cmd_sieve(bound, list);
    if (*sample_cmd) {
      spec.kind = satake::sampler_kind_from_string(sampler_kind);
      return cmd_sample(spec, bound, out_path);
    }
    if (*ingest_cmd) return cmd_ingest(input, format, genus);
    if (*expand_cmd) return cmd_expand(expand_genus, free_angles, branch, kind, r_max);
    if (*lemmas_cmd) return cmd_check_lemmas(samples, seed, max_genus);
    if (*density_cmd) return cmd_density(input, format, genus, c, mode);
    if (*verify_cmd) {
      const auto cfg = load(config_path, seed_override);
      const auto exp = satake::evaluate_experiment(cfg);
      std::cout << exp.report["bounds"].dump(2) << '\n';
      return 0;
    }
    if (*report_cmd) {
      const auto cfg = load(config_path, seed_override);
      const auto result = satake::run_experiment(cfg, out_dir);
      for (const auto& f : result.files) std::cout << f.generic_string() << '\n';
      return 0;
    }
  } catch (const satake::IngestError& e) {
    std::cerr << "ingest error: " << e.what() << '\n';
    return 2;
  } catch (const satake::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
