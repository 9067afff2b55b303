#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hypcomp/hardy.hpp"
#include "hypcomp/moebius.hpp"

namespace hypcomp {

inline constexpr int kConfigSchemaVersion = 1;

struct AutomorphismSpec {
  double mu = 2.0;
  /// Both set, or neither (canonical map with fixed points 1 and -1).
  std::optional<Complex> attractive;
  std::optional<Complex> repulsive;

  HyperbolicAutomorphism build() const;
};

struct Budgets {
  std::size_t n = 4096;           // Taylor budget
  std::size_t oversample = 8;     // DFT grid factor
  std::size_t taylor_budget = 1024;  // orbit cross-check budget
  int window = 60;                // orbit window M (any integer >= 1)
  int steps_per_period = 8;
};

struct NormIdentitySpec {
  int trials = 200;
  int degree = 64;
  std::vector<double> mus{1.5, 2.0, 4.0};
};

struct PoissonSpec {
  int rho_nodes = 1024;
  int theta_nodes = 1024;
  int sum_theta_nodes = 512;
  int sum_terms = 200;
  double min_theta = 1e-3;
  std::vector<double> mus{1.5, 2.0, 4.0, 10.0};
};

struct ScanSpec {
  /// two-sided | one-sided | holder | reversed
  std::string mode = "two-sided";
  double inner = 0.9;
  double outer = 1.1;
  int radial = 16;
  int angular = 16;
  double p = 4.0;         // holder mode exponent
  int holder_count = 3;   // holder mode cases
};

struct CircleSpec {
  int omega_samples = 64;
  std::vector<int> truncations{10, 20, 40};
};

struct SpectrumSpec {
  std::vector<double> mus{1.5, 2.0, 4.0, 10.0};
  std::vector<std::size_t> dims{64, 128, 256, 512, 1024};
  int residual_grid = 32;
  double margin = 0.05;  // relative distance kept from the annulus boundary
};

struct Tolerances {
  double norm_identity = 1e-8;
  double residual = 1e-4;
  double tail = 1e-6;
  double identity = 1e-7;
  double hypercyclic = 1e-3;
  double cauchy = 1e-3;
  double spectrum_residual = 1e-5;
  double gram = 0.01;
  double norm_bound = 1e-9;
  double multiplier = 1e-10;
  double pass_fraction = 0.99;
  int max_exceptional = 3;
};

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  AutomorphismSpec automorphism;
  double gamma = 0.75;
  double delta = 0.75;
  Budgets budgets;
  NormIdentitySpec norm_identity;
  PoissonSpec poisson;
  ScanSpec scan;
  CircleSpec circle;
  SpectrumSpec spectrum;
  Tolerances tolerances;
  std::string out_dir = "reports";
  std::uint64_t seed = 20240601;

  /// Weight exponents attached to the automorphism's fixed points.
  WeightSpec weight() const;
  /// Throws Error(Config) on any violated constraint.
  void validate() const;
};

const std::vector<std::string>& subcommands();

/// Defaults tuned per subcommand; overrides from JSON go on top.
ExperimentConfig default_config(const std::string& subcommand);

/// Applies a JSON document to the defaults. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text, ExperimentConfig base);
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base);

/// Canonical JSON rendering, used by --dry-run.
std::string to_json(const ExperimentConfig& c);

}  // namespace hypcomp
