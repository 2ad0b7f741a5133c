#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "certirate/harness.hpp"
#include "certirate/mappings.hpp"
#include "certirate/schemes.hpp"

namespace certirate {

inline constexpr const char* kConfigSchema = "certirate/v1";

/// Command-line values that take precedence over the config file.
struct ExperimentOverrides {
  std::optional<Index> n_max;
  std::optional<std::vector<double>> eps_grid;
  std::optional<std::uint64_t> seed;
};

struct Experiment {
  std::string name;
  SchemeInstance scheme;
  std::vector<double> eps_grid;
  Index n_max;
  std::uint64_t seed;
  /// True when the certificate depends on the computed residuals.
  bool needs_trajectory;
  /// Builds the certificate; receives the residuals (empty unless needed).
  std::function<ConvergenceRate(const std::vector<double>&)> certify;
};

/// Builds an experiment from a parsed config. Throws ConfigError with the
/// JSON path of the offending entry; constructor failures propagate with
/// their own error types.
Experiment load_experiment(const nlohmann::json& config, const ExperimentOverrides& overrides = {});
nlohmann::json read_config_file(const std::string& path);

GaugeFunction parse_gauge(const nlohmann::json& spec, const std::string& path = "gauge");
ConvergenceRate parse_rate(const nlohmann::json& spec, const std::string& path = "rate");
Sequence parse_sequence(const nlohmann::json& spec, const std::string& path = "sequence");
StepSequence parse_steps(const nlohmann::json& spec, const std::string& path = "steps");
MappingFamily parse_family(const nlohmann::json& spec, const std::string& path = "family");
ConvexSet parse_set(const nlohmann::json& spec, const std::string& path = "set");

/// Step rate from (eps_i, N_i) points: N(eps) = N_j for the largest
/// eps_j <= eps. Throws DomainError below the smallest point.
ConvergenceRate table_rate(std::vector<std::pair<double, Index>> points);

/// The set grown by g: boxes and halfspaces move every face out by g,
/// balls gain g in radius.
ConvexSet expand_set(const ConvexSet& set, double g);

/// Trajectory residuals ||x_n - q|| for n <= n_max.
std::vector<double> run_residuals(const Experiment& experiment);

/// Certificate as {theorem, constants, moduli, epsilon_grid, indices}.
nlohmann::json certificate_json(const ConvergenceRate& cert, const std::vector<double>& eps_grid);

VerificationReport verify_experiment(const Experiment& experiment);

/// Runs the config once per value of its "sweep" block (a JSON pointer and
/// a list of values) in parallel, or once per epsilon when there is no
/// sweep block. Reports come back in input order.
std::vector<VerificationReport> sweep_experiment(const nlohmann::json& config,
                                                 const ExperimentOverrides& overrides = {});

}  // namespace certirate
