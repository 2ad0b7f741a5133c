#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "certirate/moduli.hpp"
#include "certirate/schemes.hpp"

namespace certirate {

struct VerificationRow {
  double epsilon;
  /// Phi(eps); kImpractical when the certificate could not be evaluated.
  Index certified;
  /// Least n with residual(m) <= eps for all m in [n, n_max]; n_max + 1 if none.
  Index first_actual;
  bool holds;
  /// first_actual / max(certified, 1); 0 for rows beyond the horizon.
  double tightness;
  /// Phi(eps) > n_max: nothing to check, the row is flagged but not failed.
  bool exceeds_horizon;
  /// First n >= Phi(eps) with residual(n) > eps.
  std::optional<Index> witness;
  std::string note;
};

struct VerificationSummary {
  bool all_hold = true;
  double max_tightness = 0.0;
  std::size_t held = 0;
  std::size_t failed = 0;
  std::size_t beyond_horizon = 0;
};

struct VerificationReport {
  std::string label;
  Provenance provenance;
  Index n_max = 0;
  std::uint64_t seed = 0;
  std::vector<VerificationRow> rows;
  VerificationSummary summary;
};

/// Checks the certificate against residuals r_0 .. r_{n_max}.
VerificationReport verify_rate(const std::vector<double>& residuals, const ConvergenceRate& cert,
                               const std::vector<double>& eps_grid);

/// Same, from a trajectory and its limit. Only x_0 .. x_{n_max} are used.
VerificationReport verify_rate(const Trajectory& trajectory, const Vector& q, const LpSpace& space,
                               const ConvergenceRate& cert, const std::vector<double>& eps_grid,
                               Index n_max);

/// Recomputes the summary from the rows.
VerificationSummary summarize(const std::vector<VerificationRow>& rows);

/// {2^0, 2^-1, ..., 2^-(count-1)} * scale.
std::vector<double> default_eps_grid(double scale = 1.0, int count = 11);

nlohmann::json to_json(const Provenance& provenance);
nlohmann::json to_json(const VerificationReport& report);

/// Fixed-width table, one row per epsilon.
std::string format_table(const VerificationReport& report);
/// Markdown table, one row per epsilon.
std::string format_markdown(const VerificationReport& report);

}  // namespace certirate
