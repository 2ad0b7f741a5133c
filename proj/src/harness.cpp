#include "certirate/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "certirate/errors.hpp"

namespace certirate {

namespace {

std::string index_text(Index n) { return is_impractical(n) ? std::string("impractical") : std::to_string(n); }

}  // namespace

VerificationSummary summarize(const std::vector<VerificationRow>& rows) {
  VerificationSummary s;
  for (const auto& row : rows) {
    if (row.exceeds_horizon) {
      ++s.beyond_horizon;
      continue;
    }
    if (row.holds) {
      ++s.held;
    } else {
      ++s.failed;
      s.all_hold = false;
    }
    s.max_tightness = std::max(s.max_tightness, row.tightness);
  }
  return s;
}

VerificationReport verify_rate(const std::vector<double>& residuals, const ConvergenceRate& cert,
                               const std::vector<double>& eps_grid) {
  if (residuals.empty()) throw ParameterError("verify_rate needs at least one residual");
  const Index n_max = residuals.size() - 1;

  // suffix_max[n] = max_{m >= n} residual(m)
  std::vector<double> suffix_max(residuals.size());
  double running = 0.0;
  for (std::size_t i = residuals.size(); i-- > 0;) {
    running = std::max(running, residuals[i]);
    suffix_max[i] = running;
  }

  VerificationReport report;
  report.label = cert.label();
  report.provenance = cert.provenance();
  report.n_max = n_max;
  for (const double eps : eps_grid) {
    VerificationRow row{eps, kImpractical, n_max + 1, true, 0.0, false, std::nullopt, {}};
    // n* is the first index whose suffix maximum is <= eps.
    const auto it = std::partition_point(suffix_max.begin(), suffix_max.end(),
                                         [eps](double v) { return v > eps; });
    row.first_actual = static_cast<Index>(it - suffix_max.begin());
    try {
      row.certified = cert(eps);
    } catch (const DivergenceCapError& e) {
      row.exceeds_horizon = true;
      row.note = e.what();
    }
    if (!row.exceeds_horizon && row.certified > n_max) {
      row.exceeds_horizon = true;
      row.note = "certificate exceeds run horizon";
    }
    if (!row.exceeds_horizon) {
      row.holds = row.first_actual <= row.certified;
      if (!row.holds) {
        for (Index n = row.certified; n <= n_max; ++n) {
          if (residuals[n] > eps) {
            row.witness = n;
            break;
          }
        }
      }
      row.tightness = static_cast<double>(row.first_actual) /
                      static_cast<double>(std::max<Index>(row.certified, 1));
    }
    report.rows.push_back(std::move(row));
  }
  report.summary = summarize(report.rows);
  return report;
}

VerificationReport verify_rate(const Trajectory& trajectory, const Vector& q, const LpSpace& space,
                               const ConvergenceRate& cert, const std::vector<double>& eps_grid,
                               Index n_max) {
  if (trajectory.size() < n_max + 1) throw ParameterError("trajectory shorter than n_max + 1");
  const Trajectory head(trajectory.begin(), trajectory.begin() + static_cast<std::ptrdiff_t>(n_max + 1));
  return verify_rate(residuals(head, q, space), cert, eps_grid);
}

std::vector<double> default_eps_grid(double scale, int count) {
  if (!(scale > 0.0) || count < 1) throw ParameterError("eps grid needs scale > 0 and count >= 1");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(scale * std::ldexp(1.0, -i));
  return out;
}

nlohmann::json to_json(const Provenance& provenance) {
  nlohmann::json constants = nlohmann::json::object();
  for (const auto& [name, value] : provenance.constants) constants[name] = value;
  return {{"theorem", provenance.theorem}, {"constants", constants}, {"moduli", provenance.moduli}};
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r = {{"epsilon", row.epsilon},
                        {"first_actual_index", row.first_actual},
                        {"holds", row.holds},
                        {"tightness", row.tightness},
                        {"exceeds_horizon", row.exceeds_horizon}};
    r["certified_index"] = is_impractical(row.certified) ? nlohmann::json("impractical")
                                                         : nlohmann::json(row.certified);
    r["witness"] = row.witness ? nlohmann::json(*row.witness) : nlohmann::json(nullptr);
    if (!row.note.empty()) r["note"] = row.note;
    rows.push_back(std::move(r));
  }
  return {{"label", report.label},
          {"provenance", to_json(report.provenance)},
          {"n_max", report.n_max},
          {"seed", report.seed},
          {"rows", rows},
          {"summary",
           {{"all_hold", report.summary.all_hold},
            {"max_tightness", report.summary.max_tightness},
            {"held", report.summary.held},
            {"failed", report.summary.failed},
            {"beyond_horizon", report.summary.beyond_horizon}}}};
}

std::string format_table(const VerificationReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-14s %14s %14s %-6s %10s  %s\n", "epsilon", "certified", "actual",
                "holds", "tightness", "note");
  os << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%-14.6g %14s %14s %-6s %10.4f  %s\n", row.epsilon,
                  index_text(row.certified).c_str(), index_text(row.first_actual).c_str(),
                  row.exceeds_horizon ? "flag" : (row.holds ? "yes" : "NO"), row.tightness,
                  row.witness ? ("witness n=" + std::to_string(*row.witness)).c_str() : row.note.c_str());
    os << line;
  }
  os << "all_hold=" << (report.summary.all_hold ? "true" : "false")
     << " max_tightness=" << report.summary.max_tightness << " held=" << report.summary.held
     << " failed=" << report.summary.failed << " beyond_horizon=" << report.summary.beyond_horizon << '\n';
  return os.str();
}

std::string format_markdown(const VerificationReport& report) {
  std::ostringstream os;
  os << "### " << report.label << "\n\n";
  os << "| epsilon | certified | actual | holds | tightness |\n";
  os << "|---|---|---|---|---|\n";
  for (const auto& row : report.rows) {
    os << "| " << row.epsilon << " | " << index_text(row.certified) << " | "
       << index_text(row.first_actual) << " | "
       << (row.exceeds_horizon ? "beyond horizon" : (row.holds ? "yes" : "no")) << " | "
       << row.tightness << " |\n";
  }
  os << "\nall_hold: " << (report.summary.all_hold ? "true" : "false")
     << ", max_tightness: " << report.summary.max_tightness << '\n';
  return os.str();
}

}  // namespace certirate
