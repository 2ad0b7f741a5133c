#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "certirate/config.hpp"
#include "certirate/errors.hpp"
#include "certirate/harness.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitHypothesis = 3;

struct Options {
  std::string config;
  std::string out;
  std::string markdown;
  std::vector<double> eps_grid;
  certirate::Index n_max = 0;
  std::uint64_t seed = 0;
  bool json = false;
};

certirate::ExperimentOverrides overrides_from(const Options& opt, const CLI::App& sub) {
  certirate::ExperimentOverrides o;
  if (sub.count("--n-max") > 0) o.n_max = opt.n_max;
  if (sub.count("--seed") > 0) o.seed = opt.seed;
  if (!opt.eps_grid.empty()) o.eps_grid = opt.eps_grid;
  return o;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw certirate::ConfigError("cannot write output file '" + opt.out + "'");
  file << text;
}

void write_markdown(const Options& opt, const std::vector<certirate::VerificationReport>& reports) {
  if (opt.markdown.empty()) return;
  std::ofstream file(opt.markdown);
  if (!file) throw certirate::ConfigError("cannot write markdown file '" + opt.markdown + "'");
  for (const auto& r : reports) file << certirate::format_markdown(r) << '\n';
}

int report_exit(const std::vector<certirate::VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (!r.summary.all_hold) return kExitFailed;
  }
  return 0;
}

int cmd_certify(const Options& opt, const CLI::App& sub) {
  const auto ex = certirate::load_experiment(certirate::read_config_file(opt.config), overrides_from(opt, sub));
  const std::vector<double> res = ex.needs_trajectory ? certirate::run_residuals(ex) : std::vector<double>{};
  const auto cert = ex.certify(res);
  emit(opt, certirate::certificate_json(cert, ex.eps_grid).dump(2) + "\n");
  return 0;
}

int cmd_run(const Options& opt, const CLI::App& sub) {
  const auto ex = certirate::load_experiment(certirate::read_config_file(opt.config), overrides_from(opt, sub));
  const auto trajectory = certirate::run(ex.scheme, ex.n_max);
  std::ostringstream csv;
  certirate::write_trajectory_csv(csv, trajectory, ex.scheme.q, ex.scheme.family.space);
  emit(opt, csv.str());
  return 0;
}

int cmd_verify(const Options& opt, const CLI::App& sub) {
  const auto ex = certirate::load_experiment(certirate::read_config_file(opt.config), overrides_from(opt, sub));
  const auto report = certirate::verify_experiment(ex);
  if (opt.json) {
    std::cout << certirate::to_json(report).dump(2) << '\n';
  } else {
    std::cout << certirate::format_table(report);
  }
  if (!opt.out.empty()) {
    std::ofstream file(opt.out);
    if (!file) throw certirate::ConfigError("cannot write output file '" + opt.out + "'");
    file << certirate::to_json(report).dump(2) << '\n';
  }
  write_markdown(opt, {report});
  return report_exit({report});
}

int cmd_sweep(const Options& opt, const CLI::App& sub) {
  const auto reports = certirate::sweep_experiment(certirate::read_config_file(opt.config), overrides_from(opt, sub));
  nlohmann::json all = nlohmann::json::array();
  for (const auto& r : reports) all.push_back(certirate::to_json(r));
  if (opt.json) {
    std::cout << all.dump(2) << '\n';
  } else {
    for (const auto& r : reports) std::cout << r.label << '\n' << certirate::format_table(r) << '\n';
  }
  if (!opt.out.empty()) {
    std::ofstream file(opt.out);
    if (!file) throw certirate::ConfigError("cannot write output file '" + opt.out + "'");
    file << all.dump(2) << '\n';
  }
  write_markdown(opt, reports);
  return report_exit(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified convergence rates for weakly contractive iteration schemes"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Experiment config (JSON, schema certirate/v1)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--n-max", opt.n_max, "Run horizon (overrides the config)");
    sub->add_option("--eps-grid", opt.eps_grid, "Epsilon values (overrides the config)")->delimiter(',');
    sub->add_option("--seed", opt.seed, "Seed for sampled hypothesis checks");
    sub->add_option("--out", opt.out, "Output file");
  };

  CLI::App* certify = app.add_subcommand("certify", "Evaluate the certificate on the epsilon grid (JSON)");
  CLI::App* run = app.add_subcommand("run", "Compute the trajectory (CSV)");
  CLI::App* verify = app.add_subcommand("verify", "Run, certify and check every certified index");
  CLI::App* sweep = app.add_subcommand("sweep", "Verify over a parameter grid in parallel");
  for (CLI::App* sub : {certify, run, verify, sweep}) add_common(sub);
  for (CLI::App* sub : {verify, sweep}) {
    sub->add_flag("--json", opt.json, "Print the JSON report instead of a table");
    sub->add_option("--markdown", opt.markdown, "Also write a Markdown summary table");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*certify) return cmd_certify(opt, *certify);
    if (*run) return cmd_run(opt, *run);
    if (*verify) return cmd_verify(opt, *verify);
    return cmd_sweep(opt, *sweep);
  } catch (const certirate::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const certirate::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const certirate::HypothesisViolationError& e) {
    std::cerr << "hypothesis violated at n=" << e.index() << ": " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const certirate::ContractError& e) {
    std::cerr << "contract error: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const certirate::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}
