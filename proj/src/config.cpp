#include "certirate/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "certirate/errors.hpp"
#include "certirate/rates.hpp"

namespace certirate {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

const json& field(const json& spec, const char* key, const std::string& path) {
  if (!spec.is_object()) fail(path, "expected an object");
  const auto it = spec.find(key);
  if (it == spec.end()) fail(path, std::string("missing required field '") + key + "'");
  return *it;
}

double number(const json& spec, const char* key, const std::string& path) {
  const json& v = field(spec, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& spec, const char* key, double fallback, const std::string& path) {
  if (!spec.is_object() || !spec.contains(key)) return fallback;
  return number(spec, key, path);
}

std::string text(const json& spec, const char* key, const std::string& path) {
  const json& v = field(spec, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

Vector vector_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

Index index_of(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return v.get<Index>();
}

std::string kind_of(const json& spec, const std::string& path) { return text(spec, "kind", path); }

DualityContinuityModulus parse_omega(const json& spec, const std::string& path) {
  const std::string kind = kind_of(spec, path);
  if (kind == "hilbert") return omega_hilbert();
  if (kind == "tau") return omega_from_tau(tau_for_lp(number(spec, "p", path)));
  fail(path, "unknown omega kind '" + kind + "' (expected hilbert or tau)");
}

std::vector<double> parse_eps_grid(const json& spec, const std::string& path) {
  if (spec.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      if (!spec[i].is_number() || !(spec[i].get<double>() > 0.0)) {
        fail(path + "[" + std::to_string(i) + "]", "expected a positive number");
      }
      out.push_back(spec[i].get<double>());
    }
    if (out.empty()) fail(path, "empty epsilon grid");
    return out;
  }
  const double scale = number_or(spec, "scale", 1.0, path);
  const int count = static_cast<int>(number_or(spec, "count", 11.0, path));
  if (!(scale > 0.0) || count < 1) fail(path, "needs scale > 0 and count >= 1");
  return default_eps_grid(scale, count);
}

std::function<Retraction(Index)> parse_retractions(const json& spec, const LpSpace& space,
                                                   const std::string& path) {
  const ConvexSet limit = parse_set(field(spec, "limit", path), path + ".limit");
  const Sequence grow = spec.contains("grow") ? parse_sequence(spec["grow"], path + ".grow")
                                              : Sequence([](Index) { return 0.0; });
  return [limit, grow, space](Index n) { return Retraction(expand_set(limit, grow(n)), space); };
}

double positive_or_auto(const json& spec, const char* key, const std::vector<double>& residuals,
                        const std::string& path) {
  const json& v = field(spec, key, path);
  if (v.is_string() && v.get<std::string>() == "auto") {
    if (residuals.empty()) fail(path + "." + key, "'auto' needs a trajectory");
    return -1.0;
  }
  if (!v.is_number()) fail(path + "." + key, "expected a number or \"auto\"");
  return v.get<double>();
}

bool is_auto(const json& spec, const char* key) {
  return spec.is_object() && spec.contains(key) && spec[key].is_string() &&
         spec[key].get<std::string>() == "auto";
}

}  // namespace

ConvergenceRate table_rate(std::vector<std::pair<double, Index>> points) {
  if (points.empty()) throw ParameterError("table rate needs at least one point");
  std::sort(points.begin(), points.end());
  for (const auto& [eps, n] : points) {
    if (!(eps > 0.0)) throw ParameterError("table rate points need eps > 0");
  }
  return ConvergenceRate(
      [points](double eps) {
        const auto it = std::upper_bound(points.begin(), points.end(), eps,
                                         [](double e, const auto& p) { return e < p.first; });
        if (it == points.begin()) {
          std::ostringstream os;
          os << "table rate has no point at or below eps = " << eps;
          throw DomainError(os.str());
        }
        return std::prev(it)->second;
      },
      "table");
}

ConvexSet expand_set(const ConvexSet& set, double g) {
  if (const auto* b = std::get_if<Box>(&set)) {
    return make_box(b->lo.array() - g, b->hi.array() + g);
  }
  if (const auto* b = std::get_if<Ball>(&set)) return make_ball(b->center, b->radius + g);
  const auto& h = std::get<Halfspace>(set);
  return make_halfspace(h.normal, h.offset + g * h.normal.norm());
}

GaugeFunction parse_gauge(const json& spec, const std::string& path) {
  const std::string kind = kind_of(spec, path);
  if (kind == "linear") return GaugeFunction::linear(number(spec, "k", path));
  if (kind == "power") return GaugeFunction::power(number(spec, "k", path), number(spec, "p", path));
  if (kind == "rational_square") return GaugeFunction::rational_square();
  if (kind == "identity") return GaugeFunction::linear(1.0);
  fail(path, "unknown gauge kind '" + kind + "' (expected linear, power, rational_square, identity)");
}

ConvergenceRate parse_rate(const json& spec, const std::string& path) {
  const std::string kind = kind_of(spec, path);
  if (kind == "zero") return ConvergenceRate::zero();
  if (kind == "inverse_power") {
    return ConvergenceRate::inverse_power(number_or(spec, "scale", 1.0, path), number(spec, "power", path));
  }
  if (kind == "table") {
    const json& pts = field(spec, "points", path);
    if (!pts.is_array()) fail(path + ".points", "expected an array of [eps, N] pairs");
    std::vector<std::pair<double, Index>> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string p = path + ".points[" + std::to_string(i) + "]";
      if (!pts[i].is_array() || pts[i].size() != 2 || !pts[i][0].is_number()) fail(p, "expected [eps, N]");
      points.emplace_back(pts[i][0].get<double>(), index_of(pts[i][1], p + "[1]"));
    }
    try {
      return table_rate(std::move(points));
    } catch (const ParameterError& e) {
      fail(path, e.what());
    }
  }
  fail(path, "unknown rate kind '" + kind + "' (expected zero, inverse_power, table)");
}

Sequence parse_sequence(const json& spec, const std::string& path) {
  const std::string kind = kind_of(spec, path);
  if (kind == "zero") return [](Index) { return 0.0; };
  if (kind == "constant") {
    const double v = number(spec, "value", path);
    return [v](Index) { return v; };
  }
  if (kind == "power") {
    const double scale = number_or(spec, "scale", 1.0, path);
    const double power = number(spec, "power", path);
    const double shift = number_or(spec, "shift", 1.0, path);
    return [=](Index n) { return scale * std::pow(static_cast<double>(n) + shift, -power); };
  }
  if (kind == "table") {
    const std::vector<double> values = [&] {
      const Vector v = vector_of(field(spec, "values", path), path + ".values");
      return std::vector<double>(v.data(), v.data() + v.size());
    }();
    return [values](Index n) { return n < values.size() ? values[n] : values.back(); };
  }
  fail(path, "unknown sequence kind '" + kind + "' (expected zero, constant, power, table)");
}

StepSequence parse_steps(const json& spec, const std::string& path) {
  const std::string kind = kind_of(spec, path);
  StepSequence steps = [&] {
    if (kind == "constant") return StepSequence::constant(number(spec, "value", path));
    if (kind == "harmonic") return StepSequence::harmonic();
    fail(path, "unknown steps kind '" + kind + "' (expected constant or harmonic)");
  }();
  if (spec.contains("divergence")) {
    const std::string div = text(spec, "divergence", path);
    if (div == "partial_sums") {
      steps.divergence = divergence_from_partial_sums(steps.alpha);
    } else if (div == "constant_one") {
      steps.divergence = divergence_constant_one();
    } else if (div == "constant") {
      steps.divergence = divergence_constant(steps.cap);
    } else if (div == "harmonic_closed") {
      steps.divergence = divergence_harmonic_closed();
    } else if (div != "harmonic") {
      fail(path + ".divergence", "unknown divergence '" + div + "'");
    }
  }
  if (spec.contains("vanishing")) steps.vanishing = parse_rate(spec["vanishing"], path + ".vanishing");
  return steps;
}

MappingFamily parse_family(const json& spec, const std::string& path) {
  const std::string kind = kind_of(spec, path);
  if (kind == "strong") {
    return make_strong(number(spec, "k", path), vector_of(field(spec, "q", path), path + ".q"),
                       number_or(spec, "p", 2.0, path));
  }
  if (kind == "weak_1d") {
    return make_weak_1d(parse_gauge(field(spec, "gauge", path), path + ".gauge"),
                        number_or(spec, "range", 10.0, path));
  }
  if (kind == "dweak") {
    return make_dweak(number(spec, "k", path), vector_of(field(spec, "q", path), path + ".q"));
  }
  if (kind == "total_async") {
    TotalAsyncParams params{parse_gauge(field(spec, "psi", path), path + ".psi"),
                            parse_gauge(field(spec, "phi", path), path + ".phi"),
                            parse_sequence(field(spec, "nu", path), path + ".nu"),
                            parse_sequence(field(spec, "l", path), path + ".l"),
                            std::nullopt,
                            std::nullopt};
    if (spec.contains("nu_rate")) params.nu_rate = parse_rate(spec["nu_rate"], path + ".nu_rate");
    if (spec.contains("l_rate")) params.l_rate = parse_rate(spec["l_rate"], path + ".l_rate");
    return make_total_async(params, parse_family(field(spec, "base", path), path + ".base"));
  }
  if (kind == "approx") {
    ApproxFamilyParams params{parse_sequence(field(spec, "h", path), path + ".h"),
                              parse_sequence(field(spec, "delta", path), path + ".delta"),
                              parse_sequence(field(spec, "nu", path), path + ".nu"),
                              parse_gauge(field(spec, "g", path), path + ".g"),
                              parse_rate(field(spec, "f1", path), path + ".f1"),
                              parse_rate(field(spec, "f2", path), path + ".f2"),
                              parse_rate(field(spec, "f3", path), path + ".f3"),
                              parse_rate(field(spec, "f4", path), path + ".f4"),
                              number(spec, "c1", path),
                              std::nullopt};
    if (spec.contains("k")) params.k_n = parse_sequence(spec["k"], path + ".k");
    return make_approx_family(parse_family(field(spec, "base", path), path + ".base"), params);
  }
  fail(path, "unknown family kind '" + kind + "' (expected strong, weak_1d, dweak, total_async, approx)");
}

ConvexSet parse_set(const json& spec, const std::string& path) {
  const std::string kind = kind_of(spec, path);
  if (kind == "box") {
    return make_box(vector_of(field(spec, "lo", path), path + ".lo"),
                    vector_of(field(spec, "hi", path), path + ".hi"));
  }
  if (kind == "ball") {
    return make_ball(vector_of(field(spec, "center", path), path + ".center"), number(spec, "radius", path));
  }
  if (kind == "halfspace") {
    return make_halfspace(vector_of(field(spec, "normal", path), path + ".normal"),
                          number(spec, "offset", path));
  }
  fail(path, "unknown set kind '" + kind + "' (expected box, ball, halfspace)");
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

Experiment load_experiment(const json& config, const ExperimentOverrides& overrides) {
  if (!config.is_object()) fail("$", "config must be a JSON object");
  const std::string schema = text(config, "schema", "$");
  if (schema != kConfigSchema) fail("$.schema", "expected '" + std::string(kConfigSchema) + "', got '" + schema + "'");

  Experiment ex{config.value("name", std::string("experiment")),
                SchemeInstance{SchemeVariant::picard, parse_family(field(config, "family", "$"), "$.family"),
                               StepSequence::constant(1.0), std::nullopt, Vector(), Vector()},
                default_eps_grid(),
                1000,
                0,
                false,
                {}};
  if (config.contains("steps")) ex.scheme.steps = parse_steps(config["steps"], "$.steps");
  if (config.contains("eps_grid")) ex.eps_grid = parse_eps_grid(config["eps_grid"], "$.eps_grid");
  if (config.contains("n_max")) ex.n_max = index_of(config["n_max"], "$.n_max");
  if (config.contains("seed")) ex.seed = index_of(config["seed"], "$.seed");
  if (overrides.n_max) ex.n_max = *overrides.n_max;
  if (overrides.eps_grid) ex.eps_grid = *overrides.eps_grid;
  if (overrides.seed) ex.seed = *overrides.seed;
  if (ex.n_max < 1) fail("$.n_max", "must be >= 1");

  const json& scheme = field(config, "scheme", "$");
  const std::string variant = text(scheme, "variant", "$.scheme");
  if (variant == "picard") {
    ex.scheme.variant = SchemeVariant::picard;
  } else if (variant == "mann") {
    ex.scheme.variant = SchemeVariant::mann;
  } else if (variant == "perturbed") {
    ex.scheme.variant = SchemeVariant::perturbed;
  } else {
    fail("$.scheme.variant", "unknown variant '" + variant + "' (expected picard, mann, perturbed)");
  }
  const MappingFamily& family = ex.scheme.family;
  ex.scheme.start = vector_of(field(scheme, "start", "$.scheme"), "$.scheme.start");
  if (ex.scheme.start.size() != family.space.dim) fail("$.scheme.start", "dimension does not match the family");
  if (!family.q) fail("$.family", "family has no reference fixpoint");
  ex.scheme.q = *family.q;
  if (ex.scheme.variant == SchemeVariant::perturbed) {
    ex.scheme.retractions =
        parse_retractions(field(scheme, "retractions", "$.scheme"), family.space, "$.scheme.retractions");
  }

  const json theorem = field(config, "theorem", "$");
  const std::string tkind = kind_of(theorem, "$.theorem");
  const std::string tp = "$.theorem";
  const SchemeInstance inst = ex.scheme;
  const std::uint64_t seed = ex.seed;

  if (tkind == "simple") {
    ex.needs_trajectory = false;
    const double c0 = is_auto(theorem, "c0") ? lp_norm(family.space, Vector(inst.start - inst.q))
                                             : number(theorem, "c0", tp);
    ex.certify = [psi = family.psi, c0](const std::vector<double>&) { return simple_rate(psi, c0); };
  } else if (tkind == "mann") {
    const double d = number_or(theorem, "d", 1.0, tp);
    ex.needs_trajectory = is_auto(theorem, "c");
    ex.certify = [inst, theorem, d, tp](const std::vector<double>& res) {
      double c = positive_or_auto(theorem, "c", res, tp);
      if (c < 0.0) {
        c = cmax_bound(inst.family, inst.steps, d, [&res](Index n) {
              if (n >= res.size()) throw NotComputableError("cmax_bound needs residuals beyond n_max");
              return res[n];
            }).c;
      }
      return mann_rate(inst.family, inst.steps, d, c);
    };
  } else if (tkind == "dweak" || tkind == "dweak_concrete") {
    const double c1 = number(theorem, "c1", tp);
    const double c2 = number(theorem, "c2", tp);
    if (tkind == "dweak") {
      const DualityContinuityModulus omega = parse_omega(field(theorem, "omega", tp), tp + ".omega");
      ex.certify = [inst, omega, c1, c2](const std::vector<double>&) {
        return dweakly_rate(inst.family, inst.steps, omega, c1, c2);
      };
    } else {
      const SmoothnessModulus tau = tau_for_lp(number_or(theorem, "p", 2.0, tp));
      ex.certify = [inst, tau, c1, c2](const std::vector<double>&) {
        return dweakly_concrete_rate(inst.family, inst.steps, tau, c1, c2);
      };
    }
  } else if (tkind == "perturbed" || tkind == "perturbed_concrete") {
    if (ex.scheme.variant != SchemeVariant::perturbed) fail(tp, "perturbed theorems need the perturbed scheme");
    const json& rspec = field(scheme, "retractions", "$.scheme");
    const ConvexSet limit = parse_set(field(rspec, "limit", "$.scheme.retractions"), "$.scheme.retractions.limit");
    PerturbedSetup setup{*inst.retractions,
                         Retraction(limit, family.space),
                         parse_sequence(field(theorem, "a", tp), tp + ".a"),
                         parse_rate(field(theorem, "h", tp), tp + ".h"),
                         parse_omega(field(theorem, "omega", tp), tp + ".omega"),
                         number(theorem, "d", tp),
                         static_cast<Index>(number_or(theorem, "check_horizon", 1000.0, tp)),
                         HStarOptions{}};
    setup.hstar.seed = seed;
    setup.hstar.max_grid_points = static_cast<int>(number_or(theorem, "hstar_grid_points", 64.0, tp));
    setup.hstar.random_samples = static_cast<int>(number_or(theorem, "hstar_random_samples", 16.0, tp));
    const double c1 = number(theorem, "c1", tp);
    const double c2 = number(theorem, "c2", tp);
    const double c3 = number(theorem, "c3", tp);
    if (tkind == "perturbed") {
      const ConvergenceRate f = theorem.contains("f") ? parse_rate(theorem["f"], tp + ".f") : ConvergenceRate::zero();
      const PerturbedBounds bounds{c1, c2, c3, number(theorem, "c4", tp)};
      ex.certify = [inst, setup, f, bounds](const std::vector<double>&) {
        return perturbed_rate(inst.family, inst.steps, setup, f, bounds);
      };
    } else {
      ex.certify = [inst, setup, c1, c2, c3](const std::vector<double>&) {
        return perturbed_concrete_rate(inst.family, inst.steps, setup, c1, c2, c3);
      };
    }
  } else {
    fail(tp + ".kind", "unknown theorem '" + tkind +
                           "' (expected simple, mann, dweak, dweak_concrete, perturbed, perturbed_concrete)");
  }
  return ex;
}

std::vector<double> run_residuals(const Experiment& experiment) {
  return residuals(run(experiment.scheme, experiment.n_max), experiment.scheme.q,
                   experiment.scheme.family.space);
}

json certificate_json(const ConvergenceRate& cert, const std::vector<double>& eps_grid) {
  json out = to_json(cert.provenance());
  json indices = json::array();
  for (const double eps : eps_grid) {
    try {
      const Index n = cert(eps);
      indices.push_back(is_impractical(n) ? json("impractical") : json(n));
    } catch (const DivergenceCapError&) {
      indices.push_back("divergence_cap");
    }
  }
  out["epsilon_grid"] = eps_grid;
  out["indices"] = indices;
  return out;
}

VerificationReport verify_experiment(const Experiment& experiment) {
  const std::vector<double> res = run_residuals(experiment);
  const ConvergenceRate cert = experiment.certify(res);
  VerificationReport report = verify_rate(res, cert, experiment.eps_grid);
  report.label = experiment.name;
  report.seed = experiment.seed;
  return report;
}

std::vector<VerificationReport> sweep_experiment(const json& config, const ExperimentOverrides& overrides) {
  std::vector<VerificationReport> reports;
  if (config.is_object() && config.contains("sweep")) {
    const json& sweep = config["sweep"];
    const std::string pointer = text(sweep, "parameter", "$.sweep");
    const json& values = field(sweep, "values", "$.sweep");
    if (!values.is_array() || values.empty()) fail("$.sweep.values", "expected a non-empty array");
    std::vector<std::future<VerificationReport>> jobs;
    for (const json& value : values) {
      json patched = config;
      patched.erase("sweep");
      try {
        patched[json::json_pointer(pointer)] = value;
      } catch (const json::exception& e) {
        fail("$.sweep.parameter", e.what());
      }
      jobs.push_back(std::async(std::launch::async, [patched, overrides, pointer, value] {
        VerificationReport r = verify_experiment(load_experiment(patched, overrides));
        r.label += " " + pointer + "=" + value.dump();
        return r;
      }));
    }
    for (auto& job : jobs) reports.push_back(job.get());
    return reports;
  }

  const Experiment ex = load_experiment(config, overrides);
  const std::vector<double> res = run_residuals(ex);
  const ConvergenceRate cert = ex.certify(res);
  std::vector<std::future<VerificationReport>> jobs;
  for (const double eps : ex.eps_grid) {
    jobs.push_back(std::async(std::launch::async, [&res, &cert, eps] {
      return verify_rate(res, cert, std::vector<double>{eps});
    }));
  }
  VerificationReport merged;
  merged.label = ex.name;
  merged.provenance = cert.provenance();
  merged.n_max = ex.n_max;
  merged.seed = ex.seed;
  for (auto& job : jobs) {
    for (auto& row : job.get().rows) merged.rows.push_back(std::move(row));
  }
  std::stable_sort(merged.rows.begin(), merged.rows.end(),
                   [](const VerificationRow& a, const VerificationRow& b) { return a.epsilon > b.epsilon; });
  merged.summary = summarize(merged.rows);
  reports.push_back(std::move(merged));
  return reports;
}

}  // namespace certirate
