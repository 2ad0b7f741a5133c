#include "certirate/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "certirate/errors.hpp"
#include "certirate/quadrature.hpp"
#include "certirate/recineq.hpp"

namespace certirate {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << v;
    throw ParameterError(os.str());
  }
}

ConvergenceRate relabel(const ConvergenceRate& inner, Provenance provenance,
                        std::function<double(double)> eps_map) {
  return ConvergenceRate([inner, eps_map = std::move(eps_map)](double eps) { return inner(eps_map(eps)); },
                         std::move(provenance));
}

Provenance with_theorem(Provenance p, std::string theorem) {
  p.theorem = std::move(theorem);
  return p;
}

void require_sigma_zero(const MappingFamily& family, const char* who) {
  for (int e = 4; e >= -20; e -= 4) {
    for (int be = -4; be <= 8; be += 4) {
      if (family.sigma(std::ldexp(1.0, e), std::ldexp(1.0, be)) != 0) {
        throw ContractError(std::string(who) + ": the family's sigma must vanish");
      }
    }
  }
}

}  // namespace

ConvergenceRate simple_rate(const GaugeFunction& psi, double c0) {
  require_positive(c0, "simple_rate: c0");
  Provenance p{"picard_weakly_contractive", {}, {}};
  p.constant("c0", c0).constant("slack", kIntegralSlack).modulus("psi=" + psi.label());
  return ConvergenceRate(
      [psi, c0](double eps) {
        return saturating_add(index_from_real(2.0 * upper_integral(psi, eps / 2.0, c0)), 1);
      },
      std::move(p));
}

ConvergenceRate mann_rate(const MappingFamily& family, const StepSequence& steps, double d, double c,
                          Index product_horizon) {
  if (!(d >= 1.0)) {
    std::ostringstream os;
    os << "mann_rate: product bound d = " << d << " must be >= 1";
    throw ParameterError(os.str());
  }
  require_positive(c, "mann_rate: c");
  if (family.kind == ContractivityKind::dweak) {
    throw ContractError("mann_rate needs a plain or quasi family, got dweak");
  }
  if (!family.q) throw ContractError("mann_rate needs a family with a reference fixpoint");
  if (family.k_n) {
    double product = 1.0;
    for (Index n = 0; n < product_horizon; ++n) {
      product *= 1.0 + steps.alpha(n) * (*family.k_n)(n);
      if (product > d * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "mann_rate: prod (1 + alpha_i k_i) exceeds d = " << d << " at n = " << n;
        throw HypothesisViolationError(os.str(), n);
      }
    }
  }
  const ContractivityModulus sigma = family.sigma;
  ConvergenceRate threshold([sigma, c](double delta) { return sigma(delta, c); }, "sigma(., c)");
  RecIneqInstance inst{family.psi, steps, std::nullopt, d, threshold, c};
  const ConvergenceRate inner = rate_second(inst);
  Provenance p = with_theorem(inner.provenance(), "mann_quasi_weakly_contractive");
  p.modulus("sigma=" + sigma.label()).modulus("family=" + family.label);
  return relabel(inner, std::move(p), [](double eps) { return eps; });
}

CmaxBound cmax_bound(const MappingFamily& family, const StepSequence& steps, double d,
                     const std::function<double(Index)>& residual) {
  if (!family.sigma.b_independent()) {
    throw ParameterError("cmax_bound needs a sigma that does not depend on b");
  }
  if (!(d >= 1.0)) throw ParameterError("cmax_bound: d must be >= 1");
  const double lo = 1.0 / (2.0 * d);
  const double delta = std::min(family.psi(lo), 1.0 / steps.cap) / (2.0 * d);
  const Index m = family.sigma(delta, 1.0);
  if (is_impractical(m)) throw NotComputableError("cmax_bound: sigma is impractically large");
  const double start = residual(m);
  const Index k =
      saturating_add(steps.divergence(m, 2.0 * d * upper_integral(family.psi, lo, start)), 1);
  if (k > kDefaultDivergenceCap) throw NotComputableError("cmax_bound: k exceeds the search cap");
  double c = 1.0;
  for (Index n = 0; n <= k; ++n) c = std::max(c, residual(n));
  return {c, k, m};
}

ConvergenceRate dweakly_threshold(const MappingFamily& family, const StepSequence& steps,
                                  const DualityContinuityModulus& omega, double c1, double c2) {
  if (!steps.vanishing) throw ContractError("dweakly_rate needs a rate for alpha_n -> 0");
  const ContractivityModulus sigma = family.sigma;
  const ConvergenceRate f = *steps.vanishing;
  return ConvergenceRate(
      [=](double delta) {
        return std::max(sigma(delta / 4.0, c1), f(omega(c1, delta / (4.0 * c2)) / c2));
      },
      "dweak_threshold");
}

ConvergenceRate dweakly_rate(const MappingFamily& family, const StepSequence& steps,
                             const DualityContinuityModulus& omega, double c1, double c2) {
  if (family.kind != ContractivityKind::dweak) {
    std::ostringstream os;
    os << "dweakly_rate needs a dweak family, got " << to_string(family.kind);
    throw ContractError(os.str());
  }
  require_positive(c1, "dweakly_rate: c1");
  require_positive(c2, "dweakly_rate: c2");
  if (!steps.vanishing) throw ContractError("dweakly_rate needs a rate for alpha_n -> 0");
  validate_steps(steps);

  // mu_n = ||x_n - q||^2 satisfies the first recursive inequality with
  // gauge 2 psi(sqrt t) and bound c1^2.
  const GaugeFunction psi = family.psi;
  const GaugeFunction squared([psi](double t) { return 2.0 * psi(std::sqrt(t)); },
                              "2*" + psi.label() + "(sqrt t)");
  RecIneqInstance inst{squared, steps, std::nullopt, 1.0,
                       dweakly_threshold(family, steps, omega, c1, c2), c1 * c1};
  const ConvergenceRate inner = rate_first(inst);
  Provenance p = with_theorem(inner.provenance(), "mann_dweakly_contractive");
  p.constant("c1", c1).constant("c2", c2).modulus("sigma=" + family.sigma.label());
  p.modulus("f=" + steps.vanishing->label());
  return relabel(inner, std::move(p), [](double eps) { return eps * eps; });
}

ConvergenceRate dweakly_concrete_rate(const MappingFamily& family, const StepSequence& steps,
                                      const SmoothnessModulus& tau, double c1, double c2) {
  require_sigma_zero(family, "dweakly_concrete_rate");
  return dweakly_rate(family, steps, omega_from_tau(tau), c1, c2);
}

double perturbed_radius(double c1, double c2, double alpha, double d) {
  return 2.0 * (2.0 * (c1 + alpha * c2) + d) + 1.0;
}

std::optional<Index> find_aconv_violation(const PerturbedSetup& setup, const StepSequence& steps,
                                          double radius) {
  for (int e = 0; e >= -10; --e) {
    const double delta = std::ldexp(1.0, e);
    const Index start = setup.h(delta);
    if (is_impractical(start)) continue;
    for (Index n = start; n <= start + 100; ++n) {
      const double scaled = steps.alpha(n) * delta;
      if (setup.a_seq(n) > setup.omega(radius, scaled * scaled / (4.0 * radius))) return n;
    }
  }
  return std::nullopt;
}

namespace {

void check_perturbed_setup(const MappingFamily& family, const StepSequence& steps,
                           const PerturbedSetup& setup, double c1, double c2) {
  require_positive(setup.d, "perturbed: d");
  if (family.kind != ContractivityKind::plain) {
    throw ContractError("perturbed schemes need an asymptotically weakly contractive (plain) family");
  }
  if (!family.q) throw ContractError("perturbed schemes need a reference fixpoint");
  if (!contains(setup.limit.target, *family.q, 1e-12)) {
    throw ContractError("perturbed schemes need q in the limit set E");
  }
  const Vector origin = Vector::Zero(family.space.dim);
  if (setup.limit(origin).norm() > setup.d) {
    throw HypothesisViolationError("||Q 0|| exceeds d", 0);
  }
  for (Index n = 0; n <= setup.check_horizon; ++n) {
    const double a = setup.a_seq(n);
    if (!(a > 0.0 && a < 1.0)) {
      std::ostringstream os;
      os << "a_" << n << " = " << a << " is not in (0, 1)";
      throw HypothesisViolationError(os.str(), n);
    }
    const Retraction qn = setup.retractions(n);
    if (qn(origin).norm() > setup.d) {
      std::ostringstream os;
      os << "||Q_" << n << " 0|| exceeds d";
      throw HypothesisViolationError(os.str(), n);
    }
    if (!hstar_check(qn.target, setup.limit.target, a, setup.hstar)) {
      std::ostringstream os;
      os << "H*[E_" << n << ", E, a_" << n << "] fails";
      throw HypothesisViolationError(os.str(), n);
    }
  }
  const double radius = perturbed_radius(c1, c2, steps.cap, setup.d);
  if (const auto n = find_aconv_violation(setup, steps, radius)) {
    std::ostringstream os;
    os << "a_n exceeds omega(R, (alpha_n delta)^2 / 4R) at n = " << *n << " although n >= h(delta)";
    throw HypothesisViolationError(os.str(), *n);
  }
}

ConvergenceRate perturbed_core(const MappingFamily& family, const StepSequence& steps,
                               const ConvergenceRate& threshold, double bound, Provenance p) {
  RecIneqInstance inst{family.psi, steps, std::nullopt, 1.0, threshold, bound};
  const ConvergenceRate inner = rate_first(inst);
  for (const auto& [name, value] : inner.provenance().constants) p.constant(name, value);
  for (const auto& m : inner.provenance().moduli) p.modulus(m);
  return relabel(inner, std::move(p), [](double eps) { return eps / 2.0; });
}

}  // namespace

ConvergenceRate perturbed_threshold(const MappingFamily& family, const ConvergenceRate& f,
                                    const ConvergenceRate& h, double c3, double c4) {
  const ContractivityModulus sigma = family.sigma;
  const double b = std::max(c3, c4);
  return ConvergenceRate(
      [=](double delta) { return std::max({sigma(delta / 2.0, b), f(delta / 2.0), h(delta)}); },
      "perturbed_threshold");
}

ConvergenceRate perturbed_rate(const MappingFamily& family, const StepSequence& steps,
                               const PerturbedSetup& setup, const ConvergenceRate& f,
                               const PerturbedBounds& bounds) {
  require_positive(bounds.c1, "perturbed_rate: c1");
  require_positive(bounds.c2, "perturbed_rate: c2");
  require_positive(bounds.c3, "perturbed_rate: c3");
  require_positive(bounds.c4, "perturbed_rate: c4");
  check_perturbed_setup(family, steps, setup, bounds.c1, bounds.c2);
  Provenance p{"perturbed_mann", {}, {}};
  p.constant("c1", bounds.c1).constant("c2", bounds.c2).constant("c3", bounds.c3);
  p.constant("c4", bounds.c4).constant("R", perturbed_radius(bounds.c1, bounds.c2, steps.cap, setup.d));
  p.modulus("h=" + setup.h.label()).modulus("f=" + f.label()).modulus("sigma=" + family.sigma.label());
  return perturbed_core(family, steps, perturbed_threshold(family, f, setup.h, bounds.c3, bounds.c4),
                        std::max(bounds.c3, bounds.c4), std::move(p));
}

ConvergenceRate perturbed_concrete_rate(const MappingFamily& family, const StepSequence& steps,
                                        const PerturbedSetup& setup, double c1, double c2, double c3) {
  require_positive(c1, "perturbed_concrete_rate: c1");
  require_positive(c2, "perturbed_concrete_rate: c2");
  require_positive(c3, "perturbed_concrete_rate: c3");
  require_sigma_zero(family, "perturbed_concrete_rate");
  check_perturbed_setup(family, steps, setup, c1, c2);
  const Vector& q = *family.q;
  if (lp_norm(family.space, Vector(family(0, q) - q)) > 1e-12 * (1.0 + q.norm())) {
    throw ContractError("perturbed_concrete_rate: q is not a fixpoint of T");
  }
  Provenance p{"perturbed_mann_single_map", {}, {}};
  p.constant("c1", c1).constant("c2", c2).constant("c3", c3);
  p.constant("R", perturbed_radius(c1, c2, steps.cap, setup.d)).modulus("h=" + setup.h.label());
  const ConvergenceRate h = setup.h;
  return perturbed_core(family, steps, ConvergenceRate([h](double delta) { return h(delta); }, "h"),
                        2.0 * c3, std::move(p));
}

}  // namespace certirate
