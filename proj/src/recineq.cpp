#include "certirate/recineq.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "certirate/errors.hpp"
#include "certirate/quadrature.hpp"

namespace certirate {

namespace {

Provenance lemma_provenance(const char* name, const RecIneqInstance& inst, double d) {
  Provenance p{name, {}, {}};
  p.constant("c", inst.c).constant("d", d).constant("alpha", inst.steps.cap);
  p.constant("slack", kIntegralSlack);
  p.modulus("psi=" + inst.psi.label())
      .modulus("r=" + inst.steps.divergence.label())
      .modulus("N=" + inst.threshold.label());
  return p;
}

ConvergenceRate lemma_rate(const RecIneqInstance& inst, double d, Provenance provenance) {
  const ConvergenceRate threshold = monotone_closure(inst.threshold);
  const GaugeFunction psi = inst.psi;
  const DivergenceRate r = inst.steps.divergence;
  const double alpha = inst.steps.cap;
  const double c = inst.c;
  return ConvergenceRate(
      [=](double eps) {
        const double lo = eps / (2.0 * d);
        const double delta = std::min(psi(lo), eps / alpha) / (2.0 * d);
        const Index start = threshold(delta);
        const double budget = 2.0 * d * upper_integral(psi, lo, c);
        return saturating_add(r(start, budget), 1);
      },
      std::move(provenance));
}

double partial_alpha_sum(const StepSequence& steps, Index n) {
  // sum_{i=0}^{n-2} alpha_i
  double s = 0.0;
  for (Index i = 0; i + 2 <= n; ++i) s += steps.alpha(i);
  return s;
}

}  // namespace

ConvergenceRate rate_first(const RecIneqInstance& inst) {
  if (inst.beta) throw ParameterError("rate_first requires beta == 0; use rate_second");
  if (!(inst.c > 0.0)) throw ParameterError("upper bound c must be positive");
  return lemma_rate(inst, 1.0, lemma_provenance("recursive_inequality_first", inst, 1.0));
}

ConvergenceRate rate_second(const RecIneqInstance& inst) {
  if (!(inst.d >= 1.0)) {
    std::ostringstream os;
    os << "product bound d = " << inst.d << " must be >= 1";
    throw ParameterError(os.str());
  }
  if (!(inst.c > 0.0)) throw ParameterError("upper bound c must be positive");
  return lemma_rate(inst, inst.d, lemma_provenance("recursive_inequality_second", inst, inst.d));
}

ConvergenceRate rate_first_nonuniform(const RecIneqInstance& inst,
                                      std::function<double(Index)> mu) {
  const ConvergenceRate threshold = monotone_closure(inst.threshold);
  const GaugeFunction psi = inst.psi;
  const DivergenceRate r = inst.steps.divergence;
  const double alpha = inst.steps.cap;
  Provenance p = lemma_provenance("recursive_inequality_nonuniform", inst, 1.0);
  return ConvergenceRate(
      [=, mu = std::move(mu)](double eps) {
        const Index m = threshold(std::min(psi(eps / 2.0), eps / alpha) / 2.0);
        const double upper = mu(m);
        if (!std::isfinite(upper)) {
          std::ostringstream os;
          os << "trajectory value at index " << m << " is not finite";
          throw TrajectoryError(os.str());
        }
        return saturating_add(r(m, 2.0 * upper_integral(psi, eps / 2.0, upper)), 1);
      },
      std::move(p));
}

std::function<double(double)> continuous_bound(const ConvergenceRate& threshold) {
  constexpr int kLo = DyadicGrid::kMinExponent;
  constexpr int kHi = DyadicGrid::kMaxExponent;
  constexpr std::size_t kCount = kHi - kLo + 2;
  // values[i] is the closure at 2^(kLo - 1 + i)
  std::array<double, kCount> values{};
  double running = 0.0;
  for (int e = kHi; e >= kLo - 1; --e) {
    running = std::max(running, static_cast<double>(threshold(DyadicGrid::point(e))));
    values[static_cast<std::size_t>(e - (kLo - 1))] = running;
  }
  return [values](double eps) {
    const auto at = [&](int e) { return values[static_cast<std::size_t>(e - (kLo - 1))]; };
    if (!(eps > DyadicGrid::point(kLo))) return at(kLo - 1);
    if (eps >= DyadicGrid::point(kHi + 1)) return at(kHi);
    const int k = DyadicGrid::floor_exponent(eps) < kHi ? DyadicGrid::floor_exponent(eps) : kHi;
    const double left = DyadicGrid::point(k);
    const double t = (eps - left) / left;
    return at(k - 1) + t * (at(k) - at(k - 1));
  };
}

namespace {

std::function<double(double)> translation_function(const RecIneqInstance& inst,
                                                   const TraditionalBoundOptions& options) {
  if (!inst.psi.has_antiderivative()) {
    throw ParameterError("traditional_bound needs a closed-form antiderivative of 1/psi");
  }
  std::function<double(double)> bounding =
      options.bounding ? *options.bounding : continuous_bound(monotone_closure(inst.threshold));
  const GaugeFunction psi = inst.psi;
  const double d = inst.d;
  const double alpha = inst.steps.cap;
  return [=](double eps) {
    const double lo = eps / (2.0 * d);
    return 2.0 * d * psi.antiderivative(lo) -
           alpha * bounding(std::min(psi(lo), eps / alpha) / (2.0 * d));
  };
}

}  // namespace

Index traditional_threshold(const RecIneqInstance& inst, const TraditionalBoundOptions& options,
                            Index search_cap) {
  const auto f = translation_function(inst, options);
  const double needed = 2.0 * inst.d * inst.psi.antiderivative(inst.c) - f(options.anchor);
  double sum = 0.0;
  for (Index n = 0; n <= search_cap; ++n) {
    if (sum >= needed) return n;
    if (n >= 1) sum += inst.steps.alpha(n - 1);
  }
  return kImpractical;
}

double traditional_bound(const RecIneqInstance& inst, Index n,
                         const TraditionalBoundOptions& options) {
  if (!(inst.d >= 1.0)) throw ParameterError("product bound d must be >= 1");
  const auto f = translation_function(inst, options);
  const double base = 2.0 * inst.d * inst.psi.antiderivative(inst.c);
  const double sum = partial_alpha_sum(inst.steps, n);
  if (sum < base - f(options.anchor)) {
    const Index threshold = traditional_threshold(inst, options);
    std::ostringstream os;
    os << "traditional bound not yet valid at n=" << n << "; admissible from n=" << threshold;
    throw NotYetValidError(os.str(), threshold);
  }
  return invert_increasing(f, base - sum, options.anchor);
}

std::vector<double> adversarial_sequence(const RecIneqInstance& inst,
                                         const std::function<double(Index)>& delta_schedule,
                                         double mu0, Index n_max) {
  std::vector<double> mu;
  mu.reserve(n_max + 1);
  mu.push_back(mu0);
  for (Index n = 0; n < n_max; ++n) {
    const double current = mu.back();
    const double growth = inst.beta ? 1.0 + (*inst.beta)(n) : 1.0;
    const double next =
        growth * current - inst.steps.alpha(n) * (inst.psi(current) - delta_schedule(n));
    mu.push_back(std::max(0.0, next));
  }
  return mu;
}

}  // namespace certirate
