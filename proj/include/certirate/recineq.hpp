#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "certirate/moduli.hpp"

namespace certirate {

/// Abstract data of the recursive inequality
///
///   mu_{n+1} <= (1 + beta_n) mu_n - alpha_n (psi(mu_n) - delta)   for n >= N(delta)
///
/// with c an upper bound on mu_n and d >= prod_{i<=n} (1 + beta_i).
struct RecIneqInstance {
  GaugeFunction psi;
  StepSequence steps;
  /// beta_n; absent means beta == 0.
  std::optional<std::function<double(Index)>> beta;
  /// Bound on the partial products of (1 + beta_i).
  double d = 1.0;
  /// delta -> index from which the inequality holds with error delta.
  ConvergenceRate threshold;
  double c = 1.0;
};

/// Rate for the beta-free inequality:
/// r(N(min{psi(eps/2), eps/alpha}/2), 2 int_{eps/2}^{c} dt/psi) + 1.
ConvergenceRate rate_first(const RecIneqInstance& inst);

/// Rate with the (1 + beta_n) factor:
/// r(N(min{psi(eps/2d), eps/alpha}/2d), 2d int_{eps/2d}^{c} dt/psi) + 1.
ConvergenceRate rate_second(const RecIneqInstance& inst);

/// Variant without the uniform bound c: the upper limit is mu(M(eps)) where
/// M(eps) = N(min{psi(eps/2), eps/alpha}/2). `inst.c` is ignored.
ConvergenceRate rate_first_nonuniform(const RecIneqInstance& inst,
                                      std::function<double(Index)> mu);

/// Continuous nonincreasing function dominating a nonincreasing N.
///
/// Built from the grid values of N's monotone closure: on each cell
/// [2^k, 2^{k+1}] it interpolates linearly between the closure at 2^{k-1}
/// and at 2^k, so it dominates the step function without any offset.
/// Outside the grid it is clamped to the endpoint values.
std::function<double(double)> continuous_bound(const ConvergenceRate& threshold);

struct TraditionalBoundOptions {
  /// The admissibility check uses F(anchor).
  double anchor = 1.0;
  /// Supplied continuous bounding function; defaults to continuous_bound(N).
  std::optional<std::function<double(double)>> bounding;
};

/// Explicit bound on mu_n obtained by inverting
/// F(eps) = 2d Psi(eps/2d) - alpha Ntilde(min{psi(eps/2d), eps/alpha}/2d)
/// at 2d Psi(c) - sum_{i=0}^{n-2} alpha_i.
///
/// Requires a closed-form antiderivative. Throws NotYetValidError carrying
/// the least admissible n when sum_{i<=n-2} alpha_i < 2d Psi(c) - F(anchor).
double traditional_bound(const RecIneqInstance& inst, Index n,
                         const TraditionalBoundOptions& options = {});

/// Least n at which traditional_bound becomes admissible (capped search).
Index traditional_threshold(const RecIneqInstance& inst, const TraditionalBoundOptions& options = {},
                            Index search_cap = 100'000'000);

/// Pointwise-largest nonnegative sequence satisfying the inequality with
/// error schedule delta_n:
/// mu_{n+1} = max(0, (1 + beta_n) mu_n - alpha_n (psi(mu_n) - delta_n)).
/// Returns mu_0 .. mu_{n_max}.
std::vector<double> adversarial_sequence(const RecIneqInstance& inst,
                                         const std::function<double(Index)>& delta_schedule,
                                         double mu0, Index n_max);

}  // namespace certirate
