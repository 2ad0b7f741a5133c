#pragma once

#include <functional>

#include "certirate/moduli.hpp"

namespace certirate {

/// Relative slack added on top of every certified integral to absorb rounding.
inline constexpr double kIntegralSlack = 1e-9;

struct QuadratureOptions {
  /// Refinement stops once left sum - right sum <= rel_tol * right sum, which
  /// bounds the relative over-estimate of the returned left sum.
  double rel_tol = 5e-6;
  int initial_panels = 64;
  /// Refinement stops here even without agreement; the last left sum is
  /// still an upper bound.
  int max_panels = 1 << 24;
};

/// Certified upper bound on the integral of 1/psi over [lo, hi].
///
/// With a closed-form antiderivative this is Psi(hi) - Psi(lo). Otherwise
/// 1/psi is nonincreasing, so the left Riemann sum on a geometric partition
/// over-estimates the integral and the right sum under-estimates it; the
/// partition is doubled until the two agree to `rel_tol`. Both routes are
/// inflated by kIntegralSlack.
/// Returns 0 when hi <= lo. Throws GaugeDegenerateError if psi(lo) <= 0.
double upper_integral(const GaugeFunction& psi, double lo, double hi,
                      const QuadratureOptions& options = {});

/// Same, but always by left Riemann sums (ignores any antiderivative).
double upper_integral_numeric(const GaugeFunction& psi, double lo, double hi,
                              const QuadratureOptions& options = {});

/// Left Riemann sum of 1/psi on a geometric partition of [lo, hi] with
/// `panels` cells. Exposed for refinement-monotonicity tests.
double geometric_left_sum(const GaugeFunction& psi, double lo, double hi, int panels);

/// Upper bound on F^{-1}(target) for strictly increasing continuous F on
/// (0, inf): returns eps with F(eps) >= target and F(eps (1 - 1e-6)) < target.
/// Exponential bracket expansion from lo_hint, then bisection.
/// Throws TargetOutOfRangeError after 200 doublings/halvings.
double invert_increasing(const std::function<double(double)>& f, double target,
                         double lo_hint = 1.0, double rel_tol = 1e-6);

}  // namespace certirate
