#pragma once

#include <functional>

#include "certirate/geometry.hpp"
#include "certirate/mappings.hpp"
#include "certirate/moduli.hpp"
#include "certirate/spaces.hpp"

namespace certirate {

/// Picard iteration of a weakly contractive map from ||x_0 - q|| = c0:
/// eps -> ceil(2 int_{eps/2}^{c0} dt/psi) + 1.
ConvergenceRate simple_rate(const GaugeFunction& psi, double c0);

/// Krasnoselskii-Mann scheme for a quasi asymptotically weakly contractive
/// family with ||x_n - q|| <= c and prod (1 + alpha_i k_i) <= d:
/// eps -> r(sigma(min{psi(eps/2d), eps/alpha}/2d, c), 2d int_{eps/2d}^{c} dt/psi) + 1.
///
/// When the family carries k_n the product bound is checked on the first
/// `product_horizon` indices and a HypothesisViolationError names the first
/// index where it fails.
ConvergenceRate mann_rate(const MappingFamily& family, const StepSequence& steps, double d, double c,
                          Index product_horizon = 10000);

struct CmaxBound {
  /// max_{n <= k} max{||x_n - q||, 1}
  double c;
  Index k;
  Index m;
};

/// Computes a trajectory bound c directly from the first k + 1 residuals
/// when sigma does not depend on b.
CmaxBound cmax_bound(const MappingFamily& family, const StepSequence& steps, double d,
                     const std::function<double(Index)>& residual);

/// Mann scheme for a quasi asymptotically d-weakly contractive family in a
/// space whose duality map has continuity modulus omega. Needs
/// steps.vanishing (a rate for alpha_n -> 0), ||x_n - q|| <= c1 and
/// ||A_n x_n - x_n|| <= c2. Throws ContractError on a kind mismatch or an
/// invalid vanishing rate.
ConvergenceRate dweakly_rate(const MappingFamily& family, const StepSequence& steps,
                             const DualityContinuityModulus& omega, double c1, double c2);

/// The threshold N(delta) = max{sigma(delta/4, c1), f(omega(c1, delta/(4 c2)) / c2)}.
ConvergenceRate dweakly_threshold(const MappingFamily& family, const StepSequence& steps,
                                  const DualityContinuityModulus& omega, double c1, double c2);

/// dweakly_rate with omega built from a smoothness modulus; sigma must vanish.
ConvergenceRate dweakly_concrete_rate(const MappingFamily& family, const StepSequence& steps,
                                      const SmoothnessModulus& tau, double c1, double c2);

/// Retraction data shared by both perturbed constructors.
struct PerturbedSetup {
  std::function<Retraction(Index)> retractions;
  Retraction limit;
  /// H*[E_n, E, a_n] is required for every n.
  Sequence a_seq;
  /// a_n <= omega(R, (alpha_n delta)^2 / (4R)) for n >= h(delta).
  ConvergenceRate h;
  DualityContinuityModulus omega;
  /// ||Q_n 0||, ||Q 0|| <= d.
  double d;
  /// Setup checks (H*, ||Q_n 0|| <= d) run for n <= check_horizon.
  Index check_horizon = 1000;
  HStarOptions hstar;
};

struct PerturbedBounds {
  /// ||z_n|| <= c1
  double c1;
  /// ||A_n z_n|| <= c2
  double c2;
  /// ||x_n - q|| <= c3
  double c3;
  /// ||x_n - z_n|| <= c4
  double c4;
};

/// R = 2(2(c1 + alpha c2) + d) + 1.
double perturbed_radius(double c1, double c2, double alpha, double d);

/// Perturbed Mann scheme z_{n+1} = Q_n((1 - alpha_n) z_n + alpha_n A_n z_n):
/// eps -> r(N(min{psi(eps/4), eps/(2 alpha)}/2), 2 int_{eps/4}^{max{c3,c4}} dt/psi) + 1
/// with N(delta) = max{sigma(delta/2, max{c3,c4}), f(delta/2), h(delta)}.
///
/// Setup checks throw HypothesisViolationError carrying the offending n.
ConvergenceRate perturbed_rate(const MappingFamily& family, const StepSequence& steps,
                               const PerturbedSetup& setup, const ConvergenceRate& f,
                               const PerturbedBounds& bounds);

/// The threshold of perturbed_rate.
ConvergenceRate perturbed_threshold(const MappingFamily& family, const ConvergenceRate& f,
                                    const ConvergenceRate& h, double c3, double c4);

/// Single weakly contractive T with fixpoint q and ||z_0 - q|| <= c3:
/// eps -> r(h(min{psi(eps/4), eps/(2 alpha)}/2), 2 int_{eps/4}^{2 c3} dt/psi) + 1.
ConvergenceRate perturbed_concrete_rate(const MappingFamily& family, const StepSequence& steps,
                                        const PerturbedSetup& setup, double c1, double c2, double c3);

/// Samples a_n <= omega(R, (alpha_n delta)^2 / (4R)) on n in
/// [h(delta), h(delta) + 100] for delta = 2^0 .. 2^-10. Returns the first
/// violating n, if any.
std::optional<Index> find_aconv_violation(const PerturbedSetup& setup, const StepSequence& steps,
                                          double radius);

}  // namespace certirate
