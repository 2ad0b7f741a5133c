#pragma once

#include "certirate/rates.hpp"

namespace certirate::testing {

/// Setup with E_n = E for every n, a constant a_n and threshold h.
inline PerturbedSetup fixed_set_setup(const ConvexSet& limit, double a, const ConvergenceRate& h,
                                      Index check_horizon = 200) {
  const LpSpace space(set_dimension(limit), 2.0);
  const Retraction q(limit, space);
  HStarOptions hstar;
  hstar.max_grid_points = 64;
  hstar.random_samples = 16;
  return PerturbedSetup{[q](Index) { return q; }, q, [a](Index) { return a; }, h, omega_hilbert(), 1.0,
                        check_horizon, hstar};
}

/// The map x -> q: plain weakly contractive with psi(t) = t.
inline MappingFamily collapse_family(const Vector& q) {
  return MappingFamily{[q](Index, const Vector&) { return q; },
                       GaugeFunction::linear(1.0),
                       ContractivityModulus::zero(),
                       ContractivityKind::plain,
                       LpSpace(static_cast<int>(q.size()), 2.0),
                       q,
                       ConvergenceRate::zero(),
                       std::nullopt,
                       "collapse"};
}

}  // namespace certirate::testing
