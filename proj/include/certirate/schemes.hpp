#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "certirate/geometry.hpp"
#include "certirate/mappings.hpp"

namespace certirate {

enum class SchemeVariant { picard, mann, perturbed };

const char* to_string(SchemeVariant variant);

struct SchemeInstance {
  SchemeVariant variant;
  MappingFamily family;
  StepSequence steps;
  /// Q_n, required by the perturbed variant.
  std::optional<std::function<Retraction(Index)>> retractions;
  Vector start;
  Vector q;
};

using Trajectory = std::vector<Vector>;

/// x_0 .. x_{n_max}:
///   picard     x_{n+1} = A_n x_n
///   mann       x_{n+1} = (1 - alpha_n) x_n + alpha_n A_n x_n
///   perturbed  z_{n+1} = Q_n((1 - alpha_n) z_n + alpha_n A_n z_n)
/// Throws NumericalBlowupError at the first non-finite iterate.
Trajectory run(const SchemeInstance& instance, Index n_max);

/// n -> ||x_n - q|| in the given space.
std::vector<double> residuals(const Trajectory& trajectory, const Vector& q, const LpSpace& space);

/// CSV with header n,x0,..,x{dim-1},residual.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const Vector& q,
                          const LpSpace& space);

}  // namespace certirate
