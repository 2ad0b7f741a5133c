#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "certirate/spaces.hpp"

namespace certirate {

struct Box {
  Vector lo;
  Vector hi;
};

struct Ball {
  Vector center;
  double radius = 0.0;
};

/// {x : <normal, x> <= offset}
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

using ConvexSet = std::variant<Box, Ball, Halfspace>;

/// Validates shape and ordering; throws ShapeError / ParameterError.
ConvexSet make_box(Vector lo, Vector hi);
ConvexSet make_ball(Vector center, double radius);
ConvexSet make_halfspace(Vector normal, double offset);
/// The box [-r, r]^dim.
ConvexSet centered_box(int dim, double r);

int set_dimension(const ConvexSet& set);
bool contains(const ConvexSet& set, const Vector& x, double tol = 1e-12);

/// Metric projection onto a closed convex set in the Euclidean model.
/// Throws UnsupportedRetractionError when p != 2.
Vector project(const LpSpace& space, const ConvexSet& set, const Vector& x);

/// Sunny nonexpansive retraction realised as a metric projection.
struct Retraction {
  ConvexSet target;
  LpSpace space;

  Retraction(ConvexSet target_, LpSpace space_);
  Vector operator()(const Vector& x) const { return project(space, target, x); }
};

/// <x - Qx, y - Qx>; nonpositive for a sunny retraction and y in the target.
double sunny_residual(const Retraction& q, const Vector& x, const Vector& y);

/// Euclidean Hausdorff distance for box/box and ball/ball pairs.
/// Throws NotComputableError for other pairs.
double hausdorff_distance(const ConvexSet& p, const ConvexSet& q);

struct HStarOptions {
  /// Upper bound on grid points per set.
  int max_grid_points = 4096;
  int random_samples = 256;
  std::uint64_t seed = 0x5eed;
  /// Half-width of the sampling window for unbounded sets.
  double extent = 10.0;
  double tol = 1e-12;
};

/// Sampled check of H*[P, Q, a]: every sample of P is within a of Q and
/// vice versa. Samples are vertices/extreme points, a grid of spacing about
/// a/10 and seeded random points. When a closed-form distance exists it
/// is also required to be <= a.
bool hstar_check(const ConvexSet& p, const ConvexSet& q, double a, const HStarOptions& options = {});

struct SunnyHausThreshold {
  double R;
  double a;
};

/// R = 2(2b + d) + 1 and a = min{1, omega(R, eps / R)}.
SunnyHausThreshold sunnyhaus_threshold(const DualityContinuityModulus& omega, double b, double d,
                                       double eps);

/// Deterministic sample points of a set (used by hstar_check and tests).
std::vector<Vector> sample_points(const ConvexSet& set, double spacing, const HStarOptions& options);

}  // namespace certirate
