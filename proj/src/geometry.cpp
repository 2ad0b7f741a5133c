#include "certirate/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "certirate/errors.hpp"

namespace certirate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << what << ": sizes " << a.size() << " and " << b.size();
    throw ShapeError(os.str());
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw ParameterError(std::string(what) + " has non-finite coordinates");
}

double interval_gap(double v, double lo, double hi) {
  if (v < lo) return lo - v;
  if (v > hi) return v - hi;
  return 0.0;
}

double distance_to(const LpSpace& space, const ConvexSet& set, const Vector& x) {
  return (x - project(space, set, x)).norm();
}

}  // namespace

ConvexSet make_box(Vector lo, Vector hi) {
  require_same_dim(lo, hi, "box bounds");
  require_finite(lo, "box lower bound");
  require_finite(hi, "box upper bound");
  if (lo.size() < 1) throw ShapeError("box of dimension 0");
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (lo(i) > hi(i)) {
      std::ostringstream os;
      os << "box has lo > hi in coordinate " << i;
      throw ParameterError(os.str());
    }
  }
  return Box{std::move(lo), std::move(hi)};
}

ConvexSet make_ball(Vector center, double radius) {
  if (center.size() < 1) throw ShapeError("ball of dimension 0");
  require_finite(center, "ball center");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw ParameterError("ball radius must be >= 0");
  return Ball{std::move(center), radius};
}

ConvexSet make_halfspace(Vector normal, double offset) {
  if (normal.size() < 1) throw ShapeError("halfspace of dimension 0");
  require_finite(normal, "halfspace normal");
  if (normal.norm() == 0.0) throw ParameterError("halfspace normal must be nonzero");
  if (!std::isfinite(offset)) throw ParameterError("halfspace offset must be finite");
  return Halfspace{std::move(normal), offset};
}

ConvexSet centered_box(int dim, double r) {
  return make_box(Vector::Constant(dim, -r), Vector::Constant(dim, r));
}

int set_dimension(const ConvexSet& set) {
  return std::visit(overloaded{[](const Box& b) { return static_cast<int>(b.lo.size()); },
                               [](const Ball& b) { return static_cast<int>(b.center.size()); },
                               [](const Halfspace& h) { return static_cast<int>(h.normal.size()); }},
                    set);
}

bool contains(const ConvexSet& set, const Vector& x, double tol) {
  if (x.size() != set_dimension(set)) throw ShapeError("point and set differ in dimension");
  return std::visit(
      overloaded{
          [&](const Box& b) {
            return ((x - b.lo).array() >= -tol).all() && ((b.hi - x).array() >= -tol).all();
          },
          [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol; },
          [&](const Halfspace& h) { return h.normal.dot(x) <= h.offset + tol * h.normal.norm(); }},
      set);
}

Vector project(const LpSpace& space, const ConvexSet& set, const Vector& x) {
  if (!space.is_hilbert()) {
    std::ostringstream os;
    os << "projections are sunny nonexpansive only for p = 2 (got p = " << space.p << ")";
    throw UnsupportedRetractionError(os.str());
  }
  if (x.size() != set_dimension(set) || x.size() != space.dim) {
    throw ShapeError("point, set and space differ in dimension");
  }
  return std::visit(overloaded{[&](const Box& b) -> Vector { return x.cwiseMax(b.lo).cwiseMin(b.hi); },
                               [&](const Ball& b) -> Vector {
                                 const Vector diff = x - b.center;
                                 const double n = diff.norm();
                                 if (n <= b.radius) return x;
                                 return b.center + (b.radius / n) * diff;
                               },
                               [&](const Halfspace& h) -> Vector {
                                 const double excess = h.normal.dot(x) - h.offset;
                                 if (excess <= 0.0) return x;
                                 return x - (excess / h.normal.squaredNorm()) * h.normal;
                               }},
                    set);
}

Retraction::Retraction(ConvexSet target_, LpSpace space_)
    : target(std::move(target_)), space(space_) {
  if (!space.is_hilbert()) {
    throw UnsupportedRetractionError("retractions are realised only for p = 2");
  }
  if (set_dimension(target) != space.dim) throw ShapeError("retraction target and space differ in dimension");
}

double sunny_residual(const Retraction& q, const Vector& x, const Vector& y) {
  const Vector qx = q(x);
  return (x - qx).dot(y - qx);
}

double hausdorff_distance(const ConvexSet& p, const ConvexSet& q) {
  if (set_dimension(p) != set_dimension(q)) throw ShapeError("sets differ in dimension");
  if (const auto* a = std::get_if<Box>(&p)) {
    if (const auto* b = std::get_if<Box>(&q)) {
      // The farthest point of a box from a convex set is a vertex, and the
      // squared distance from a vertex to a box splits over coordinates.
      double ab = 0.0;
      double ba = 0.0;
      for (Eigen::Index i = 0; i < a->lo.size(); ++i) {
        const double from_a = std::max(interval_gap(a->lo(i), b->lo(i), b->hi(i)),
                                       interval_gap(a->hi(i), b->lo(i), b->hi(i)));
        const double from_b = std::max(interval_gap(b->lo(i), a->lo(i), a->hi(i)),
                                       interval_gap(b->hi(i), a->lo(i), a->hi(i)));
        ab += from_a * from_a;
        ba += from_b * from_b;
      }
      return std::sqrt(std::max(ab, ba));
    }
  }
  if (const auto* a = std::get_if<Ball>(&p)) {
    if (const auto* b = std::get_if<Ball>(&q)) {
      return (a->center - b->center).norm() + std::fabs(a->radius - b->radius);
    }
  }
  throw NotComputableError("no closed-form Hausdorff distance for this pair of set kinds");
}

std::vector<Vector> sample_points(const ConvexSet& set, double spacing, const HStarOptions& options) {
  const int dim = set_dimension(set);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vector> out;

  // Lattice with per-axis counts chosen from the spacing, capped so the
  // total stays below max_grid_points.
  const auto lattice = [&](const Vector& lo, const Vector& hi) {
    const int cap_per_axis = std::max(
        2, static_cast<int>(std::floor(std::pow(static_cast<double>(options.max_grid_points), 1.0 / dim))));
    std::vector<int> counts(dim);
    long total = 1;
    for (int i = 0; i < dim; ++i) {
      const double width = hi(i) - lo(i);
      int c = spacing > 0.0 ? static_cast<int>(std::ceil(width / spacing)) + 1 : 2;
      c = std::clamp(c, width > 0.0 ? 2 : 1, cap_per_axis);
      counts[i] = c;
      total *= c;
    }
    std::vector<int> idx(dim, 0);
    for (long k = 0; k < total; ++k) {
      Vector v(dim);
      for (int i = 0; i < dim; ++i) {
        v(i) = counts[i] == 1 ? lo(i) : lo(i) + (hi(i) - lo(i)) * idx[i] / (counts[i] - 1);
      }
      out.push_back(std::move(v));
      for (int i = 0; i < dim; ++i) {
        if (++idx[i] < counts[i]) break;
        idx[i] = 0;
      }
    }
  };

  std::visit(
      overloaded{
          [&](const Box& b) {
            if (dim <= 12) {
              for (long mask = 0; mask < (1L << dim); ++mask) {
                Vector v(dim);
                for (int i = 0; i < dim; ++i) v(i) = (mask >> i) & 1 ? b.hi(i) : b.lo(i);
                out.push_back(std::move(v));
              }
            }
            lattice(b.lo, b.hi);
            for (int s = 0; s < options.random_samples; ++s) {
              Vector v(dim);
              for (int i = 0; i < dim; ++i) v(i) = b.lo(i) + (b.hi(i) - b.lo(i)) * unit(rng);
              out.push_back(std::move(v));
            }
          },
          [&](const Ball& b) {
            out.push_back(b.center);
            for (int i = 0; i < dim; ++i) {
              out.push_back(b.center + b.radius * Vector::Unit(dim, i));
              out.push_back(b.center - b.radius * Vector::Unit(dim, i));
            }
            for (int s = 0; s < options.random_samples; ++s) {
              Vector dir(dim);
              for (int i = 0; i < dim; ++i) dir(i) = gauss(rng);
              const double n = dir.norm();
              if (n == 0.0) continue;
              dir /= n;
              out.push_back(b.center + b.radius * dir);
              out.push_back(b.center + b.radius * std::pow(unit(rng), 1.0 / dim) * dir);
            }
          },
          [&](const Halfspace& h) {
            const LpSpace euclid(dim, 2.0);
            const Vector lo = Vector::Constant(dim, -options.extent);
            const Vector hi = Vector::Constant(dim, options.extent);
            const std::size_t first = out.size();
            lattice(lo, hi);
            for (int s = 0; s < options.random_samples; ++s) {
              Vector v(dim);
              for (int i = 0; i < dim; ++i) v(i) = -options.extent + 2.0 * options.extent * unit(rng);
              out.push_back(std::move(v));
            }
            for (std::size_t k = first; k < out.size(); ++k) out[k] = project(euclid, h, out[k]);
          }},
      set);
  return out;
}

bool hstar_check(const ConvexSet& p, const ConvexSet& q, double a, const HStarOptions& options) {
  if (!(a > 0.0)) throw ParameterError("hstar_check needs a > 0");
  const int dim = set_dimension(p);
  if (dim != set_dimension(q)) throw ShapeError("sets differ in dimension");
  const double tol = options.tol * (1.0 + a);
  try {
    if (hausdorff_distance(p, q) > a + tol) return false;
  } catch (const NotComputableError&) {
  }
  const LpSpace euclid(dim, 2.0);
  const double spacing = a / 10.0;
  const auto covered = [&](const ConvexSet& from, const ConvexSet& to) {
    for (const Vector& x : sample_points(from, spacing, options)) {
      if (distance_to(euclid, to, x) > a + tol) return false;
    }
    return true;
  };
  return covered(p, q) && covered(q, p);
}

SunnyHausThreshold sunnyhaus_threshold(const DualityContinuityModulus& omega, double b, double d,
                                       double eps) {
  if (!(b > 0.0) || !(d > 0.0) || !(eps > 0.0)) {
    throw ParameterError("sunnyhaus_threshold needs positive b, d and eps");
  }
  const double r = 2.0 * (2.0 * b + d) + 1.0;
  return {r, std::min(1.0, omega(r, eps / r))};
}

}  // namespace certirate
