#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "certirate/errors.hpp"

namespace certirate {

using Vector = Eigen::VectorXd;

/// Finite-dimensional l_p, 1 < p < inf. Dual vectors share the coordinate
/// representation and are measured in the conjugate exponent q.
struct LpSpace {
  int dim = 1;
  double p = 2.0;

  LpSpace() = default;
  LpSpace(int dim_, double p_) : dim(dim_), p(p_) {
    if (dim < 1) throw InvalidSpaceError("dimension must be >= 1");
    if (!(p > 1.0) || !std::isfinite(p)) {
      std::ostringstream os;
      os << "l_p needs 1 < p < inf, got p = " << p;
      throw InvalidSpaceError(os.str());
    }
  }

  double conjugate() const { return p / (p - 1.0); }
  bool is_hilbert() const { return p == 2.0; }
};

namespace detail {

template <typename Derived>
typename Derived::Scalar scaled_lp_norm(const Eigen::MatrixBase<Derived>& x, double p) {
  using Scalar = typename Derived::Scalar;
  const Scalar m = x.cwiseAbs().maxCoeff();
  if (m == Scalar(0)) return Scalar(0);
  if (p == 2.0) return x.norm();
  const Scalar s = (x.cwiseAbs() / m).array().pow(p).sum();
  return m * std::pow(s, Scalar(1) / p);
}

template <typename Derived>
void require_dim(const LpSpace& space, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != space.dim) {
    std::ostringstream os;
    os << "vector of size " << x.size() << " in a space of dimension " << space.dim;
    throw ShapeError(os.str());
  }
}

}  // namespace detail

/// (sum |x_i|^p)^{1/p}, computed with max-scaling.
template <typename Derived>
typename Derived::Scalar lp_norm(const LpSpace& space, const Eigen::MatrixBase<Derived>& x) {
  detail::require_dim(space, x);
  return detail::scaled_lp_norm(x, space.p);
}

/// Norm of a dual vector, i.e. its l_q norm with 1/p + 1/q = 1.
template <typename Derived>
typename Derived::Scalar dual_norm(const LpSpace& space, const Eigen::MatrixBase<Derived>& j) {
  detail::require_dim(space, j);
  return detail::scaled_lp_norm(j, space.conjugate());
}

/// Duality selection map: (Jx)_i = ||x||^{2-p} |x_i|^{p-1} sign(x_i), J0 = 0.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> duality_map(
    const LpSpace& space, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  using Out = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Scalar norm = lp_norm(space, x);
  if (norm == Scalar(0)) return Out::Zero(x.size());
  if (space.is_hilbert()) return x;
  // ||x|| * (|x_i| / ||x||)^{p-1} sign(x_i), which avoids overflow.
  Out j(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Scalar v = x(i);
    const Scalar mag = norm * std::pow(std::abs(v) / norm, Scalar(space.p - 1.0));
    j(i) = v < Scalar(0) ? -mag : (v > Scalar(0) ? mag : Scalar(0));
  }
  return j;
}

/// <y, j> = sum y_i j_i.
template <typename DerivedY, typename DerivedJ>
typename DerivedY::Scalar pairing(const Eigen::MatrixBase<DerivedY>& y,
                                  const Eigen::MatrixBase<DerivedJ>& j) {
  if (y.size() != j.size()) {
    std::ostringstream os;
    os << "pairing of sizes " << y.size() << " and " << j.size();
    throw ShapeError(os.str());
  }
  return y.dot(j);
}

/// Modulus of uniform smoothness eps -> delta.
using SmoothnessModulus = std::function<double(double)>;

/// Modulus of uniform continuity of J on bounded sets: (d, eps) -> omega.
using DualityContinuityModulus = std::function<double(double, double)>;

/// tau_p from rho(t) <= (p-1) t^2 / 2 (p >= 2) and rho(t) <= t^p / p
/// (1 < p < 2) via 2 rho(delta) <= eps delta; capped at 1.
inline SmoothnessModulus tau_for_lp(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidSpaceError("tau_for_lp needs 1 < p < inf");
  if (p >= 2.0) {
    return [p](double eps) { return std::min(eps / (p - 1.0), 1.0); };
  }
  return [p](double eps) { return std::min(std::pow(eps * p / 2.0, 1.0 / (p - 1.0)), 1.0); };
}

/// omega_tau(d, eps) = eps^2 / (12 d) * tau(eps / (2 d)), with d < 1 read
/// as d = 1 and eps > 2 read as eps = 2.
inline DualityContinuityModulus omega_from_tau(SmoothnessModulus tau) {
  return [tau = std::move(tau)](double d, double eps) {
    const double dd = std::max(d, 1.0);
    const double ee = std::min(eps, 2.0);
    return ee * ee / (12.0 * dd) * tau(ee / (2.0 * dd));
  };
}

/// In a Hilbert space J is the identity, so omega(d, eps) = eps.
inline DualityContinuityModulus omega_hilbert() {
  return [](double, double eps) { return eps; };
}

struct GeomCheck {
  bool pass;
  /// rhs - lhs of ||x+y||^2 <= ||x||^2 + 2 <y, J(x+y)>.
  double slack;
};

/// Checks ||x+y||^2 <= ||x||^2 + 2 <y, J(x+y)> up to 1e-9 (1 + ||x||^2).
template <typename DerivedX, typename DerivedY>
GeomCheck check_geom_inequality(const LpSpace& space, const Eigen::MatrixBase<DerivedX>& x,
                                const Eigen::MatrixBase<DerivedY>& y) {
  const Vector sum = x + y;
  const double nx = lp_norm(space, x);
  const double ns = lp_norm(space, sum);
  const double lhs = ns * ns;
  const double rhs = nx * nx + 2.0 * pairing(y, duality_map(space, sum));
  const double slack = rhs - lhs;
  return {slack >= -1e-9 * (1.0 + nx * nx), slack};
}

}  // namespace certirate
