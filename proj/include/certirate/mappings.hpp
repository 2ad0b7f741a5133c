#pragma once

#include <functional>
#include <optional>
#include <string>

#include "certirate/moduli.hpp"
#include "certirate/spaces.hpp"

namespace certirate {

/// Which contractivity inequality a family satisfies for n >= sigma(delta, b).
enum class ContractivityKind {
  /// ||x - y|| <= b  =>  ||A_n x - A_n y|| <= ||x - y|| - psi(||x - y||) + delta
  plain,
  /// ||x - q|| <= b  =>  ||A_n x - q|| <= (1 + k_n)||x - q|| - psi(||x - q||) + delta
  quasi,
  /// ||x - q|| <= b  =>  |<A_n x - q, J(x - q)>| <= ||x - q||^2 - psi(||x - q||) + delta
  dweak,
};

const char* to_string(ContractivityKind kind);

using Sequence = std::function<double(Index)>;

/// A sequence of mappings together with certified moduli.
struct MappingFamily {
  std::function<Vector(Index, const Vector&)> apply;
  GaugeFunction psi;
  ContractivityModulus sigma;
  ContractivityKind kind;
  LpSpace space;
  /// Reference fixpoint.
  std::optional<Vector> q;
  /// Rate for ||A_n q - q|| -> 0.
  std::optional<ConvergenceRate> fix_residual_rate;
  /// Growth factors k_n of the quasi inequality; absent means 0.
  std::optional<Sequence> k_n;
  std::string label;

  Vector operator()(Index n, const Vector& x) const { return apply(n, x); }
};

/// rhs - lhs of the family's declared inequality at (n, x, y, delta);
/// y is ignored for the quasi and d-weak kinds.
double contractivity_slack(const MappingFamily& family, Index n, const Vector& x, const Vector& y,
                           double delta);

/// A_n x = q + (1 - k)(x - q), psi(t) = k t, sigma = 0.
MappingFamily make_strong(double k, const Vector& q, double p = 2.0);

/// T x = x - psi(x) on [0, inf) with fixpoint 0. The gauge is spot-checked
/// for psi(t) <= t, monotonicity of t - psi(t) and superadditivity on
/// [0, range]; violations throw InvalidGaugeError.
MappingFamily make_weak_1d(const GaugeFunction& psi, double range = 10.0, std::uint64_t seed = 7);

struct TotalAsyncParams {
  GaugeFunction psi;
  GaugeFunction phi;
  Sequence nu;
  Sequence l;
  std::optional<ConvergenceRate> nu_rate;
  std::optional<ConvergenceRate> l_rate;
};

/// A_n x = B x + nu_n phi(||x - q||) w(x) + l_n u, where B is the base
/// family, w(x) is the unit direction of B x - q and u a fixed unit vector.
/// sigma(delta, b) = max{f1(delta / (2 phi(b))), f2(delta / 2)}.
/// psi must not exceed the base gauge on samples.
MappingFamily make_total_async(const TotalAsyncParams& params, const MappingFamily& base);

/// sigma(delta, b) for the totally asymptotic corollary.
ContractivityModulus total_async_sigma(const ConvergenceRate& f1, const ConvergenceRate& f2,
                                       const GaugeFunction& phi);

struct ApproxFamilyParams {
  Sequence h;
  Sequence delta;
  Sequence nu;
  GaugeFunction g;
  /// Rates for mu_n, h_n, delta_n, nu_n -> 0.
  ConvergenceRate f1;
  ConvergenceRate f2;
  ConvergenceRate f3;
  ConvergenceRate f4;
  /// c1 >= g(||q||).
  double c1;
  std::optional<Sequence> k_n;
};

/// A_n x = A x + (delta_n + h_n g(0)) u with u a fixed unit vector;
/// sigma(delta) = max{f1(delta/4), f2(delta/(4 c1)), f3(delta/4), f4(delta/4)}.
MappingFamily make_approx_family(const MappingFamily& base, const ApproxFamilyParams& params);

/// The b-independent sigma of the approximate-family corollary.
ContractivityModulus approx_family_sigma(const ConvergenceRate& f1, const ConvergenceRate& f2,
                                         const ConvergenceRate& f3, const ConvergenceRate& f4,
                                         double c1);

/// A x = q + (1 - k)(x - q) in the Euclidean model; psi(t) = k t^2.
MappingFamily make_dweak(double k, const Vector& q);

}  // namespace certirate
