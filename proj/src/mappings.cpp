#include "certirate/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "certirate/errors.hpp"

namespace certirate {

namespace {

void require_k(double k, bool allow_one, const char* who) {
  const bool ok = k > 0.0 && (allow_one ? k <= 1.0 : k < 1.0);
  if (!ok) {
    std::ostringstream os;
    os << who << ": k = " << k << (allow_one ? " not in (0, 1]" : " not in (0, 1)");
    throw ParameterError(os.str());
  }
}

const Vector& require_q(const MappingFamily& family, const char* who) {
  if (!family.q) throw ParameterError(std::string(who) + ": base family has no reference fixpoint");
  return *family.q;
}

double norm_of(const MappingFamily& family, const Vector& v) { return lp_norm(family.space, v); }

/// Samples n >= f(delta) and requires seq(n) <= delta.
void check_rate(const Sequence& seq, const ConvergenceRate& f, const char* what) {
  for (int e = 0; e >= -12; --e) {
    const double delta = std::ldexp(1.0, e);
    const Index start = f(delta);
    if (is_impractical(start)) continue;
    for (Index n = start; n < start + 100; ++n) {
      if (seq(n) > delta) {
        std::ostringstream os;
        os << what << " at n=" << n << " is " << seq(n) << " > " << delta;
        throw ContractError(os.str());
      }
    }
  }
}

}  // namespace

const char* to_string(ContractivityKind kind) {
  switch (kind) {
    case ContractivityKind::plain:
      return "plain";
    case ContractivityKind::quasi:
      return "quasi";
    case ContractivityKind::dweak:
      return "dweak";
  }
  return "unknown";
}

double contractivity_slack(const MappingFamily& family, Index n, const Vector& x, const Vector& y,
                           double delta) {
  switch (family.kind) {
    case ContractivityKind::plain: {
      const double dist = norm_of(family, x - y);
      return dist - family.psi(dist) + delta - norm_of(family, family(n, x) - family(n, y));
    }
    case ContractivityKind::quasi: {
      const Vector& q = require_q(family, "contractivity_slack");
      const double dist = norm_of(family, x - q);
      const double growth = family.k_n ? 1.0 + (*family.k_n)(n) : 1.0;
      return growth * dist - family.psi(dist) + delta - norm_of(family, family(n, x) - q);
    }
    case ContractivityKind::dweak: {
      const Vector& q = require_q(family, "contractivity_slack");
      const Vector diff = x - q;
      const double dist = norm_of(family, diff);
      const double lhs = std::fabs(pairing(family(n, x) - q, duality_map(family.space, diff)));
      return dist * dist - family.psi(dist) + delta - lhs;
    }
  }
  throw ParameterError("unknown contractivity kind");
}

MappingFamily make_strong(double k, const Vector& q, double p) {
  require_k(k, false, "make_strong");
  const LpSpace space(static_cast<int>(q.size()), p);
  std::ostringstream label;
  label << "strong(k=" << k << ")";
  return MappingFamily{
      [q, k](Index, const Vector& x) -> Vector { return q + (1.0 - k) * (x - q); },
      GaugeFunction::linear(k),
      ContractivityModulus::zero(),
      ContractivityKind::plain,
      space,
      q,
      ConvergenceRate::zero(),
      std::nullopt,
      label.str()};
}

MappingFamily make_weak_1d(const GaugeFunction& psi, double range, std::uint64_t seed) {
  if (!(range > 0.0)) throw ParameterError("make_weak_1d: range must be positive");
  if (psi(0.0) != 0.0) throw InvalidGaugeError("make_weak_1d: psi(0) must be 0");
  constexpr int kGrid = 1000;
  double prev_t = 0.0;
  double prev_residual = 0.0;
  for (int i = 1; i <= kGrid; ++i) {
    const double t = range * i / kGrid;
    const double v = psi(t);
    if (!(v > 0.0) || v > t) {
      std::ostringstream os;
      os << "make_weak_1d: psi(" << t << ") = " << v << " must lie in (0, t]";
      throw InvalidGaugeError(os.str());
    }
    const double residual = t - v;
    if (residual < prev_residual - 1e-12 * (1.0 + t)) {
      std::ostringstream os;
      os << "make_weak_1d: t - psi(t) decreases between " << prev_t << " and " << t;
      throw InvalidGaugeError(os.str());
    }
    prev_t = t;
    prev_residual = residual;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, range / 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    if (psi(a + b) < psi(a) + psi(b) - 1e-12 * (1.0 + psi(a + b))) {
      std::ostringstream os;
      os << "make_weak_1d: psi is not superadditive at (" << a << ", " << b << ")";
      throw InvalidGaugeError(os.str());
    }
  }
  return MappingFamily{
      [psi](Index, const Vector& x) -> Vector {
        if (x.size() != 1) throw ShapeError("make_weak_1d acts on 1-D vectors");
        if (x(0) < 0.0) throw DomainError("make_weak_1d is defined on [0, inf)");
        Vector out(1);
        out(0) = x(0) - psi(x(0));
        return out;
      },
      psi,
      ContractivityModulus::zero(),
      ContractivityKind::plain,
      LpSpace(1, 2.0),
      Vector::Zero(1),
      ConvergenceRate::zero(),
      std::nullopt,
      "weak_1d(" + psi.label() + ")"};
}

ContractivityModulus total_async_sigma(const ConvergenceRate& f1, const ConvergenceRate& f2,
                                       const GaugeFunction& phi) {
  return ContractivityModulus(
      [f1, f2, phi](double delta, double b) {
        return std::max(f1(delta / (2.0 * phi(b))), f2(delta / 2.0));
      },
      false, "total_async(" + f1.label() + ", " + f2.label() + ", " + phi.label() + ")");
}

MappingFamily make_total_async(const TotalAsyncParams& params, const MappingFamily& base) {
  if (!params.nu_rate || !params.l_rate) {
    throw ParameterError("make_total_async: rates for nu_n and l_n are required");
  }
  const Vector q = require_q(base, "make_total_async");
  if (base.kind == ContractivityKind::dweak) {
    throw ContractError("make_total_async: base family must be plain or quasi");
  }
  check_rate(params.nu, *params.nu_rate, "nu_n");
  check_rate(params.l, *params.l_rate, "l_n");
  for (int i = 1; i <= 1000; ++i) {
    const double t = 10.0 * i / 1000.0;
    if (params.psi(t) > base.psi(t) * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "make_total_async: psi(" << t << ") exceeds the base gauge";
      throw InvalidGaugeError(os.str());
    }
  }
  const Vector u = Vector::Unit(q.size(), 0);
  const LpSpace space = base.space;
  const auto base_apply = base.apply;
  const GaugeFunction phi = params.phi;
  const Sequence nu = params.nu;
  const Sequence l = params.l;
  auto apply = [=](Index n, const Vector& x) -> Vector {
    Vector bx = base_apply(n, x);
    const Vector offset = bx - q;
    const double len = lp_norm(space, offset);
    const Vector w = len > 0.0 ? Vector(offset / len) : u;
    return bx + (nu(n) * phi(lp_norm(space, Vector(x - q)))) * w + l(n) * u;
  };
  const ConvergenceRate f2 = *params.l_rate;
  return MappingFamily{
      apply,
      params.psi,
      total_async_sigma(*params.nu_rate, *params.l_rate, params.phi),
      ContractivityKind::quasi,
      space,
      q,
      f2,
      base.k_n,
      "total_async(" + base.label + ")"};
}

ContractivityModulus approx_family_sigma(const ConvergenceRate& f1, const ConvergenceRate& f2,
                                         const ConvergenceRate& f3, const ConvergenceRate& f4,
                                         double c1) {
  if (!(c1 > 0.0)) throw ParameterError("approx family: c1 must be positive");
  return ContractivityModulus(
      [=](double delta, double) {
        return std::max({f1(delta / 4.0), f2(delta / (4.0 * c1)), f3(delta / 4.0), f4(delta / 4.0)});
      },
      true, "approx_family");
}

MappingFamily make_approx_family(const MappingFamily& base, const ApproxFamilyParams& params) {
  if (!(params.c1 > 0.0)) throw ParameterError("make_approx_family: c1 must be positive");
  const Vector q = require_q(base, "make_approx_family");
  if (base.kind == ContractivityKind::dweak) {
    throw ContractError("make_approx_family: base family must be plain or quasi");
  }
  const double g_q = params.g(lp_norm(base.space, q));
  if (g_q > params.c1) {
    std::ostringstream os;
    os << "make_approx_family: c1 = " << params.c1 << " < g(||q||) = " << g_q;
    throw ParameterError(os.str());
  }
  check_rate(params.h, params.f2, "h_n");
  check_rate(params.delta, params.f3, "delta_n");
  check_rate(params.nu, params.f4, "nu_n");
  const Vector u = Vector::Unit(q.size(), 0);
  const auto base_apply = base.apply;
  const Sequence h = params.h;
  const Sequence delta = params.delta;
  const double g0 = params.g(0.0);
  auto apply = [=](Index n, const Vector& x) -> Vector {
    return base_apply(n, x) + (delta(n) + h(n) * g0) * u;
  };
  const ConvergenceRate f2 = params.f2;
  const ConvergenceRate f3 = params.f3;
  const double c1 = params.c1;
  ConvergenceRate fix_rate(
      [=](double eps) { return std::max(f3(eps / 2.0), f2(eps / (2.0 * c1))); }, "approx_fix_residual");
  return MappingFamily{apply,
                       base.psi,
                       approx_family_sigma(params.f1, params.f2, params.f3, params.f4, params.c1),
                       ContractivityKind::quasi,
                       base.space,
                       q,
                       fix_rate,
                       params.k_n,
                       "approx(" + base.label + ")"};
}

MappingFamily make_dweak(double k, const Vector& q) {
  require_k(k, true, "make_dweak");
  std::ostringstream label;
  label << "dweak(k=" << k << ")";
  return MappingFamily{
      [q, k](Index, const Vector& x) -> Vector { return q + (1.0 - k) * (x - q); },
      GaugeFunction::power(k, 2.0),
      ContractivityModulus::zero(),
      ContractivityKind::dweak,
      LpSpace(static_cast<int>(q.size()), 2.0),
      q,
      ConvergenceRate::zero(),
      std::nullopt,
      label.str()};
}

}  // namespace certirate
