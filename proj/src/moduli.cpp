#include "certirate/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "certirate/errors.hpp"

namespace certirate {

Index index_from_real(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os << "modulus produced invalid value " << v;
    throw InvalidModulusError(os.str());
  }
  const double c = std::ceil(v);
  if (c >= static_cast<double>(kImpractical)) return kImpractical;
  return static_cast<Index>(c);
}

Index saturating_add(Index a, Index b) noexcept {
  if (a >= kImpractical || b >= kImpractical || a > kImpractical - b) return kImpractical;
  return a + b;
}

double DyadicGrid::point(int exponent) { return std::ldexp(1.0, exponent); }

int DyadicGrid::ceil_exponent(double x) {
  if (!(x > point(kMinExponent))) return kMinExponent;
  if (x >= point(kMaxExponent)) return kMaxExponent;
  int e = static_cast<int>(std::ceil(std::log2(x)));
  while (e > kMinExponent && point(e - 1) >= x) --e;
  while (point(e) < x) ++e;
  return e;
}

int DyadicGrid::floor_exponent(double x) {
  if (!(x > point(kMinExponent))) return kMinExponent;
  if (x >= point(kMaxExponent)) return kMaxExponent;
  int e = static_cast<int>(std::floor(std::log2(x)));
  while (point(e) > x) --e;
  while (e < kMaxExponent && point(e + 1) <= x) ++e;
  return e;
}

// ---------------------------------------------------------------------------
// GaugeFunction

GaugeFunction::GaugeFunction(Fn eval, std::string label, std::optional<Fn> antideriv)
    : eval_(std::move(eval)), antideriv_(std::move(antideriv)), label_(std::move(label)) {
  if (antideriv_) antideriv_at_one_ = (*antideriv_)(1.0);
}

double GaugeFunction::antiderivative(double t) const {
  if (!antideriv_) throw ParameterError("gauge '" + label_ + "' has no antiderivative");
  return (*antideriv_)(t) - antideriv_at_one_;
}

GaugeFunction GaugeFunction::linear(double k) {
  if (!(k > 0.0)) throw ParameterError("linear gauge needs k > 0");
  std::ostringstream os;
  os << k << "*t";
  return GaugeFunction([k](double t) { return k * t; }, os.str(),
                       [k](double t) { return std::log(t) / k; });
}

GaugeFunction GaugeFunction::power(double k, double p) {
  if (!(k > 0.0) || !(p > 0.0)) throw ParameterError("power gauge needs k, p > 0");
  std::ostringstream os;
  os << k << "*t^" << p;
  GaugeFunction::Fn anti;
  if (p == 1.0) {
    anti = [k](double t) { return std::log(t) / k; };
  } else {
    anti = [k, p](double t) { return std::pow(t, 1.0 - p) / (k * (1.0 - p)); };
  }
  return GaugeFunction([k, p](double t) { return k * std::pow(t, p); }, os.str(), anti);
}

GaugeFunction GaugeFunction::rational_square() {
  // 1/psi = 1/t^2 + 1/t
  return GaugeFunction([](double t) { return t * t / (1.0 + t); }, "t^2/(1+t)",
                       [](double t) { return std::log(t) - 1.0 / t; });
}

// ---------------------------------------------------------------------------
// ConvergenceRate

ConvergenceRate::ConvergenceRate(Fn fn, Provenance provenance)
    : fn_(std::move(fn)), provenance_(std::move(provenance)) {}

ConvergenceRate::ConvergenceRate(Fn fn, std::string label)
    : fn_(std::move(fn)), provenance_{std::move(label), {}, {}} {}

Index ConvergenceRate::operator()(double eps) const {
  if (!(eps > 0.0)) throw DomainError("rate of convergence queried at eps <= 0");
  return fn_(eps);
}

ConvergenceRate ConvergenceRate::from_real(std::function<double(double)> f, std::string label) {
  return ConvergenceRate([f = std::move(f)](double eps) { return index_from_real(f(eps)); },
                         std::move(label));
}

ConvergenceRate ConvergenceRate::zero() {
  return ConvergenceRate([](double) -> Index { return 0; }, "zero");
}

ConvergenceRate ConvergenceRate::inverse_power(double scale, double power) {
  std::ostringstream os;
  os << "ceil(" << scale << "*d^-" << power << ")";
  return from_real([scale, power](double d) { return scale * std::pow(d, -power); }, os.str());
}

// ---------------------------------------------------------------------------
// DivergenceRate

DivergenceRate::DivergenceRate(Fn fn, std::string label)
    : fn_(std::move(fn)), label_(std::move(label)) {}

Index DivergenceRate::operator()(Index start, double x) const {
  if (std::isnan(x) || x < 0.0) throw DomainError("rate of divergence queried at x < 0");
  if (is_impractical(start) || std::isinf(x)) return kImpractical;
  return std::max(start, fn_(start, x));
}

// ---------------------------------------------------------------------------
// ContractivityModulus

ContractivityModulus::ContractivityModulus(Fn fn, bool b_independent, std::string label)
    : fn_(std::move(fn)), b_independent_(b_independent), label_(std::move(label)) {}

Index ContractivityModulus::operator()(double delta, double b) const {
  if (!(delta > 0.0)) throw DomainError("contractivity modulus queried at delta <= 0");
  if (!(b > 0.0)) throw DomainError("contractivity modulus queried at b <= 0");
  return fn_(delta, b);
}

ContractivityModulus ContractivityModulus::zero() {
  return ContractivityModulus([](double, double) -> Index { return 0; }, true, "zero");
}

ContractivityModulus ContractivityModulus::from_real(std::function<double(double, double)> f,
                                                     bool b_independent, std::string label) {
  return ContractivityModulus(
      [f = std::move(f)](double d, double b) { return index_from_real(f(d, b)); },
      b_independent, std::move(label));
}

// ---------------------------------------------------------------------------
// StepSequence

StepSequence StepSequence::constant(double a) {
  if (!(a > 0.0)) throw ParameterError("constant step needs a > 0");
  std::ostringstream os;
  os << "constant(" << a << ")";
  return StepSequence{[a](Index) { return a; }, a,
                      a == 1.0 ? divergence_constant_one() : divergence_constant(a),
                      std::nullopt, os.str()};
}

StepSequence StepSequence::harmonic() {
  auto alpha = [](Index n) { return 1.0 / (static_cast<double>(n) + 1.0); };
  return StepSequence{alpha, 1.0, divergence_from_partial_sums(alpha, kDefaultDivergenceCap, "harmonic_partial_sums"),
                      ConvergenceRate::inverse_power(1.0, 1.0), "harmonic"};
}

void validate_steps(const StepSequence& steps, Index samples) {
  if (!(steps.cap > 0.0)) throw ContractError("step cap must be positive");
  for (Index n = 0; n < samples; ++n) {
    const double a = steps.alpha(n);
    if (!(a > 0.0) || a > steps.cap) {
      std::ostringstream os;
      os << "step alpha_" << n << " = " << a << " outside (0, " << steps.cap << "]";
      throw ContractError(os.str());
    }
  }
  if (steps.vanishing) {
    for (int e = -12; e <= 0; ++e) {
      const double delta = DyadicGrid::point(e);
      const Index from = (*steps.vanishing)(delta);
      if (is_impractical(from)) continue;
      for (Index n = from; n < from + 100; ++n) {
        if (steps.alpha(n) > delta) {
          std::ostringstream os;
          os << "vanishing rate violated: alpha_" << n << " = " << steps.alpha(n) << " > " << delta;
          throw ContractError(os.str());
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// closures

ConvergenceRate monotone_closure(const ConvergenceRate& f) {
  Provenance p = f.provenance();
  p.theorem = "closure(" + p.theorem + ")";
  return ConvergenceRate(
      [f](double eps) {
        Index best = f(eps);
        if (eps <= DyadicGrid::point(DyadicGrid::kMaxExponent)) {
          for (int e = DyadicGrid::ceil_exponent(eps); e <= DyadicGrid::kMaxExponent; ++e) {
            best = std::max(best, f(DyadicGrid::point(e)));
          }
        }
        return best;
      },
      std::move(p));
}

ContractivityModulus monotone_closure(const ContractivityModulus& sigma) {
  const bool b_free = sigma.b_independent();
  return ContractivityModulus(
      [sigma, b_free](double delta, double b) {
        Index best = sigma(delta, b);
        if (delta > DyadicGrid::point(DyadicGrid::kMaxExponent)) return best;
        const int d_lo = DyadicGrid::ceil_exponent(delta);
        if (b_free) {
          for (int e = d_lo; e <= DyadicGrid::kMaxExponent; ++e) {
            best = std::max(best, sigma(DyadicGrid::point(e), b));
          }
          return best;
        }
        if (b < DyadicGrid::point(DyadicGrid::kMinExponent)) return best;
        const int b_hi = DyadicGrid::floor_exponent(b);
        for (int e = d_lo; e <= DyadicGrid::kMaxExponent; ++e) {
          const double dg = DyadicGrid::point(e);
          for (int k = DyadicGrid::kMinExponent; k <= b_hi; ++k) {
            best = std::max(best, sigma(dg, DyadicGrid::point(k)));
          }
        }
        return best;
      },
      b_free, "closure(" + sigma.label() + ")");
}

// ---------------------------------------------------------------------------
// divergence rates

DivergenceRate divergence_from_partial_sums(std::function<double(Index)> alpha, Index cap,
                                            std::string label) {
  return DivergenceRate(
      [alpha = std::move(alpha), cap](Index start, double x) -> Index {
        // Neumaier-compensated running sum.
        long double sum = 0.0L;
        long double comp = 0.0L;
        for (Index k = start, terms = 0;; ++k, ++terms) {
          if (terms >= cap) {
            std::ostringstream os;
            os << "partial sums from N=" << start << " did not exceed " << x << " within " << cap
               << " terms";
            throw DivergenceCapError(os.str());
          }
          const long double a = alpha(k);
          const long double t = sum + a;
          if (std::fabs(sum) >= std::fabs(a)) {
            comp += (sum - t) + a;
          } else {
            comp += (a - t) + sum;
          }
          sum = t;
          if (sum + comp > static_cast<long double>(x)) return k;
        }
      },
      std::move(label));
}

DivergenceRate divergence_constant_one() {
  return DivergenceRate(
      [](Index start, double x) {
        return index_from_real(x + static_cast<double>(start));
      },
      "constant_one");
}

DivergenceRate divergence_constant(double a) {
  if (!(a > 0.0)) throw ParameterError("constant divergence needs a > 0");
  std::ostringstream os;
  os << "constant(" << a << ")";
  return DivergenceRate(
      [a](Index start, double x) { return index_from_real(x / a + static_cast<double>(start)); },
      os.str());
}

DivergenceRate divergence_harmonic_closed() {
  return DivergenceRate(
      [](Index start, double x) -> Index {
        if (std::log(static_cast<double>(start) + 1.0) + x >= std::log(static_cast<double>(kImpractical))) {
          return kImpractical;
        }
        const double v = (static_cast<double>(start) + 1.0) * std::exp(x);
        const Index c = index_from_real(v);
        return is_impractical(c) ? c : c - 1;
      },
      "harmonic_closed");
}

}  // namespace certirate
