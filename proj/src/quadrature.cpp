#include "certirate/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "certirate/errors.hpp"

namespace certirate {

namespace {

void require_positive_gauge(const GaugeFunction& psi, double lo) {
  if (!(lo > 0.0)) throw DomainError("upper_integral needs lo > 0");
  const double v = psi(lo);
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "gauge '" << psi.label() << "' is " << v << " at lower limit " << lo;
    throw GaugeDegenerateError(os.str());
  }
}

struct Bracket {
  double left;
  double right;
};

Bracket geometric_sums(const GaugeFunction& psi, double lo, double hi, int panels) {
  const double ratio = std::exp(std::log(hi / lo) / panels);
  Bracket b{0.0, 0.0};
  double left = lo;
  double inv_left = 1.0 / psi(lo);
  for (int i = 0; i < panels; ++i) {
    const double right = i + 1 == panels ? hi : left * ratio;
    const double inv_right = 1.0 / psi(right);
    b.left += (right - left) * inv_left;
    b.right += (right - left) * inv_right;
    left = right;
    inv_left = inv_right;
  }
  return b;
}

}  // namespace

double geometric_left_sum(const GaugeFunction& psi, double lo, double hi, int panels) {
  return geometric_sums(psi, lo, hi, panels).left;
}

double upper_integral_numeric(const GaugeFunction& psi, double lo, double hi,
                              const QuadratureOptions& options) {
  if (!(hi > lo)) return 0.0;
  require_positive_gauge(psi, lo);
  int panels = options.initial_panels;
  Bracket b = geometric_sums(psi, lo, hi, panels);
  while (b.left - b.right > options.rel_tol * b.right && panels < options.max_panels) {
    panels *= 2;
    b = geometric_sums(psi, lo, hi, panels);
  }
  return b.left * (1.0 + kIntegralSlack);
}

double upper_integral(const GaugeFunction& psi, double lo, double hi,
                      const QuadratureOptions& options) {
  if (!(hi > lo)) return 0.0;
  require_positive_gauge(psi, lo);
  if (psi.has_antiderivative()) {
    const double exact = psi.antiderivative(hi) - psi.antiderivative(lo);
    return std::max(exact, 0.0) * (1.0 + kIntegralSlack);
  }
  return upper_integral_numeric(psi, lo, hi, options);
}

double invert_increasing(const std::function<double(double)>& f, double target, double lo_hint,
                         double rel_tol) {
  if (!(lo_hint > 0.0)) throw DomainError("invert_increasing needs a positive hint");
  constexpr int kMaxSteps = 1100;
  double lo = 0.0;
  double hi = 0.0;
  if (f(lo_hint) >= target) {
    hi = lo_hint;
    lo = lo_hint / 2.0;
    int steps = 0;
    while (f(lo) >= target) {
      if (++steps > kMaxSteps) throw TargetOutOfRangeError("bracket halving failed: target below range");
      hi = lo;
      lo /= 2.0;
    }
  } else {
    lo = lo_hint;
    hi = lo_hint * 2.0;
    int steps = 0;
    while (f(hi) < target) {
      if (++steps > kMaxSteps) throw TargetOutOfRangeError("bracket doubling failed: target above range");
      lo = hi;
      hi *= 2.0;
    }
  }
  // Invariant: f(lo) < target <= f(hi).
  while (lo < hi * (1.0 - rel_tol)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace certirate
