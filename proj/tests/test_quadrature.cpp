#include <gtest/gtest.h>

#include <cmath>

#include "certirate/errors.hpp"
#include "certirate/quadrature.hpp"
#include "support/gauge_catalog.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace certirate {
namespace {

double exact_integral(const GaugeFunction& psi, double lo, double hi) {
  return psi.antiderivative(hi) - psi.antiderivative(lo);
}

TEST(UpperIntegral, ClosedFormExamples) {
  const double v = upper_integral(GaugeFunction::linear(1.0), 0.5, 2.0);
  EXPECT_GE(v, oracle::kLn4);
  EXPECT_LE(v, oracle::kLn4 * (1.0 + 1e-5));
  EXPECT_EQ(upper_integral(GaugeFunction::linear(1.0), 1.0, 1.0), 0.0);
  const double w = upper_integral(GaugeFunction::linear(0.5), 0.05, 1.0);
  EXPECT_GE(w, oracle::kTwoLn20);
  EXPECT_LE(w, oracle::kTwoLn20 * (1.0 + 1e-5));
}

TEST(UpperIntegral, NumericExamplesBracketExactValue) {
  const double v = upper_integral_numeric(GaugeFunction::linear(1.0), 0.5, 2.0);
  EXPECT_GE(v, oracle::kLn4);
  EXPECT_LE(v, oracle::kLn4 * (1.0 + 1e-5));
  const double w = upper_integral_numeric(GaugeFunction::linear(0.5), 0.05, 1.0);
  EXPECT_GE(w, oracle::kTwoLn20);
  EXPECT_LE(w, oracle::kTwoLn20 * (1.0 + 1e-5));
}

TEST(UpperIntegral, EmptyAndReversedIntervalsAreZero) {
  EXPECT_EQ(upper_integral(GaugeFunction::linear(1.0), 2.0, 1.0), 0.0);
  EXPECT_EQ(upper_integral_numeric(GaugeFunction::rational_square(), 3.0, 3.0), 0.0);
}

TEST(UpperIntegral, DegenerateGaugeAndDomain) {
  const GaugeFunction flat([](double t) { return t < 1.0 ? 0.0 : t; }, "flat_then_linear");
  EXPECT_THROW(upper_integral(flat, 0.5, 2.0), GaugeDegenerateError);
  EXPECT_THROW(upper_integral(GaugeFunction::linear(1.0), 0.0, 2.0), DomainError);
}

TEST(UpperIntegral, PropertyNumericIsSoundAndTight) {
  testing::Gen gen(2024);
  QuadratureOptions options;
  options.rel_tol = 5e-5;
  for (const auto& psi : testing::closed_form_gauges()) {
    for (int i = 0; i < 4; ++i) {
      double lo = gen.log_uniform(1e-4, 1e3);
      double hi = gen.log_uniform(1e-4, 1e3);
      if (lo > hi) std::swap(lo, hi);
      if (hi / lo < 1.0 + 1e-9) continue;
      const double exact = exact_integral(psi, lo, hi);
      const double upper = upper_integral_numeric(psi, lo, hi, options);
      EXPECT_GE(upper, exact) << psi.label() << " [" << lo << ", " << hi << "]";
      EXPECT_LE(upper - exact, 1e-4 * exact) << psi.label() << " [" << lo << ", " << hi << "]";
    }
  }
}

TEST(UpperIntegral, PropertyClosedFormPathIsSound) {
  testing::Gen gen(99);
  for (const auto& psi : testing::closed_form_gauges()) {
    for (int i = 0; i < 20; ++i) {
      double lo = gen.log_uniform(1e-4, 1e3);
      double hi = gen.log_uniform(1e-4, 1e3);
      if (lo > hi) std::swap(lo, hi);
      const double exact = exact_integral(psi, lo, hi);
      const double upper = upper_integral(psi, lo, hi);
      EXPECT_GE(upper, exact);
      EXPECT_LE(upper - exact, 1e-4 * std::fabs(exact) + 1e-15);
    }
  }
}

TEST(GeometricLeftSum, RefinementIsMonotone) {
  for (const auto& psi : testing::closed_form_gauges()) {
    double prev = geometric_left_sum(psi, 0.01, 10.0, 4);
    for (int panels = 8; panels <= 4096; panels *= 2) {
      const double cur = geometric_left_sum(psi, 0.01, 10.0, panels);
      EXPECT_LE(cur, prev * (1.0 + 1e-12)) << psi.label() << " panels=" << panels;
      prev = cur;
    }
  }
}

TEST(InvertIncreasing, Examples) {
  const double a = invert_increasing([](double e) { return e; }, 0.25);
  EXPECT_GE(a, 0.25);
  EXPECT_LE(a, 0.25 * (1.0 + 2e-6));

  const double b = invert_increasing([](double e) { return std::log(e); }, -1.0);
  EXPECT_GE(b, oracle::kInvE);
  EXPECT_LE(b, oracle::kInvE * (1.0 + 2e-6));

  const double c = invert_increasing([](double e) { return 4.0 * std::log(e / 2.0); }, -4.0);
  EXPECT_GE(c, oracle::kTwoOverE * (1.0 - 1e-12));
  EXPECT_LE(c, oracle::kTwoOverE * (1.0 + 2e-6));
}

TEST(InvertIncreasing, OutOfRangeTarget) {
  const auto bounded = [](double e) { return std::atan(e); };
  EXPECT_THROW(invert_increasing(bounded, 2.0), TargetOutOfRangeError);
  EXPECT_THROW(invert_increasing([](double e) { return e; }, 0.5, 0.0), DomainError);
}

TEST(InvertIncreasing, PropertyUpperAndMonotoneInTarget) {
  testing::Gen gen(3);
  const auto f = [](double e) { return std::log(e) + e * e; };
  double prev_target = -50.0;
  double prev_result = invert_increasing(f, prev_target);
  for (int i = 0; i < 200; ++i) {
    const double target = prev_target + gen.uniform(0.0, 0.5);
    const double r = invert_increasing(f, target);
    EXPECT_GE(f(r), target);
    EXPECT_LT(f(r * (1.0 - 1e-6)), target);
    EXPECT_GE(r, prev_result);
    prev_target = target;
    prev_result = r;
  }
}

}  // namespace
}  // namespace certirate
