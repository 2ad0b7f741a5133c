#include <gtest/gtest.h>

#include <cmath>

#include "certirate/errors.hpp"
#include "certirate/rates.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/perturbed_fixture.hpp"

namespace certirate {
namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

const Vector kOrigin = vec({0, 0});

StepSequence harmonic_with_vanishing() {
  StepSequence s = StepSequence::harmonic();
  s.vanishing = ConvergenceRate::inverse_power(1.0, 1.0);
  return s;
}

TEST(SimpleRate, Examples) {
  EXPECT_EQ(simple_rate(GaugeFunction::linear(0.5), 1.0)(0.1), oracle::kCeil4Ln20Plus1);
  EXPECT_EQ(simple_rate(GaugeFunction::linear(0.5), 1.0)(2.0), 1u);
  EXPECT_EQ(simple_rate(GaugeFunction::linear(1.0), 1.0)(0.2), oracle::kCeil2Ln10Plus1);
  EXPECT_THROW(simple_rate(GaugeFunction::linear(1.0), 1.0)(0.0), DomainError);
  EXPECT_THROW(simple_rate(GaugeFunction::linear(1.0), 0.0), ParameterError);
}

TEST(MannRate, Examples) {
  const auto strong = make_strong(0.5, kOrigin);
  const auto phi = mann_rate(strong, StepSequence::constant(1.0), 1.0, 1.0);
  EXPECT_EQ(phi(0.1), oracle::kCeil4Ln20Plus1);
  EXPECT_EQ(phi(2.0), 1u);
  EXPECT_EQ(phi.provenance().theorem.empty(), false);
}

TEST(MannRate, TotalAsyncComposition) {
  const auto rate = ConvergenceRate::inverse_power(1.0, 0.5);
  const auto fam = make_total_async(TotalAsyncParams{GaugeFunction::linear(0.5), GaugeFunction::linear(1.0),
                                                     [](Index n) { return std::pow(n + 1.0, -2.0); },
                                                     [](Index n) { return std::pow(n + 1.0, -2.0); }, rate, rate},
                                    make_strong(0.5, kOrigin));
  EXPECT_EQ(mann_rate(fam, StepSequence::constant(1.0), 1.0, 1.0)(0.2), oracle::kCeil9Plus4Ln10Plus1);
}

TEST(MannRate, Errors) {
  const auto strong = make_strong(0.5, kOrigin);
  EXPECT_THROW(mann_rate(strong, StepSequence::constant(1.0), 0.5, 1.0), ParameterError);
  EXPECT_THROW(mann_rate(make_dweak(0.5, kOrigin), StepSequence::constant(1.0), 1.0, 1.0), ContractError);
  auto growing = strong;
  growing.k_n = [](Index n) { return n >= 3 ? 0.5 : 0.0; };
  try {
    mann_rate(growing, StepSequence::constant(1.0), 1.2, 1.0);
    FAIL() << "expected HypothesisViolationError";
  } catch (const HypothesisViolationError& e) {
    EXPECT_EQ(e.index(), 3u);
  }
}

TEST(MannRate, PropertyAgreesWithSimpleRate) {
  for (double k : {0.1, 0.5, 0.9}) {
    for (double c : {0.5, 1.0, 3.0}) {
      const auto mann = mann_rate(make_strong(k, kOrigin), StepSequence::constant(1.0), 1.0, c);
      const auto simple = simple_rate(GaugeFunction::linear(k), c);
      for (double eps : testing::log_grid(2.0, 12)) EXPECT_EQ(mann(eps), simple(eps)) << "k=" << k << " c=" << c;
    }
  }
}

TEST(CmaxBound, Examples) {
  const auto strong = make_strong(0.5, kOrigin);
  const auto geometric = cmax_bound(strong, StepSequence::constant(1.0), 1.0,
                                    [](Index n) { return std::ldexp(1.0, -static_cast<int>(n)); });
  EXPECT_EQ(geometric.c, 1.0);
  EXPECT_EQ(geometric.m, 0u);
  EXPECT_EQ(geometric.k, oracle::kCeil4Ln2Plus1);
  EXPECT_EQ(cmax_bound(strong, StepSequence::constant(1.0), 1.0, [](Index) { return 0.0; }).c, 1.0);
  EXPECT_EQ(cmax_bound(strong, StepSequence::constant(1.0), 1.0, [](Index n) { return n == 2 ? 3.5 : 1.0; }).c,
            3.5);
}

TEST(CmaxBound, RequiresBIndependentSigma) {
  auto fam = make_strong(0.5, kOrigin);
  fam.sigma = ContractivityModulus::from_real([](double, double b) { return b; }, false, "b");
  EXPECT_THROW(cmax_bound(fam, StepSequence::constant(1.0), 1.0, [](Index) { return 1.0; }), ParameterError);
}

TEST(DweaklyRate, HarmonicExample) {
  const auto fam = make_dweak(0.5, kOrigin);
  const auto steps = harmonic_with_vanishing();
  EXPECT_EQ(dweakly_threshold(fam, steps, omega_hilbert(), 1.0, 1.0)(0.25), 16u);
  const auto phi = dweakly_rate(fam, steps, omega_hilbert(), 1.0, 1.0);
  EXPECT_EQ(phi(1.0), oracle::kHarmonicFrom16Past2Ln2 + 1);
}

TEST(DweaklyRate, EmptyIntegral) {
  const auto fam = make_dweak(0.5, kOrigin);
  const auto steps = harmonic_with_vanishing();
  const auto phi = dweakly_rate(fam, steps, omega_hilbert(), 1.0, 1.0);
  const auto n = dweakly_threshold(fam, steps, omega_hilbert(), 1.0, 1.0);
  const double eps = 2.0;
  const double psi_half = 2.0 * fam.psi(std::sqrt(eps * eps / 2.0));
  const Index start = monotone_closure(n)(0.5 * std::min(psi_half, eps * eps));
  EXPECT_EQ(phi(eps), start + 1);
}

TEST(DweaklyRate, Errors) {
  EXPECT_THROW(dweakly_rate(make_strong(0.5, kOrigin), harmonic_with_vanishing(), omega_hilbert(), 1.0, 1.0),
               ContractError);
  EXPECT_THROW(dweakly_rate(make_dweak(0.5, kOrigin), StepSequence::constant(1.0), omega_hilbert(), 1.0, 1.0),
               ContractError);
  auto lying = StepSequence::constant(1.0);
  lying.vanishing = ConvergenceRate::zero();
  EXPECT_THROW(dweakly_rate(make_dweak(0.5, kOrigin), lying, omega_hilbert(), 1.0, 1.0), ContractError);
}

TEST(DweaklyConcrete, MatchesExplicitOmega) {
  const auto fam = make_dweak(0.5, kOrigin);
  const auto steps = harmonic_with_vanishing();
  StepSequence closed = steps;
  closed.divergence = divergence_harmonic_closed();
  const auto concrete = dweakly_concrete_rate(fam, closed, tau_for_lp(2.0), 1.0, 1.0);
  const auto explicit_omega = dweakly_rate(fam, closed, omega_from_tau(tau_for_lp(2.0)), 1.0, 1.0);
  for (double eps : testing::log_grid(1.0, 6)) EXPECT_EQ(concrete(eps), explicit_omega(eps));
  const auto omega = omega_from_tau(tau_for_lp(2.0));
  EXPECT_NEAR(omega(1.0, 0.8), 0.64 / 12.0 * 0.4, 1e-15);
}

TEST(PerturbedRate, FixedSetExample) {
  const auto fam = make_strong(0.5, kOrigin);
  const auto setup = testing::fixed_set_setup(centered_box(2, 1.0), 1e-12, ConvergenceRate::zero());
  const auto phi = perturbed_rate(fam, StepSequence::constant(1.0), setup, ConvergenceRate::zero(),
                                  PerturbedBounds{1.0, 1.0, 1.0, 2.0});
  EXPECT_EQ(phi(0.2), oracle::kCeil4Ln40Plus1);
}

TEST(PerturbedRate, ThresholdAndRadius) {
  const auto fam = make_strong(0.5, kOrigin);
  const auto n = perturbed_threshold(fam, ConvergenceRate::inverse_power(1.0, 1.0),
                                     ConvergenceRate::inverse_power(2.0, 1.0), 1.0, 1.0);
  EXPECT_EQ(n(0.5), 4u);
  EXPECT_DOUBLE_EQ(perturbed_radius(1.0, 1.0, 1.0, 1.0), 11.0);
}

TEST(PerturbedConcrete, Examples) {
  const auto fam = make_strong(0.5, kOrigin);
  const auto setup = testing::fixed_set_setup(centered_box(2, 1.0), 1e-12, ConvergenceRate::zero());
  const auto phi = perturbed_concrete_rate(fam, StepSequence::constant(1.0), setup, 1.0, 1.0, 1.0);
  EXPECT_EQ(phi(0.2), oracle::kCeil4Ln40Plus1);
  EXPECT_EQ(phi(8.0), 1u);

  const double radius = perturbed_radius(1.0, 1.0, 1.0, 1.0);
  auto shrinking = testing::fixed_set_setup(centered_box(2, 1.0), 1.0, ConvergenceRate::inverse_power(1.0, 1.0));
  shrinking.a_seq = [radius](Index n) { return 1.0 / (4.0 * radius * (n + 1.0) * (n + 1.0)); };
  const auto phi2 = perturbed_concrete_rate(testing::collapse_family(kOrigin), StepSequence::constant(1.0),
                                            shrinking, 1.0, 1.0, 1.0);
  EXPECT_EQ(phi2(0.4), oracle::kCeil20Plus2Ln20Plus1);
}

TEST(PerturbedRate, PropertyDegeneratesToConcrete) {
  const auto fam = make_strong(0.5, kOrigin);
  const auto setup = testing::fixed_set_setup(centered_box(2, 1.0), 1e-12, ConvergenceRate::zero());
  for (double c3 : {0.5, 1.0, 1.5}) {
    const auto general = perturbed_rate(fam, StepSequence::constant(0.5), setup, ConvergenceRate::zero(),
                                        PerturbedBounds{1.0, 1.0, c3, 2.0 * c3});
    const auto concrete = perturbed_concrete_rate(fam, StepSequence::constant(0.5), setup, 1.0, 1.0, c3);
    for (double eps : testing::log_grid(4.0, 12)) EXPECT_EQ(general(eps), concrete(eps)) << "c3=" << c3;
  }
}

TEST(PerturbedRate, SetupViolations) {
  const auto fam = make_strong(0.5, kOrigin);
  auto far = testing::fixed_set_setup(centered_box(2, 1.0), 1e-3, ConvergenceRate::zero());
  const Retraction wide(centered_box(2, 1.5), LpSpace(2, 2.0));
  far.retractions = [far, wide](Index n) { return n >= 5 ? wide : far.limit; };
  try {
    perturbed_concrete_rate(fam, StepSequence::constant(0.5), far, 1.0, 1.0, 1.0);
    FAIL() << "expected HypothesisViolationError";
  } catch (const HypothesisViolationError& e) {
    EXPECT_EQ(e.index(), 5u);
  }

  const auto loose = testing::fixed_set_setup(centered_box(2, 1.0), 0.5, ConvergenceRate::zero());
  EXPECT_THROW(perturbed_concrete_rate(fam, StepSequence::constant(0.5), loose, 1.0, 1.0, 1.0),
               HypothesisViolationError);
  EXPECT_TRUE(find_aconv_violation(loose, StepSequence::constant(0.5), 9.0).has_value());

  const auto off = testing::fixed_set_setup(make_box(vec({2, 2}), vec({3, 3})), 1e-12, ConvergenceRate::zero());
  EXPECT_THROW(perturbed_concrete_rate(fam, StepSequence::constant(0.5), off, 1.0, 1.0, 1.0), ContractError);
  EXPECT_THROW(perturbed_concrete_rate(make_dweak(0.5, kOrigin), StepSequence::constant(0.5),
                                       testing::fixed_set_setup(centered_box(2, 1.0), 1e-12, ConvergenceRate::zero()),
                                       1.0, 1.0, 1.0),
               ContractError);
}

}  // namespace
}  // namespace certirate
