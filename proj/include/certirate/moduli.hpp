#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace certirate {

/// Natural-number index produced by rates and moduli.
using Index = std::uint64_t;

/// Saturation value: any certificate at or above this is reported as impractical.
inline constexpr Index kImpractical =
    static_cast<Index>(std::numeric_limits<std::int64_t>::max());

/// ceil(v) as an index, saturating at kImpractical. Throws InvalidModulusError
/// on NaN, infinity or negative input.
Index index_from_real(double v);

Index saturating_add(Index a, Index b) noexcept;

inline bool is_impractical(Index n) noexcept { return n >= kImpractical; }

/// Fixed dyadic grid 2^k, k in [kMinExponent, kMaxExponent], used by
/// monotone closures and continuous bounding functions.
struct DyadicGrid {
  static constexpr int kMinExponent = -40;
  static constexpr int kMaxExponent = 16;

  static double point(int exponent);
  /// Smallest exponent k with 2^k >= x (clamped to the grid range).
  static int ceil_exponent(double x);
  /// Largest exponent k with 2^k <= x (clamped to the grid range).
  static int floor_exponent(double x);
};

/// Where a certificate came from: theorem name, numeric constants, moduli.
struct Provenance {
  std::string theorem;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::string> moduli;

  Provenance& constant(std::string name, double value) {
    constants.emplace_back(std::move(name), value);
    return *this;
  }
  Provenance& modulus(std::string label) {
    moduli.push_back(std::move(label));
    return *this;
  }
};

/// The gauge psi: nondecreasing, psi(0) = 0, positive on (0, inf).
///
/// Optionally carries a closed-form antiderivative of 1/psi. The
/// antiderivative is normalised so that it vanishes at t = 1; only
/// differences are ever used.
class GaugeFunction {
 public:
  using Fn = std::function<double(double)>;

  GaugeFunction(Fn eval, std::string label, std::optional<Fn> antideriv = std::nullopt);

  double operator()(double t) const { return eval_(t); }
  bool has_antiderivative() const noexcept { return antideriv_.has_value(); }
  /// Psi(t) - Psi(1). Requires has_antiderivative().
  double antiderivative(double t) const;
  const std::string& label() const noexcept { return label_; }

  /// psi(t) = k t.
  static GaugeFunction linear(double k);
  /// psi(t) = k t^p, p > 0.
  static GaugeFunction power(double k, double p);
  /// psi(t) = t^2 / (1 + t).
  static GaugeFunction rational_square();

 private:
  Fn eval_;
  std::optional<Fn> antideriv_;
  double antideriv_at_one_ = 0.0;
  std::string label_;
};

/// A rate of convergence eps -> index (nonincreasing after closure).
class ConvergenceRate {
 public:
  using Fn = std::function<Index(double)>;

  ConvergenceRate(Fn fn, Provenance provenance);
  ConvergenceRate(Fn fn, std::string label);

  /// Throws DomainError for eps <= 0 or NaN.
  Index operator()(double eps) const;
  const Provenance& provenance() const noexcept { return provenance_; }
  const std::string& label() const noexcept { return provenance_.theorem; }

  /// Wraps a real-valued formula; values are rounded up.
  static ConvergenceRate from_real(std::function<double(double)> f, std::string label);
  static ConvergenceRate zero();
  /// eps -> ceil(scale * eps^-power).
  static ConvergenceRate inverse_power(double scale, double power);

 private:
  Fn fn_;
  Provenance provenance_;
};

/// A rate of divergence (N, x) -> k >= N with sum_{n=N}^{k} alpha_n > x.
class DivergenceRate {
 public:
  using Fn = std::function<Index(Index, double)>;

  DivergenceRate(Fn fn, std::string label);

  /// Accepts x >= 0; saturates when N is impractical.
  Index operator()(Index start, double x) const;
  const std::string& label() const noexcept { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

/// Modulus of asymptotic psi-weak contractivity sigma(delta, b).
class ContractivityModulus {
 public:
  using Fn = std::function<Index(double, double)>;

  ContractivityModulus(Fn fn, bool b_independent, std::string label);

  Index operator()(double delta, double b) const;
  bool b_independent() const noexcept { return b_independent_; }
  const std::string& label() const noexcept { return label_; }

  static ContractivityModulus zero();
  static ContractivityModulus from_real(std::function<double(double, double)> f,
                                        bool b_independent, std::string label);

 private:
  Fn fn_;
  bool b_independent_;
  std::string label_;
};

/// Step sizes alpha_n in (0, cap] with a divergence rate and, optionally,
/// a rate for alpha_n -> 0.
struct StepSequence {
  std::function<double(Index)> alpha;
  double cap;
  DivergenceRate divergence;
  std::optional<ConvergenceRate> vanishing;
  std::string label;

  double operator()(Index n) const { return alpha(n); }

  /// alpha_n = a for all n.
  static StepSequence constant(double a);
  /// alpha_n = 1/(n+1) with brute-force partial-sum divergence and
  /// vanishing rate ceil(1/delta).
  static StepSequence harmonic();
};

/// Checks 0 < alpha_n <= cap for n < samples and, when present, that the
/// vanishing rate is honoured on a small delta grid. Throws ContractError.
void validate_steps(const StepSequence& steps, Index samples = 1000);

/// Running sup over the dyadic grid points >= eps (plus eps itself).
/// Dominates f pointwise; nonincreasing on the grid.
ConvergenceRate monotone_closure(const ConvergenceRate& f);

/// Running sup over grid points with delta' >= delta and b' <= b.
ContractivityModulus monotone_closure(const ContractivityModulus& sigma);

inline constexpr Index kDefaultDivergenceCap = 100'000'000;

/// Least k >= N with sum_{n=N}^{k} alpha_n > x by direct summation.
/// Throws DivergenceCapError once more than `cap` terms have been added.
DivergenceRate divergence_from_partial_sums(std::function<double(Index)> alpha,
                                            Index cap = kDefaultDivergenceCap,
                                            std::string label = "partial_sums");

/// r(N, x) = ceil(x + N), valid for alpha_n = 1.
DivergenceRate divergence_constant_one();

/// r(N, x) = ceil(x / a + N), valid for alpha_n = a.
DivergenceRate divergence_constant(double a);

/// Closed-form rate for alpha_n = 1/(n+1): ceil((N+1) e^x) - 1.
DivergenceRate divergence_harmonic_closed();

}  // namespace certirate
