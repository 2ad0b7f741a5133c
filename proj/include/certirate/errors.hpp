#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace certirate {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A modulus produced a non-finite or negative value.
class InvalidModulusError : public Error {
 public:
  using Error::Error;
};

/// Direct summation of a series ran past the configured cap.
class DivergenceCapError : public Error {
 public:
  using Error::Error;
};

/// A gauge failed a sampled shape check (convexity, superadditivity, ...).
class InvalidGaugeError : public Error {
 public:
  using Error::Error;
};

/// psi vanished at the lower integration limit.
class GaugeDegenerateError : public Error {
 public:
  using Error::Error;
};

class TargetOutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a rate (e.g. eps <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bad constructor parameter: k out of range, d < 1, missing rate, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Requested a traditional bound before the index where it becomes valid.
class NotYetValidError : public Error {
 public:
  NotYetValidError(const std::string& what, std::uint64_t threshold)
      : Error(what), threshold_(threshold) {}
  std::uint64_t threshold() const noexcept { return threshold_; }

 private:
  std::uint64_t threshold_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class InvalidSpaceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedRetractionError : public Error {
 public:
  using Error::Error;
};

/// No closed form exists for the requested pair of sets.
class NotComputableError : public Error {
 public:
  using Error::Error;
};

class TrajectoryError : public Error {
 public:
  using Error::Error;
};

/// A mapping family or step sequence does not match what a theorem needs.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A sampled hypothesis check (H*, aconv, retraction bound) failed.
class HypothesisViolationError : public Error {
 public:
  HypothesisViolationError(const std::string& what, std::uint64_t index)
      : Error(what), index_(index) {}
  std::uint64_t index() const noexcept { return index_; }

 private:
  std::uint64_t index_;
};

class NumericalBlowupError : public Error {
 public:
  NumericalBlowupError(const std::string& what, std::uint64_t index)
      : Error(what), index_(index) {}
  std::uint64_t index() const noexcept { return index_; }

 private:
  std::uint64_t index_;
};

/// Malformed experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace certirate
