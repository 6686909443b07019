#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tch {

/// Base class for all domain errors raised by the engine. CLI maps these to exit 1.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad documents, unknown names, invalid arguments. CLI maps to exit 2.
class InputError : public Error {
  public:
    using Error::Error;
};

/// Duplicate idempotent label or generator name.
class DuplicateName : public InputError {
  public:
    using InputError::InputError;
};

/// Reference to an idempotent label or generator name that does not exist.
class UnknownName : public InputError {
  public:
    using InputError::InputError;
};

/// Adjacent word factors whose endpoints do not match, or a product with
/// non-composable cross terms.
class NonComposable : public Error {
  public:
    using Error::Error;
};

/// Amalgamation/colimit found two determined differentials that disagree for an
/// identified generator.
class DifferentialMismatch : public Error {
  public:
    using Error::Error;
};

/// A colimit diagram whose edge maps fail to commute along some pair of paths.
class FunctorialityError : public Error {
  public:
    using Error::Error;
};

/// An operation needed a differential that is Unspecified. Carries the offenders.
class UndeterminedDifferential : public Error {
  public:
    UndeterminedDifferential(const std::string& what, std::vector<std::string> offenders)
        : Error(what), offenders(std::move(offenders)) {}
    std::vector<std::string> offenders;
};

/// Exhaustive augmentation search refused: too many degree-0 generators.
class BoundExceeded : public Error {
  public:
    using Error::Error;
};

/// The chord finder hit a non-isolated (or numerically degenerate) critical family,
/// e.g. the diameters of a round circle. Signals that a perturbation is needed.
class DegenerateFamily : public Error {
  public:
    using Error::Error;
};

}  // namespace tch
