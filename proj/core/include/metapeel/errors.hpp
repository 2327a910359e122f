#pragma once

#include <stdexcept>
#include <string>

namespace metapeel {

/// Base class of all recoverable toolkit errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its stated contract.
class PreconditionViolation : public Error {
public:
  using Error::Error;
};

/// Unrepairable point set (coincident points within tolerance).
/// Callers evaluating genomes treat this as an infeasible design.
class DegenerateInput : public Error {
public:
  using Error::Error;
};

/// Unknown vector-export format tag.
class UnsupportedFormat : public Error {
public:
  using Error::Error;
};

/// Mesh spacing cannot resolve the narrowest feature of a cut shape.
class ResolutionTooCoarse : public Error {
public:
  using Error::Error;
};

/// Equilibrium iteration failed to meet the residual tolerance.
class NonConvergence : public Error {
public:
  using Error::Error;
};

/// A peel trace ended before the sheet fully detached.
class IncompleteTrace : public Error {
public:
  using Error::Error;
};

/// A statistic was requested on too small a sample.
class InsufficientData : public Error {
public:
  using Error::Error;
};

/// Invalid or inconsistent run configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace metapeel
