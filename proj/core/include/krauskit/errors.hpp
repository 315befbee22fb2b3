#pragma once

#include <stdexcept>
#include <string>

namespace kraus {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class NotHermitian : public Error {
public:
  using Error::Error;
};

class NotNormalized : public Error {
public:
  using Error::Error;
};

class NotCommuting : public Error {
public:
  using Error::Error;
};

class NotNormal : public Error {
public:
  using Error::Error;
};

class NotUnitVector : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

/// A structural invariant of a computed decomposition failed. Usually signals
/// a numerical-rank misjudgment; callers may tighten tolerances and retry.
class PropertyViolation : public Error {
public:
  enum class Kind { FaithfulStationary, SpectralRadius, BlockZero };

  PropertyViolation(Kind kind, const std::string& what)
      : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

class RadiusNotLessThanOne : public Error {
public:
  using Error::Error;
};

class PreconditionViolated : public Error {
public:
  using Error::Error;
};

class ExplosionCap : public Error {
public:
  using Error::Error;
};

class DegenerateStep : public Error {
public:
  using Error::Error;
};

/// Malformed input file or JSON document.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace kraus
