#pragma once

#include <stdexcept>
#include <string>

namespace tempfair {

/// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A good id or agent index that does not exist in the instance.
class InvalidReference : public Error {
 public:
  using Error::Error;
};

/// A round index outside [0, T].
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A placement that violates the scheduling buffer.
class BufferViolation : public Error {
 public:
  using Error::Error;
};

/// An allocation that is not a complete partition or does not respect the instance.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A solver was handed an instance outside the setting it is defined for.
class SettingError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive computation would exceed its configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance/allocation text or a malformed rational literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent generator request or bad numeric argument.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A picking procedure ran out of eligible goods for the scheduled picker.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant. Reaching this is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tempfair
