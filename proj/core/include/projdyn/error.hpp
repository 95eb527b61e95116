#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projdyn {

/// Machine-readable failure categories. The CLI maps these onto exit codes.
enum class ErrorCode {
  kInvalidInput,
  kRingMismatch,
  kBasePoint,
  kNotMorphism,
  kDegeneracy,
  kInterpolation,
  kUnsupported,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& message)
      : Error(ErrorCode::kInvalidInput, message) {}
};

class RingMismatch : public Error {
 public:
  explicit RingMismatch(const std::string& message)
      : Error(ErrorCode::kRingMismatch, message) {}
};

/// Every component of a map vanishes at the requested point.
class BasePointError : public Error {
 public:
  explicit BasePointError(const std::string& message)
      : Error(ErrorCode::kBasePoint, message) {}
};

class NotMorphism : public Error {
 public:
  explicit NotMorphism(const std::string& message)
      : Error(ErrorCode::kNotMorphism, message) {}
};

/// A computation hit a degenerate configuration it could not route around,
/// e.g. a singular reduced Macaulay minor with fallbacks exhausted.
/// `detail()` carries a stable machine-readable tag.
class DegeneracyError : public Error {
 public:
  DegeneracyError(std::string detail, const std::string& message)
      : Error(ErrorCode::kDegeneracy, message), detail_(std::move(detail)) {}

  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
};

class InterpolationError : public Error {
 public:
  enum class Reason { kInsufficient, kInconsistent, kUnderdetermined };

  InterpolationError(Reason reason, const std::string& message)
      : Error(ErrorCode::kInterpolation, message), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& message)
      : Error(ErrorCode::kUnsupported, message) {}
};

}  // namespace projdyn
