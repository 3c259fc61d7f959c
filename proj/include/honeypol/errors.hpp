#pragma once

#include <stdexcept>
#include <string>

#include "honeypol/geometry.hpp"

namespace honeypol {

enum class ErrorCode {
  kDomain,
  kUnsupportedGeometry,
  kValidation,
  kTruncation,
  kConsistency,
  kNonConvergence,
  kTheoremViolation,
  kIo,
};

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string &what) : Error(ErrorCode::kDomain, what) {}
};

class UnsupportedGeometryError : public Error {
 public:
  explicit UnsupportedGeometryError(const std::string &what)
      : Error(ErrorCode::kUnsupportedGeometry, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &what)
      : Error(ErrorCode::kValidation, what) {}
};

/// Enumeration cap reached before the tail bound met the requested tolerance.
class TruncationError : public Error {
 public:
  TruncationError(const std::string &what, double best_tail_bound)
      : Error(ErrorCode::kTruncation, what), best_tail_bound_(best_tail_bound) {}
  double best_tail_bound() const noexcept { return best_tail_bound_; }

 private:
  double best_tail_bound_;
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string &what)
      : Error(ErrorCode::kConsistency, what) {}
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string &what, Vec2 best_iterate,
                      double best_gradient_norm)
      : Error(ErrorCode::kNonConvergence, what),
        best_iterate_(best_iterate),
        best_gradient_norm_(best_gradient_norm) {}
  Vec2 best_iterate() const noexcept { return best_iterate_; }
  double best_gradient_norm() const noexcept { return best_gradient_norm_; }

 private:
  Vec2 best_iterate_;
  double best_gradient_norm_;
};

/// Raised when a certified comparison contradicts the hexagonal-over-honeycomb
/// inequality. Never expected.
class TheoremViolationError : public Error {
 public:
  explicit TheoremViolationError(const std::string &what)
      : Error(ErrorCode::kTheoremViolation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(ErrorCode::kIo, what) {}
};

}  // namespace honeypol
