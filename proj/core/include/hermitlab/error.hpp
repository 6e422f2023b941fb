#pragma once

#include <stdexcept>
#include <string>

namespace hermitlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, or ln/sqrt evaluated outside the principal-branch domain.
class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

/// The metric matrix is not positive definite at the evaluation point.
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

/// The evaluation point violates a domain constraint of the metric.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A derivative was requested from a jet that no longer carries it.
class InsufficientJetOrder : public Error {
 public:
  using Error::Error;
};

/// Input data failed validation (bad family, bad tensor, wrong shape...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An operation was called on data that does not satisfy its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Syntax or name error in the metric expression language.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::string expected = {})
      : Error(message + " at byte " + std::to_string(offset) +
              (expected.empty() ? std::string() : " (expected " + expected + ")")),
        message_(message),
        offset_(offset),
        expected_(std::move(expected)) {}

  /// The message without the position suffix.
  const std::string& message() const noexcept { return message_; }

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::string message_;
  std::size_t offset_;
  std::string expected_;
};

}  // namespace hermitlab
