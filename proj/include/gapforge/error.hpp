#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapforge {

enum class ErrorKind {
  NotPrime,
  DegreeZero,
  Reducible,
  DivisionByZero,
  FieldMismatch,
  DimensionMismatch,
  SizeCap,
  DegreeTooLarge,
  InvalidArgument,
  EnumerationCapExceeded,
  ParseError,
  ForwardReference,
  NoOutput,
  DuplicateName,
  ArityMismatch,
  GapClosed,
  EmptySlice,
  Overflow,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ForwardReference: return "ForwardReference";
    case ErrorKind::NoOutput: return "NoOutput";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::GapClosed: return "GapClosed";
    case ErrorKind::EmptySlice: return "EmptySlice";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures additionally remember the 1-based source line (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, const std::string& reason)
      : Error(kind, "line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace gapforge
