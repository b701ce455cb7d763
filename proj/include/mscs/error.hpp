#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mscs {

enum class ErrorKind {
  LengthMismatch,
  EmptyVector,
  IndexOutOfRange,
  LevelOutOfRange,
  InvalidStateSpace,
  InvalidK,
  ArityMismatch,
  ParseError,
  ExplosionLimit,
  PreconditionViolated,
  HypothesisViolated,
  InvalidPMF,
  IoError,
  FormatError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every domain failure in the library is reported as an Error carrying its
/// kind, so callers (the CLI in particular) can map it without string
/// matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by parse_expr. `offset` is the 1-based byte offset of the
/// offending character (one past the end for premature end of input).
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& expected)
      : Error(ErrorKind::ParseError,
              "parse error at offset " + std::to_string(offset) + ": " +
                  expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace mscs
