#pragma once

#include <stdexcept>
#include <string>

namespace ksp {

// Numeric values are shared with the C API status codes in ksp.h.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kParse = 2,
  kPrecondition = 3,
  kSizeLimit = 4,
  kBudget = 5,
  kVerification = 6,
  kIo = 7,
  kInternal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::kPrecondition, what) {}
};

class SizeLimitError : public Error {
 public:
  explicit SizeLimitError(const std::string& what)
      : Error(ErrorCode::kSizeLimit, what) {}
};

class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what)
      : Error(ErrorCode::kVerification, what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace ksp
