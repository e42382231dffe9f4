#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hnn {

enum class ErrorKind {
  InvalidInput,
  InvalidState,
  NotPositive,
  NotASubalgebra,
  InvalidGroup,
  NotACqg,
  EmbeddingInvalid,
  HaarIncompatible,
  NumericalDegeneracy,
  SizeLimit,
  Truncation,
  ContextMismatch,
  LemmaViolation,
  Config,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hnn
