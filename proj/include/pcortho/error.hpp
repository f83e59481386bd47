#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcortho {

enum class ErrorKind {
  OrderTooSmall,
  NotPositive,
  NotReciprocal,
  NotSkew,
  NotSymmetric,
  NotPositiveDefinite,
  NonPositiveWeight,
  LengthMismatch,
  ShapeMismatch,
  NotConsistent,
  ZeroMatrix,
  DegenerateElement,
  SingularGram,
  OracleMismatch,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to a status without parsing
/// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pcortho
