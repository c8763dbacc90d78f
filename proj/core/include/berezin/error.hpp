#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berezin {

enum class ErrorKind {
  BadMatrix,
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  NotPSD,
  OutOfDomain,
  DegenerateKernel,
  InvalidPlan,
  BadExponent,
  BadParams,
  FGProductMismatch,
  UnknownChecker,
  BadConfig,
  IoFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can dispatch on the category rather than the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace berezin
