#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqinc {

enum class ErrorCode {
  NotPrime,
  DegreeOutOfRange,
  NoIrreducibleFound,
  DivisionByZero,
  FieldMismatch,
  SizeCap,
  SubsetTooLarge,
  BudgetExceeded,
  VerticalLinePresent,
  InvariantFailure,
  EvenCharacteristic,
  EqualPoints,
  ECoplanar,
  KTooSmall,
  Unrealizable,
  InvalidArgument,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fqinc
