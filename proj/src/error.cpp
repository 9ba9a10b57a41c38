#include "fqinc/error.hpp"

namespace fqinc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::NoIrreducibleFound: return "NoIrreducibleFound";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::SubsetTooLarge: return "SubsetTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::VerticalLinePresent: return "VerticalLinePresent";
    case ErrorCode::InvariantFailure: return "InvariantFailure";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::EqualPoints: return "EqualPoints";
    case ErrorCode::ECoplanar: return "ECoplanar";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::Unrealizable: return "Unrealizable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace fqinc
