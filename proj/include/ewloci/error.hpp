#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ewloci {

enum class ErrorKind {
  // cyclic_data
  EmptySignature,
  EntryBelowPole,
  SumNotMinusFour,
  ModulusTooSmall,
  LengthMismatch,
  SumNonzero,
  NotGenerating,
  // flat_surface
  NotInvolution,
  FixedSide,
  AxisMismatch,
  Disconnected,
  OddHalfAngle,
  NontrivialHolonomy,
  // cylinders
  NotCoprime,
  HalfTranslationUnsupported,
  // cover_builder
  CatalogValidationFailed,
  DisconnectedCover,
  RHMismatch,
  EllEven,
  PointOnSingularity,
  HitsSingularity,
  // geminal_reps
  NotTransitive,
  BudgetExceeded,
  // plumbing
  ParseError,
  InvalidArgument,
  Defect,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptySignature: return "EmptySignature";
    case ErrorKind::EntryBelowPole: return "EntryBelowPole";
    case ErrorKind::SumNotMinusFour: return "SumNotMinusFour";
    case ErrorKind::ModulusTooSmall: return "ModulusTooSmall";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::SumNonzero: return "SumNonzero";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::NotInvolution: return "NotInvolution";
    case ErrorKind::FixedSide: return "FixedSide";
    case ErrorKind::AxisMismatch: return "AxisMismatch";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::OddHalfAngle: return "OddHalfAngle";
    case ErrorKind::NontrivialHolonomy: return "NontrivialHolonomy";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::HalfTranslationUnsupported: return "HalfTranslationUnsupported";
    case ErrorKind::CatalogValidationFailed: return "CatalogValidationFailed";
    case ErrorKind::DisconnectedCover: return "DisconnectedCover";
    case ErrorKind::RHMismatch: return "RHMismatch";
    case ErrorKind::EllEven: return "EllEven";
    case ErrorKind::PointOnSingularity: return "PointOnSingularity";
    case ErrorKind::HitsSingularity: return "HitsSingularity";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Defect: return "Defect";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Internal consistency failures (a broken postcondition) are defects, not input errors.
inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::Defect, what);
}

}  // namespace ewloci
