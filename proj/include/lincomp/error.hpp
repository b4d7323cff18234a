#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lincomp {

enum class Errc {
  NotPrime,
  NotIrreducible,
  DivisionByZero,
  FieldMismatch,
  ParseError,
  CyclicGraph,
  ReceiverIsSource,
  UnreachableNode,
  OrphanNonSource,
  UnknownNode,
  InconsistentCode,
  ArityMismatch,
  DimensionMismatch,
  RankDeficient,
  ZeroColumn,
  Singular,
  UnknownIndeterminate,
  Aborted,
  NotBinary,
  AllOnesColumnVector,
  NotInClass,
  ShapeMismatch,
  CutViolation,
  ClassMismatch,
  RandomBudgetExhausted,
  ConstructionMismatch,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::CyclicGraph: return "CyclicGraph";
    case Errc::ReceiverIsSource: return "ReceiverIsSource";
    case Errc::UnreachableNode: return "UnreachableNode";
    case Errc::OrphanNonSource: return "OrphanNonSource";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::InconsistentCode: return "InconsistentCode";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::ZeroColumn: return "ZeroColumn";
    case Errc::Singular: return "Singular";
    case Errc::UnknownIndeterminate: return "UnknownIndeterminate";
    case Errc::Aborted: return "Aborted";
    case Errc::NotBinary: return "NotBinary";
    case Errc::AllOnesColumnVector: return "AllOnesColumnVector";
    case Errc::NotInClass: return "NotInClass";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::CutViolation: return "CutViolation";
    case Errc::ClassMismatch: return "ClassMismatch";
    case Errc::RandomBudgetExhausted: return "RandomBudgetExhausted";
    case Errc::ConstructionMismatch: return "ConstructionMismatch";
  }
  return "Unknown";
}

/// All library failures surface as this exception; `code()` names the
/// failure kind and `what()` carries the detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lincomp
