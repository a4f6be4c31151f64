#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mfb {

enum class ErrorKind {
  Parse,
  DuplicatePair,
  BadIndex,
  FlatTooSmall,
  DuplicateFlat,
  NoSuchCatalogEntry,
  DegenerateArrangement,
  OddLineCount,
  ZeroFirstComponent,
  DimensionMismatch,
  Infeasible,
  NotSurjective,
  NotSurjectiveModD,
  BadDivisor,
  ModulusNotPowerOfTwo,
  MissingAnnotation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::DuplicatePair: return "DuplicatePair";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::FlatTooSmall: return "FlatTooSmall";
    case ErrorKind::DuplicateFlat: return "DuplicateFlat";
    case ErrorKind::NoSuchCatalogEntry: return "NoSuchCatalogEntry";
    case ErrorKind::DegenerateArrangement: return "DegenerateArrangement";
    case ErrorKind::OddLineCount: return "OddLineCount";
    case ErrorKind::ZeroFirstComponent: return "ZeroFirstComponent";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotSurjectiveModD: return "NotSurjectiveModD";
    case ErrorKind::BadDivisor: return "BadDivisor";
    case ErrorKind::ModulusNotPowerOfTwo: return "ModulusNotPowerOfTwo";
    case ErrorKind::MissingAnnotation: return "MissingAnnotation";
  }
  return "UnknownError";
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

}  // namespace mfb
