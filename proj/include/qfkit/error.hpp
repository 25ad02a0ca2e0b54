#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfkit {

/// Stable error taxonomy shared by every module. The numeric values are part
/// of the CLI report format and must not be reordered.
enum class ErrorCode {
  ZeroElement = 1,
  BadDiscriminant,
  BadField,
  FieldMismatch,
  ZeroSlot,
  UnsupportedField,
  UndecidableLayer,
  Degenerate,
  ZeroArgument,
  UnsupportedLocalField,
  EvenValuation,
  UnsupportedExponent,
  NotASimilarityFactor,
  DuplicateIndexSets,
  UnsupportedResidueField,
  PreconditionFailed,
  SearchExhausted,
  CertificateSearchExhausted,
  NotFound,
  DecompositionNotFound,
  DepthLimitExceeded,
  NotTorsion,
  DegenerateExtension,
  DegreeNot8,
  DegreeNot2n,
  UnknownExample,
  ParseError,
  Overflow,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::BadDiscriminant: return "BadDiscriminant";
    case ErrorCode::BadField: return "BadField";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroSlot: return "ZeroSlot";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::UndecidableLayer: return "UndecidableLayer";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::UnsupportedLocalField: return "UnsupportedLocalField";
    case ErrorCode::EvenValuation: return "EvenValuation";
    case ErrorCode::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorCode::NotASimilarityFactor: return "NotASimilarityFactor";
    case ErrorCode::DuplicateIndexSets: return "DuplicateIndexSets";
    case ErrorCode::UnsupportedResidueField: return "UnsupportedResidueField";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::CertificateSearchExhausted: return "CertificateSearchExhausted";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::DecompositionNotFound: return "DecompositionNotFound";
    case ErrorCode::DepthLimitExceeded: return "DepthLimitExceeded";
    case ErrorCode::NotTorsion: return "NotTorsion";
    case ErrorCode::DegenerateExtension: return "DegenerateExtension";
    case ErrorCode::DegreeNot8: return "DegreeNot8";
    case ErrorCode::DegreeNot2n: return "DegreeNot2n";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qfkit
