#include "pseudostar/error.hpp"

namespace pseudostar {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::BadLabeling: return "BadLabeling";
    case ErrorCode::BadSubset: return "BadSubset";
    case ErrorCode::NotInternal: return "NotInternal";
    case ErrorCode::NotEssential: return "NotEssential";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotTreelike: return "NotTreelike";
    case ErrorCode::Ambiguous: return "Ambiguous";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::NoValidWitness: return "NoValidWitness";
    case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    case ErrorCode::NotIoEligible: return "NotIoEligible";
    case ErrorCode::BadInsertion: return "BadInsertion";
    case ErrorCode::NegativeTwig: return "NegativeTwig";
    case ErrorCode::NotPseudostar: return "NotPseudostar";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingSubset: return "MissingSubset";
    case ErrorCode::DuplicateSubset: return "DuplicateSubset";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(ErrorCode::ParseError,
            what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

}  // namespace pseudostar
