#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pseudostar {

enum class ErrorCode {
  NotATree,
  BadLabeling,
  BadSubset,
  NotInternal,
  NotEssential,
  BadK,
  ShapeMismatch,
  NotTreelike,
  Ambiguous,
  Inconsistent,
  NoValidWitness,
  InconsistentSystem,
  NotIoEligible,
  BadInsertion,
  NegativeTwig,
  NotPseudostar,
  NotPositive,
  InfeasibleSpec,
  TooLarge,
  ParseError,
  MissingSubset,
  DuplicateSubset,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pseudostar
