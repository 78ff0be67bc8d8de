#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace reslim {

/// Base of every failure the engine reports. `code()` is a stable,
/// machine-parseable reason code (upper snake case) used by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define RESLIM_DEFINE_ERROR(Name, Code)                                  \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& message) : Error(Code, message) {}  \
  };

RESLIM_DEFINE_ERROR(DimensionMismatch, "DIMENSION_MISMATCH")
RESLIM_DEFINE_ERROR(InvalidValue, "INVALID_VALUE")
RESLIM_DEFINE_ERROR(EmptyInput, "EMPTY_INPUT")
RESLIM_DEFINE_ERROR(ParseError, "PARSE_ERROR")
RESLIM_DEFINE_ERROR(InsufficientResources, "INSUFFICIENT_RESOURCES")
RESLIM_DEFINE_ERROR(UnknownProcedure, "UNKNOWN_PROCEDURE")
RESLIM_DEFINE_ERROR(UnknownSubject, "UNKNOWN_SUBJECT")
RESLIM_DEFINE_ERROR(UnknownAtom, "UNKNOWN_ATOM")
RESLIM_DEFINE_ERROR(NotSpaceTimeProcedure, "NOT_SPACE_TIME_PROCEDURE")
RESLIM_DEFINE_ERROR(UncoveredAtom, "UNCOVERED_ATOM")
RESLIM_DEFINE_ERROR(NoStrategy, "NO_STRATEGY")
RESLIM_DEFINE_ERROR(StatementTooLong, "STATEMENT_TOO_LONG")
RESLIM_DEFINE_ERROR(MalformedCode, "MALFORMED_CODE")
RESLIM_DEFINE_ERROR(BudgetNotLarger, "BUDGET_NOT_LARGER")
RESLIM_DEFINE_ERROR(AxiomRejected, "AXIOM_REJECTED")
RESLIM_DEFINE_ERROR(EmptyKnowledge, "EMPTY_KNOWLEDGE")
RESLIM_DEFINE_ERROR(InvalidProof, "INVALID_PROOF")
RESLIM_DEFINE_ERROR(DanglingReference, "DANGLING_REFERENCE")
RESLIM_DEFINE_ERROR(CyclicVerifier, "CYCLIC_VERIFIER")
RESLIM_DEFINE_ERROR(MissingSection, "MISSING_SECTION")
RESLIM_DEFINE_ERROR(IoError, "IO_ERROR")

#undef RESLIM_DEFINE_ERROR

}  // namespace reslim
