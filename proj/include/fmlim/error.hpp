#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fmlim {

enum class ErrorCode {
  EmptyDomain,
  OutOfRangeImage,
  UnknownPredicate,
  ElementOutOfRange,
  SignatureMismatch,
  EmptyRestriction,
  DuplicatePredicate,
  SyntaxError,
  UnknownSymbol,
  ArityError,
  UnboundVariable,
  BudgetExceeded,
  NotClean,
  NotGuarded,
  EtaNotFunctional,
  RankMismatch,
  RankIncrease,
  RankZero,
  RankTooLow,
  Infeasible,
  PreconditionFailed,
  Stuck,
  MissingCutPredicates,
  MalformedCut,
  NoHubAvailable,
  HubsTooClose,
  InsufficientHubs,
  ScheduleInfeasible,
  ParseError,
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every fmlim operation. The code is stable and is
/// what callers (and the CLI exit-code contract) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace fmlim
