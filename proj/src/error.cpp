#include "fmlim/error.hpp"

namespace fmlim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::OutOfRangeImage: return "OutOfRangeImage";
    case ErrorCode::UnknownPredicate: return "UnknownPredicate";
    case ErrorCode::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::EmptyRestriction: return "EmptyRestriction";
    case ErrorCode::DuplicatePredicate: return "DuplicatePredicate";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotClean: return "NotClean";
    case ErrorCode::NotGuarded: return "NotGuarded";
    case ErrorCode::EtaNotFunctional: return "EtaNotFunctional";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::RankIncrease: return "RankIncrease";
    case ErrorCode::RankZero: return "RankZero";
    case ErrorCode::RankTooLow: return "RankTooLow";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Stuck: return "Stuck";
    case ErrorCode::MissingCutPredicates: return "MissingCutPredicates";
    case ErrorCode::MalformedCut: return "MalformedCut";
    case ErrorCode::NoHubAvailable: return "NoHubAvailable";
    case ErrorCode::HubsTooClose: return "HubsTooClose";
    case ErrorCode::InsufficientHubs: return "InsufficientHubs";
    case ErrorCode::ScheduleInfeasible: return "ScheduleInfeasible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace fmlim
