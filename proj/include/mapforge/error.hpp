#pragma once

#include <stdexcept>
#include <string>

namespace mapforge {

enum class ErrorCode {
    NotPermutation,
    NotInvolution,
    FixedPointInAlpha,
    NotConnected,
    BadRoot,
    NotBicolorable,
    NotUnicellular,
    UnbalancedStems,
    NotWellRooted,
    NotSchemeRooted,
    NotRootable,
    NotFourValent,
    CyclicOffsetGraph,
    InconsistentNaming,
    HeightMismatch,
    ResourceLimit,
    CounterexampleFound,
    NonContracting,
    BadInterval,
    ConversionFailure,
    DomainError,
    ParseError,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotPermutation:     return "NotPermutation";
        case ErrorCode::NotInvolution:      return "NotInvolution";
        case ErrorCode::FixedPointInAlpha:  return "FixedPointInAlpha";
        case ErrorCode::NotConnected:       return "NotConnected";
        case ErrorCode::BadRoot:            return "BadRoot";
        case ErrorCode::NotBicolorable:     return "NotBicolorable";
        case ErrorCode::NotUnicellular:     return "NotUnicellular";
        case ErrorCode::UnbalancedStems:    return "UnbalancedStems";
        case ErrorCode::NotWellRooted:      return "NotWellRooted";
        case ErrorCode::NotSchemeRooted:    return "NotSchemeRooted";
        case ErrorCode::NotRootable:        return "NotRootable";
        case ErrorCode::NotFourValent:      return "NotFourValent";
        case ErrorCode::CyclicOffsetGraph:  return "CyclicOffsetGraph";
        case ErrorCode::InconsistentNaming: return "InconsistentNaming";
        case ErrorCode::HeightMismatch:     return "HeightMismatch";
        case ErrorCode::ResourceLimit:      return "ResourceLimit";
        case ErrorCode::CounterexampleFound:return "CounterexampleFound";
        case ErrorCode::NonContracting:     return "NonContracting";
        case ErrorCode::BadInterval:        return "BadInterval";
        case ErrorCode::ConversionFailure:  return "ConversionFailure";
        case ErrorCode::DomainError:        return "DomainError";
        case ErrorCode::ParseError:         return "ParseError";
    }
    return "Unknown";
}

class MapError : public std::runtime_error {
  public:
    MapError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw MapError(code, what);
}

}  // namespace mapforge
