#ifndef HLG_ERRORS_HPP
#define HLG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hlg {

enum class ErrorCode {
    CompositeModulus,
    PrimeBoundExceeded,
    ZeroInput,
    NotLiftable,
    TooFewVariables,
    RankMismatch,
    SingularForm,
    PointNotOnCurve,
    BadReductionPrime,
    BadPrimeNotExcluded,
    NonPositiveConductor,
    InsufficientTerms,
    OutOfConvergenceRegion,
    NoConsistentCandidate,
    EnumerationBudgetExceeded,
    NotASubgroup,
    NonabelianCoefficients,
    InvalidCocycle,
    InvalidGroupTable,
    InvalidAction,
    ParseError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception type; `code` identifies the failure class.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace hlg

#endif
