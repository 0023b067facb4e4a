#ifndef QTWIST_ERRORS_HPP_
#define QTWIST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qtwist {

enum class ErrorCode {
  kSingularCurve,
  kNotSquarefree,
  kZeroTwist,
  kTriplePointAtInfinity,
  kPrecisionUnreachable,
  kBudgetExceeded,
  kDependentGenerators,
  kOffCurvePoint,
  kTorsionArgument,
  kNotInSpan,
  kDomainError,
  kRootPrecisionFailure,
  kFactorizationAmbiguous,
  kDecompositionMismatch,
  kIoError,
  kUsage,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qtwist

#endif  // QTWIST_ERRORS_HPP_
