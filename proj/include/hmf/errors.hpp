#ifndef HMF_ERRORS_HPP
#define HMF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hmf {

enum class ErrorCode {
  ConfigInvalid = 1,
  ContextMismatch,
  DivisionByZero,
  WeightMismatch,
  ModelMismatch,
  ModelInconsistent,
  NonDivisibleWeight,
  NotInKernel,
  NotAUnit,
  TruncationTooSmall,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hmf

#endif
