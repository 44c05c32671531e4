#ifndef SPECTRA_ERROR_HPP
#define SPECTRA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectra {

enum class ErrorCode {
  ZeroDegree,
  NearPole,
  NoConvergence,
  DegenerateInput,
  EmptyMeasure,
  ZeroPoint,
  VanishingEndCoefficient,
  HypothesisViolated,
  SizeMismatch,
  TooLarge,
  ComplexRoots,
  SignDegenerate,
  AlphaNotLeft,
  DuplicateValues,
  NonPositive,
  BadProbability,
  SingularOnContour,
  DegenerateSpectrum,
  NumericalBreakdown,
  ResampleLimit,
  WrongSize,
  InvalidArgument,
  UnknownExperiment,
  BadParams,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; code() identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

  // Numerical failures (as opposed to bad input / configuration).
  bool is_numerical() const noexcept;

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace spectra

#endif
