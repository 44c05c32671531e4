#include "spectra/error.hpp"

namespace spectra {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroDegree: return "ZeroDegree";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::EmptyMeasure: return "EmptyMeasure";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::VanishingEndCoefficient: return "VanishingEndCoefficient";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ComplexRoots: return "ComplexRoots";
    case ErrorCode::SignDegenerate: return "SignDegenerate";
    case ErrorCode::AlphaNotLeft: return "AlphaNotLeft";
    case ErrorCode::DuplicateValues: return "DuplicateValues";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::SingularOnContour: return "SingularOnContour";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::ResampleLimit: return "ResampleLimit";
    case ErrorCode::WrongSize: return "WrongSize";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownExperiment: return "UnknownExperiment";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool Error::is_numerical() const noexcept {
  switch (code_) {
    case ErrorCode::NoConvergence:
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::DegenerateSpectrum:
    case ErrorCode::ResampleLimit:
    case ErrorCode::NearPole:
    case ErrorCode::SingularOnContour:
      return true;
    default:
      return false;
  }
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace spectra
