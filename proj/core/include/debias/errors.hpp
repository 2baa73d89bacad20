#pragma once

#include <stdexcept>
#include <string>

namespace debias {

enum class ErrorCode {
  InvalidRatio,
  NonIntegralLevels,
  NonPositiveAlpha,
  LengthMismatch,
  NoFiniteMinimum,
  DegenerateInput,
  PathLongerThanSupport,
  ProviderFailure,
  NonFiniteTarget,
  DivergentChain,
  SingularCovariance,
  SubsetTooSmall,
  DimensionMismatch,
  FactorizationFailure,
  InvalidParams,
  StreamExhausted,
  ConfigError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidRatio: return "InvalidRatio";
    case ErrorCode::NonIntegralLevels: return "NonIntegralLevels";
    case ErrorCode::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NoFiniteMinimum: return "NoFiniteMinimum";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::PathLongerThanSupport: return "PathLongerThanSupport";
    case ErrorCode::ProviderFailure: return "ProviderFailure";
    case ErrorCode::NonFiniteTarget: return "NonFiniteTarget";
    case ErrorCode::DivergentChain: return "DivergentChain";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::SubsetTooSmall: return "SubsetTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::StreamExhausted: return "StreamExhausted";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace debias
