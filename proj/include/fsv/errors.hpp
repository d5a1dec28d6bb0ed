#pragma once

#include <stdexcept>
#include <string>

namespace fsv {

enum class ErrorCode {
  DivisionByZeroContaining,
  DomainError,
  DimensionMismatch,
  SingularOrIllConditioned,
  ComplexPossible,
  NotSaddle,
  SingularJacobian,
  SelfConsistencyFailed,
  SignViolation,
  ConeConditionFailed,
  MConeFailed,
  SlowDirectionViolated,
  ShadowingFailed,
  SS5Failed,
  ChainTooShort,
  FoldEncountered,
  NonpositiveRate,
  MarginViolated,
  EnclosureNotFound,
  DropFailed,
  NotIsolating,
  FiberConditionFailed,
  IncompleteCertificate,
  ContinuationGap,
  ScenarioNotFound,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZeroContaining: return "DivisionByZeroContaining";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularOrIllConditioned: return "SingularOrIllConditioned";
    case ErrorCode::ComplexPossible: return "ComplexPossible";
    case ErrorCode::NotSaddle: return "NotSaddle";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::SelfConsistencyFailed: return "SelfConsistencyFailed";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::ConeConditionFailed: return "ConeConditionFailed";
    case ErrorCode::MConeFailed: return "MConeFailed";
    case ErrorCode::SlowDirectionViolated: return "SlowDirectionViolated";
    case ErrorCode::ShadowingFailed: return "ShadowingFailed";
    case ErrorCode::SS5Failed: return "SS5Failed";
    case ErrorCode::ChainTooShort: return "ChainTooShort";
    case ErrorCode::FoldEncountered: return "FoldEncountered";
    case ErrorCode::NonpositiveRate: return "NonpositiveRate";
    case ErrorCode::MarginViolated: return "MarginViolated";
    case ErrorCode::EnclosureNotFound: return "EnclosureNotFound";
    case ErrorCode::DropFailed: return "DropFailed";
    case ErrorCode::NotIsolating: return "NotIsolating";
    case ErrorCode::FiberConditionFailed: return "FiberConditionFailed";
    case ErrorCode::IncompleteCertificate: return "IncompleteCertificate";
    case ErrorCode::ContinuationGap: return "ContinuationGap";
    case ErrorCode::ScenarioNotFound: return "ScenarioNotFound";
  }
  return "UnknownError";
}

}  // namespace fsv
