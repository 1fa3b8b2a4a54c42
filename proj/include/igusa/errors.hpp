#pragma once

#include <stdexcept>
#include <string>

namespace igusa {

// Machine-readable failure categories.  The command line tool maps each
// category onto a stable process exit code; library callers can switch on
// code() instead of parsing messages.
enum class ErrorCode {
  ParseError,                       // bad input text
  MismatchedPrime,                  // operands built over different primes
  PoleAtEvaluation,                 // evaluating a rational function at a pole
  ReducibleFactor,                  // input required an irreducible polynomial
  NeedMoreDepth,                    // residue-class scan hit its depth cap
  EmptyTree,                        // cluster tree has no bullet to reduce
  NonRationalCenterUnsupported,     // blow-up center exists but is not rational
  NonRationalDirectionUnsupported,  // tangent direction exists but is not rational
  MaxBlowupsExceeded,               // resolution did not terminate within cap
  MultipleSingularPoints,           // pole classification needs a single germ
  HypothesisViolated,               // verification op called outside hypotheses
  AlphaZero,                        // an exponent alpha_i vanishes at s0
  DomainError,                      // malformed domain / unsupported precondition
  InternalInvariant,                // internal consistency check failed
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MismatchedPrime: return "MismatchedPrime";
    case ErrorCode::PoleAtEvaluation: return "PoleAtEvaluation";
    case ErrorCode::ReducibleFactor: return "ReducibleFactor";
    case ErrorCode::NeedMoreDepth: return "NeedMoreDepth";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::NonRationalCenterUnsupported: return "NonRationalCenterUnsupported";
    case ErrorCode::NonRationalDirectionUnsupported: return "NonRationalDirectionUnsupported";
    case ErrorCode::MaxBlowupsExceeded: return "MaxBlowupsExceeded";
    case ErrorCode::MultipleSingularPoints: return "MultipleSingularPoints";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::AlphaZero: return "AlphaZero";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
  throw Error(c, msg);
}

inline void require(bool ok, ErrorCode c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace igusa
