#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rpos {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
  OutsideDomain,
  PoleAtInput,
  BranchCutViolation,
  UnsupportedPair,
  ZeroDenominator,
  NonPositiveModulus,
  DivergentLogIntegral,
  ParameterOutOfRange,
  UnsupportedSupport,
  SampleOutsidePositiveCone,
  NegativeSupport,
  NegativeWeight,
  DivergentTransform,
  PoleOnLattice,
  PoleAtInteger,
  AsymmetricInput,
  AtomAtZero,
  ReflectionViolation,
  ToleranceNotReached,
  InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::PoleAtInput: return "PoleAtInput";
    case ErrorKind::BranchCutViolation: return "BranchCutViolation";
    case ErrorKind::UnsupportedPair: return "UnsupportedPair";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NonPositiveModulus: return "NonPositiveModulus";
    case ErrorKind::DivergentLogIntegral: return "DivergentLogIntegral";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::UnsupportedSupport: return "UnsupportedSupport";
    case ErrorKind::SampleOutsidePositiveCone: return "SampleOutsidePositiveCone";
    case ErrorKind::NegativeSupport: return "NegativeSupport";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::DivergentTransform: return "DivergentTransform";
    case ErrorKind::PoleOnLattice: return "PoleOnLattice";
    case ErrorKind::PoleAtInteger: return "PoleAtInteger";
    case ErrorKind::AsymmetricInput: return "AsymmetricInput";
    case ErrorKind::AtomAtZero: return "AtomAtZero";
    case ErrorKind::ReflectionViolation: return "ReflectionViolation";
    case ErrorKind::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace rpos
