#pragma once

#include <stdexcept>
#include <string>

namespace fbmhd {

enum class ErrorKind {
  CollarViolation,
  NotStarShaped,
  SolverDiverged,
  NonZeroMean,
  TaylorSignViolation,
  TangencyViolation,
  DivergenceViolation,
  ExtrapolationTooFar,
  ScaleTooCoarse,
  FixedPointDiverged,
  UnknownExpr,
  InvalidArgument,
  Io,
  Parse,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string stage = {})
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what),
        kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }

  // Re-raise with a pipeline stage attached, keeping the original kind.
  Error with_stage(const std::string& stage) const {
    Error e = *this;
    e.stage_ = stage;
    return e;
  }

 private:
  ErrorKind kind_;
  std::string stage_;
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::CollarViolation: return "CollarViolation";
    case ErrorKind::NotStarShaped: return "NotStarShaped";
    case ErrorKind::SolverDiverged: return "SolverDiverged";
    case ErrorKind::NonZeroMean: return "NonZeroMean";
    case ErrorKind::TaylorSignViolation: return "TaylorSignViolation";
    case ErrorKind::TangencyViolation: return "TangencyViolation";
    case ErrorKind::DivergenceViolation: return "DivergenceViolation";
    case ErrorKind::ExtrapolationTooFar: return "ExtrapolationTooFar";
    case ErrorKind::ScaleTooCoarse: return "ScaleTooCoarse";
    case ErrorKind::FixedPointDiverged: return "FixedPointDiverged";
    case ErrorKind::UnknownExpr: return "UnknownExpr";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace fbmhd
