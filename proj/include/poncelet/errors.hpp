#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace poncelet {

//! Failure categories raised by the geometry kernel. Every value maps to a
//! "degenerate input" outcome for callers such as the CLI.
enum class ErrorCode
{
  ZeroVector,
  DimensionMismatch,
  ZeroPolynomial,
  DegenerateConic,
  PointNotIncident,
  PencilDegenerate,
  InvalidOrder,
  NonGenericPencil,
  NotCoaxalPencil,
  PointNotOnQuadric,
  SingularPoint,
  DegenerateIntersection,
  VertexOnQuadric,
  NonReducedIntersection,
  NullInput,
  TangentPair,
  BranchPoint,
  NullCircleHit,
  DegenerateConfiguration,
  TangentSphere,
  FamilyMismatch,
  ToleranceFailure,
};

constexpr std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::ZeroVector: return "ZeroVector";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
  case ErrorCode::DegenerateConic: return "DegenerateConic";
  case ErrorCode::PointNotIncident: return "PointNotIncident";
  case ErrorCode::PencilDegenerate: return "PencilDegenerate";
  case ErrorCode::InvalidOrder: return "InvalidOrder";
  case ErrorCode::NonGenericPencil: return "NonGenericPencil";
  case ErrorCode::NotCoaxalPencil: return "NotCoaxalPencil";
  case ErrorCode::PointNotOnQuadric: return "PointNotOnQuadric";
  case ErrorCode::SingularPoint: return "SingularPoint";
  case ErrorCode::DegenerateIntersection: return "DegenerateIntersection";
  case ErrorCode::VertexOnQuadric: return "VertexOnQuadric";
  case ErrorCode::NonReducedIntersection: return "NonReducedIntersection";
  case ErrorCode::NullInput: return "NullInput";
  case ErrorCode::TangentPair: return "TangentPair";
  case ErrorCode::BranchPoint: return "BranchPoint";
  case ErrorCode::NullCircleHit: return "NullCircleHit";
  case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
  case ErrorCode::TangentSphere: return "TangentSphere";
  case ErrorCode::FamilyMismatch: return "FamilyMismatch";
  case ErrorCode::ToleranceFailure: return "ToleranceFailure";
  }
  return "Unknown";
}

class GeometryError : public std::runtime_error
{
public:
  GeometryError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what)
    , code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
  throw GeometryError(code, what);
}

}  // namespace poncelet
