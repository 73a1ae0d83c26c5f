#pragma once
#include <stdexcept>
#include <string>

namespace mge {

enum class ErrorCode {
  FixedPointInvolution,
  NotAnInvolution,
  NonInjectiveAttach,
  IndexOutOfRange,
  InvalidParameter,
  UnknownVertex,
  NotCommuting,
  MissingVertexMap,
  InvolutionNotPreserved,
  SourceTargetMismatch,
  SizeBoundExceeded,
  NotConnected,
  NotBivalent,
  InvalidOrientation,
  NotAGluingDatum,
  NotInnerOrbit,
  DegenerateGraphOfGraphs,
  UnitNotEquivariant,
  ContractedUnitNotOmegaInvariant,
  UnitNotInjective,
  PullbackFails,
  LabelMismatch,
  UnknownElement,
  ColorMismatch,
  DegenerateRepresentative,
  NotInner,
  PartialMapUndefined,
  Mismatch,
  IncompletePresheaf,
  ParseError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(error_name(c)) + ": " + msg), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

// Default size bound (edges) for enumerations; overridable via MGE_BOUND.
int default_bound();

}  // namespace mge
