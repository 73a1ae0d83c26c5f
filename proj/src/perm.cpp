#include "mge/perm.hpp"

#include <algorithm>
#include <cstdlib>

#include "mge/error.hpp"

namespace mge {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::FixedPointInvolution: return "FixedPointInvolution";
    case ErrorCode::NotAnInvolution: return "NotAnInvolution";
    case ErrorCode::NonInjectiveAttach: return "NonInjectiveAttach";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::MissingVertexMap: return "MissingVertexMap";
    case ErrorCode::InvolutionNotPreserved: return "InvolutionNotPreserved";
    case ErrorCode::SourceTargetMismatch: return "SourceTargetMismatch";
    case ErrorCode::SizeBoundExceeded: return "SizeBoundExceeded";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NotBivalent: return "NotBivalent";
    case ErrorCode::InvalidOrientation: return "InvalidOrientation";
    case ErrorCode::NotAGluingDatum: return "NotAGluingDatum";
    case ErrorCode::NotInnerOrbit: return "NotInnerOrbit";
    case ErrorCode::DegenerateGraphOfGraphs: return "DegenerateGraphOfGraphs";
    case ErrorCode::UnitNotEquivariant: return "UnitNotEquivariant";
    case ErrorCode::ContractedUnitNotOmegaInvariant: return "ContractedUnitNotOmegaInvariant";
    case ErrorCode::UnitNotInjective: return "UnitNotInjective";
    case ErrorCode::PullbackFails: return "PullbackFails";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::ColorMismatch: return "ColorMismatch";
    case ErrorCode::DegenerateRepresentative: return "DegenerateRepresentative";
    case ErrorCode::NotInner: return "NotInner";
    case ErrorCode::PartialMapUndefined: return "PartialMapUndefined";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::IncompletePresheaf: return "IncompletePresheaf";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

int default_bound() {
  if (const char* s = std::getenv("MGE_BOUND")) {
    int b = std::atoi(s);
    if (b > 0) return b;
  }
  return 64;
}

Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int perm_rank(const Perm& p) {
  int n = static_cast<int>(p.size());
  long long r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    r += smaller * factorial(n - 1 - i);
  }
  return static_cast<int>(r);
}

}  // namespace mge
