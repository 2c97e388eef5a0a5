// Sturm chains and exact sign certification of polynomials and rational
// functions on closed rational intervals.
//
// The chain starts from the squarefree part of the input (same roots, all
// simple), continues with negated sign-safe pseudo remainders, and normalizes
// every term to a primitive integer polynomial by positive content division,
// so each term is a positive rational multiple of the classical Sturm term.
#pragma once

#include <optional>
#include <vector>

#include "poscurv/ratfunc.hpp"

namespace poscurv {

struct SturmChain {
  Var var = Var::t;
  std::vector<ZPoly> terms;  // terms[0] = squarefree primitive part
  bool squarefree_reduced = false;  // true if gcd(p, p') was nonconstant
};

// p must be nonzero.
SturmChain build_sturm_chain(Var var, const ZPoly& p);

// Signs of every chain term at x.
std::vector<int> chain_signs_at(const SturmChain& chain, const Rat& x);
// Number of sign changes, zeros skipped.
int count_sign_changes(const std::vector<int>& signs);
int sign_changes_at(const SturmChain& chain, const Rat& x);

// Number of distinct real roots in (a, b]; requires a < b. Valid even when
// a or b is a root (Sturm's theorem with the zero-skipping convention).
int count_roots_halfopen(const SturmChain& chain, const Rat& a, const Rat& b);
int count_roots_halfopen(Var var, const ZPoly& p, const Rat& a, const Rat& b);

enum class SignVerdict {
  StrictlyPositive,
  StrictlyNegative,
  HasZero,       // interior zero or zero at b
  BoundaryZero,  // zero at the left endpoint a
  ZeroPoly,
};

const char* verdict_name(SignVerdict v);

// Everything needed to replay the verdict independently.
struct SignCertificate {
  Var var = Var::t;
  ZPoly poly;  // the certified integer polynomial (as given, not reduced)
  Rat a, b;
  bool squarefree_reduced = false;
  std::vector<int> chain_degrees;
  int changes_at_a = 0;
  int changes_at_b = 0;
  int root_count = 0;  // roots in (a, b] of the squarefree part
  int sign_at_a = 0;   // sign of poly itself at a
  SignVerdict verdict = SignVerdict::ZeroPoly;
};

// Certifies the sign of p on the closed interval [a, b], a < b.
// Verdict taxonomy: ZeroPoly for the zero polynomial; BoundaryZero if
// p(a) = 0; HasZero if any root lies in (a, b]; otherwise the constant
// strict sign, which equals sign(p(a)).
SignCertificate certify_sign_closed(Var var, const ZPoly& p, const Rat& a, const Rat& b);

// Sign certificate for a rational function: numerator and denominator are
// certified separately; the overall sign is determinate only when both are
// strict. The zero function is Indeterminate (it has no strict sign).
struct RatFuncSignCertificate {
  SignCertificate num_cert, den_cert;
  // +1, -1, or std::nullopt when indeterminate.
  std::optional<int> overall_sign;
};

RatFuncSignCertificate certify_sign(const RatFunc& f, const Rat& a, const Rat& b);

}  // namespace poscurv
