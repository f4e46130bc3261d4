#pragma once

#include "pfq/quad_core.hpp"

namespace pfq {

// Ramification index of alpha: multiplicity of alpha as a root of
// H_alpha = num - G(alpha) den (or den when G(alpha) = infinity).
// error: ConstantFunction
int ram_index(const RatFn& g, const P1& alpha);

// Ramification multiset of the fiber over beta, preimages sought in
// P^1(F_{q^4}); a fiber that does not split there is reported, not dropped.
// errors: ConstantFunction, PreimageOutsideWorkingField
std::vector<int> ram_multiset(const RatFn& g, const P1& beta);

struct HurwitzReport {
  int64_t lhs;  // 2 deg - 2
  int64_t rhs;  // sum of (e-1) over ramification points
  bool tame;    // no index divisible by p
  bool holds;   // lhs >= rhs
};

// Collects all ramification points (roots of the Wronskian plus infinity)
// and checks the genus-0 Riemann-Hurwitz count; equality must occur exactly
// in the tame case. errors: ConstantFunction, NonSeparable,
// PreimageOutsideWorkingField
HurwitzReport hurwitz_check(const RatFn& g);

struct BranchData {
  P1 point;
  std::vector<int> multiset;
};

struct RamReport {
  std::vector<P1> gamma;   // ramification locus, from V (plus infinity copies)
  std::vector<P1> lambda;  // branch locus candidates, from W
  std::vector<P1> sigma;   // roots of U
  std::vector<BranchData> branches;
  HurwitzReport hurwitz;
};

// Full geometric report for g_c, with every structural claim re-verified:
// gamma is exactly the set of points of ramification index > 1, branch points
// lie in lambda, and for C = 1 each branch multiset is [Q+1] or [1,Q].
// errors: ConstantG, ZeroInvariantPolynomial
RamReport ram_report(const CoeffVec& c);

// points of the quadratic shape: its roots plus (2 - deg) copies of infinity
std::vector<P1> shape_point_set(const QuadShape& s);

}  // namespace pfq
