#pragma once

#include "pfq/polyring.hpp"

namespace pfq {

// Multiplicative character of F_q^* of order d > 1 dividing q-1, realized
// through the fixed primitive root; chi(0) = chi(infinity) = 0.
struct MultChar {
  const FieldTower* tw;
  uint64_t order;
  // exponent class of x in Z/d (x a nonzero F_q index)
  uint64_t exponent(uint32_t fq_index) const;
};

MultChar make_char(const FieldTower& tw, uint64_t d);

struct CharSumResult {
  std::vector<int64_t> counts;  // counts[e] = #{x in P^1(F_q): chi-class e}
  double magnitude;             // |sum_x chi(f(x))|
  int m;                        // total degree of finite places of supp f
  double bound;                 // (m-1) sqrt(q)
  bool within_bound;            // magnitude <= bound + 1e-6
};

// Exact character sum of f over P^1(F_q), with the Weil bound verified.
// f must have Frobenius-fixed coefficients.
// errors: ZeroFunction, IsDthPower, NotOverBaseField
CharSumResult char_sum(const MultChar& chi, const RatFn& f);

struct AppendixSum {
  int64_t value;
  double lower_bound;
  bool positive;
};

// -(eps+1) t / ((1 + eps t)(1 - t)) as a reduced rational function
RatFn appendix_a_argument(const FieldTower& tw, Elt eps);
// lambda_eps N(x)/D(x) with N = (x+xi)(x+conj(xi)) and the matching D
RatFn appendix_b_argument(const FieldTower& tw, Elt eps, Elt xi);

// Power-residue count certifying non-planarity of P3(eps); requires k not
// dividing l and k/delta odd. errors: KDividesL, EpsilonConstraintViolated
AppendixSum appendix_a(const FieldTower& tw, Elt eps);

// Same certificate for f2(eps), with xi outside F_q; requires k/delta and
// l/delta odd (the caller applies the l -> k+l, eps -> eps^{-q} reduction
// when l/delta is even). errors: KDividesL, EpsilonInMu, XiInBaseField
AppendixSum appendix_b(const FieldTower& tw, Elt eps, Elt xi);

// Solutions (X,Z) in F_q^2 of the reduced P3 system at parameter t.
// errors: TOutOfRange, EpsilonConstraintViolated
int64_t p3_reduced_solutions(const FieldTower& tw, Elt eps, Elt t);

// Solutions (y,z), y in F_q, conj(z) = -z, of the reduced f2 system in the
// direction a. errors: EpsilonInMu
int64_t f2_reduced_solutions(const FieldTower& tw, Elt eps, Elt a);

}  // namespace pfq
