#pragma once

#include <optional>

#include "pfq/quad_core.hpp"

namespace pfq {

// Value table of a function on F_{q^2} (Univariate) or on F_q^2
// (Biprojective; pairs packed as lo + q*hi, which matches the additive
// structure of F_{q^2}).
struct FnTable {
  enum Kind { Univariate, Biprojective };
  Kind kind;
  const FieldTower* tw;
  std::vector<uint32_t> values;  // length q^2
};

struct BruteWitness {
  uint32_t a, b, x1, x2;  // x1 != x2, F(x1+a)-F(x1) = F(x2+a)-F(x2) = b
};

struct BruteResult {
  bool planar;
  std::optional<BruteWitness> witness;
};

// Derivative-bijectivity check over every nonzero direction, first failure
// (smallest direction in the canonical enumeration) returned as a re-verified
// witness. workers > 1 partitions the direction range.
BruteResult is_planar_bruteforce(const FnTable& f, uint32_t workers = 1);

// Odd-cardinality two-to-one: one singleton fiber, all others of size 0 or 2.
bool is_two_to_one(const FnTable& f);

struct DOEquivalence {
  bool planar;
  bool two_to_one_zero_kernel;
  bool agree;
};
// For DO tables, planarity and (2-to-1 with f^{-1}(0)={0}) coincide; computes
// both sides and reports agreement.
DOEquivalence do_planarity_equivalence(const FnTable& f);

enum class FamilyTag { P0, F0, F1, P1, P2, P3, F2, X2 };

const char* family_tag_name(FamilyTag t);

// Canonical representatives:
//   P0(x,y) = (x^{Q+1}, y^{Q+1})
//   F0 = X^{Q+1},  F1 = X^{Q+q}
//   P1(x,y) = (x^{Q+1}, x y^Q + y^{Q+1})
//   P2(x,y) = (x^Q y, x^{Q+1} + eps y^{Q+1}),      eps in F_q^*
//   P3(x,y) = (x^{Q+1} - x^Q y, x y^Q + eps y^{Q+1}), eps in F_q^* \ {-1}
//   F2 = X^{Q+q} + eps X^{Q+1},                    eps outside mu_{q+1}
//   X2 = X^2
FnTable make_family(FamilyTag tag, std::optional<Elt> epsilon,
                    const FieldTower& tw);  // error EpsilonConstraintViolated

// General (Q,Q)-biprojective pair: component i is
// sum_j coeffs[j] * (x^{Q+1}, x^Q y, x y^Q, y^{Q+1})[j].
FnTable biprojective_table(const FieldTower& tw, std::array<Elt, 4> a,
                           std::array<Elt, 4> b);

// Univariate table of f_c.
FnTable quadrinomial_table(const CoeffVec& c);

// The univariate function induced through X = x + zeta*y on both sides;
// zeta must lie outside F_q. error: ZetaInBaseField
FnTable embed_biprojective(const FnTable& p, Elt zeta);

// Recover a quadrinomial coefficient vector from a univariate table, if the
// table is a quadrinomial function (free coefficients zeroed when the four
// monomials are dependent as functions).
std::optional<CoeffVec> quadrinomial_coeffs_from_table(const FnTable& f);

// c' with f_{c'} = L1 ∘ f_c ∘ L2, verified pointwise.
// error: SingularLinearMap
CoeffVec compose_linear(const CoeffVec& c, SemilinearMap l1, SemilinearMap l2);

}  // namespace pfq
