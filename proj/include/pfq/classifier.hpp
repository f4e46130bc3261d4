#pragma once

#include <optional>
#include <string>

#include "pfq/geometry.hpp"
#include "pfq/oracle.hpp"

namespace pfq {

enum class CoarseCase { ConstantG, ARootInMu, MonomialEquiv, BranchOneQ };
enum class GFamily { I1, I2, I3, II1, II2, II3, II4 };

const char* coarse_case_name(CoarseCase c);
const char* g_family_name(GFamily f);

enum class ClassTag { ConstantG, ARootInMu, P0, F0, F1, P1, P2, P3, F2 };
const char* class_tag_name(ClassTag t);

struct ClassLabel {
  ClassTag tag;
  std::optional<Elt> epsilon;
  // square class of epsilon inside F_q^*, when defined there
  std::optional<bool> epsilon_is_square;
};

// (x,y) -> u x + v y, F_q^2 -> F_{q^2}
struct PairToElt {
  Elt u, v;
  Elt apply(Elt x_fq, Elt y_fq) const { return u * x_fq + v * y_fq; }
};

// X -> (row0(X), row1(X)), values verified to land in F_q
struct EltToPair {
  SemilinearMap row0, row1;
};

// f_c = L1 ∘ canonical ∘ L2 on all of F_{q^2}; exactly one of the two
// shapes is populated, matching the canonical form's kind.
struct EquivWitness {
  bool biprojective = false;
  // univariate target f_{c_target}
  SemilinearMap l1_uni, l2_uni;
  CoeffVec c_target;
  // biprojective target P(x,y) = (sum a_i m_i, sum b_i m_i)
  PairToElt l1_bi;
  EltToPair l2_bi;
  std::array<Elt, 4> biproj_a, biproj_b;
};

struct Decomposition {
  GFamily family;
  ClassLabel label;
  EquivWitness witness;
};

// Lemma-level case split: ConstantG iff U=V=0; ARootInMu iff a nonzero member
// of {U,V} has mu-roots and deg g != Q+1; MonomialEquiv iff U/V is constant;
// else BranchOneQ. Cross-checked against a direct scan of A over mu_{q+1}.
CoarseCase coarse_case(const CoeffVec& c);  // error AllZeroCoefficients

// The seven-family split of non-constant g with A free of mu-roots.
// error: PreconditionViolated
GFamily classify_family(const CoeffVec& c);

// Constructive canonical form with verified equivalence witness.
// errors: PreconditionViolated, WitnessVerificationFailed
Decomposition canonical_decomposition(const CoeffVec& c);

struct TildeData {
  std::array<Elt, 3> a;
  Elt e_tilde, theta_tilde, delta_tilde;
};

struct Verdict {
  bool planar;
  std::string rule;
  std::optional<ClassLabel> label;       // classification path
  std::optional<TildeData> tilde;        // k | ell path
};

// Planarity from the reduced form a0 conj(X)^2 + a1 X conj(X) + a2 X^2
// induced when Q is a power of q. error: KDoesNotDivideL
Verdict tilde_verdict(const CoeffVec& c);

// Full planarity decision: the k | ell path delegates to tilde_verdict,
// otherwise classify and apply the per-class parity and square conditions.
Verdict planar_verdict(const CoeffVec& c);  // error AllZeroCoefficients

// verify f_c == L1 ∘ canonical ∘ L2 over the whole field; also checks both
// maps are bijections. Returns false instead of throwing.
bool verify_witness(const CoeffVec& c, const EquivWitness& w);

}  // namespace pfq
