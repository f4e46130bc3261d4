#pragma once

#include <array>

#include "pfq/polyring.hpp"

namespace pfq {

// Coefficient vector c = (c0,c1,c2,c3) of the quadrinomial
//   f_c(X) = c0 X^{qQ+q} + c1 X^{qQ+1} + c2 X^{Q+q} + c3 X^{Q+1}.
struct CoeffVec {
  Elt c0, c1, c2, c3;

  const FieldTower& tower() const { return *c0.tw; }
  bool all_zero() const {
    return c0.is_zero() && c1.is_zero() && c2.is_zero() && c3.is_zero();
  }
  std::array<Elt, 4> as_array() const { return {c0, c1, c2, c3}; }
  Elt eval_f(Elt x) const;  // f_c(x), by direct powering
  bool operator==(const CoeffVec& o) const {
    return c0 == o.c0 && c1 == o.c1 && c2 == o.c2 && c3 == o.c3;
  }
};

CoeffVec coeff_vec(const FieldTower& tw, std::array<Elt, 4> c);

// X -> s X + t conj(X); the linear maps that keep the quadrinomial family
// closed under composition on either side.
struct SemilinearMap {
  Elt s, t;
  Elt apply(Elt x) const { return s * x + t * conj(x); }
  bool bijective() const { return s * conj(s) != t * conj(t); }
};

// A = c0 X^{Q+1} + c1 X^Q + c2 X + c3, B its conjugate reflection,
// g = B/A reduced, C = gcd(A,B).
struct QuadData {
  Poly A, B, C;
  RatFn g;
  int deg_g;
};

QuadData build_quad(const CoeffVec& c);  // error AllZeroCoefficients

// e1,e2,e3,theta2,theta3,theta1^2 and the quadratic shapes U, V, W.
struct InvariantPack {
  Elt e1, e2, e3, theta2, theta3, theta1_sq;
  QuadShape U, V, W;
  bool u_zero() const;
  bool v_zero() const;
  bool w_zero() const;
};

InvariantPack invariants(const CoeffVec& c);  // error AllZeroCoefficients

struct IdentityReport {
  bool e1, e2, e3, e4;
  bool all() const { return e1 && e2 && e3 && e4; }
};

IdentityReport check_identities(const CoeffVec& c);

}  // namespace pfq
