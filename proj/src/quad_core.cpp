#include "pfq/quad_core.hpp"

namespace pfq {

CoeffVec coeff_vec(const FieldTower& tw, std::array<Elt, 4> c) {
  for (auto& e : c)
    if (e.tw != &tw) fail("BadParameters", "coefficient from another tower");
  return CoeffVec{c[0], c[1], c[2], c[3]};
}

Elt CoeffVec::eval_f(Elt x) const {
  const FieldTower& tw = tower();
  int64_t q = int64_t(tw.q()), Q = int64_t(tw.Q());
  return c0 * pow(x, q * Q + q) + c1 * pow(x, q * Q + 1) +
         c2 * pow(x, Q + q) + c3 * pow(x, Q + 1);
}

QuadData build_quad(const CoeffVec& c) {
  if (c.all_zero()) fail("AllZeroCoefficients", "c must be nonzero");
  const FieldTower& tw = c.tower();
  size_t Q = size_t(tw.Q());
  std::vector<Elt> a(Q + 2, tw.zero()), b(Q + 2, tw.zero());
  a[Q + 1] = c.c0;
  a[Q] = c.c1;
  a[1] = c.c2;
  a[0] = c.c3;
  b[Q + 1] = conj(c.c3);
  b[Q] = conj(c.c2);
  b[1] = conj(c.c1);
  b[0] = conj(c.c0);
  Poly A(tw, std::move(a)), B(tw, std::move(b));
  Poly C = poly_gcd(A, B);
  RatFn g(B, A);
  return QuadData{A, B, C, g, g.degree()};
}

InvariantPack invariants(const CoeffVec& c) {
  if (c.all_zero()) fail("AllZeroCoefficients", "c must be nonzero");
  const FieldTower& tw = c.tower();
  Elt n0 = c.c0 * conj(c.c0), n1 = c.c1 * conj(c.c1);
  Elt n2 = c.c2 * conj(c.c2), n3 = c.c3 * conj(c.c3);
  InvariantPack r;
  r.e1 = n0 - n1 - n2 + n3;
  r.e2 = -n0 - n1 + n2 + n3;
  r.e3 = -n0 + n1 - n2 + n3;
  r.theta2 = conj(c.c2) * c.c3 - conj(c.c0) * c.c1;
  r.theta3 = conj(c.c1) * c.c3 - conj(c.c0) * c.c2;
  r.theta1_sq = r.e2 * r.e2 - tw.from_int(4) * r.theta2 * conj(r.theta2);
  r.U = QuadShape{conj(r.theta2), r.e2, r.theta2};
  r.V = QuadShape{tw.inv_frobenius_power(conj(r.theta3), tw.ell()),
                  tw.inv_frobenius_power(r.e3, tw.ell()),
                  tw.inv_frobenius_power(r.theta3, tw.ell())};
  Elt w2 = c.c1 * c.c2 - c.c0 * c.c3;
  r.W = QuadShape{w2, r.e1, conj(w2)};
  // Delta(W) = Delta(U) = Delta(V)^Q = theta1^2 must hold for every c
  Elt dW = r.W.delta(), dU = r.U.delta(), dV = r.V.delta();
  if (dW != r.theta1_sq || dU != r.theta1_sq ||
      pow(dV, int64_t(tw.Q())) != r.theta1_sq)
    fail("InternalError", "discriminant identity violated");
  if (!tw.in_fq(r.e1) || !tw.in_fq(r.e2) || !tw.in_fq(r.e3) ||
      !tw.in_fq(r.theta1_sq))
    fail("InternalError", "e1,e2,e3,theta1^2 must be Frobenius-fixed");
  return r;
}

bool InvariantPack::u_zero() const {
  return U.a2.is_zero() && U.a1.is_zero() && U.a0.is_zero();
}
bool InvariantPack::v_zero() const {
  return V.a2.is_zero() && V.a1.is_zero() && V.a0.is_zero();
}
bool InvariantPack::w_zero() const {
  return W.a2.is_zero() && W.a1.is_zero() && W.a0.is_zero();
}

IdentityReport check_identities(const CoeffVec& c) {
  const FieldTower& tw = c.tower();
  QuadData qd = build_quad(c);
  InvariantPack iv = invariants(c);
  Poly U = iv.U.to_poly(), V = iv.V.to_poly(), W = iv.W.to_poly();
  IdentityReport rep{};

  Poly lhs1 = Poly(tw, {conj(c.c2), conj(c.c3)}) * qd.A -
              Poly(tw, {c.c1, c.c0}) * qd.B;
  rep.e1 = (U == lhs1);

  Poly vq = pow_char(V, tw.ell());
  rep.e2 = (vq == qd.A * qd.B.derivative() - qd.A.derivative() * qd.B);

  rep.e3 = (iv.W.delta() == iv.theta1_sq && iv.U.delta() == iv.theta1_sq &&
            pow(iv.V.delta(), int64_t(tw.Q())) == iv.theta1_sq);

  // U V^Q = W(g) A^2, with W(g) A^2 expanded as W2 B^2 + W1 B A + W0 A^2
  Poly rhs4 = iv.W.a2 * (qd.B * qd.B) + iv.W.a1 * (qd.B * qd.A) +
              iv.W.a0 * (qd.A * qd.A);
  rep.e4 = (U * vq == rhs4);
  return rep;
}

}  // namespace pfq
