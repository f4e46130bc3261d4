#include "pfq/classifier.hpp"

#include <algorithm>

namespace pfq {

const char* coarse_case_name(CoarseCase c) {
  switch (c) {
    case CoarseCase::ConstantG: return "ConstantG";
    case CoarseCase::ARootInMu: return "ARootInMu";
    case CoarseCase::MonomialEquiv: return "MonomialEquiv";
    case CoarseCase::BranchOneQ: return "BranchOneQ";
  }
  return "?";
}

const char* g_family_name(GFamily f) {
  switch (f) {
    case GFamily::I1: return "i1";
    case GFamily::I2: return "i2";
    case GFamily::I3: return "i3";
    case GFamily::II1: return "ii1";
    case GFamily::II2: return "ii2";
    case GFamily::II3: return "ii3";
    case GFamily::II4: return "ii4";
  }
  return "?";
}

const char* class_tag_name(ClassTag t) {
  switch (t) {
    case ClassTag::ConstantG: return "ConstantG";
    case ClassTag::ARootInMu: return "ARootInMu";
    case ClassTag::P0: return "P0";
    case ClassTag::F0: return "F0";
    case ClassTag::F1: return "F1";
    case ClassTag::P1: return "P1";
    case ClassTag::P2: return "P2";
    case ClassTag::P3: return "P3";
    case ClassTag::F2: return "F2";
  }
  return "?";
}

namespace {

[[noreturn]] void wfail(const char* m) { fail("WitnessVerificationFailed", m); }

bool shape_has_mu_root(const QuadShape& s) {
  return quad_root_profile(s).kind != QuadRootProfile::NoneInMu;
}

bool a_has_mu_root(const FieldTower& tw, const Poly& a) {
  for (uint32_t mv : tw.mu_list())
    if (a.eval(tw.elt(mv)).is_zero()) return true;
  return false;
}

std::optional<Elt> constant_ratio(const QuadShape& u, const QuadShape& v) {
  std::array<Elt, 3> uc = {u.a0, u.a1, u.a2}, vc = {v.a0, v.a1, v.a2};
  Elt lambda = u.a0;  // placeholder
  bool set = false;
  for (int i = 0; i < 3; ++i)
    if (!vc[i].is_zero()) {
      lambda = uc[i] / vc[i];
      set = true;
      break;
    }
  if (!set || lambda.is_zero()) return std::nullopt;
  for (int i = 0; i < 3; ++i)
    if (uc[i] != lambda * vc[i]) return std::nullopt;
  return lambda;
}

// the second root of a degree-2 shape given one root
Elt other_root(const QuadShape& s, Elt known) {
  Poly p = s.to_poly();
  if (p.deg() != 2) wfail("expected a genuine quadratic");
  auto [q, r] = divrem(p, Poly(*known.tw, {-known, known.tw->one()}));
  if (!r.is_zero()) wfail("claimed root is not a root");
  return -q.coeff(0) / q.coeff(1);
}

// proportionality scale: a == lambda * d, else witness failure
Elt proportionality(const Poly& a, const Poly& d) {
  if (d.is_zero() || a.is_zero()) wfail("degenerate proportionality");
  int i = d.valuation();
  Elt lambda = a.coeff(size_t(i)) / d.coeff(size_t(i));
  if (lambda.is_zero() || a != lambda * d)
    wfail("witness polynomial is not proportional to A");
  return lambda;
}

// pick the pole representative of a conjugate-inverse pair: infinity when
// present, else the smaller element encoding
P1 pick_pole(const std::vector<P1>& pair) {
  for (auto& pt : pair)
    if (pt.inf) return pt;
  P1 best = pair.front();
  for (auto& pt : pair)
    if (pt.x.v < best.x.v) best = pt;
  return best;
}

bool point_in(const std::vector<P1>& set, const P1& p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

struct Ctx {
  const CoeffVec& c;
  QuadData qd;
  InvariantPack iv;
};

RatFn conjugated(const Ctx& cx, const Mobius& rho_t, const Mobius& sigma_t) {
  return compose_val(rho_t, compose_arg(cx.qd.g, sigma_t.inverse()));
}

EquivWitness witness_univariate(const Ctx& cx, const Mobius& sigma,
                                const Mobius& rho, const CoeffVec& target,
                                bool via_xq_xbar) {
  const FieldTower& tw = cx.c.tower();
  uint64_t Q = tw.Q();
  auto [a1, a2] = mu_perm_params(sigma);
  auto [b1, b2] = mu_perm_params(rho);
  Poly n(tw, {conj(a1), conj(a2)});  // numerator of sigma
  Poly d(tw, {a2, a1});              // denominator of sigma
  Poly dpoly(tw);
  if (via_xq_xbar) {
    dpoly = (d * n) * (b1 * poly_pow(n, Q - 1) - conj(b2) * poly_pow(d, Q - 1));
  } else {
    QuadData tq = build_quad(target);
    Poly ha = homogeneous_eval(tq.A.coeffs(), n, d, size_t(Q + 1));
    Poly hb = homogeneous_eval(tq.B.coeffs(), n, d, size_t(Q + 1));
    dpoly = b1 * hb - conj(b2) * ha;
  }
  Elt gamma = proportionality(cx.qd.A, dpoly);
  if (!tw.in_fq(gamma)) wfail("scale factor must lie in F_q^*");
  EquivWitness w;
  w.biprojective = false;
  w.l1_uni = SemilinearMap{-(gamma * conj(b2)), gamma * b1};
  w.l2_uni = SemilinearMap{a2, a1};
  w.c_target = target;
  if (!verify_witness(cx.c, w)) wfail("pointwise identity failed");
  return w;
}

EquivWitness witness_biprojective(const Ctx& cx, const Mobius& sigma,
                                  const Mobius& rho, std::array<Elt, 4> c1,
                                  std::array<Elt, 4> c0) {
  const FieldTower& tw = cx.c.tower();
  uint64_t Q = tw.Q();
  auto [alpha, gamma] = mu_to_p1_params(sigma);
  auto [beta, delta] = mu_to_p1_params(rho);
  (void)delta;
  Poly n(tw, {gamma * conj(alpha), alpha});  // numerator of sigma
  Poly d(tw, {gamma, tw.one()});             // denominator of sigma
  auto a_coeffs = [&](const std::array<Elt, 4>& cv) {
    std::vector<Elt> a(size_t(Q) + 2, tw.zero());
    a[size_t(Q) + 1] = cv[0];
    a[size_t(Q)] = cv[1];
    a[1] = cv[2];
    a[0] = cv[3];
    return a;
  };
  Poly ha1 = homogeneous_eval(a_coeffs(c1), n, d, size_t(Q + 1));
  Poly ha0 = homogeneous_eval(a_coeffs(c0), n, d, size_t(Q + 1));
  Poly dpoly = ha1 - beta * ha0;
  Elt lambda = proportionality(cx.qd.A, dpoly);
  Elt eps = tw.norm_one_log_split(gamma);  // conj(eps)/eps = gamma
  Elt u = lambda / pow(eps, int64_t(Q + 1));
  EquivWitness w;
  w.biprojective = true;
  w.l1_bi = PairToElt{u, -(u * beta)};
  w.l2_bi = EltToPair{SemilinearMap{conj(eps) * conj(alpha), eps * alpha},
                      SemilinearMap{conj(eps), eps}};
  w.biproj_a = c1;
  w.biproj_b = c0;
  w.c_target = cx.c;  // unused in the biprojective shape
  if (!verify_witness(cx.c, w)) wfail("pointwise identity failed");
  return w;
}

std::array<Elt, 4> target_vec(const FieldTower& tw, int i0, int i1, int i2,
                              int i3) {
  return {tw.from_int(i0), tw.from_int(i1), tw.from_int(i2), tw.from_int(i3)};
}

}  // namespace

bool verify_witness(const CoeffVec& c, const EquivWitness& w) {
  const FieldTower& tw = c.tower();
  FnTable fc = quadrinomial_table(c);
  uint64_t q = tw.q(), n = tw.q2();
  if (!w.biprojective) {
    if (!w.l1_uni.bijective() || !w.l2_uni.bijective()) return false;
    FnTable canon = quadrinomial_table(w.c_target);
    for (uint64_t x = 0; x < n; ++x) {
      Elt xe = tw.elt(x);
      Elt inner = w.l2_uni.apply(xe);
      if (w.l1_uni.apply(tw.elt(canon.values[inner.v])).v != fc.values[x])
        return false;
    }
    return true;
  }
  FnTable p = biprojective_table(tw, w.biproj_a, w.biproj_b);
  // L1 injective iff {u, v} is an F_q-basis of F_{q^2}
  if (w.l1_bi.u.is_zero() || w.l1_bi.v.is_zero()) return false;
  if (tw.in_fq(w.l1_bi.v / w.l1_bi.u)) return false;
  std::vector<bool> seen(n, false);
  for (uint64_t x = 0; x < n; ++x) {
    Elt xe = tw.elt(x);
    Elt r0 = w.l2_bi.row0.apply(xe), r1 = w.l2_bi.row1.apply(xe);
    if (!tw.in_fq(r0) || !tw.in_fq(r1)) return false;
    uint32_t pair = tw.fq_index(r0) + uint32_t(q) * tw.fq_index(r1);
    if (seen[pair]) return false;
    seen[pair] = true;
    uint32_t pv = p.values[pair];
    Elt val = w.l1_bi.apply(tw.from_fq(uint32_t(pv % q)),
                            tw.from_fq(uint32_t(pv / q)));
    if (val.v != fc.values[x]) return false;
  }
  return true;
}

CoarseCase coarse_case(const CoeffVec& c) {
  if (c.all_zero()) fail("AllZeroCoefficients", "c must be nonzero");
  const FieldTower& tw = c.tower();
  QuadData qd = build_quad(c);
  InvariantPack iv = invariants(c);
  bool uz = iv.u_zero(), vz = iv.v_zero();
  if (uz && vz) {
    if (qd.deg_g != 0) fail("InternalError", "U = V = 0 must force constant g");
    return CoarseCase::ConstantG;
  }
  bool mu_root = (!uz && shape_has_mu_root(iv.U)) ||
                 (!vz && shape_has_mu_root(iv.V));
  bool cond = mu_root && qd.deg_g != int(tw.Q()) + 1;
  if (a_has_mu_root(tw, qd.A) != cond)
    fail("InternalError", "mu-root criterion disagrees with a direct scan of A");
  if (cond) return CoarseCase::ARootInMu;
  if (uz || vz)
    fail("InternalError", "U and V must both be nonzero past the mu-root case");
  return constant_ratio(iv.U, iv.V) ? CoarseCase::MonomialEquiv
                                    : CoarseCase::BranchOneQ;
}

GFamily classify_family(const CoeffVec& c) {
  CoarseCase cc = coarse_case(c);
  if (cc != CoarseCase::MonomialEquiv && cc != CoarseCase::BranchOneQ)
    fail("PreconditionViolated",
         "family split needs non-constant g with A free of mu-roots");
  QuadData qd = build_quad(c);
  InvariantPack iv = invariants(c);
  if (cc == CoarseCase::MonomialEquiv) {
    if (quad_root_profile(iv.V).kind != QuadRootProfile::NoneInMu)
      return GFamily::I1;
    return qd.C.deg() == 0 ? GFamily::I2 : GFamily::I3;
  }
  if (poly_gcd(iv.U.to_poly(), iv.V.to_poly()).deg() >= 1) return GFamily::II1;
  switch (quad_root_profile(iv.U).kind) {
    case QuadRootProfile::MultipleInMu: return GFamily::II2;
    case QuadRootProfile::TwoDistinctInMu: return GFamily::II3;
    case QuadRootProfile::NoneInMu: return GFamily::II4;
  }
  fail("InternalError", "unreachable");
}

Decomposition canonical_decomposition(const CoeffVec& c) {
  GFamily fam = classify_family(c);
  const FieldTower& tw = c.tower();
  Ctx cx{c, build_quad(c), invariants(c)};
  int64_t Q = int64_t(tw.Q());
  auto g_at = [&](const P1& x) { return cx.qd.g.eval(x); };

  Decomposition out;
  out.family = fam;

  switch (fam) {
    case GFamily::I1: {
      auto vp = quad_root_profile(cx.iv.V);
      if (vp.kind != QuadRootProfile::TwoDistinctInMu)
        wfail("family i1 needs two distinct ramification points in mu");
      Elt g1 = vp.roots[0], g2 = vp.roots[1];
      if (g2.v < g1.v) std::swap(g1, g2);
      P1 l1 = g_at(P1::of(g1)), l2 = g_at(P1::of(g2));
      auto wp = quad_root_profile(cx.iv.W);
      if (l1.inf || l2.inf || l1 == l2 ||
          wp.kind != QuadRootProfile::TwoDistinctInMu)
        wfail("family i1 branch points must be two distinct mu points");
      if (!point_in({P1::of(wp.roots[0]), P1::of(wp.roots[1])}, l1) ||
          !point_in({P1::of(wp.roots[0]), P1::of(wp.roots[1])}, l2))
        wfail("branch points must be the roots of W");
      Mobius sig = mu_to_p1_zero_pole(g1, g2);
      Mobius rho_t = mu_to_p1_zero_pole(l1.x, l2.x);
      RatFn h = conjugated(cx, rho_t, sig);
      if (h.den().deg() != 0 || h.num().deg() != Q + 1 ||
          h.num().valuation() != Q + 1)
        wfail("family i1 must conjugate to a scalar multiple of X^{Q+1}");
      Elt uu = h.num().lead();
      if (!tw.in_fq(uu) || uu.is_zero())
        wfail("monomial scale must lie in F_q^*");
      Mobius rho = rho_t.scaled(inv(uu), tw.zero(), tw.zero(), tw.one(),
                                Mobius::MuToP1);
      out.label = ClassLabel{ClassTag::P0, std::nullopt, std::nullopt};
      out.witness = witness_biprojective(cx, sig, rho,
                                         target_vec(tw, 1, 0, 0, 0),
                                         target_vec(tw, 0, 0, 0, 1));
      break;
    }
    case GFamily::I2:
    case GFamily::I3: {
      std::vector<P1> gpair = shape_point_set(cx.iv.V);
      std::vector<P1> lpair = shape_point_set(cx.iv.W);
      if (gpair.size() != 2) wfail("families i2/i3 need two ramification points");
      P1 b = pick_pole(gpair);
      Mobius sig = mu_perm_with_pole(b);
      P1 gb = g_at(b);
      if (!point_in(lpair, gb)) wfail("branch point escaped the roots of W");
      Mobius rho_t = mu_perm_with_pole(gb);
      RatFn h = conjugated(cx, rho_t, sig);
      int64_t nexp = fam == GFamily::I2 ? Q + 1 : Q - 1;
      if (h.den().deg() != 0 || h.num().deg() != nexp ||
          h.num().valuation() != nexp)
        wfail("families i2/i3 must conjugate to a monomial");
      Elt cc = h.num().lead();
      if (!tw.in_mu(cc)) wfail("monomial scale must lie in mu_{q+1}");
      Mobius rho = rho_t.scaled(inv(cc), tw.zero(), tw.zero(), tw.one(),
                                Mobius::PermutesMu);
      CoeffVec target =
          fam == GFamily::I2
              ? coeff_vec(tw, {tw.zero(), tw.zero(), tw.zero(), tw.one()})
              : coeff_vec(tw, {tw.zero(), tw.zero(), tw.one(), tw.zero()});
      out.label = ClassLabel{
          fam == GFamily::I2 ? ClassTag::F0 : ClassTag::F1, std::nullopt,
          std::nullopt};
      out.witness =
          witness_univariate(cx, sig, rho, target, fam == GFamily::I3);
      break;
    }
    case GFamily::II1: {
      Poly gcduv = poly_gcd(cx.iv.U.to_poly(), cx.iv.V.to_poly());
      if (gcduv.deg() != 1) wfail("families ii need a simple common root");
      Elt al = -gcduv.coeff(0);
      if (!tw.in_mu(al)) wfail("common root of U and V must lie in mu");
      Elt b1 = other_root(cx.iv.U, al), b2 = other_root(cx.iv.V, al);
      if (b1 == al || b2 == al || b1 == b2)
        wfail("family ii1 roots must be distinct");
      auto wp = quad_root_profile(cx.iv.W);
      if (wp.kind != QuadRootProfile::TwoDistinctInMu)
        wfail("family ii1 needs two distinct branch points");
      P1 gal = g_at(P1::of(al));
      if (gal.inf || !point_in({P1::of(wp.roots[0]), P1::of(wp.roots[1])}, gal))
        wfail("image of the common root must be a root of W");
      Elt gamma2 = gal.x;
      Elt gamma1 = wp.roots[0] == gamma2 ? wp.roots[1] : wp.roots[0];
      if (g_at(P1::of(b1)) != P1::of(gamma1) ||
          g_at(P1::of(b2)) != P1::of(gamma1))
        wfail("family ii1 pairing of ramification images failed");
      Mobius sig_t = mu_to_p1_zero_pole(al, b2);
      Mobius rho_t = mu_to_p1_zero_pole(gamma2, gamma1);
      RatFn h = conjugated(cx, rho_t, sig_t);
      if (h.num().deg() != Q + 1 || h.num().valuation() != Q + 1 ||
          h.den().deg() != 1)
        wfail("family ii1 must conjugate to lambda X^{Q+1}/(X+eps)");
      Elt lam = h.num().lead();
      Elt ep = h.den().coeff(0);
      if (!tw.in_fq(lam) || !tw.in_fq(ep) || lam.is_zero() || ep.is_zero())
        wfail("family ii1 shape constants must lie in F_q^*");
      Mobius sig = sig_t.scaled(inv(ep), tw.zero(), tw.zero(), tw.one(),
                                Mobius::MuToP1);
      Mobius rho = rho_t.scaled(inv(lam) * pow(inv(ep), Q), tw.zero(),
                                tw.zero(), tw.one(), Mobius::MuToP1);
      out.label = ClassLabel{ClassTag::P1, std::nullopt, std::nullopt};
      out.witness = witness_biprojective(cx, sig, rho,
                                         target_vec(tw, 1, 0, 0, 0),
                                         target_vec(tw, 0, 0, 1, 1));
      break;
    }
    case GFamily::II2: {
      auto up = quad_root_profile(cx.iv.U);
      auto vp = quad_root_profile(cx.iv.V);
      auto wp = quad_root_profile(cx.iv.W);
      if (up.kind != QuadRootProfile::MultipleInMu ||
          vp.kind != QuadRootProfile::MultipleInMu ||
          wp.kind != QuadRootProfile::MultipleInMu)
        wfail("family ii2 needs multiple roots throughout");
      Elt a1 = up.roots[0], a2 = vp.roots[0], beta = wp.roots[0];
      if (a1 == a2) wfail("gcd(U,V)=1 forces distinct roots");
      if (g_at(P1::of(a1)) != P1::of(beta) ||
          g_at(P1::of(a2)) != P1::of(beta))
        wfail("family ii2 branch pairing failed");
      Mobius sig = mu_to_p1_zero_pole(a2, a1);
      Elt dl = tw.gen();
      Mobius rho_t = Mobius(tw.one(), -beta, dl, -(beta * conj(dl)),
                            Mobius::MuToP1);
      RatFn h = conjugated(cx, rho_t, sig);
      if (h.num().deg() != Q || h.num().valuation() != Q ||
          h.den().deg() != Q + 1)
        wfail("family ii2 must conjugate to X^Q over a degree Q+1 denominator");
      Elt nu = h.num().lead();
      Poly den = h.den();
      for (int i = 2; i < Q; ++i)
        if (!den.coeff(size_t(i)).is_zero())
          wfail("denominator support must be {0,1,Q,Q+1}");
      Elt c00 = den.coeff(size_t(Q + 1)) / nu;
      Elt c01 = den.coeff(size_t(Q)) / nu;
      Elt c02 = den.coeff(1) / nu;
      Elt c03 = den.coeff(0) / nu;
      if (!c02.is_zero())
        wfail("linear denominator coefficient must vanish for family ii2");
      if (!tw.in_fq(c00) || !tw.in_fq(c01) || !tw.in_fq(c03) ||
          c00.is_zero() || c03.is_zero())
        wfail("family ii2 denominator must be defined over F_q");
      Elt eps = c03 / c00;
      Mobius rho = rho_t.scaled(c00, tw.zero(), -c01, tw.one(), Mobius::MuToP1);
      out.label = ClassLabel{ClassTag::P2, eps, tw.is_square_in_fq(eps)};
      out.witness = witness_biprojective(
          cx, sig, rho, target_vec(tw, 0, 1, 0, 0),
          {tw.one(), tw.zero(), tw.zero(), eps});
      break;
    }
    case GFamily::II3: {
      auto up = quad_root_profile(cx.iv.U);
      auto vp = quad_root_profile(cx.iv.V);
      auto wp = quad_root_profile(cx.iv.W);
      if (up.kind != QuadRootProfile::TwoDistinctInMu ||
          vp.kind != QuadRootProfile::TwoDistinctInMu ||
          wp.kind != QuadRootProfile::TwoDistinctInMu)
        wfail("family ii3 needs two distinct mu roots throughout");
      Elt b1 = vp.roots[0], b2 = vp.roots[1];
      if (b2.v < b1.v) std::swap(b1, b2);
      P1 i1 = g_at(P1::of(b1)), i2 = g_at(P1::of(b2));
      std::vector<P1> wroots = {P1::of(wp.roots[0]), P1::of(wp.roots[1])};
      if (i1.inf || i2.inf || i1 == i2 || !point_in(wroots, i1) ||
          !point_in(wroots, i2))
        wfail("family ii3 branch pairing failed");
      Elt gamma1 = i1.x, gamma2 = i2.x;
      P1 ua = g_at(P1::of(up.roots[0])), ub = g_at(P1::of(up.roots[1]));
      if (!((ua == i1 && ub == i2) || (ua == i2 && ub == i1)))
        wfail("roots of U must map onto both branch points");
      Mobius sig_t = mu_to_p1_zero_pole(b2, b1);
      Mobius rho_t = mu_to_p1_zero_pole(gamma2, gamma1);
      RatFn h = conjugated(cx, rho_t, sig_t);
      if (h.num().deg() != Q + 1 || h.num().valuation() != Q ||
          h.den().deg() != 1)
        wfail("family ii3 must conjugate to lambda X^Q(X+e1)/(X+e2)");
      Elt lam = h.num().coeff(size_t(Q + 1));
      Elt e1 = h.num().coeff(size_t(Q)) / lam;
      Elt e2 = h.den().coeff(0);
      if (!tw.in_fq(lam) || !tw.in_fq(e1) || !tw.in_fq(e2) || lam.is_zero() ||
          e1.is_zero() || e2.is_zero() || e1 == e2)
        wfail("family ii3 shape constants out of range");
      Mobius sig = sig_t.scaled(-inv(e1), tw.zero(), tw.zero(), tw.one(),
                                Mobius::MuToP1);
      Mobius rho = rho_t.scaled(-(inv(lam) * pow(inv(e1), Q)), tw.zero(),
                                tw.zero(), tw.one(), Mobius::MuToP1);
      Elt eps = -(e2 / e1);
      if (eps.is_zero() || eps == tw.from_int(-1))
        wfail("family ii3 epsilon must avoid 0 and -1");
      out.label = ClassLabel{ClassTag::P3, eps, tw.is_square_in_fq(eps)};
      out.witness = witness_biprojective(
          cx, sig, rho, target_vec(tw, 1, -1, 0, 0),
          {tw.zero(), tw.zero(), tw.one(), eps});
      break;
    }
    case GFamily::II4: {
      std::vector<P1> gpair = shape_point_set(cx.iv.V);
      std::vector<P1> lpair = shape_point_set(cx.iv.W);
      if (gpair.size() != 2 || lpair.size() != 2)
        wfail("family ii4 needs conjugate-inverse pairs");
      P1 b = pick_pole(gpair);
      Mobius sig = mu_perm_with_pole(b);
      P1 gb = g_at(b);
      if (!point_in(lpair, gb)) wfail("branch point escaped the roots of W");
      Mobius rho_t = mu_perm_with_pole(gb);
      RatFn h = conjugated(cx, rho_t, sig);
      if (h.num().deg() != Q + 1 || h.num().valuation() != Q ||
          h.den().deg() != 1)
        wfail("family ii4 must conjugate to X^Q (n1 X + n0)/(X + eps)");
      Elt n1 = h.num().coeff(size_t(Q + 1));
      Elt n0 = h.num().coeff(size_t(Q));
      Elt d0 = h.den().coeff(0);
      if (!tw.in_mu(n0)) wfail("family ii4 scale must lie in mu");
      if (n1 != n0 * conj(d0))
        wfail("family ii4 numerator must match the mu-permuting shape");
      if (d0.is_zero() || tw.in_mu(d0))
        wfail("family ii4 epsilon must avoid mu and zero");
      Elt eps = d0;
      Mobius rho = rho_t.scaled(inv(n0), tw.zero(), tw.zero(), tw.one(),
                                Mobius::PermutesMu);
      CoeffVec target = coeff_vec(tw, {tw.zero(), tw.zero(), tw.one(), eps});
      out.label = ClassLabel{ClassTag::F2, eps, std::nullopt};
      out.witness = witness_univariate(cx, sig, rho, target, false);
      break;
    }
  }
  return out;
}

Verdict tilde_verdict(const CoeffVec& c) {
  const FieldTower& tw = c.tower();
  if (tw.ell() % tw.k() != 0)
    fail("KDoesNotDivideL", "tilde reduction needs k | ell");
  if (c.all_zero()) fail("AllZeroCoefficients", "c must be nonzero");
  bool odd = (tw.ell() / tw.k()) % 2 == 1;
  TildeData td;
  td.a = odd ? std::array<Elt, 3>{c.c2, c.c0 + c.c3, c.c1}
             : std::array<Elt, 3>{c.c0, c.c1 + c.c2, c.c3};
  td.e_tilde = td.a[2] * conj(td.a[2]) - td.a[0] * conj(td.a[0]);
  td.theta_tilde = conj(td.a[1]) * td.a[2] - conj(td.a[0]) * td.a[1];
  td.delta_tilde =
      td.e_tilde * td.e_tilde - pow(td.theta_tilde, int64_t(tw.q()) + 1);
  if (!tw.in_fq(td.delta_tilde))
    fail("InternalError", "delta-tilde must lie in F_q");
  Verdict v;
  v.tilde = td;
  if (td.delta_tilde.is_zero()) {
    v.planar = false;
    v.rule = "k|l:delta-tilde-zero";
  } else if (tw.is_square_in_fq(td.delta_tilde)) {
    v.planar = true;
    v.rule = "k|l:delta-tilde-square:equivalent-to-X^2";
  } else {
    v.planar = false;
    v.rule = "k|l:delta-tilde-nonsquare";
  }
  return v;
}

Verdict planar_verdict(const CoeffVec& c) {
  if (c.all_zero()) fail("AllZeroCoefficients", "c must be nonzero");
  const FieldTower& tw = c.tower();
  if (tw.ell() % tw.k() == 0) return tilde_verdict(c);
  CoarseCase cc = coarse_case(c);
  Verdict v;
  if (cc == CoarseCase::ConstantG) {
    v.planar = false;
    v.rule = "constant-g:not-two-to-one";
    v.label = ClassLabel{ClassTag::ConstantG, std::nullopt, std::nullopt};
    return v;
  }
  if (cc == CoarseCase::ARootInMu) {
    v.planar = false;
    v.rule = "A-root-in-mu:derivative-collapses";
    v.label = ClassLabel{ClassTag::ARootInMu, std::nullopt, std::nullopt};
    return v;
  }
  Decomposition d = canonical_decomposition(c);
  v.label = d.label;
  uint32_t k = tw.k(), l = tw.ell(), dl = tw.delta();
  switch (d.label.tag) {
    case ClassTag::P0:
      v.planar = false;
      v.rule = "P0:not-two-to-one";
      break;
    case ClassTag::F0:
      v.planar = (l / dl) % 2 == 0;
      v.rule = v.planar ? "F0:l/delta-even" : "F0:l/delta-odd";
      break;
    case ClassTag::F1:
      v.planar = ((k / dl) % 2 == 1) && ((l / dl) % 2 == 1);
      v.rule = v.planar ? "F1:kl/delta^2-odd" : "F1:kl/delta^2-even";
      break;
    case ClassTag::P1:
      v.planar = false;
      v.rule = "P1:not-two-to-one";
      break;
    case ClassTag::P2:
      v.planar = ((k / dl) % 2 == 1) && !*d.label.epsilon_is_square;
      v.rule = v.planar ? "P2:k/delta-odd-epsilon-nonsquare"
                        : "P2:condition-failed";
      break;
    case ClassTag::P3:
      v.planar = false;
      v.rule = "P3:character-sum-certificate";
      break;
    case ClassTag::F2:
      v.planar = false;
      v.rule = "F2:character-sum-certificate";
      break;
    default:
      fail("InternalError", "unexpected class tag");
  }
  return v;
}

}  // namespace pfq
