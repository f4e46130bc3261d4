#include "pfq/geometry.hpp"

#include <algorithm>

namespace pfq {

namespace {

// ---- small F_{q^4}[X] helpers for fibers that leave F_{q^2} ----

using Q4Poly = std::vector<uint64_t>;  // lowest first, quartic indices

Q4Poly lift(const QuarticExt& ext, const Poly& p) {
  Q4Poly out(p.coeffs().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = ext.embed(p.coeff(i));
  return out;
}

void q4_trim(Q4Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint64_t q4_eval(const QuarticExt& ext, const Q4Poly& a, uint64_t x) {
  uint64_t r = 0;
  for (size_t i = a.size(); i-- > 0;) r = ext.add(ext.mul(r, x), a[i]);
  return r;
}

// divide by (X - r), assuming r is a root
Q4Poly q4_deflate(const QuarticExt& ext, const Q4Poly& a, uint64_t r) {
  Q4Poly q(a.size() - 1, 0);
  uint64_t carry = 0;
  for (size_t i = a.size(); i-- > 1;) {
    carry = ext.add(a[i], ext.mul(carry, r));
    q[i - 1] = carry;
  }
  return q;
}

// all roots of h in F_{q^4} with multiplicities; returns the undivided
// remainder degree (0 when h splits)
int q4_roots(const FieldTower& tw, const Poly& h,
             std::vector<std::pair<uint64_t, int>>& out) {
  const QuarticExt& ext = tw.quartic();
  Q4Poly cur = lift(ext, h);
  q4_trim(cur);
  for (uint64_t x = 0; x < ext.size() && cur.size() > 1; ++x) {
    int m = 0;
    while (cur.size() > 1 && q4_eval(ext, cur, x) == 0) {
      cur = q4_deflate(ext, cur, x);
      ++m;
    }
    if (m) out.emplace_back(x, m);
  }
  return int(cur.size()) - 1;
}

bool p1_less(const P1& a, const P1& b) {
  // finite points by element index, infinity last
  if (a.inf != b.inf) return !a.inf;
  return a.x.v < b.x.v;
}

void sort_points(std::vector<P1>& pts) {
  std::sort(pts.begin(), pts.end(), p1_less);
}

}  // namespace

std::vector<P1> shape_point_set(const QuadShape& s) {
  const FieldTower& tw = *s.a1.tw;
  QuadRootProfile pr = quad_root_profile(s);
  std::vector<P1> pts;
  for (Elt r : pr.roots) pts.push_back(P1::of(r));
  if (pts.size() == 2 && pts[0] == pts[1]) pts.pop_back();
  int degree = !s.a2.is_zero() ? 2 : (!s.a1.is_zero() ? 1 : 0);
  if (degree < 2) pts.push_back(P1::infinity(tw));
  sort_points(pts);
  return pts;
}

int ram_index(const RatFn& g, const P1& alpha) {
  if (g.is_constant()) fail("ConstantFunction", "ramification of a constant");
  if (alpha.inf) return ram_index(g.reciprocal_arg(), P1::of(g.tower().zero()));
  P1 v = g.eval(alpha);
  Poly h = v.inf ? g.den() : g.num() - v.x * g.den();
  return root_multiplicity(h, alpha.x);
}

std::vector<int> ram_multiset(const RatFn& g, const P1& beta) {
  if (g.is_constant()) fail("ConstantFunction", "fiber of a constant");
  const FieldTower& tw = g.tower();
  Poly h = beta.inf ? g.den() : g.num() - beta.x * g.den();
  std::vector<int> ms;
  int found = 0;
  if (g.eval(P1::infinity(tw)) == beta) {
    int e = ram_index(g, P1::infinity(tw));
    ms.push_back(e);
    found += e;
  }
  // affine roots, F_{q^2} first
  Poly cur = h;
  for (uint64_t x = 0; x < tw.q2() && cur.deg() >= 1; ++x) {
    Elt xe = tw.elt(x);
    int m = 0;
    while (cur.deg() >= 1 && cur.eval(xe).is_zero()) {
      cur = divrem(cur, Poly(tw, {-xe, tw.one()})).first;
      ++m;
    }
    if (m) {
      ms.push_back(m);
      found += m;
    }
  }
  if (cur.deg() >= 1) {
    std::vector<std::pair<uint64_t, int>> qroots;
    int leftover = q4_roots(tw, cur, qroots);
    if (leftover > 0)
      fail("PreimageOutsideWorkingField",
           "fiber has preimages beyond F_{q^4}");
    for (auto& [r, m] : qroots) {
      ms.push_back(m);
      found += m;
    }
  }
  if (found != g.degree())
    fail("InternalError", "fiber multiset does not sum to the degree");
  std::sort(ms.begin(), ms.end());
  return ms;
}

HurwitzReport hurwitz_check(const RatFn& g) {
  if (g.is_constant()) fail("ConstantFunction", "Hurwitz check of a constant");
  if (!g.separable()) fail("NonSeparable", "derivative vanishes identically");
  const FieldTower& tw = g.tower();
  Poly w = g.wronskian();
  HurwitzReport rep{};
  rep.lhs = 2 * int64_t(g.degree()) - 2;
  rep.tame = true;
  auto account = [&](int e) {
    rep.rhs += e - 1;
    if (e % int(tw.p()) == 0) rep.tame = false;
  };
  // affine ramification points = roots of the Wronskian
  Poly cur = w;
  for (uint64_t x = 0; x < tw.q2() && cur.deg() >= 1; ++x) {
    Elt xe = tw.elt(x);
    if (!cur.eval(xe).is_zero()) continue;
    while (cur.deg() >= 1 && cur.eval(xe).is_zero())
      cur = divrem(cur, Poly(tw, {-xe, tw.one()})).first;
    account(ram_index(g, P1::of(xe)));
  }
  if (cur.deg() >= 1) {
    const QuarticExt& ext = tw.quartic();
    std::vector<std::pair<uint64_t, int>> qroots;
    int leftover = q4_roots(tw, cur, qroots);
    if (leftover > 0)
      fail("PreimageOutsideWorkingField",
           "ramification points beyond F_{q^4}");
    for (auto& [r, mult] : qroots) {
      // e at a genuinely quartic point: multiplicity of r in num - g(r) den
      Q4Poly num = lift(ext, g.num()), den = lift(ext, g.den());
      uint64_t dv = q4_eval(ext, den, r);
      Q4Poly h;
      if (dv == 0) {
        h = den;
      } else {
        uint64_t v = ext.mul(q4_eval(ext, num, r), ext.inv(dv));
        h = num;
        h.resize(std::max(num.size(), den.size()), 0);
        for (size_t i = 0; i < den.size(); ++i)
          h[i] = ext.sub(h[i], ext.mul(v, den[i]));
        q4_trim(h);
      }
      int e = 0;
      while (h.size() > 1 && q4_eval(ext, h, r) == 0) {
        h = q4_deflate(ext, h, r);
        ++e;
      }
      account(e);
    }
  }
  int einf = ram_index(g, P1::infinity(tw));
  if (einf > 1) account(einf);
  rep.holds = rep.lhs >= rep.rhs;
  if (!rep.holds) fail("InternalError", "Hurwitz inequality violated");
  if ((rep.lhs == rep.rhs) != rep.tame)
    fail("InternalError", "Hurwitz equality must match tameness");
  return rep;
}

RamReport ram_report(const CoeffVec& c) {
  const FieldTower& tw = c.tower();
  QuadData qd = build_quad(c);
  InvariantPack iv = invariants(c);
  if (iv.u_zero() && iv.v_zero()) {
    if (qd.deg_g != 0) fail("InternalError", "U=V=0 forces constant g");
    fail("ConstantG", "g is constant; no ramification data");
  }
  if (iv.u_zero() || iv.v_zero() || iv.w_zero())
    fail("ZeroInvariantPolynomial",
         "one of U, V, W vanishes; A has a root in mu_{q+1}");
  RamReport rep;
  rep.gamma = shape_point_set(iv.V);
  rep.lambda = shape_point_set(iv.W);
  rep.sigma = shape_point_set(iv.U);

  if (rep.gamma.size() != rep.lambda.size() || rep.gamma.empty() ||
      rep.gamma.size() > 2)
    fail("InternalError", "gamma and lambda must have equal size 1 or 2");
  if ((rep.gamma.size() == 1) != iv.theta1_sq.is_zero())
    fail("InternalError", "|gamma| = 1 must match theta1^2 = 0");
  // gamma and lambda lie jointly inside mu or jointly form {a, conj(a)^-1}
  auto all_mu = [&](const std::vector<P1>& pts) {
    for (auto& pt : pts)
      if (pt.inf || !tw.in_mu(pt.x)) return false;
    return true;
  };
  auto conj_inv_pair = [&](const std::vector<P1>& pts) {
    if (pts.size() == 1) return !pts[0].inf && !tw.in_mu(pts[0].x);
    const P1 &a = pts[0], &b = pts[1];
    if (a.inf || b.inf) return (a.inf != b.inf) && (a.inf ? b : a).x.is_zero();
    return !tw.in_mu(a.x) && b.x == inv(conj(a.x));
  };
  if (all_mu(rep.gamma) != all_mu(rep.lambda))
    fail("InternalError", "gamma and lambda disagree about mu membership");
  if (!all_mu(rep.gamma) &&
      (!conj_inv_pair(rep.gamma) || !conj_inv_pair(rep.lambda)))
    fail("InternalError", "non-mu locus must be of the form {a, conj(a)^-1}");

  // gamma must be exactly the set of ramification points of g
  std::vector<P1> rams;
  Poly w = qd.g.wronskian();
  if (w.is_zero()) fail("InternalError", "separability lost with V nonzero");
  for (uint64_t x = 0; x < tw.q2(); ++x) {
    Elt xe = tw.elt(x);
    if (w.eval(xe).is_zero() && ram_index(qd.g, P1::of(xe)) > 1)
      rams.push_back(P1::of(xe));
  }
  if (ram_index(qd.g, P1::infinity(tw)) > 1) rams.push_back(P1::infinity(tw));
  sort_points(rams);
  if (rams != rep.gamma)
    fail("InternalError", "ramification locus differs from the roots of V");

  // branch points: images of gamma, all inside lambda
  std::vector<P1> branch_pts;
  for (auto& gpt : rep.gamma) {
    P1 img = qd.g.eval(gpt);
    if (std::find(rep.lambda.begin(), rep.lambda.end(), img) ==
        rep.lambda.end())
      fail("InternalError", "branch point escaped lambda");
    if (std::find(branch_pts.begin(), branch_pts.end(), img) ==
        branch_pts.end())
      branch_pts.push_back(img);
  }
  sort_points(branch_pts);
  for (auto& bp : branch_pts)
    rep.branches.push_back(BranchData{bp, ram_multiset(qd.g, bp)});

  if (qd.C.deg() == 0) {
    if (branch_pts != rep.lambda)
      fail("InternalError", "with C = 1, lambda must equal the branch locus");
    for (auto& br : rep.branches) {
      int64_t Q = int64_t(tw.Q());
      bool tot = br.multiset == std::vector<int>{int(Q + 1)};
      bool oneq = br.multiset == std::vector<int>{1, int(Q)};
      if (!tot && !oneq)
        fail("InternalError", "branch multiset must be [Q+1] or [1,Q]");
    }
  }
  rep.hurwitz = hurwitz_check(qd.g);
  return rep;
}

}  // namespace pfq
