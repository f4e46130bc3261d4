#include "pfq/polyring.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace pfq {

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly::Poly(const FieldTower& tw, std::vector<Elt> coeffs)
    : tw_(&tw), c_(std::move(coeffs)) {
  for (auto& e : c_)
    if (e.tw != tw_) fail("BadParameters", "coefficient from another tower");
  trim();
}

Poly Poly::constant(Elt e) {
  return Poly(*e.tw, {e});
}

Poly Poly::monomial(Elt coeff, size_t degree) {
  std::vector<Elt> c(degree + 1, coeff.tw->zero());
  c[degree] = coeff;
  return Poly(*coeff.tw, std::move(c));
}

Poly Poly::x(const FieldTower& tw) { return monomial(tw.one(), 1); }

Elt Poly::lead() const {
  if (c_.empty()) fail("ZeroPolynomial", "leading coefficient of zero");
  return c_.back();
}

Elt Poly::eval(Elt x) const {
  Elt r = tw_->zero();
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(*tw_);
  std::vector<Elt> d(c_.size() - 1, tw_->zero());
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = tw_->from_int(int64_t(i)) * c_[i];
  return Poly(*tw_, std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) fail("ZeroPolynomial", "monic of zero");
  Elt li = inv(lead());
  std::vector<Elt> d = c_;
  for (auto& e : d) e = e * li;
  return Poly(*tw_, std::move(d));
}

int Poly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return int(i);
  return -1;
}

bool Poly::operator==(const Poly& o) const {
  if (tw_ != o.tw_ || c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

Poly operator+(const Poly& a, const Poly& b) {
  const FieldTower& tw = a.tower();
  std::vector<Elt> c(std::max(a.coeffs().size(), b.coeffs().size()), tw.zero());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Poly(tw, std::move(c));
}

Poly operator-(const Poly& a) {
  std::vector<Elt> c = a.coeffs();
  for (auto& e : c) e = -e;
  return Poly(a.tower(), std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  const FieldTower& tw = a.tower();
  if (a.is_zero() || b.is_zero()) return Poly(tw);
  std::vector<Elt> c(a.coeffs().size() + b.coeffs().size() - 1, tw.zero());
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] = c[i + j] + a.coeff(i) * b.coeff(j);
  }
  return Poly(tw, std::move(c));
}

Poly operator*(Elt s, const Poly& a) {
  std::vector<Elt> c = a.coeffs();
  for (auto& e : c) e = s * e;
  return Poly(a.tower(), std::move(c));
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail("ZeroPolynomial", "division by zero polynomial");
  const FieldTower& tw = a.tower();
  if (a.deg() < b.deg()) return {Poly(tw), a};
  std::vector<Elt> r = a.coeffs();
  std::vector<Elt> q(a.deg() - b.deg() + 1, tw.zero());
  Elt li = inv(b.lead());
  for (int i = a.deg(); i >= b.deg(); --i) {
    Elt f = r[i] * li;
    q[i - b.deg()] = f;
    if (f.is_zero()) continue;
    for (int j = 0; j <= b.deg(); ++j)
      r[i - b.deg() + j] = r[i - b.deg() + j] - f * b.coeff(j);
  }
  return {Poly(tw, std::move(q)), Poly(tw, std::move(r))};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) fail("BothZero", "gcd(0,0)");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divrem(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

Poly conj_coeffs(const Poly& d) {
  std::vector<Elt> c = d.coeffs();
  for (auto& e : c) e = conj(e);
  return Poly(d.tower(), std::move(c));
}

Poly conj_reciprocal(const Poly& d) {
  if (d.is_zero()) fail("ZeroPolynomial", "conjugate reciprocal of zero");
  std::vector<Elt> c(d.coeffs().size(), d.tower().zero());
  for (size_t i = 0; i < c.size(); ++i) c[i] = conj(d.coeff(c.size() - 1 - i));
  return Poly(d.tower(), std::move(c));
}

std::optional<Elt> scr_witness(const Poly& d) {
  if (d.is_zero()) fail("ZeroPolynomial", "SCR test of zero");
  Poly dh = conj_reciprocal(d);
  if (dh.deg() != d.deg()) return std::nullopt;  // constant term was zero
  Elt alpha = dh.lead() / d.lead();
  if (dh != alpha * d) return std::nullopt;
  if (!d.tower().in_mu(alpha))
    fail("InternalError", "SCR ratio escaped mu_{q+1}");
  return alpha;
}

Poly pow_char(const Poly& a, uint64_t m) {
  const FieldTower& tw = a.tower();
  if (a.is_zero()) return a;
  uint64_t pm = 1;
  for (uint64_t i = 0; i < m; ++i) pm *= tw.p();
  std::vector<Elt> c(size_t(a.deg()) * pm + 1, tw.zero());
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    c[i * pm] = pow(a.coeff(i), int64_t(pm));
  return Poly(tw, std::move(c));
}

Poly linear_pow_char(Elt a, Elt b, uint64_t m) {
  const FieldTower& tw = *a.tw;
  uint64_t pm = 1;
  for (uint64_t i = 0; i < m; ++i) pm *= tw.p();
  std::vector<Elt> c(a.is_zero() ? 1 : size_t(pm) + 1, tw.zero());
  c[0] = pow(b, int64_t(pm));
  if (!a.is_zero()) c[pm] = pow(a, int64_t(pm));
  return Poly(tw, std::move(c));
}

Poly poly_pow(const Poly& a, uint64_t e) {
  Poly r = Poly::constant(a.tower().one());
  Poly b = a;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly reverse_to_degree(const Poly& a, size_t n) {
  if (a.is_zero()) return a;
  if (size_t(a.deg()) > n) fail("BadParameters", "reverse degree too small");
  std::vector<Elt> c(n + 1, a.tower().zero());
  for (size_t i = 0; i <= size_t(a.deg()); ++i) c[n - i] = a.coeff(i);
  return Poly(a.tower(), std::move(c));
}

Poly homogeneous_eval(const std::vector<Elt>& coeffs, const Poly& n,
                      const Poly& d, size_t ndeg) {
  const FieldTower& tw = n.tower();
  // Horner in n/d: (((c_k n + c_{k-1} d) n + c_{k-2} d^2) ...)
  Poly acc(tw);
  Poly dpow = Poly::constant(tw.one());
  std::vector<Poly> dpows;
  dpows.reserve(ndeg + 1);
  for (size_t i = 0; i <= ndeg; ++i) {
    dpows.push_back(dpow);
    dpow = dpow * d;
  }
  for (size_t i = 0; i <= ndeg; ++i) {
    Elt ci = i < coeffs.size() ? coeffs[i] : tw.zero();
    if (ci.is_zero()) continue;
    acc = acc + ci * (poly_pow(n, i) * dpows[ndeg - i]);
  }
  return acc;
}

int root_multiplicity(const Poly& d, Elt x) {
  if (d.is_zero()) fail("ZeroPolynomial", "root multiplicity in zero");
  int m = 0;
  Poly cur = d;
  Poly lin(d.tower(), {-x, d.tower().one()});
  while (!cur.is_zero() && cur.eval(x).is_zero()) {
    cur = divrem(cur, lin).first;
    ++m;
  }
  return m;
}

std::vector<Elt> roots_in_mu(const Poly& d) {
  if (d.is_zero()) fail("ZeroPolynomial", "mu roots of zero");
  const FieldTower& tw = d.tower();
  std::vector<Elt> out;
  Poly cur = d;
  for (uint32_t mv : tw.mu_list()) {
    Elt m = tw.elt(mv);
    Poly lin(tw, {-m, tw.one()});
    while (cur.deg() >= 1 && cur.eval(m).is_zero()) {
      cur = divrem(cur, lin).first;
      out.push_back(m);
    }
  }
  return out;
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a) {
  if (a.is_zero()) fail("ZeroPolynomial", "squarefree decomposition of zero");
  const FieldTower& tw = a.tower();
  std::vector<std::pair<Poly, int>> out;
  auto add_part = [&](const Poly& f, int mult) {
    if (f.deg() >= 1) out.emplace_back(f.monic(), mult);
  };
  // Yun over the separable part, then recurse on the p-th power remainder.
  std::function<void(const Poly&, int)> run = [&](const Poly& f, int scale) {
    Poly fp = f.derivative();
    if (fp.is_zero()) {
      if (f.deg() == 0) return;
      // f is a polynomial in X^p; take the p-th root
      std::vector<Elt> c(size_t(f.deg() / int(tw.p())) + 1, tw.zero());
      for (size_t i = 0; i < c.size(); ++i)
        c[i] = tw.inv_frobenius_power(f.coeff(i * tw.p()), 1);
      run(Poly(tw, std::move(c)), scale * int(tw.p()));
      return;
    }
    Poly g = poly_gcd(f, fp);
    Poly w = divrem(f, g).first;  // product of factors with mult not in pZ
    int i = 1;
    while (w.deg() >= 1) {
      Poly y = poly_gcd(w, g);
      Poly part = divrem(w, y).first;
      add_part(part, i * scale);
      w = y;
      g = divrem(g, y).first;
      ++i;
    }
    if (g.deg() >= 1) run(g, scale);  // leftover is a p-th power
  };
  run(a.monic(), 1);
  return out;
}

// ---------------------------------------------------------------------------
// quadratic root profile

Elt QuadShape::delta() const {
  const FieldTower& tw = *a1.tw;
  return a1 * a1 - tw.from_int(4) * a2 * a0;
}

Poly QuadShape::to_poly() const {
  return Poly(*a1.tw, {a0, a1, a2});
}

QuadRootProfile quad_root_profile(const QuadShape& s) {
  const FieldTower& tw = *s.a1.tw;
  Elt alpha = s.a2, beta = s.a1;
  if (s.a0 != conj(alpha))
    fail("ShapeViolation", "trailing coefficient must be conj of leading");
  if (!tw.in_fq(beta)) fail("ShapeViolation", "middle coefficient not in F_q");
  if (alpha.is_zero() && beta.is_zero()) fail("BothZero", "zero quadratic shape");
  QuadRootProfile out;
  out.delta = s.delta();
  if (alpha.is_zero()) {
    // beta X: unique root 0, never in mu
    out.kind = QuadRootProfile::NoneInMu;
    out.roots = {tw.zero()};
    if (!tw.is_square_in_fq(out.delta))
      fail("InternalError", "linear case discriminant must be a square");
    return out;
  }
  Elt two = tw.from_int(2);
  if (out.delta.is_zero()) {
    Elt r = -beta / (two * alpha);
    if (!tw.in_mu(r)) fail("InternalError", "multiple root escaped mu");
    out.kind = QuadRootProfile::MultipleInMu;
    out.roots = {r};
    return out;
  }
  auto th = tw.sqrt(out.delta);
  if (!th) fail("InternalError", "element of F_q has no square root in F_{q^2}");
  Elt r1 = (-beta + *th) / (two * alpha);
  Elt r2 = (-beta - *th) / (two * alpha);
  bool sq = tw.is_square_in_fq(out.delta);
  if (!sq) {
    if (!tw.in_mu(r1) || !tw.in_mu(r2))
      fail("InternalError", "nonsquare discriminant but roots escaped mu");
    out.kind = QuadRootProfile::TwoDistinctInMu;
  } else {
    if (tw.in_mu(r1) || tw.in_mu(r2))
      fail("InternalError", "square discriminant but a root lies in mu");
    out.kind = QuadRootProfile::NoneInMu;
  }
  out.roots = {r1, r2};
  return out;
}

QuadRootProfile quad_root_profile(const Poly& d) {
  if (d.deg() > 2) fail("ShapeViolation", "degree above two");
  QuadShape s{d.coeff(2), d.coeff(1), d.coeff(0)};
  return quad_root_profile(s);
}

// ---------------------------------------------------------------------------
// Mobius

Mobius::Mobius(Elt a, Elt b, Elt c, Elt d, Action claim)
    : tw_(a.tw), a_(a), b_(b), c_(c), d_(d), action_(claim) {
  if (a * d == b * c) fail("DegenerateParameters", "singular degree-one map");
  verify_action();
}

void Mobius::verify_action() const {
  if (action_ == General) return;
  const FieldTower& tw = *tw_;
  std::vector<P1> image;
  for (uint32_t mv : tw.mu_list()) image.push_back(apply(P1::of(tw.elt(mv))));
  if (action_ == PermutesMu) {
    for (auto& y : image)
      if (y.inf || !tw.in_mu(y.x))
        fail("InternalError", "map tagged PermutesMu leaves mu_{q+1}");
  } else {
    size_t infs = 0;
    for (auto& y : image) {
      if (y.inf)
        ++infs;
      else if (!tw.in_fq(y.x))
        fail("InternalError", "map tagged MuToP1 leaves P^1(F_q)");
    }
    if (infs != 1) fail("InternalError", "MuToP1 image must hit infinity once");
  }
  for (size_t i = 0; i < image.size(); ++i)
    for (size_t j = i + 1; j < image.size(); ++j)
      if (image[i] == image[j])
        fail("InternalError", "tagged degree-one map is not injective on mu");
}

P1 Mobius::apply(const P1& x) const {
  if (x.inf) {
    if (c_.is_zero()) return P1::infinity(*tw_);
    return P1::of(a_ / c_);
  }
  Elt den = c_ * x.x + d_;
  if (den.is_zero()) return P1::infinity(*tw_);
  return P1::of((a_ * x.x + b_) / den);
}

Mobius Mobius::inverse() const {
  // inverting preserves a mu-permutation but not the mu -> P^1(F_q) action
  Action a = action_ == PermutesMu ? PermutesMu : General;
  return Mobius(d_, -b_, -c_, a_, a);
}

Mobius Mobius::compose(const Mobius& inner) const {
  return Mobius(a_ * inner.a_ + b_ * inner.c_, a_ * inner.b_ + b_ * inner.d_,
                c_ * inner.a_ + d_ * inner.c_, c_ * inner.b_ + d_ * inner.d_,
                General);
}

RatFn Mobius::as_ratfn() const {
  const FieldTower& tw = *tw_;
  return RatFn(Poly(tw, {b_, a_}), Poly(tw, {d_, c_}));
}

Mobius Mobius::scaled(Elt m00, Elt m01, Elt m10, Elt m11, Action claim) const {
  return Mobius(m00 * a_ + m01 * c_, m00 * b_ + m01 * d_,
                m10 * a_ + m11 * c_, m10 * b_ + m11 * d_, claim);
}

Mobius mobius_permuting_mu(Elt alpha, Elt beta) {
  if (alpha * conj(alpha) == beta * conj(beta))
    fail("DegenerateParameters", "alpha conj(alpha) == beta conj(beta)");
  return Mobius(conj(beta), conj(alpha), alpha, beta, Mobius::PermutesMu);
}

Mobius mobius_mu_to_p1(Elt gamma, Elt delta) {
  const FieldTower& tw = *gamma.tw;
  if (!tw.in_mu(gamma)) fail("GammaNotInMu", "gamma must lie in mu_{q+1}");
  if (tw.in_fq(delta)) fail("DeltaInBaseField", "delta must lie outside F_q");
  return Mobius(delta, gamma * conj(delta), tw.one(), gamma, Mobius::MuToP1);
}

Mobius mu_perm_with_pole(const P1& b) {
  const FieldTower& tw = *b.x.tw;
  if (b.inf)
    return Mobius(tw.one(), tw.zero(), tw.zero(), tw.one(), Mobius::PermutesMu);
  if (tw.in_mu(b.x)) fail("BadParameters", "pole must lie outside mu");
  // -(conj(b)X - 1)/(X - b)
  return Mobius(-conj(b.x), tw.one(), tw.one(), -b.x, Mobius::PermutesMu);
}

Mobius mu_to_p1_zero_pole(Elt z, Elt pl) {
  const FieldTower& tw = *z.tw;
  if (!tw.in_mu(z) || !tw.in_mu(pl) || z == pl)
    fail("BadParameters", "need distinct points of mu");
  // delta (X - z)/(X - pl) with conj(delta)/delta = z/pl
  Elt delta = tw.norm_one_log_split(z / pl);
  return Mobius(delta, -delta * z, tw.one(), -pl, Mobius::MuToP1);
}

std::pair<Elt, Elt> mu_perm_params(const Mobius& m) {
  const FieldTower& tw = *m.a().tw;
  if (m.action() != Mobius::PermutesMu)
    fail("BadParameters", "map is not tagged as permuting mu");
  Elt a = m.a(), b = m.b(), c = m.c(), d = m.d();
  // scale (a b; c d) by t so that it matches (conj(be) conj(al); al be)
  Elt mratio = tw.zero();
  if (!c.is_zero() && !d.is_zero())
    mratio = a / conj(d);
  else if (c.is_zero())
    mratio = b.is_zero() ? a / conj(d) : tw.zero();
  else
    mratio = a.is_zero() ? b / conj(c) : tw.zero();
  if (mratio.is_zero() || !tw.in_mu(mratio))
    fail("InternalError", "mu-permuting map has no canonical parameters");
  Elt t = tw.norm_one_log_split(mratio);  // conj(t)/t = mratio
  Elt alpha = t * c, beta = t * d;
  if (conj(beta) != t * a || conj(alpha) != t * b)
    fail("InternalError", "mu-permuting parameter extraction failed");
  return {alpha, beta};
}

std::pair<Elt, Elt> mu_to_p1_params(const Mobius& m) {
  const FieldTower& tw = *m.a().tw;
  if (m.action() != Mobius::MuToP1)
    fail("BadParameters", "map is not tagged as mu -> P^1(F_q)");
  if (m.c().is_zero())
    fail("InternalError", "mu -> P^1(F_q) map with constant denominator");
  Elt ci = inv(m.c());
  Elt alpha = m.a() * ci, gamma = m.d() * ci;
  if (m.b() * ci != gamma * conj(alpha) || !tw.in_mu(gamma) || tw.in_fq(alpha))
    fail("InternalError", "mu -> P^1 parameter extraction failed");
  return {alpha, gamma};
}

// ---------------------------------------------------------------------------
// RatFn

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail("ZeroPolynomial", "zero denominator");
  if (!num_.is_zero()) {
    Poly g = poly_gcd(num_, den_);
    if (g.deg() > 0) {
      num_ = divrem(num_, g).first;
      den_ = divrem(den_, g).first;
    }
  } else {
    den_ = Poly::constant(num_.tower().one());
  }
  Elt li = inv(den_.lead());
  num_ = li * num_;
  den_ = li * den_;
}

P1 RatFn::eval(const P1& x) const {
  const FieldTower& tw = num_.tower();
  if (x.inf) {
    if (num_.deg() > den_.deg()) return P1::infinity(tw);
    if (num_.deg() < den_.deg()) return P1::of(tw.zero());
    return P1::of(num_.lead() / den_.lead());
  }
  Elt d = den_.eval(x.x);
  if (d.is_zero()) return P1::infinity(tw);
  return P1::of(num_.eval(x.x) / d);
}

RatFn RatFn::reciprocal_arg() const {
  size_t n = size_t(std::max(num_.deg(), den_.deg()));
  return RatFn(reverse_to_degree(num_, n), reverse_to_degree(den_, n));
}

Poly RatFn::wronskian() const {
  return num_.derivative() * den_ - num_ * den_.derivative();
}

bool RatFn::separable() const { return !wronskian().is_zero(); }

bool RatFn::operator==(const RatFn& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

RatFn compose_arg(const RatFn& g, const Mobius& m) {
  const FieldTower& tw = g.tower();
  size_t n = size_t(std::max(0, g.degree()));
  Poly nn(tw, {m.b(), m.a()});
  Poly dd(tw, {m.d(), m.c()});
  Poly num = homogeneous_eval(g.num().coeffs(), nn, dd, n);
  Poly den = homogeneous_eval(g.den().coeffs(), nn, dd, n);
  return RatFn(num, den);
}

RatFn compose_val(const Mobius& m, const RatFn& g) {
  Poly num = m.a() * g.num() + m.b() * g.den();
  Poly den = m.c() * g.num() + m.d() * g.den();
  return RatFn(num, den);
}

RatFn conjugate_to_base(const RatFn& g, const Mobius& rho, const Mobius& sigma) {
  const FieldTower& tw = g.tower();
  if (rho.action() != Mobius::MuToP1 || sigma.action() != Mobius::MuToP1)
    fail("ShapeViolation", "rho and sigma must map mu_{q+1} onto P^1(F_q)");
  // validate that g = unit * X^s * conj_reciprocal(den)/den
  if (g.num().is_zero()) fail("ShapeViolation", "zero function");
  int s = g.num().valuation();
  Poly shifted = divrem(g.num(), Poly::monomial(tw.one(), size_t(s))).first;
  Poly expect = conj_reciprocal(g.den());
  if (shifted.deg() != expect.deg())
    fail("ShapeViolation", "numerator is not a shifted conjugate reciprocal");
  Elt unit = shifted.lead() / expect.lead();
  if (shifted != unit * expect || !tw.in_mu(unit))
    fail("ShapeViolation", "numerator is not a shifted conjugate reciprocal");
  RatFn h = compose_val(rho, compose_arg(g, sigma.inverse()));
  for (auto& e : h.num().coeffs())
    if (!tw.in_fq(e))
      fail("CoefficientsNotInBaseField", "numerator coefficient outside F_q");
  for (auto& e : h.den().coeffs())
    if (!tw.in_fq(e))
      fail("CoefficientsNotInBaseField", "denominator coefficient outside F_q");
  return h;
}

}  // namespace pfq
