#include "pfq/oracle.hpp"

#include <algorithm>
#include <future>

namespace pfq {

namespace {

void check_table(const FnTable& f) {
  if (f.tw == nullptr || f.values.size() != f.tw->q2())
    fail("BadParameters", "malformed function table");
}

// monomial value arrays for the four quadrinomial exponents
struct MonomialTables {
  std::vector<uint32_t> qQq, qQ1, Qq, Q1;
};

MonomialTables monomials(const FieldTower& tw) {
  int64_t Q = int64_t(tw.Q());
  uint64_t n = tw.q2();
  MonomialTables m;
  m.qQq.resize(n);
  m.qQ1.resize(n);
  m.Qq.resize(n);
  m.Q1.resize(n);
  for (uint64_t x = 0; x < n; ++x) {
    uint32_t xQ = tw.pow_i(uint32_t(x), Q);
    uint32_t xq = tw.frob_i(uint32_t(x));
    uint32_t xqQ = tw.frob_i(xQ);
    m.qQq[x] = tw.mul_i(xqQ, xq);
    m.qQ1[x] = tw.mul_i(xqQ, uint32_t(x));
    m.Qq[x] = tw.mul_i(xQ, xq);
    m.Q1[x] = tw.mul_i(xQ, uint32_t(x));
  }
  return m;
}

}  // namespace

BruteResult is_planar_bruteforce(const FnTable& f, uint32_t workers) {
  check_table(f);
  const FieldTower& tw = *f.tw;
  uint64_t n = tw.q2();
  auto scan = [&](uint32_t lo, uint32_t hi) -> std::optional<BruteWitness> {
    std::vector<uint32_t> seen(n, 0xffffffffu);
    for (uint32_t a = lo; a < hi; ++a) {
      bool bad = false;
      uint32_t badx = 0;
      for (uint32_t x = 0; x < n && !bad; ++x) {
        uint32_t d = tw.sub_i(f.values[tw.add_i(x, a)], f.values[x]);
        if (seen[d] == a) {
          bad = true;
          badx = x;
        }
        seen[d] = a;
      }
      if (bad) {
        uint32_t b = tw.sub_i(f.values[tw.add_i(badx, a)], f.values[badx]);
        uint32_t x1 = 0;
        for (uint32_t x = 0; x < badx; ++x)
          if (tw.sub_i(f.values[tw.add_i(x, a)], f.values[x]) == b) {
            x1 = x;
            break;
          }
        return BruteWitness{a, b, x1, badx};
      }
    }
    return std::nullopt;
  };
  std::optional<BruteWitness> w;
  if (workers <= 1) {
    w = scan(1, uint32_t(n));
  } else {
    // partition directions; the winner is the smallest direction overall
    std::vector<std::future<std::optional<BruteWitness>>> futs;
    uint64_t chunk = (n - 1 + workers - 1) / workers;
    for (uint32_t wk = 0; wk < workers; ++wk) {
      uint32_t lo = uint32_t(1 + wk * chunk);
      uint32_t hi = uint32_t(std::min<uint64_t>(n, lo + chunk));
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, scan, lo, hi));
    }
    for (auto& fu : futs) {
      auto r = fu.get();
      if (r && (!w || r->a < w->a)) w = r;
    }
  }
  if (!w) return BruteResult{true, std::nullopt};
  // re-verify before reporting
  if (w->x1 == w->x2 ||
      tw.sub_i(f.values[tw.add_i(w->x1, w->a)], f.values[w->x1]) != w->b ||
      tw.sub_i(f.values[tw.add_i(w->x2, w->a)], f.values[w->x2]) != w->b)
    fail("InternalError", "collision witness failed re-verification");
  return BruteResult{false, *w};
}

bool is_two_to_one(const FnTable& f) {
  check_table(f);
  uint64_t n = f.tw->q2();
  std::vector<uint32_t> fib(n, 0);
  for (uint32_t v : f.values) ++fib[v];
  uint64_t singles = 0;
  for (uint32_t cnt : fib) {
    if (cnt == 1)
      ++singles;
    else if (cnt != 0 && cnt != 2)
      return false;
  }
  return singles == 1;  // domain size q^2 is odd
}

DOEquivalence do_planarity_equivalence(const FnTable& f) {
  check_table(f);
  DOEquivalence r{};
  r.planar = is_planar_bruteforce(f).planar;
  bool zero_kernel = f.values[0] == 0;
  for (size_t x = 1; x < f.values.size() && zero_kernel; ++x)
    if (f.values[x] == 0) zero_kernel = false;
  r.two_to_one_zero_kernel = is_two_to_one(f) && zero_kernel;
  r.agree = (r.planar == r.two_to_one_zero_kernel);
  return r;
}

const char* family_tag_name(FamilyTag t) {
  switch (t) {
    case FamilyTag::P0: return "P0";
    case FamilyTag::F0: return "F0";
    case FamilyTag::F1: return "F1";
    case FamilyTag::P1: return "P1";
    case FamilyTag::P2: return "P2";
    case FamilyTag::P3: return "P3";
    case FamilyTag::F2: return "F2";
    case FamilyTag::X2: return "X2";
  }
  return "?";
}

FnTable biprojective_table(const FieldTower& tw, std::array<Elt, 4> a,
                           std::array<Elt, 4> b) {
  uint64_t q = tw.q();
  FnTable t{FnTable::Biprojective, &tw, std::vector<uint32_t>(tw.q2())};
  int64_t Q = int64_t(tw.Q());
  for (uint32_t y = 0; y < q; ++y)
    for (uint32_t x = 0; x < q; ++x) {
      Elt xe = tw.from_fq(x), ye = tw.from_fq(y);
      Elt xQ = pow(xe, Q), yQ = pow(ye, Q);
      std::array<Elt, 4> mono = {xQ * xe, xQ * ye, xe * yQ, ye * yQ};
      Elt first = tw.zero(), second = tw.zero();
      for (int i = 0; i < 4; ++i) {
        first = first + a[i] * mono[i];
        second = second + b[i] * mono[i];
      }
      t.values[x + q * y] =
          tw.fq_index(first) + uint32_t(q) * tw.fq_index(second);
    }
  return t;
}

FnTable quadrinomial_table(const CoeffVec& c) {
  const FieldTower& tw = c.tower();
  MonomialTables m = monomials(tw);
  FnTable t{FnTable::Univariate, &tw, std::vector<uint32_t>(tw.q2())};
  for (uint64_t x = 0; x < tw.q2(); ++x) {
    uint32_t v = tw.mul_i(c.c0.v, m.qQq[x]);
    v = tw.add_i(v, tw.mul_i(c.c1.v, m.qQ1[x]));
    v = tw.add_i(v, tw.mul_i(c.c2.v, m.Qq[x]));
    v = tw.add_i(v, tw.mul_i(c.c3.v, m.Q1[x]));
    t.values[x] = v;
  }
  return t;
}

FnTable make_family(FamilyTag tag, std::optional<Elt> epsilon,
                    const FieldTower& tw) {
  auto need_eps_fq = [&](bool forbid_minus_one) {
    if (!epsilon) fail("EpsilonConstraintViolated", "epsilon required");
    Elt e = *epsilon;
    if (e.is_zero() || !tw.in_fq(e))
      fail("EpsilonConstraintViolated", "epsilon must lie in F_q^*");
    if (forbid_minus_one && e == tw.from_int(-1))
      fail("EpsilonConstraintViolated", "epsilon must differ from -1");
    return e;
  };
  int64_t q = int64_t(tw.q()), Q = int64_t(tw.Q());
  auto univ = [&](auto&& fn) {
    FnTable t{FnTable::Univariate, &tw, std::vector<uint32_t>(tw.q2())};
    for (uint64_t x = 0; x < tw.q2(); ++x) t.values[x] = fn(tw.elt(x)).v;
    return t;
  };
  switch (tag) {
    case FamilyTag::P0:
      return biprojective_table(
          tw, {tw.one(), tw.zero(), tw.zero(), tw.zero()},
          {tw.zero(), tw.zero(), tw.zero(), tw.one()});
    case FamilyTag::P1:
      return biprojective_table(
          tw, {tw.one(), tw.zero(), tw.zero(), tw.zero()},
          {tw.zero(), tw.zero(), tw.one(), tw.one()});
    case FamilyTag::P2: {
      Elt e = need_eps_fq(false);
      return biprojective_table(tw,
                                {tw.zero(), tw.one(), tw.zero(), tw.zero()},
                                {tw.one(), tw.zero(), tw.zero(), e});
    }
    case FamilyTag::P3: {
      Elt e = need_eps_fq(true);
      return biprojective_table(tw,
                                {tw.one(), -tw.one(), tw.zero(), tw.zero()},
                                {tw.zero(), tw.zero(), tw.one(), e});
    }
    case FamilyTag::F0:
      return univ([&](Elt x) { return pow(x, Q + 1); });
    case FamilyTag::F1:
      return univ([&](Elt x) { return pow(x, Q + q); });
    case FamilyTag::F2: {
      if (!epsilon) fail("EpsilonConstraintViolated", "epsilon required");
      Elt e = *epsilon;
      if (e.is_zero() || tw.in_mu(e))
        fail("EpsilonConstraintViolated",
             "epsilon must be nonzero and outside mu_{q+1}");
      return univ([&](Elt x) { return pow(x, Q + q) + e * pow(x, Q + 1); });
    }
    case FamilyTag::X2:
      return univ([&](Elt x) { return x * x; });
  }
  fail("BadParameters", "unknown family tag");
}

FnTable embed_biprojective(const FnTable& p, Elt zeta) {
  check_table(p);
  if (p.kind != FnTable::Biprojective)
    fail("BadParameters", "embedding expects a biprojective table");
  const FieldTower& tw = *p.tw;
  if (tw.in_fq(zeta)) fail("ZetaInBaseField", "zeta must lie outside F_q");
  uint64_t q = tw.q();
  FnTable t{FnTable::Univariate, &tw, std::vector<uint32_t>(tw.q2())};
  std::vector<bool> hit(tw.q2(), false);
  for (uint32_t y = 0; y < q; ++y)
    for (uint32_t x = 0; x < q; ++x) {
      Elt X = tw.from_fq(x) + zeta * tw.from_fq(y);
      if (hit[X.v]) fail("InternalError", "zeta identification not bijective");
      hit[X.v] = true;
      uint32_t pv = p.values[x + q * y];
      Elt val = tw.from_fq(uint32_t(pv % q)) +
                zeta * tw.from_fq(uint32_t(pv / q));
      t.values[X.v] = val.v;
    }
  return t;
}

std::optional<CoeffVec> quadrinomial_coeffs_from_table(const FnTable& f) {
  check_table(f);
  if (f.kind != FnTable::Univariate) return std::nullopt;
  const FieldTower& tw = *f.tw;
  MonomialTables m = monomials(tw);
  // Gaussian elimination on rows [m0 m1 m2 m3 | F(x)]
  std::vector<std::array<Elt, 5>> rows;
  for (uint64_t x = 1; x < tw.q2() && rows.size() < 4; ++x) {
    std::array<Elt, 5> r = {tw.elt(m.qQq[x]), tw.elt(m.qQ1[x]),
                            tw.elt(m.Qq[x]), tw.elt(m.Q1[x]),
                            tw.elt(f.values[x])};
    for (auto& pr : rows) {
      size_t piv = 0;
      while (piv < 4 && pr[piv].is_zero()) ++piv;
      if (piv < 4 && !r[piv].is_zero()) {
        Elt fct = r[piv] / pr[piv];
        for (size_t j = 0; j < 5; ++j) r[j] = r[j] - fct * pr[j];
      }
    }
    bool nonzero = false;
    for (size_t j = 0; j < 4; ++j) nonzero |= !r[j].is_zero();
    if (nonzero)
      rows.push_back(r);
    else if (!r[4].is_zero())
      return std::nullopt;  // inconsistent
  }
  // back-substitute, free coefficients zero
  std::array<Elt, 4> c = {tw.zero(), tw.zero(), tw.zero(), tw.zero()};
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    auto piv = [](const std::array<Elt, 5>& r) {
      size_t i = 0;
      while (i < 4 && r[i].is_zero()) ++i;
      return i;
    };
    return piv(a) > piv(b);
  });
  for (auto& r : rows) {
    size_t piv = 0;
    while (piv < 4 && r[piv].is_zero()) ++piv;
    if (piv == 4) continue;
    Elt rhs = r[4];
    for (size_t j = piv + 1; j < 4; ++j) rhs = rhs - r[j] * c[j];
    c[piv] = rhs / r[piv];
  }
  CoeffVec cv{c[0], c[1], c[2], c[3]};
  FnTable check = quadrinomial_table(cv);
  if (check.values != f.values) return std::nullopt;
  return cv;
}

CoeffVec compose_linear(const CoeffVec& c, SemilinearMap l1, SemilinearMap l2) {
  const FieldTower& tw = c.tower();
  if (!l1.bijective() || !l2.bijective())
    fail("SingularLinearMap", "s*conj(s) must differ from t*conj(t)");
  int64_t Q = int64_t(tw.Q());
  Elt u = l2.s, v = l2.t;
  Elt uQ = pow(u, Q), vQ = pow(v, Q);
  Elt cuQ = conj(uQ), cvQ = conj(vQ);
  // exponent e = Q*s + r; high part in the basis (X^Q, conj(X)^Q),
  // low part in the basis (X, conj(X))
  struct Pair {
    Elt first, second;
  };
  auto acc = std::array<Elt, 4>{tw.zero(), tw.zero(), tw.zero(), tw.zero()};
  auto add_term = [&](Elt coeff, const Pair& hi, const Pair& lo) {
    if (coeff.is_zero()) return;
    // order (c0,c1,c2,c3) <-> (conj(X)^Q conj(X), conj(X)^Q X, X^Q conj(X), X^Q X)
    acc[0] = acc[0] + coeff * hi.second * lo.second;
    acc[1] = acc[1] + coeff * hi.second * lo.first;
    acc[2] = acc[2] + coeff * hi.first * lo.second;
    acc[3] = acc[3] + coeff * hi.first * lo.first;
  };
  Pair hi1{uQ, vQ};          // (uX+v conj X)^Q
  Pair hiq{cvQ, cuQ};        // (uX+v conj X)^{qQ}
  Pair lo1{u, v};            // (uX+v conj X)
  Pair loq{conj(v), conj(u)};  // (uX+v conj X)^q
  add_term(c.c0, hiq, loq);
  add_term(c.c1, hiq, lo1);
  add_term(c.c2, hi1, loq);
  add_term(c.c3, hi1, lo1);
  // now apply l1: s*f + t*conj(f); conjugation reverses and conjugates c
  std::array<Elt, 4> out;
  for (int i = 0; i < 4; ++i)
    out[i] = l1.s * acc[i] + l1.t * conj(acc[3 - i]);
  CoeffVec cc{out[0], out[1], out[2], out[3]};
  for (uint64_t x = 0; x < tw.q2(); ++x) {
    Elt xe = tw.elt(x);
    if (cc.eval_f(xe) != l1.apply(c.eval_f(l2.apply(xe))))
      fail("InternalError", "linear composition failed pointwise check");
  }
  return cc;
}

}  // namespace pfq
