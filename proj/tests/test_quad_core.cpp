#include <doctest.h>

#include "pfq/quad_core.hpp"

using namespace pfq;

namespace {
uint64_t rng_next(uint64_t& st) {
  st = st * 6364136223846793005ull + 1442695040888963407ull;
  return st >> 11;
}
CoeffVec random_c(const FieldTower& t, uint64_t& st) {
  while (true) {
    CoeffVec c{t.elt(rng_next(st) % t.q2()), t.elt(rng_next(st) % t.q2()),
               t.elt(rng_next(st) % t.q2()), t.elt(rng_next(st) % t.q2())};
    if (!c.all_zero()) return c;
  }
}
CoeffVec cvec(const FieldTower& t, int a, int b, int c, int d) {
  return CoeffVec{t.from_int(a), t.from_int(b), t.from_int(c), t.from_int(d)};
}
}  // namespace

TEST_CASE("build_quad on F_9 spec instances") {
  FieldTower t(3, 1, 1);
  Elt one = t.one();

  auto qd1 = build_quad(cvec(t, 0, 0, 0, 1));
  CHECK(qd1.A == Poly::constant(one));
  CHECK(qd1.B == Poly::monomial(one, 4));
  CHECK(qd1.deg_g == 4);
  CHECK(qd1.C.deg() == 0);

  auto qd2 = build_quad(cvec(t, 0, 1, 0, 0));
  CHECK(qd2.A == Poly::monomial(one, 3));
  CHECK(qd2.B == Poly::x(t));
  CHECK(qd2.C == Poly::x(t));
  // g = 1/X^2
  CHECK(qd2.g.num() == Poly::constant(one));
  CHECK(qd2.g.den() == Poly::monomial(one, 2));

  auto qd3 = build_quad(cvec(t, 1, 0, 0, 1));
  CHECK(qd3.A == qd3.B);
  CHECK(qd3.deg_g == 0);
  CHECK(qd3.C == qd3.A.monic());

  CHECK_THROWS_WITH_AS(build_quad(cvec(t, 0, 0, 0, 0)),
                       doctest::Contains("AllZeroCoefficients"), Error);
}

TEST_CASE("invariant packs on F_9 spec instances") {
  FieldTower t(3, 1, 1);
  Elt one = t.one(), zero = t.zero();

  auto iv1 = invariants(cvec(t, 0, 0, 0, 1));
  CHECK(iv1.e1 == one);
  CHECK(iv1.e2 == one);
  CHECK(iv1.e3 == one);
  CHECK(iv1.theta2 == zero);
  CHECK(iv1.theta3 == zero);
  CHECK(iv1.theta1_sq == one);
  CHECK(iv1.U.to_poly() == Poly::x(t));
  CHECK(iv1.V.to_poly() == Poly::x(t));
  CHECK(iv1.W.to_poly() == Poly::x(t));

  auto iv2 = invariants(cvec(t, 0, 1, 0, 0));
  CHECK(iv2.e1 == -one);
  CHECK(iv2.e2 == -one);
  CHECK(iv2.e3 == one);
  CHECK(iv2.theta1_sq == one);
  CHECK(iv2.U.to_poly() == -one * Poly::x(t));
  CHECK(iv2.V.to_poly() == Poly::x(t));
  CHECK(iv2.W.to_poly() == -one * Poly::x(t));

  auto iv3 = invariants(cvec(t, 1, 0, 0, 1));
  CHECK(iv3.e2 == zero);
  CHECK(iv3.e3 == zero);
  CHECK(iv3.theta2 == zero);
  CHECK(iv3.theta3 == zero);
  CHECK(iv3.u_zero());
  CHECK(iv3.v_zero());
}

TEST_CASE("identities E1-E4 hold on spec instances and degenerate cases") {
  FieldTower t(3, 1, 1);
  CHECK(check_identities(cvec(t, 0, 0, 0, 1)).all());
  CHECK(check_identities(cvec(t, 1, 0, 0, 1)).all());  // U=V=0, all degenerate
  CHECK(check_identities(cvec(t, 0, 1, 0, 0)).all());
}

TEST_CASE("identities E1-E4 hold for random c over several towers") {
  for (auto [p, k, l] : {std::array<uint32_t, 3>{3, 1, 1},
                         std::array<uint32_t, 3>{3, 2, 1},
                         std::array<uint32_t, 3>{5, 1, 1},
                         std::array<uint32_t, 3>{3, 1, 2}}) {
    FieldTower t(p, k, l);
    uint64_t st = 1000 + p + k + l;
    for (int n = 0; n < 150; ++n) {
      CoeffVec c = random_c(t, st);
      CHECK(check_identities(c).all());
    }
  }
}

TEST_CASE("deg g takes only the structural values") {
  FieldTower t(3, 1, 1);
  uint64_t st = 5;
  int64_t Q = int64_t(t.Q());
  for (int n = 0; n < 300; ++n) {
    auto qd = build_quad(random_c(t, st));
    bool ok = qd.deg_g == 0 || qd.deg_g == 1 || qd.deg_g == Q - 1 ||
              qd.deg_g == Q || qd.deg_g == Q + 1;
    CHECK(ok);
  }
}

TEST_CASE("subfield property f(aX) = a^{Q+1} f(X) for a in F_q") {
  FieldTower t(3, 2, 1);
  uint64_t st = 17;
  for (int n = 0; n < 25; ++n) {
    CoeffVec c = random_c(t, st);
    for (uint32_t a = 0; a < t.q(); ++a) {
      Elt ae = t.from_fq(a);
      for (int m = 0; m < 6; ++m) {
        Elt x = t.elt(rng_next(st) % t.q2());
        CHECK(c.eval_f(ae * x) == pow(ae, int64_t(t.Q()) + 1) * c.eval_f(x));
      }
    }
  }
}

TEST_CASE("B is the degree-(Q+1) conjugate reflection of A") {
  FieldTower t(3, 1, 2);
  uint64_t st = 23;
  for (int n = 0; n < 60; ++n) {
    CoeffVec c = random_c(t, st);
    auto qd = build_quad(c);
    CHECK(qd.B == reverse_to_degree(conj_coeffs(qd.A), size_t(t.Q()) + 1));
  }
}

TEST_CASE("swap symmetry: V flips sign and conjugates, W is fixed") {
  FieldTower t(3, 1, 1);
  uint64_t st = 31;
  for (int n = 0; n < 80; ++n) {
    CoeffVec c = random_c(t, st);
    CoeffVec cs{c.c3, c.c2, c.c1, c.c0};
    auto iv = invariants(c), ivs = invariants(cs);
    CHECK(ivs.V.to_poly() == -t.one() * conj_coeffs(iv.V.to_poly()));
    CHECK(ivs.W.to_poly() == iv.W.to_poly());
  }
}
