#include <doctest.h>

#include "pfq/geometry.hpp"
#include "pfq/oracle.hpp"

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
RatFn monomial_fn(const FieldTower& t, size_t e) {
  return RatFn(Poly::monomial(t.one(), e), Poly::constant(t.one()));
}
}  // namespace

TEST_CASE("ramification indices of X^2 and X^{Q+1}") {
  FieldTower t(3, 1, 1);
  RatFn x2 = monomial_fn(t, 2);
  CHECK(ram_index(x2, P1::of(t.zero())) == 2);
  CHECK(ram_index(x2, P1::of(t.one())) == 1);
  RatFn x4 = monomial_fn(t, 4);
  CHECK(ram_index(x4, P1::infinity(t)) == 4);
  CHECK_THROWS_WITH_AS(ram_index(RatFn(Poly::constant(t.one()),
                                       Poly::constant(t.one())),
                                 P1::of(t.zero())),
                       doctest::Contains("ConstantFunction"), Error);
}

TEST_CASE("ramification multisets of X^{Q+1} over F_9") {
  FieldTower t(3, 1, 1);
  RatFn x4 = monomial_fn(t, 4);
  CHECK(ram_multiset(x4, P1::of(t.zero())) == std::vector<int>{4});
  CHECK(ram_multiset(x4, P1::of(t.one())) == std::vector<int>{1, 1, 1, 1});
  CHECK(ram_multiset(x4, P1::infinity(t)) == std::vector<int>{4});
  // the fiber over a non-fourth-power leaves F_{q^4}; reported, never dropped
  Elt g = t.primitive_root();
  CHECK_THROWS_WITH_AS(ram_multiset(x4, P1::of(g)),
                       doctest::Contains("PreimageOutsideWorkingField"), Error);
  // a fourth power splits into four simple preimages
  CHECK(ram_multiset(x4, P1::of(sqr(sqr(g)))) == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("hurwitz check on monomials") {
  FieldTower t(3, 1, 1);
  auto h2 = hurwitz_check(monomial_fn(t, 2));
  CHECK(h2.lhs == 2);
  CHECK(h2.rhs == 2);
  CHECK(h2.tame);
  CHECK(h2.holds);
  auto h4 = hurwitz_check(monomial_fn(t, 4));
  CHECK(h4.lhs == 6);
  CHECK(h4.rhs == 6);
  CHECK(h4.tame);
  CHECK_THROWS_WITH_AS(hurwitz_check(monomial_fn(t, 3)),
                       doctest::Contains("NonSeparable"), Error);
}

TEST_CASE("ram report on F_9 spec instances") {
  FieldTower t(3, 1, 1);
  auto rep1 = ram_report(cvec(t, 0, 0, 0, 1));  // g = X^4
  REQUIRE(rep1.gamma.size() == 2);
  CHECK(rep1.gamma[0] == P1::of(t.zero()));
  CHECK(rep1.gamma[1] == P1::infinity(t));
  CHECK(rep1.lambda == rep1.gamma);
  REQUIRE(rep1.branches.size() == 2);
  for (auto& br : rep1.branches) CHECK(br.multiset == std::vector<int>{4});

  auto rep2 = ram_report(cvec(t, 0, 1, 0, 0));  // g = 1/X^2, e = Q-1 = 2
  REQUIRE(rep2.gamma.size() == 2);
  CHECK(rep2.gamma[0] == P1::of(t.zero()));
  CHECK(rep2.gamma[1] == P1::infinity(t));
  for (auto& br : rep2.branches) CHECK(br.multiset == std::vector<int>{2});

  CHECK_THROWS_WITH_AS(ram_report(cvec(t, 1, 0, 0, 1)),
                       doctest::Contains("ConstantG"), Error);
}

TEST_CASE("a [1,Q] branch multiset arises on an embedded P2 instance") {
  // family ii2 instances have a unique branch point with multiset [1,Q]
  FieldTower t(3, 3, 1);
  auto u = embed_biprojective(
      make_family(FamilyTag::P2, t.from_fq(t.fq_primitive_root()), t), t.gen());
  auto c = quadrinomial_coeffs_from_table(u);
  REQUIRE(c.has_value());
  auto rep = ram_report(*c);
  int64_t Q = int64_t(t.Q());
  bool saw_one_q = false;
  for (auto& br : rep.branches)
    saw_one_q |= br.multiset == std::vector<int>{1, int(Q)};
  CHECK(saw_one_q);
}

TEST_CASE("ram report structural properties on random c") {
  for (auto [p, k, l] : {std::array<uint32_t, 3>{3, 1, 1},
                         std::array<uint32_t, 3>{3, 2, 1},
                         std::array<uint32_t, 3>{5, 1, 1}}) {
    FieldTower t(p, k, l);
    uint64_t st = 77 + p + k;
    int done = 0;
    for (int n = 0; n < 400 && done < 60; ++n) {
      CoeffVec c = random_c(t, st);
      InvariantPack iv = invariants(c);
      if (iv.u_zero() || iv.v_zero() || iv.w_zero()) continue;
      ++done;
      // ram_report re-verifies: gamma = ramification locus (from the E2
      // Wronskian), branch points inside lambda, multiset shapes at C=1,
      // and the Hurwitz count; any violation throws.
      auto rep = ram_report(c);
      for (auto& br : rep.branches) {
        int sum = 0;
        for (int e : br.multiset) sum += e;
        CHECK(sum == build_quad(c).deg_g);
      }
      CHECK(rep.hurwitz.holds);
    }
    CHECK(done > 0);
  }
}
