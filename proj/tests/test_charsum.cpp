#include <doctest.h>

#include <cmath>

#include "pfq/charsum.hpp"

using namespace pfq;

TEST_CASE("character orthogonality") {
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{3, 1}, {3, 3}, {5, 2}}) {
    FieldTower t(p, k, 1);
    for (uint64_t d = 2; d < t.q(); ++d) {
      if ((t.q() - 1) % d) continue;
      MultChar chi = make_char(t, d);
      // sum over F_q^* of chi(x) = 0: accumulate exponent-class counts
      std::vector<int64_t> counts(d, 0);
      for (uint32_t x = 1; x < t.q(); ++x) counts[chi.exponent(x)]++;
      // all classes equally likely
      for (uint64_t e = 0; e < d; ++e) CHECK(counts[e] == int64_t((t.q() - 1) / d));
    }
  }
}

TEST_CASE("quadratic character sum of t over F_3 vanishes") {
  FieldTower t(3, 1, 1);
  MultChar chi = make_char(t, 2);
  RatFn f(Poly::x(t), Poly::constant(t.one()));
  auto r = char_sum(chi, f);
  CHECK(r.counts[0] == 1);  // chi(1) = 1
  CHECK(r.counts[1] == 1);  // chi(2) = -1
  CHECK(r.magnitude == doctest::Approx(0.0));
  CHECK(r.within_bound);
}

TEST_CASE("d-th powers are rejected") {
  FieldTower t(3, 1, 1);
  MultChar chi = make_char(t, 2);
  RatFn f(Poly::monomial(t.one(), 2), Poly::constant(t.one()));  // t^2
  CHECK_THROWS_WITH_AS(char_sum(chi, f), doctest::Contains("IsDthPower"), Error);
  CHECK_THROWS_WITH_AS(char_sum(chi, RatFn(Poly(t), Poly::constant(t.one()))),
                       doctest::Contains("ZeroFunction"), Error);
}

TEST_CASE("appendix-A argument at q=27, eps=1: Weil bound and exact sum") {
  FieldTower t(3, 3, 1);
  MultChar chi = make_char(t, 2);
  RatFn f = appendix_a_argument(t, t.one());
  auto r = char_sum(chi, f);
  CHECK(r.m == 3);
  CHECK(r.bound == doctest::Approx(2.0 * std::sqrt(27.0)));
  CHECK(r.within_bound);
  // isolating the principal character: A = q - 3 + S_1 for d = 2
  auto a = appendix_a(t, t.one());
  int64_t s1 = r.counts[0] - r.counts[1];
  CHECK(a.value == int64_t(t.q()) - 3 + s1);
}

TEST_CASE("appendix A certificates over F_27") {
  FieldTower t(3, 3, 1);
  double expected_bound = 27.0 - 2.0 * std::pow(3.0, 2.5) + 4.0 * std::pow(3.0, 1.5) - 3.0;
  for (uint32_t e = 1; e < t.q(); ++e) {
    Elt eps = t.from_fq(e);
    if (eps == t.from_int(-1)) continue;
    auto r = appendix_a(t, eps);
    CHECK(r.lower_bound == doctest::Approx(expected_bound));
    CHECK(r.positive);
    CHECK(double(r.value) >= r.lower_bound - 1e-9);
  }
  CHECK_THROWS_WITH_AS(appendix_a(t, t.from_int(-1)),
                       doctest::Contains("EpsilonConstraintViolated"), Error);
  FieldTower td(3, 2, 4);
  CHECK_THROWS_WITH_AS(appendix_a(td, td.one()), doctest::Contains("KDividesL"),
                       Error);
}

TEST_CASE("appendix B certificates over F_729") {
  FieldTower t(3, 3, 1);
  double expected_bound = 27.0 - 3.0 * std::pow(3.0, 2.5) + 6.0 * std::pow(3.0, 1.5) + 1.0;
  CHECK(expected_bound > 0.0);
  int done = 0;
  for (uint64_t v = 2; v < t.q2() && done < 8; ++v) {
    Elt eps = t.elt(v);
    if (eps.is_zero() || t.in_mu(eps)) continue;
    ++done;
    auto r = appendix_b(t, eps, t.gen());
    CHECK(r.positive);
    CHECK(r.lower_bound == doctest::Approx(expected_bound));
    CHECK(double(r.value) >= r.lower_bound - 1e-9);
  }
  CHECK(done == 8);
  // guards
  Elt mu_elt = t.elt(t.mu_list()[1]);
  CHECK_THROWS_WITH_AS(appendix_b(t, mu_elt, t.gen()),
                       doctest::Contains("EpsilonInMu"), Error);
  Elt good_eps = t.zero();
  for (uint64_t v = 1; v < t.q2(); ++v)
    if (!t.in_mu(t.elt(v))) {
      good_eps = t.elt(v);
      break;
    }
  CHECK_THROWS_WITH_AS(appendix_b(t, good_eps, t.one()),
                       doctest::Contains("XiInBaseField"), Error);
}

TEST_CASE("reduced P3 systems count solutions and certify non-planarity") {
  FieldTower t(3, 3, 1);
  Elt one = t.one();
  // count >= 1 always ((0,0) solves); some t gives count > 1 (the
  // non-planarity certificate) and some t only the trivial solution
  bool found_big = false, found_trivial = false;
  for (uint32_t tv = 0; tv < t.q(); ++tv) {
    Elt tt = t.from_fq(tv);
    if (tt.is_zero() || tt == one || (one + one * tt).is_zero()) continue;
    int64_t n = p3_reduced_solutions(t, one, tt);
    CHECK(n >= 1);
    if (n > 1) found_big = true;
    if (n == 1) found_trivial = true;
  }
  CHECK(found_big);
  CHECK(found_trivial);
  CHECK_THROWS_WITH_AS(p3_reduced_solutions(t, one, one),
                       doctest::Contains("TOutOfRange"), Error);
}

TEST_CASE("reduced f2 systems: admissible z-set size and certificates") {
  FieldTower t(3, 3, 1);
  // the set {z : conj(z) = -z} has exactly q elements (checked internally);
  // some direction must give count > 1 for a valid eps
  Elt eps = t.zero();
  for (uint64_t v = 1; v < t.q2(); ++v)
    if (!t.in_mu(t.elt(v)) && !t.in_fq(t.elt(v))) {
      eps = t.elt(v);
      break;
    }
  REQUIRE(!t.in_mu(eps));
  bool found = false;
  for (uint64_t av = 1; av < t.q2() && !found; av += 7) {
    int64_t n = f2_reduced_solutions(t, eps, t.elt(av));
    CHECK(n >= 1);
    if (n > 1) found = true;
  }
  CHECK(found);
  Elt mu_elt = t.elt(t.mu_list()[2]);
  CHECK_THROWS_WITH_AS(f2_reduced_solutions(t, mu_elt, t.gen()),
                       doctest::Contains("EpsilonInMu"), Error);
}

TEST_CASE("weil bound holds for every appendix argument at (3,3,1)") {
  FieldTower t(3, 3, 1);
  MultChar chi = make_char(t, 2);
  for (uint32_t e = 1; e < t.q(); ++e) {
    Elt eps = t.from_fq(e);
    if (eps == t.from_int(-1)) continue;
    CHECK(char_sum(chi, appendix_a_argument(t, eps)).within_bound);
  }
  int done = 0;
  for (uint64_t v = 2; v < t.q2() && done < 6; ++v) {
    Elt eps = t.elt(v);
    if (eps.is_zero() || t.in_mu(eps)) continue;
    ++done;
    auto r = char_sum(chi, appendix_b_argument(t, eps, t.gen()));
    CHECK(r.m == 4);
    CHECK(r.within_bound);
  }
}
