#include "pfq/charsum.hpp"

#include <cmath>

namespace pfq {

namespace {
constexpr double kWeilMargin = 1e-6;

uint64_t pow_u64(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

void check_eps_fq(const FieldTower& tw, Elt eps, bool forbid_minus_one) {
  if (eps.is_zero() || !tw.in_fq(eps))
    fail("EpsilonConstraintViolated", "epsilon must lie in F_q^*");
  if (forbid_minus_one && eps == tw.from_int(-1))
    fail("EpsilonConstraintViolated", "epsilon must differ from -1");
}

// d-th power test in F_q^*
bool is_dth_power(const FieldTower& tw, Elt x, uint64_t d) {
  return tw.pow_i(x.v, int64_t((tw.q() - 1) / d)) == 1;
}

}  // namespace

uint64_t MultChar::exponent(uint32_t fq_index) const {
  return tw->fq_log(fq_index) % order;
}

MultChar make_char(const FieldTower& tw, uint64_t d) {
  if (d <= 1 || (tw.q() - 1) % d != 0)
    fail("BadParameters", "character order must divide q-1 and exceed 1");
  return MultChar{&tw, d};
}

CharSumResult char_sum(const MultChar& chi, const RatFn& f) {
  const FieldTower& tw = *chi.tw;
  if (f.num().is_zero()) fail("ZeroFunction", "character sum of zero");
  for (const auto& e : f.num().coeffs())
    if (!tw.in_fq(e)) fail("NotOverBaseField", "f must be defined over F_q");
  for (const auto& e : f.den().coeffs())
    if (!tw.in_fq(e)) fail("NotOverBaseField", "f must be defined over F_q");
  // d-th power test via multiplicity-mod-d of the zero/pole divisor
  bool dth = true;
  int m = 0;
  for (const Poly* part : {&f.num(), &f.den()}) {
    if (part->deg() == 0) continue;
    for (auto& [fac, mult] : squarefree_decomposition(*part)) {
      m += fac.deg();
      if (uint64_t(mult) % chi.order != 0) dth = false;
    }
  }
  if (dth) fail("IsDthPower", "the Weil bound does not apply");
  CharSumResult r;
  r.m = m;
  r.counts.assign(chi.order, 0);
  for (uint64_t x = 0; x <= tw.q(); ++x) {
    P1 pt = x < tw.q() ? P1::of(tw.from_fq(uint32_t(x))) : P1::infinity(tw);
    P1 v = f.eval(pt);
    if (v.inf || v.x.is_zero()) continue;
    r.counts[chi.exponent(tw.fq_index(v.x))]++;
  }
  double re = 0, im = 0;
  for (uint64_t e = 0; e < chi.order; ++e) {
    double ang = 2.0 * M_PI * double(e) / double(chi.order);
    re += double(r.counts[e]) * std::cos(ang);
    im += double(r.counts[e]) * std::sin(ang);
  }
  r.magnitude = std::sqrt(re * re + im * im);
  r.bound = double(r.m - 1) * std::sqrt(double(tw.q()));
  r.within_bound = r.magnitude <= r.bound + kWeilMargin;
  if (!r.within_bound) fail("InternalError", "Weil bound violated");
  return r;
}

RatFn appendix_a_argument(const FieldTower& tw, Elt eps) {
  check_eps_fq(tw, eps, true);
  Elt one = tw.one();
  Poly num = -(eps + one) * Poly::x(tw);
  Poly den = Poly(tw, {one, eps}) * Poly(tw, {one, -one});
  return RatFn(num, den);
}

RatFn appendix_b_argument(const FieldTower& tw, Elt eps, Elt xi) {
  if (eps.is_zero() || tw.in_mu(eps))
    fail("EpsilonInMu", "epsilon must be nonzero and outside mu_{q+1}");
  if (tw.in_fq(xi)) fail("XiInBaseField", "xi must lie outside F_q");
  Elt one = tw.one();
  Elt lam = (eps * conj(eps) - one) / ((one + eps) * (one + conj(eps)));
  Poly n = Poly(tw, {xi, one}) * Poly(tw, {conj(xi), one});
  Elt d1 = (conj(xi) + eps * xi) / (one + eps);
  Elt d2 = (xi + conj(eps) * conj(xi)) / (one + conj(eps));
  Poly d = Poly(tw, {d1, one}) * Poly(tw, {d2, one});
  return RatFn(lam * n, d);
}

AppendixSum appendix_a(const FieldTower& tw, Elt eps) {
  if (tw.ell() % tw.k() == 0)
    fail("KDividesL", "the certificate assumes k does not divide l");
  if ((tw.k() / tw.delta()) % 2 == 0)
    fail("BadParameters", "k/delta must be odd");
  check_eps_fq(tw, eps, true);
  uint64_t d = pow_u64(tw.p(), tw.delta()) - 1;
  RatFn f = appendix_a_argument(tw, eps);
  AppendixSum r{};
  for (uint64_t t = 0; t < tw.q(); ++t) {
    P1 v = f.eval(P1::of(tw.from_fq(uint32_t(t))));
    if (v.inf || v.x.is_zero()) continue;
    if (is_dth_power(tw, v.x, d)) r.value += int64_t(d);
  }
  double p = double(tw.p()), k = double(tw.k()), dl = double(tw.delta());
  r.lower_bound = std::pow(p, k) - 2.0 * std::pow(p, dl + k / 2.0) +
                  4.0 * std::pow(p, k / 2.0) - 3.0;
  if (double(r.value) < r.lower_bound - 1e-9)
    fail("InternalError", "power-residue sum fell below its Weil lower bound");
  r.positive = r.value > 0;
  if (!r.positive)
    fail("InternalError", "the non-planarity certificate must be positive");
  return r;
}

AppendixSum appendix_b(const FieldTower& tw, Elt eps, Elt xi) {
  if (tw.ell() % tw.k() == 0)
    fail("KDividesL", "the certificate assumes k does not divide l");
  if ((tw.k() / tw.delta()) % 2 == 0 || (tw.ell() / tw.delta()) % 2 == 0)
    fail("BadParameters",
         "k/delta and l/delta must be odd (reduce l to k+l first)");
  RatFn f = appendix_b_argument(tw, eps, xi);  // validates eps, xi
  uint64_t d = pow_u64(tw.p(), tw.delta()) - 1;
  AppendixSum r{};
  for (uint64_t x = 0; x <= tw.q(); ++x) {
    P1 pt = x < tw.q() ? P1::of(tw.from_fq(uint32_t(x))) : P1::infinity(tw);
    P1 v = f.eval(pt);
    if (v.inf || v.x.is_zero() || !tw.in_fq(v.x))
      fail("InternalError", "certificate argument left F_q^*");
    if (is_dth_power(tw, v.x, d)) r.value += int64_t(d);
  }
  double p = double(tw.p()), k = double(tw.k()), dl = double(tw.delta());
  r.lower_bound = std::pow(p, k) - 3.0 * std::pow(p, dl + k / 2.0) +
                  6.0 * std::pow(p, k / 2.0) + 1.0;
  if (double(r.value) < r.lower_bound - 1e-9)
    fail("InternalError", "power-residue sum fell below its Weil lower bound");
  r.positive = r.value > 0;
  if (!r.positive)
    fail("InternalError", "the non-planarity certificate must be positive");
  return r;
}

int64_t p3_reduced_solutions(const FieldTower& tw, Elt eps, Elt t) {
  check_eps_fq(tw, eps, true);
  Elt one = tw.one();
  if (!tw.in_fq(t) || t.is_zero() || t == one || one + eps * t == tw.zero())
    fail("TOutOfRange", "need t in F_q minus {0, 1, -1/eps}");
  Elt tau1 = inv(one - t);
  Elt tau2 = eps * t / (one + eps * t);
  Elt c1 = tau1 - tau2, c2 = tau1 + tau2 - one;
  int64_t Q = int64_t(tw.Q());
  int64_t count = 0;
  for (uint64_t zi = 0; zi < tw.q(); ++zi) {
    Elt z = tw.from_fq(uint32_t(zi));
    if (!(pow(z, Q) + c2 * z).is_zero()) continue;
    for (uint64_t xi = 0; xi < tw.q(); ++xi) {
      Elt x = tw.from_fq(uint32_t(xi));
      if ((pow(x, Q) + x + c1 * z).is_zero()) ++count;
    }
  }
  return count;
}

int64_t f2_reduced_solutions(const FieldTower& tw, Elt eps, Elt a) {
  if (eps.is_zero() || tw.in_mu(eps))
    fail("EpsilonInMu", "epsilon must be nonzero and outside mu_{q+1}");
  if (a.is_zero()) fail("BadParameters", "direction a must be nonzero");
  Elt one = tw.one();
  Elt tau = inv(one + eps * pow(a, 1 - int64_t(tw.q())));
  Elt cy = conj(tau) - tau;        // coefficient of z in the y-equation
  Elt cz = one - tau - conj(tau);  // coefficient of z in the z-equation
  int64_t Q = int64_t(tw.Q());
  // admissible z: conj(z) = -z
  std::vector<Elt> zs;
  for (uint64_t v = 0; v < tw.q2(); ++v) {
    Elt z = tw.elt(v);
    if (conj(z) == -z) zs.push_back(z);
  }
  if (zs.size() != tw.q())
    fail("InternalError", "trace-kernel set must have exactly q elements");
  int64_t count = 0;
  for (Elt z : zs) {
    if (!(pow(z, Q) + cz * z).is_zero()) continue;
    for (uint64_t yi = 0; yi < tw.q(); ++yi) {
      Elt y = tw.from_fq(uint32_t(yi));
      if ((pow(y, Q) + y + cy * z).is_zero()) ++count;
    }
  }
  return count;
}

}  // namespace pfq
