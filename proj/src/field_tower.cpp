#include "pfq/field_tower.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace pfq {

namespace {

constexpr uint64_t kLogTableLimit = 1u << 20;
constexpr uint64_t kFullTableLimit = 1024;

uint64_t checked_pow(uint64_t b, uint32_t e, const char* what) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (r > (uint64_t(1) << 62) / b) fail("Overflow", what);
    r *= b;
  }
  return r;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> fs;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

// ---- dense polynomials over F_p (digit vectors, lowest degree first) ----

using FpPoly = std::vector<uint32_t>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, uint32_t p) {
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (size_t j = 0; j < b.size(); ++j)
        c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  // reduce by monic m
  size_t dm = m.size() - 1;
  for (size_t i = c.size(); i-- > dm;) {
    uint32_t t = c[i];
    if (!t) continue;
    c[i] = 0;
    for (size_t j = 0; j < dm; ++j)
      c[i - dm + j] = (c[i - dm + j] + t * (p - m[j])) % p;
  }
  c.resize(dm);
  return c;
}

FpPoly fp_powmod(FpPoly base, uint64_t e, const FpPoly& m, uint32_t p) {
  FpPoly r(m.size() - 1, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = fp_mulmod(r, base, m, p);
    base = fp_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint32_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    // a mod b
    uint32_t lead_inv = 1;
    {
      uint32_t lb = b.back();
      for (uint32_t t = 1; t < p; ++t)
        if (lb * t % p == 1) lead_inv = t;
    }
    while (a.size() >= b.size() && !a.empty()) {
      uint32_t f = a.back() * lead_inv % p;
      size_t off = a.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j)
        a[off + j] = (a[off + j] + f * (p - b[j])) % p;
      fp_trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Rabin irreducibility test for monic m of degree k over F_p.
bool poly_irreducible_fp(uint32_t p, const std::vector<uint32_t>& m) {
  size_t k = m.size() - 1;
  if (k == 0) return false;
  if (m.back() != 1) return false;
  if (k == 1) return true;
  FpPoly x{0, 1};
  // X^{p^k} == X mod m
  FpPoly t = x;
  for (size_t i = 0; i < k; ++i) t = fp_powmod(t, p, m, p);
  FpPoly xr(m.size() - 1, 0);
  if (x.size() <= xr.size()) std::copy(x.begin(), x.end(), xr.begin());
  if (t != xr) return false;
  for (uint64_t r : prime_factors(k)) {
    FpPoly s = x;
    for (size_t i = 0; i < k / r; ++i) s = fp_powmod(s, p, m, p);
    // gcd(X^{p^{k/r}} - X, m) must be 1
    FpPoly d = s;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    FpPoly g = fp_gcd(d, m, p);
    if (g.size() != 1) return false;
  }
  return true;
}

GcdPowerForms gcd_power_forms(uint32_t p, uint32_t k, uint32_t ell) {
  uint32_t d = std::gcd(k, ell);
  uint64_t pk = checked_pow(p, k, "p^k");
  uint64_t pl = checked_pow(p, ell, "p^l");
  uint64_t pd = checked_pow(p, d, "p^gcd");
  GcdPowerForms r{};
  r.gcd_minus = int64_t(pd - 1);
  if ((ell / d) % 2 == 1)
    r.gcd_plus = (p == 2) ? 1 : 2;
  else
    r.gcd_plus = int64_t(pd + 1);
  if (uint64_t(r.gcd_minus) != std::gcd(pk - 1, pl - 1))
    fail("InternalError", "closed form for gcd(p^k-1,p^l-1) disagrees");
  if (uint64_t(r.gcd_plus) != std::gcd(pk + 1, pl - 1))
    fail("InternalError", "closed form for gcd(p^k+1,p^l-1) disagrees");
  return r;
}

// ---------------------------------------------------------------------------
// FieldTower construction

FieldTower::FieldTower(uint32_t p, uint32_t k, uint32_t ell, uint64_t seed)
    : p_(p), k_(k), ell_(ell) {
  build(seed, nullptr, nullptr);
}

FieldTower::FieldTower(uint32_t p, uint32_t k, uint32_t ell,
                       std::vector<uint32_t> modulus_q,
                       std::vector<uint32_t> modulus_q2)
    : p_(p), k_(k), ell_(ell) {
  build(0, &modulus_q, &modulus_q2);
}

void FieldTower::build(uint64_t seed, const std::vector<uint32_t>* mq,
                       const std::vector<uint32_t>* mq2) {
  if (p_ == 2) fail("EvenCharacteristic", "p must be odd");
  if (!is_prime_u64(p_)) fail("NonPrime", "p must be an odd prime");
  if (k_ < 1 || ell_ < 1) fail("BadParameters", "k and ell must be positive");
  delta_ = std::gcd(k_, ell_);
  q_ = checked_pow(p_, k_, "q = p^k");
  if (q_ > 0xffff) fail("BadParameters", "q too large for this tower");
  Q_ = checked_pow(p_, ell_, "Q = p^l");
  if (Q_ > (uint64_t(1) << 20)) fail("BadParameters", "Q too large for this tower");
  qq_ = q_ * q_;

  // modulus for F_q over F_p
  if (mq) {
    mod_q_ = *mq;
    if (mod_q_.size() != k_ + 1 || mod_q_.back() != 1)
      fail("BadParameters", "modulus_q must be monic of degree k");
    for (uint32_t c : mod_q_)
      if (c >= p_) fail("BadParameters", "modulus_q digit out of range");
    if (!poly_irreducible_fp(p_, mod_q_))
      fail("BadParameters", "modulus_q is not irreducible");
  } else if (k_ == 1) {
    mod_q_ = {0, 1};
  } else {
    uint64_t total = q_;  // candidates: monic with k lower coefficients
    bool found = false;
    for (uint64_t i = 0; i < total && !found; ++i) {
      uint64_t idx = (seed + i) % total;
      FpPoly m(k_ + 1, 0);
      uint64_t t = idx;
      for (uint32_t j = 0; j < k_; ++j) {
        m[j] = uint32_t(t % p_);
        t /= p_;
      }
      m[k_] = 1;
      if (poly_irreducible_fp(p_, m)) {
        mod_q_ = m;
        found = true;
      }
    }
    if (!found) fail("IrreducibleSearchFailure", "no degree-k irreducible found");
  }

  build_fq_tables();

  // modulus for F_{q^2} over F_q: u^2 + c1*u + c0, irreducible iff
  // c1^2 - 4*c0 is a nonsquare in F_q.
  auto fq_is_square = [&](uint32_t x) {
    if (x == 0) return true;
    uint32_t r = 1;
    uint64_t e = (q_ - 1) / 2;
    uint32_t b = x;
    while (e) {
      if (e & 1) r = fq_mul_digits(r, b);
      b = fq_mul_digits(b, b);
      e >>= 1;
    }
    return r == 1;
  };
  auto q2_irreducible = [&](uint32_t c0, uint32_t c1) {
    uint32_t disc = fq_mul_digits(c1, c1);
    uint32_t four_c0 = fq_mul_digits(fq_add(fq_add(1, 1), fq_add(1, 1)), c0);
    disc = fq_add(disc, fq_neg(four_c0));
    return disc != 0 && !fq_is_square(disc);
  };
  if (mq2) {
    mod_q2_ = *mq2;
    if (mod_q2_.size() != 3 || mod_q2_.back() != 1)
      fail("BadParameters", "modulus_q2 must be monic of degree 2");
    for (uint32_t c : mod_q2_)
      if (c >= q_) fail("BadParameters", "modulus_q2 coefficient out of range");
    if (!q2_irreducible(mod_q2_[0], mod_q2_[1]))
      fail("BadParameters", "modulus_q2 is not irreducible over F_q");
  } else {
    bool found = false;
    for (uint64_t i = 0; i < qq_ && !found; ++i) {
      uint64_t idx = (seed + i) % qq_;
      uint32_t c0 = uint32_t(idx % q_), c1 = uint32_t(idx / q_);
      if (q2_irreducible(c0, c1)) {
        mod_q2_ = {c0, c1, 1};
        found = true;
      }
    }
    if (!found) fail("IrreducibleSearchFailure", "no quadratic irreducible found");
  }

  build_fq2_tables();
}

// F_q digit helpers. Index e encodes sum e_i p^i.
uint32_t FieldTower::fq_add(uint32_t a, uint32_t b) const {
  if (!fq_add_.empty()) return fq_add_[a * q_ + b];
  uint32_t r = 0, m = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    r += (a % p_ + b % p_) % p_ * m;
    a /= p_;
    b /= p_;
    m *= p_;
  }
  return r;
}

uint32_t FieldTower::fq_neg(uint32_t a) const {
  if (!fq_neg_.empty()) return fq_neg_[a];
  uint32_t r = 0, m = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    r += (p_ - a % p_) % p_ * m;
    a /= p_;
    m *= p_;
  }
  return r;
}

uint32_t FieldTower::fq_mul_digits(uint32_t a, uint32_t b) const {
  FpPoly pa(k_, 0), pb(k_, 0);
  for (uint32_t i = 0; i < k_; ++i) {
    pa[i] = a % p_;
    a /= p_;
    pb[i] = b % p_;
    b /= p_;
  }
  FpPoly c = fp_mulmod(pa, pb, mod_q_, p_);
  uint32_t r = 0, m = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    r += c[i] * m;
    m *= p_;
  }
  return r;
}

uint32_t FieldTower::fq_mul(uint32_t a, uint32_t b) const {
  if (!fq_mul_.empty()) return fq_mul_[a * q_ + b];
  if (a == 0 || b == 0) return 0;
  return fq_exp_[(fq_log_[a] + fq_log_[b]) % (q_ - 1)];
}

uint32_t FieldTower::fq_inv(uint32_t a) const {
  if (a == 0) fail("ZeroInput", "inverse of zero in F_q");
  if (!fq_inv_.empty()) return fq_inv_[a];
  return fq_exp_[(q_ - 1 - fq_log_[a]) % (q_ - 1)];
}

uint64_t FieldTower::fq_log(uint32_t fq_index) const {
  if (fq_index == 0) fail("ZeroInput", "log of zero");
  return fq_log_[fq_index];
}

void FieldTower::build_fq_tables() {
  fq_neg_.resize(q_);
  for (uint32_t a = 0; a < q_; ++a) {
    uint32_t r = 0, m = 1, x = a;
    for (uint32_t i = 0; i < k_; ++i) {
      r += (p_ - x % p_) % p_ * m;
      x /= p_;
      m *= p_;
    }
    fq_neg_[a] = r;
  }
  // primitive root of F_q^*
  auto pow_dig = [&](uint32_t b, uint64_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = fq_mul_digits(r, b);
      b = fq_mul_digits(b, b);
      e >>= 1;
    }
    return r;
  };
  auto fs = prime_factors(q_ - 1);
  fq_gen_ = 0;
  for (uint32_t g = 1; g < q_ && !fq_gen_; ++g) {
    bool ok = g != 1 || q_ == 2;
    for (uint64_t f : fs)
      if (pow_dig(g, (q_ - 1) / f) == 1) {
        ok = false;
        break;
      }
    if (ok) fq_gen_ = g;
  }
  if (!fq_gen_ && q_ > 2) fail("InternalError", "no primitive root in F_q");
  fq_log_.assign(q_, 0);
  fq_exp_.assign(q_ - 1, 0);
  uint32_t cur = 1;
  for (uint64_t i = 0; i < q_ - 1; ++i) {
    fq_exp_[i] = cur;
    fq_log_[cur] = i;
    cur = fq_mul_digits(cur, fq_gen_);
  }
  if (cur != 1) fail("InternalError", "primitive root order mismatch");
  if (q_ <= kFullTableLimit) {
    fq_add_.resize(q_ * q_);
    fq_mul_.resize(q_ * q_);
    for (uint32_t a = 0; a < q_; ++a)
      for (uint32_t b = 0; b < q_; ++b) {
        uint32_t r = 0, m = 1, x = a, y = b;
        for (uint32_t i = 0; i < k_; ++i) {
          r += (x % p_ + y % p_) % p_ * m;
          x /= p_;
          y /= p_;
          m *= p_;
        }
        fq_add_[a * q_ + b] = r;
        fq_mul_[a * q_ + b] =
            (a && b) ? fq_exp_[(fq_log_[a] + fq_log_[b]) % (q_ - 1)] : 0;
      }
  }
  fq_inv_.resize(q_);
  fq_inv_[0] = 0;
  for (uint32_t a = 1; a < q_; ++a)
    fq_inv_[a] = fq_exp_[(q_ - 1 - fq_log_[a]) % (q_ - 1)];
}

uint32_t FieldTower::mul_formula(uint32_t a, uint32_t b) const {
  uint32_t a0 = a % q_, a1 = a / q_, b0 = b % q_, b1 = b / q_;
  uint32_t m0 = mod_q2_[0], m1 = mod_q2_[1];
  uint32_t a0b0 = fq_mul(a0, b0);
  uint32_t a1b1 = fq_mul(a1, b1);
  uint32_t cross = fq_add(fq_mul(a0, b1), fq_mul(a1, b0));
  uint32_t lo = fq_add(a0b0, fq_neg(fq_mul(m0, a1b1)));
  uint32_t hi = fq_add(cross, fq_neg(fq_mul(m1, a1b1)));
  return lo + q_ * hi;
}

void FieldTower::build_fq2_tables() {
  // Frobenius x -> x^q: u^q is the other root of the quadratic modulus.
  if (qq_ <= kLogTableLimit) {
    frob_.resize(qq_);
    neg2_.resize(qq_);
    for (uint64_t a = 0; a < qq_; ++a) {
      uint32_t lo = uint32_t(a % q_), hi = uint32_t(a / q_);
      uint32_t flo = fq_add(lo, fq_neg(fq_mul(hi, mod_q2_[1])));
      frob_[a] = flo + q_ * fq_neg(hi);
      neg2_[a] = fq_neg(lo) + q_ * fq_neg(hi);
    }
  }
  // primitive root of F_{q^2}^*
  auto pow_f = [&](uint32_t b, uint64_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul_formula(r, b);
      b = mul_formula(b, b);
      e >>= 1;
    }
    return r;
  };
  auto fs = prime_factors(qq_ - 1);
  gen2_ = 0;
  for (uint64_t g = 2; g < qq_ && !gen2_; ++g) {
    bool ok = true;
    for (uint64_t f : fs)
      if (pow_f(uint32_t(g), (qq_ - 1) / f) == 1) {
        ok = false;
        break;
      }
    if (ok) gen2_ = uint32_t(g);
  }
  if (!gen2_) fail("InternalError", "no primitive root in F_{q^2}");
  if (qq_ <= kLogTableLimit) {
    has_log2_ = true;
    log2_.assign(qq_, 0);
    exp2_.assign(qq_ - 1, 0);
    uint32_t cur = 1;
    for (uint64_t i = 0; i < qq_ - 1; ++i) {
      exp2_[i] = cur;
      log2_[cur] = i;
      cur = mul_formula(cur, gen2_);
    }
    if (cur != 1) fail("InternalError", "primitive root order mismatch");
    inv2_.resize(qq_);
    inv2_[0] = 0;
    for (uint64_t a = 1; a < qq_; ++a)
      inv2_[a] = exp2_[(qq_ - 1 - log2_[a]) % (qq_ - 1)];
  }
  if (qq_ <= kFullTableLimit) {
    has_full2_ = true;
    add2_.resize(qq_ * qq_);
    mul2_.resize(qq_ * qq_);
    for (uint64_t a = 0; a < qq_; ++a)
      for (uint64_t b = 0; b < qq_; ++b) {
        add2_[a * qq_ + b] =
            fq_add(a % q_, b % q_) + q_ * fq_add(a / q_, b / q_);
        mul2_[a * qq_ + b] = mul_formula(uint32_t(a), uint32_t(b));
      }
  }
  // mu_{q+1} via the order-(q+1) subgroup
  mu_.resize(q_ + 1);
  uint32_t step = pow_f(gen2_, q_ - 1);
  uint32_t cur = 1;
  for (uint64_t i = 0; i <= q_; ++i) {
    mu_[i] = cur;
    cur = mul_formula(cur, step);
  }
  if (cur != 1) fail("InternalError", "mu subgroup order mismatch");
}

// ---------------------------------------------------------------------------
// index arithmetic

uint32_t FieldTower::add_i(uint32_t a, uint32_t b) const {
  if (has_full2_) return add2_[uint64_t(a) * qq_ + b];
  return fq_add(a % q_, b % q_) + q_ * fq_add(a / q_, b / q_);
}

uint32_t FieldTower::neg_i(uint32_t a) const {
  if (!neg2_.empty()) return neg2_[a];
  return fq_neg(a % q_) + q_ * fq_neg(a / q_);
}

uint32_t FieldTower::sub_i(uint32_t a, uint32_t b) const {
  return add_i(a, neg_i(b));
}

uint32_t FieldTower::mul_i(uint32_t a, uint32_t b) const {
  if (has_full2_) return mul2_[uint64_t(a) * qq_ + b];
  if (a == 0 || b == 0) return 0;
  if (has_log2_) return exp2_[(log2_[a] + log2_[b]) % (qq_ - 1)];
  return mul_formula(a, b);
}

uint32_t FieldTower::inv_i(uint32_t a) const {
  if (a == 0) fail("ZeroInput", "inverse of zero");
  if (!inv2_.empty()) return inv2_[a];
  // x^{-1} = conj(x) / N(x) with N(x) = x * conj(x) in F_q
  uint32_t lo = a % q_, hi = a / q_;
  uint32_t flo = fq_add(lo, fq_neg(fq_mul(hi, mod_q2_[1])));
  uint32_t cj = flo + q_ * fq_neg(hi);
  uint32_t n = mul_formula(a, cj);
  if (n % q_ == 0 || n / q_ != 0) fail("InternalError", "norm not in F_q^*");
  uint32_t ni = fq_inv(n % q_);
  return fq_mul(cj % q_, ni) + q_ * fq_mul(cj / q_, ni);
}

uint32_t FieldTower::pow_i(uint32_t a, int64_t e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    fail("ZeroInput", "negative power of zero");
  }
  uint64_t m = qq_ - 1;
  uint64_t ee = uint64_t(((e % int64_t(m)) + int64_t(m)) % int64_t(m));
  if (has_log2_) {
    unsigned __int128 t = (unsigned __int128)log2_[a] * ee;
    return exp2_[uint64_t(t % m)];
  }
  uint32_t r = 1, b = a;
  while (ee) {
    if (ee & 1) r = mul_i(r, b);
    b = mul_i(b, b);
    ee >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// element-level API

Elt FieldTower::elt(uint64_t index) const {
  if (index >= qq_) fail("BadParameters", "element index out of range");
  return Elt(uint32_t(index), this);
}

Elt FieldTower::gen() const { return Elt(uint32_t(q_), this); }

Elt FieldTower::from_int(int64_t n) const {
  int64_t r = n % int64_t(p_);
  if (r < 0) r += p_;
  return Elt(uint32_t(r), this);
}

Elt FieldTower::from_fq(uint32_t fq_index) const {
  if (fq_index >= q_) fail("BadParameters", "F_q index out of range");
  return Elt(fq_index, this);
}

Elt FieldTower::primitive_root() const { return Elt(gen2_, this); }

Elt FieldTower::frobenius(Elt x) const {
  if (!frob_.empty()) return Elt(frob_[x.v], this);
  uint32_t lo = x.v % q_, hi = x.v / q_;
  uint32_t flo = fq_add(lo, fq_neg(fq_mul(hi, mod_q2_[1])));
  return Elt(flo + q_ * fq_neg(hi), this);
}

Elt FieldTower::inv_frobenius_power(Elt x, uint64_t m) const {
  uint64_t mm = m % (2 * k_);
  if (mm == 0) return x;
  Elt y = x;
  for (uint64_t i = 0; i < 2 * k_ - mm; ++i) y = pfq::pow(y, p_);
  return y;
}

bool FieldTower::in_mu(Elt x) const {
  if (x.v == 0) return false;
  if (has_log2_) return log2_[x.v] % (q_ - 1) == 0;
  return pow_i(x.v, int64_t(q_ + 1)) == 1;
}

bool FieldTower::in_fq(Elt x) const { return frobenius(x).v == x.v; }

uint32_t FieldTower::fq_index(Elt x) const {
  if (x.v / q_ != 0) fail("NotInBaseField", "element not in F_q");
  return x.v % q_;
}

bool FieldTower::is_square_in_fq(Elt x) const {
  if (x.v == 0) fail("ZeroInput", "square test of zero");
  if (!in_fq(x)) fail("NotInBaseField", "square test outside F_q");
  return pow_i(x.v, int64_t((q_ - 1) / 2)) == 1;
}

bool FieldTower::is_square(Elt x) const {
  if (x.v == 0) return true;
  if (has_log2_) return log2_[x.v] % 2 == 0;
  return pow_i(x.v, int64_t((qq_ - 1) / 2)) == 1;
}

std::optional<Elt> FieldTower::sqrt(Elt x) const {
  if (x.v == 0) return zero();
  if (!has_log2_) fail("BadParameters", "sqrt needs the discrete-log table");
  uint64_t l = log2_[x.v];
  if (l % 2) return std::nullopt;
  return Elt(exp2_[l / 2], this);
}

Elt FieldTower::norm_one_log_split(Elt m) const {
  if (!in_mu(m)) fail("BadParameters", "Hilbert-90 input not in mu_{q+1}");
  if (!has_log2_) fail("BadParameters", "Hilbert-90 needs the log table");
  uint64_t j = log2_[m.v];
  if (j % (q_ - 1)) fail("InternalError", "mu log not divisible by q-1");
  return Elt(exp2_[j / (q_ - 1)], this);
}

uint64_t FieldTower::log(Elt x) const {
  if (x.v == 0) fail("ZeroInput", "log of zero");
  if (!has_log2_) fail("BadParameters", "no discrete-log table at this size");
  return log2_[x.v];
}

Elt FieldTower::exp(uint64_t e) const {
  if (!has_log2_) fail("BadParameters", "no discrete-log table at this size");
  return Elt(exp2_[e % (qq_ - 1)], this);
}

const QuarticExt& FieldTower::quartic() const {
  std::call_once(quartic_once_,
                 [this] { quartic_ = std::make_unique<QuarticExt>(*this); });
  return *quartic_;
}

// ---------------------------------------------------------------------------
// text encoding: base-p digits per F_q coordinate, "lo+u*hi"

namespace {
std::string fq_digits_str(uint32_t e, uint32_t p, uint32_t k) {
  std::string s;
  uint32_t len = 1;
  uint32_t x = e;
  for (uint32_t i = 1; i < k; ++i) {
    x /= p;
    if (x % p) len = i + 1;
  }
  x = e;
  for (uint32_t i = 0; i < len; ++i) {
    if (i) {
      if (p > 9) s += '.';
    }
    s += std::to_string(x % p);
    x /= p;
  }
  return s;
}

uint32_t fq_digits_parse(const std::string& s, uint32_t p, uint32_t k,
                         uint32_t q) {
  if (s.empty()) fail("ParseError", "empty element coordinate");
  uint64_t r = 0, m = 1;
  uint32_t count = 0;
  size_t i = 0;
  while (i < s.size()) {
    size_t j = i;
    if (p > 9) {
      while (j < s.size() && s[j] != '.') ++j;
    } else {
      j = i + 1;
    }
    uint64_t d = 0;
    for (size_t t = i; t < j; ++t) {
      if (s[t] < '0' || s[t] > '9') fail("ParseError", "bad digit in element");
      d = d * 10 + uint64_t(s[t] - '0');
    }
    if (d >= p) fail("ParseError", "digit out of range for characteristic");
    r += d * m;
    m *= p;
    ++count;
    i = (p > 9 && j < s.size()) ? j + 1 : j;
  }
  if (count > k || r >= q) fail("ParseError", "too many digits for F_q");
  return uint32_t(r);
}
}  // namespace

std::string FieldTower::to_string(Elt x) const {
  uint32_t lo = x.v % q_, hi = x.v / q_;
  std::string s = fq_digits_str(lo, p_, k_);
  if (hi) s += "+u*" + fq_digits_str(hi, p_, k_);
  return s;
}

Elt FieldTower::parse(const std::string& s) const {
  size_t pos = s.find("+u*");
  uint32_t lo, hi = 0;
  if (pos == std::string::npos) {
    lo = fq_digits_parse(s, p_, k_, uint32_t(q_));
  } else {
    lo = fq_digits_parse(s.substr(0, pos), p_, k_, uint32_t(q_));
    hi = fq_digits_parse(s.substr(pos + 3), p_, k_, uint32_t(q_));
  }
  return Elt(lo + uint32_t(q_) * hi, this);
}

std::string to_string(const P1& pt) {
  if (pt.inf) return "inf";
  return pt.x.tw->to_string(pt.x);
}

P1 P1::infinity(const FieldTower& tw) { return P1{tw.zero(), true}; }

// ---------------------------------------------------------------------------
// Elt operators

namespace {
const FieldTower* same_tower(Elt a, Elt b) {
  if (a.tw == nullptr || a.tw != b.tw)
    fail("BadParameters", "elements from different towers");
  return a.tw;
}
}  // namespace

Elt operator+(Elt a, Elt b) {
  return Elt(same_tower(a, b)->add_i(a.v, b.v), a.tw);
}
Elt operator-(Elt a, Elt b) {
  return Elt(same_tower(a, b)->sub_i(a.v, b.v), a.tw);
}
Elt operator-(Elt a) { return Elt(a.tw->neg_i(a.v), a.tw); }
Elt operator*(Elt a, Elt b) {
  return Elt(same_tower(a, b)->mul_i(a.v, b.v), a.tw);
}
Elt operator/(Elt a, Elt b) {
  return Elt(same_tower(a, b)->mul_i(a.v, b.tw->inv_i(b.v)), a.tw);
}
Elt conj(Elt a) { return a.tw->frobenius(a); }
Elt inv(Elt a) { return Elt(a.tw->inv_i(a.v), a.tw); }
Elt pow(Elt a, int64_t e) { return Elt(a.tw->pow_i(a.v, e), a.tw); }
Elt sqr(Elt a) { return a * a; }

// ---------------------------------------------------------------------------
// QuarticExt

QuarticExt::QuarticExt(const FieldTower& tw) : tw_(tw) {
  n_ = tw.q2() * tw.q2();
  // smallest w^2 + m1*w + m0 with nonsquare discriminant over F_{q^2}
  bool found = false;
  for (uint64_t idx = 0; idx < n_ && !found; ++idx) {
    uint32_t c0 = uint32_t(idx % tw.q2()), c1 = uint32_t(idx / tw.q2());
    Elt disc = tw.elt(c1) * tw.elt(c1) -
               tw.from_int(4) * tw.elt(c0);
    if (!disc.is_zero() && !tw.is_square(disc)) {
      m0_ = c0;
      m1_ = c1;
      found = true;
    }
  }
  if (!found) fail("IrreducibleSearchFailure", "no quartic modulus found");
}

Elt QuarticExt::mod0() const { return tw_.elt(m0_); }
Elt QuarticExt::mod1() const { return tw_.elt(m1_); }

uint64_t QuarticExt::add(uint64_t a, uint64_t b) const {
  uint64_t qq = tw_.q2();
  return tw_.add_i(uint32_t(a % qq), uint32_t(b % qq)) +
         qq * tw_.add_i(uint32_t(a / qq), uint32_t(b / qq));
}

uint64_t QuarticExt::neg(uint64_t a) const {
  uint64_t qq = tw_.q2();
  return tw_.neg_i(uint32_t(a % qq)) + qq * tw_.neg_i(uint32_t(a / qq));
}

uint64_t QuarticExt::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t QuarticExt::mul(uint64_t a, uint64_t b) const {
  uint64_t qq = tw_.q2();
  uint32_t a0 = uint32_t(a % qq), a1 = uint32_t(a / qq);
  uint32_t b0 = uint32_t(b % qq), b1 = uint32_t(b / qq);
  uint32_t a0b0 = tw_.mul_i(a0, b0);
  uint32_t a1b1 = tw_.mul_i(a1, b1);
  uint32_t cross = tw_.add_i(tw_.mul_i(a0, b1), tw_.mul_i(a1, b0));
  uint32_t lo = tw_.sub_i(a0b0, tw_.mul_i(m0_, a1b1));
  uint32_t hi = tw_.sub_i(cross, tw_.mul_i(m1_, a1b1));
  return lo + qq * hi;
}

uint64_t QuarticExt::inv(uint64_t a) const {
  if (a == 0) fail("ZeroInput", "inverse of zero in F_{q^4}");
  uint64_t qq = tw_.q2();
  // conj over F_{q^2}: w -> -m1 - w
  uint32_t a0 = uint32_t(a % qq), a1 = uint32_t(a / qq);
  uint32_t c0 = tw_.sub_i(a0, tw_.mul_i(a1, m1_));
  uint32_t c1 = tw_.neg_i(a1);
  uint64_t cj = c0 + qq * c1;
  uint64_t n = mul(a, cj);
  if (n / qq != 0) fail("InternalError", "quartic norm not in F_{q^2}");
  uint32_t ni = tw_.inv_i(uint32_t(n % qq));
  return tw_.mul_i(c0, ni) + qq * tw_.mul_i(c1, ni);
}

uint64_t QuarticExt::pow(uint64_t a, int64_t e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    fail("ZeroInput", "negative power of zero");
  }
  uint64_t m = n_ - 1;
  uint64_t ee = uint64_t(((e % int64_t(m)) + int64_t(m)) % int64_t(m));
  uint64_t r = 1, b = a;
  while (ee) {
    if (ee & 1) r = mul(r, b);
    b = mul(b, b);
    ee >>= 1;
  }
  return r;
}

uint64_t QuarticExt::embed(Elt x) const { return x.v; }

std::optional<Elt> QuarticExt::project(uint64_t a) const {
  if (a / tw_.q2() != 0) return std::nullopt;
  return tw_.elt(a);
}

}  // namespace pfq
