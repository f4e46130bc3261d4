#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfq {

// All recoverable failures carry a stable code string ("NonPrime",
// "ZeroPolynomial", ...) that tests and the CLI match on.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& what)
      : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

class FieldTower;

// Element of F_{q^2}, stored as an index into the canonical enumeration
// lo + q*hi where lo, hi are themselves base-p digit indices of F_q elements.
struct Elt {
  uint32_t v = 0;
  const FieldTower* tw = nullptr;

  Elt() = default;
  Elt(uint32_t idx, const FieldTower* t) : v(idx), tw(t) {}

  bool operator==(const Elt& o) const { return v == o.v && tw == o.tw; }
  bool operator!=(const Elt& o) const { return !(*this == o); }
  bool is_zero() const { return v == 0; }
};

Elt operator+(Elt a, Elt b);
Elt operator-(Elt a, Elt b);
Elt operator-(Elt a);
Elt operator*(Elt a, Elt b);
Elt operator/(Elt a, Elt b);
Elt conj(Elt a);            // x -> x^q
Elt inv(Elt a);
Elt pow(Elt a, int64_t e);
Elt sqr(Elt a);

// Point of P^1(F_{q^2}).
struct P1 {
  Elt x;
  bool inf = false;

  static P1 of(Elt e) { return P1{e, false}; }
  static P1 infinity(const FieldTower& tw);
  bool operator==(const P1& o) const {
    if (inf != o.inf) return false;
    return inf || x == o.x;
  }
  bool operator!=(const P1& o) const { return !(*this == o); }
};

std::string to_string(const P1& pt);

// Closed forms for gcd(p^k-1, p^l-1) and gcd(p^k+1, p^l-1); both verified
// against the plain integer gcd before returning.
struct GcdPowerForms {
  int64_t gcd_minus;  // gcd(p^k-1, p^l-1) = p^gcd(k,l)-1
  int64_t gcd_plus;   // gcd(p^k+1, p^l-1)
};
GcdPowerForms gcd_power_forms(uint32_t p, uint32_t k, uint32_t ell);

// Degree-2 extension of F_{q^2}, built on demand for root searches that may
// leave F_{q^2}. Elements are indices lo + q^2*hi.
class QuarticExt {
 public:
  QuarticExt(const FieldTower& tw);

  uint64_t size() const { return n_; }
  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;
  uint64_t neg(uint64_t a) const;
  uint64_t mul(uint64_t a, uint64_t b) const;
  uint64_t inv(uint64_t a) const;
  uint64_t pow(uint64_t a, int64_t e) const;
  uint64_t embed(Elt x) const;                 // F_{q^2} -> F_{q^4}
  std::optional<Elt> project(uint64_t a) const;  // back, when a is in F_{q^2}
  // modulus w^2 + m1*w + m0 over F_{q^2}
  Elt mod0() const;
  Elt mod1() const;

 private:
  const FieldTower& tw_;
  uint64_t n_;
  uint32_t m0_, m1_;  // F_{q^2} indices
};

// The arithmetic context F_p < F_q = F_p[x]/(modq) < F_{q^2} = F_q[u]/(modq2),
// immutable after construction; all element operations are pure.
class FieldTower {
 public:
  // Moduli are chosen deterministically: smallest candidate in the canonical
  // enumeration that is irreducible; seed only rotates the search start.
  FieldTower(uint32_t p, uint32_t k, uint32_t ell, uint64_t seed = 0);
  // Explicit moduli (e.g. parsed from a field spec); verified irreducible.
  FieldTower(uint32_t p, uint32_t k, uint32_t ell,
             std::vector<uint32_t> modulus_q, std::vector<uint32_t> modulus_q2);

  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint32_t ell() const { return ell_; }
  uint32_t delta() const { return delta_; }
  uint64_t q() const { return q_; }
  uint64_t Q() const { return Q_; }
  uint64_t q2() const { return qq_; }   // q^2, the field size
  const std::vector<uint32_t>& modulus_q() const { return mod_q_; }
  const std::vector<uint32_t>& modulus_q2() const { return mod_q2_; }

  Elt elt(uint64_t index) const;
  Elt zero() const { return Elt(0, this); }
  Elt one() const { return Elt(1, this); }
  Elt gen() const;                        // the canonical generator u
  Elt from_int(int64_t n) const;          // image of n in F_p
  Elt from_fq(uint32_t fq_index) const;   // subfield embedding
  Elt primitive_root() const;             // fixed generator of F_{q^2}^*

  // raw index arithmetic (hot paths)
  uint32_t add_i(uint32_t a, uint32_t b) const;
  uint32_t sub_i(uint32_t a, uint32_t b) const;
  uint32_t neg_i(uint32_t a) const;
  uint32_t mul_i(uint32_t a, uint32_t b) const;
  uint32_t inv_i(uint32_t a) const;
  uint32_t frob_i(uint32_t a) const { return frob_[a]; }
  uint32_t pow_i(uint32_t a, int64_t e) const;

  Elt frobenius(Elt x) const;
  // the unique y with y^(p^m) = x
  Elt inv_frobenius_power(Elt x, uint64_t m) const;
  bool in_mu(Elt x) const;           // x^{q+1} == 1
  bool in_fq(Elt x) const;           // Frobenius-fixed
  uint32_t fq_index(Elt x) const;    // requires in_fq
  bool is_square_in_fq(Elt x) const; // requires x in F_q^*
  bool is_square(Elt x) const;       // square in F_{q^2} (0 counts)
  std::optional<Elt> sqrt(Elt x) const;
  // solves z^{q-1} = m (Hilbert 90); requires m in mu_{q+1}
  Elt norm_one_log_split(Elt m) const;

  const std::vector<uint32_t>& mu_list() const { return mu_; }

  // F_q^* discrete log w.r.t. the fixed primitive root of F_q (for characters)
  uint64_t fq_log(uint32_t fq_index) const;
  uint32_t fq_mul(uint32_t a, uint32_t b) const;
  uint32_t fq_primitive_root() const { return fq_gen_; }

  uint64_t log(Elt x) const;  // discrete log, x != 0
  Elt exp(uint64_t e) const;

  // element text form "d0d1...+u*d0d1..." (base-p digits, lowest first)
  std::string to_string(Elt x) const;
  Elt parse(const std::string& s) const;

  const QuarticExt& quartic() const;

 private:
  void build(uint64_t seed, const std::vector<uint32_t>* mq,
             const std::vector<uint32_t>* mq2);
  void build_fq_tables();
  void build_fq2_tables();
  uint32_t fq_add(uint32_t a, uint32_t b) const;
  uint32_t fq_neg(uint32_t a) const;
  uint32_t fq_mul_digits(uint32_t a, uint32_t b) const;
  uint32_t fq_inv(uint32_t a) const;
  uint32_t mul_formula(uint32_t a, uint32_t b) const;

  uint32_t p_, k_, ell_, delta_;
  uint64_t q_, Q_, qq_;
  std::vector<uint32_t> mod_q_;   // length k+1, F_p digits, monic
  std::vector<uint32_t> mod_q2_;  // length 3, F_q indices, monic

  // F_q tables
  std::vector<uint32_t> fq_add_, fq_mul_, fq_neg_, fq_inv_;
  std::vector<uint64_t> fq_log_;
  std::vector<uint32_t> fq_exp_;
  uint32_t fq_gen_ = 0;

  // F_{q^2} tables
  std::vector<uint32_t> add2_, mul2_, neg2_, inv2_, frob_;
  std::vector<uint64_t> log2_;
  std::vector<uint32_t> exp2_;
  bool has_full2_ = false;  // add2_/mul2_ present
  bool has_log2_ = false;
  uint32_t gen2_ = 0;  // primitive root index

  std::vector<uint32_t> mu_;

  mutable std::unique_ptr<QuarticExt> quartic_;
  mutable std::once_flag quartic_once_;

  friend class QuarticExt;
};

// Deterministic construction helpers exposed for tests.
bool is_prime_u64(uint64_t n);
bool poly_irreducible_fp(uint32_t p, const std::vector<uint32_t>& m);

}  // namespace pfq
