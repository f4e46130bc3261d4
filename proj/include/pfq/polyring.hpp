#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pfq/field_tower.hpp"

namespace pfq {

// Univariate polynomial over F_{q^2}, coefficients lowest degree first,
// no trailing zeros stored. The zero polynomial has deg() == -1.
class Poly {
 public:
  explicit Poly(const FieldTower& tw) : tw_(&tw) {}
  Poly(const FieldTower& tw, std::vector<Elt> coeffs);

  static Poly constant(Elt e);
  static Poly monomial(Elt coeff, size_t degree);
  static Poly x(const FieldTower& tw);

  const FieldTower& tower() const { return *tw_; }
  int deg() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elt coeff(size_t i) const { return i < c_.size() ? c_[i] : tw_->zero(); }
  Elt lead() const;
  const std::vector<Elt>& coeffs() const { return c_; }

  Elt eval(Elt x) const;
  Poly derivative() const;
  Poly monic() const;
  int valuation() const;  // lowest nonzero index; -1 for zero

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  const FieldTower* tw_;
  std::vector<Elt> c_;
  void trim();
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Elt s, const Poly& a);

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b);  // monic; error BothZero

Poly conj_coeffs(const Poly& d);       // D^{(q)}
Poly conj_reciprocal(const Poly& d);   // X^{deg D} D^{(q)}(1/X); error ZeroPolynomial
std::optional<Elt> scr_witness(const Poly& d);

// P^{p^m} via coefficient Frobenius powers and exponent dilation.
Poly pow_char(const Poly& a, uint64_t m);
// (aX+b)^{p^m} = a^{p^m} X^{p^m} + b^{p^m}
Poly linear_pow_char(Elt a, Elt b, uint64_t m);
Poly poly_pow(const Poly& a, uint64_t e);
// X^n * P(1/X) for n >= deg P
Poly reverse_to_degree(const Poly& a, size_t n);
// sum_i coeffs[i] * N^i * D^(n-i)
Poly homogeneous_eval(const std::vector<Elt>& coeffs, const Poly& n,
                      const Poly& d, size_t ndeg);

// roots in mu_{q+1} with multiplicity, by scanning the q+1 candidates
std::vector<Elt> roots_in_mu(const Poly& d);  // error ZeroPolynomial

// multiplicity of x as a root
int root_multiplicity(const Poly& d, Elt x);

// squarefree decomposition, valid in characteristic p: list of (factor, mult)
// with factor squarefree, pairwise coprime, product factor^mult == monic(a)
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a);

// The quadratic shape alpha X^2 + beta X + conj(alpha) with beta in F_q.
struct QuadShape {
  Elt a2, a1, a0;
  Elt delta() const;  // a1^2 - 4 a2 a0
  Poly to_poly() const;
};

struct QuadRootProfile {
  enum Kind { MultipleInMu, TwoDistinctInMu, NoneInMu };
  Kind kind;
  Elt delta;
  std::vector<Elt> roots;  // all roots (always split over F_{q^2})
};

// Root profile of a conjugate-symmetric quadratic; errors ShapeViolation,
// BothZero.
QuadRootProfile quad_root_profile(const Poly& d);
QuadRootProfile quad_root_profile(const QuadShape& s);

// ---------------------------------------------------------------------------
// Degree-one maps of P^1

class RatFn;

class Mobius {
 public:
  enum Action { General, PermutesMu, MuToP1 };

  Mobius(Elt a, Elt b, Elt c, Elt d, Action claim = General);

  Elt a() const { return a_; }
  Elt b() const { return b_; }
  Elt c() const { return c_; }
  Elt d() const { return d_; }
  Action action() const { return action_; }

  P1 apply(const P1& x) const;
  Mobius inverse() const;
  Mobius compose(const Mobius& inner) const;  // this ∘ inner
  RatFn as_ratfn() const;
  // left-multiply by a GL2 matrix given as rows (m00 m01; m10 m11),
  // i.e. X -> (m00*this + m01)/(m10*this + m11); action re-verified
  Mobius scaled(Elt m00, Elt m01, Elt m10, Elt m11, Action claim) const;

 private:
  const FieldTower* tw_;
  Elt a_, b_, c_, d_;
  Action action_;
  void verify_action() const;
};

// (conj(beta) X + conj(alpha)) / (alpha X + beta); requires a*conj(a) != b*conj(b)
Mobius mobius_permuting_mu(Elt alpha, Elt beta);
// (delta X + gamma*conj(delta)) / (X + gamma); gamma in mu, delta outside F_q
Mobius mobius_mu_to_p1(Elt gamma, Elt delta);
// mu-permuting map with zero at 1/conj(b) and pole at b (b outside mu),
// or the identity for b = infinity
Mobius mu_perm_with_pole(const P1& b);
// map mu onto P^1(F_q) sending z (in mu) to 0 and pl (in mu) to infinity
Mobius mu_to_p1_zero_pole(Elt z, Elt pl);

// parameters (alpha, beta) with M = (conj(b)X + conj(a))/(aX + b), for a
// verified mu-permuting map
std::pair<Elt, Elt> mu_perm_params(const Mobius& m);
// parameters (alpha, gamma) with M = (alpha X + gamma conj(alpha))/(X + gamma)
std::pair<Elt, Elt> mu_to_p1_params(const Mobius& m);

// ---------------------------------------------------------------------------

// Reduced rational function over F_{q^2}: gcd(num,den)=1, den monic.
class RatFn {
 public:
  RatFn(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldTower& tower() const { return num_.tower(); }
  int degree() const { return std::max(num_.deg(), den_.deg()); }
  bool is_constant() const { return degree() <= 0; }

  P1 eval(const P1& x) const;
  RatFn reciprocal_arg() const;      // G(1/X)
  Poly wronskian() const;            // num' den - num den'
  bool separable() const;

  bool operator==(const RatFn& o) const;  // as reduced fractions

 private:
  Poly num_, den_;
};

RatFn compose_arg(const RatFn& g, const Mobius& m);   // g ∘ m
RatFn compose_val(const Mobius& m, const RatFn& g);   // m ∘ g

// h = rho ∘ g ∘ sigma^{-1}, with rho, sigma mapping mu_{q+1} onto P^1(F_q);
// result verified to have Frobenius-fixed coefficients.
// errors: ShapeViolation, CoefficientsNotInBaseField
RatFn conjugate_to_base(const RatFn& g, const Mobius& rho, const Mobius& sigma);

}  // namespace pfq
