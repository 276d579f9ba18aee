#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwasawa/polynomial.hpp"
#include "iwasawa/ring.hpp"

namespace iwasawa {

// Element of F_p(T) ∩ F_p[[T]]: num/den reduced, den monic, den(0) != 0.
class RatFuncFp {
 public:
  // Reduces and normalizes; throws NotInPowerSeriesRing if the reduced
  // denominator vanishes at T = 0.
  RatFuncFp(FpPoly num, FpPoly den);
  explicit RatFuncFp(const FpPoly& poly) : RatFuncFp(poly, FpPoly::constant(poly.prime(), 1)) {}

  unsigned prime() const noexcept { return num_.prime(); }
  const FpPoly& num() const noexcept { return num_; }
  const FpPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  // First `count` power-series coefficients.
  std::vector<std::uint64_t> series(std::size_t count) const;

  RatFuncFp operator-() const { return RatFuncFp(-num_, den_); }
  friend RatFuncFp operator+(const RatFuncFp& a, const RatFuncFp& b);
  friend RatFuncFp operator-(const RatFuncFp& a, const RatFuncFp& b) { return a + (-b); }
  friend RatFuncFp operator*(const RatFuncFp& a, const RatFuncFp& b);
  friend RatFuncFp operator*(const RatFuncFp& a, long c);
  friend bool operator==(const RatFuncFp& a, const RatFuncFp& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  FpPoly num_;
  FpPoly den_;
};

// Element of Q(T) ∩ Z_p[[T]]: reduced, den(0) = 1, num and den p-integral.
class RatFuncZp {
 public:
  // Throws NotInPowerSeriesRing if den(0) = 0 after reduction, NotInLambda
  // if the function is not a p-adic power series with integral coefficients.
  RatFuncZp(unsigned p, QPoly num, QPoly den);
  RatFuncZp(unsigned p, const QPoly& poly) : RatFuncZp(p, poly, QPoly::constant(1)) {}

  unsigned prime() const noexcept { return p_; }
  const QPoly& num() const noexcept { return num_; }
  const QPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  mpq_class at_zero() const { return num_.coeff(0); }

  RatFuncFp reduce_mod_p() const;
  // Image in R(n, m).
  RingElem to_ring(unsigned n, unsigned m) const;

  RatFuncZp operator-() const { return RatFuncZp(p_, -num_, den_); }
  friend RatFuncZp operator+(const RatFuncZp& a, const RatFuncZp& b);
  friend RatFuncZp operator-(const RatFuncZp& a, const RatFuncZp& b) { return a + (-b); }
  friend RatFuncZp operator*(const RatFuncZp& a, const RatFuncZp& b);
  friend RatFuncZp operator*(const RatFuncZp& a, const mpq_class& c);
  friend bool operator==(const RatFuncZp& a, const RatFuncZp& b) {
    return a.p_ == b.p_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  unsigned p_;
  QPoly num_;
  QPoly den_;
};

RatFuncFp normal_form(const FpPoly& num, const FpPoly& den);
RatFuncZp normal_form(unsigned p, const QPoly& num, const QPoly& den);

// (1+T) F'(T).
RatFuncFp D_rat(const RatFuncFp& F);
RatFuncZp D_rat(const RatFuncZp& F);

// In characteristic p, U = D^{p-1}.
RatFuncFp U_rat(const RatFuncFp& F);
// Exact U in characteristic 0: with x = 1+T and F = A(x)/B(x),
// U(F) = F - pi_p(A(x) B*(x)) / C(x^p), where C(x^p) = prod_{zeta^p=1} B(zeta x),
// B* = C(x^p)/B and pi_p keeps the exponents of x divisible by p.
RatFuncZp U_rat(const RatFuncZp& F);

// F((1+T)^{-1} - 1) = F(-T/(1+T)).
RatFuncFp compose_inv(const RatFuncFp& F);
RatFuncZp compose_inv(const RatFuncZp& F);

// mu(F) from the Gauss content of the numerator; nullopt for F = 0.
std::optional<unsigned> gauss_mu(const RatFuncZp& F);

// Outcome of the "(1+T)^n G is a polynomial" tests.
struct CriterionResult {
  bool holds = false;
  unsigned n = 0;            // exponent of 1+T in the reduced denominator
  FpPoly denominator;        // reduced monic denominator of the tested function
  FpPoly witness;            // denominator with its (1+T)-part removed
  FpPoly witness_factor;     // radical of the witness
  explicit CriterionResult(unsigned p) : denominator(p), witness(p), witness_factor(p) {}
};

// (1+T)^n F in F_p[T] for some n.
CriterionResult pseudo_polynomial_test(const RatFuncFp& F);
// (1+T)^n (F + (-1)^delta F((1+T)^{-1}-1)) in F_p[T] for some n.
CriterionResult symmetrized_test(const RatFuncFp& F, long delta);
// (1+T)^n (U(F) + (-1)^delta U(F((1+T)^{-1}-1))) in F_p[T] for some n;
// decides pseudo-rationality of the reduced Leopoldt transform of F.
CriterionResult sym_poly_criterion(const RatFuncFp& F, long delta);

struct MuFormulaReport {
  int branch = 1;                          // 1: delta odd or 0; 2: delta even, nonzero
  std::optional<unsigned> mu;              // nullopt: the combination vanishes
  std::optional<unsigned> stabilization_level;  // least level whose truncation shows mu
  RatFuncZp combination;                   // the rational function whose mu is taken
};

// mu(Gamma_delta(F)) from the rational right-hand side:
//   branch 1: mu(U(F) + (-1)^delta U(F o iota)),
//   branch 2: mu(U(F) + U(F o iota) - 2 U(F)(0)).
// The truncation route through R(mu+1, m) is run alongside, up to p^m <= level_cap.
MuFormulaReport mu_gamma_formula(const RatFuncZp& F, long delta, std::size_t level_cap = 4096);

}  // namespace iwasawa
