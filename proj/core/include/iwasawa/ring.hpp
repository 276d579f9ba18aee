#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/padic.hpp"

namespace iwasawa {

// The quotient R(n, m) = (Z/p^n)[T] / (omega_m(T)), omega_m(T) = (1+T)^{p^m} - 1.
// These quotients form a neighbourhood basis of zero in Lambda = Z_p[[T]].
struct QuotientRing {
  unsigned p = 3;
  unsigned n = 1;  // coefficient precision
  unsigned m = 0;  // omega level

  // Largest supported p^m; keeps dense vectors and O(p^{2m}) products sane.
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 24;

  QuotientRing() = default;
  QuotientRing(unsigned prime, unsigned coeff_precision, unsigned level);

  std::size_t size() const;  // p^m
  Integer modulus() const { return prime_power(p, n); }
  QuotientRing with_precision(unsigned coeff_precision) const { return {p, coeff_precision, m}; }
  QuotientRing with_level(unsigned level) const { return {p, n, level}; }
  std::string to_string() const;

  friend bool operator==(const QuotientRing&, const QuotientRing&) = default;
};

// Element of R(n, m). Stored either as monomial coefficients (degree < p^m,
// the canonical representative) or as coordinates in the basis
// {(1+T)^a : 0 <= a < p^m}; equality always compares canonical forms.
class RingElem {
 public:
  enum class Basis { monomial, binomial };

  RingElem(QuotientRing ring, Basis basis, std::vector<Integer> coeffs);

  static RingElem zero(QuotientRing ring, Basis basis = Basis::monomial);
  static RingElem one(QuotientRing ring);
  static RingElem constant(QuotientRing ring, const Integer& c);
  static RingElem variable(QuotientRing ring);  // T
  // (1+T)^a for any integer a (exponent reduced mod p^m).
  static RingElem x_power(QuotientRing ring, const Integer& a);
  // Image of an arbitrary integer polynomial sum c_j T^j, reduced mod omega_m.
  static RingElem from_polynomial(QuotientRing ring, const std::vector<Integer>& coeffs);
  // Image of sum c_a (1+T)^a with arbitrary non-negative exponents.
  static RingElem from_x_polynomial(QuotientRing ring, const std::vector<Integer>& coeffs);

  const QuotientRing& ring() const noexcept { return ring_; }
  Basis basis() const noexcept { return basis_; }
  // Coefficients in the stored basis.
  const std::vector<Integer>& raw() const noexcept { return coeffs_; }

  std::vector<Integer> monomial_coeffs() const;
  std::vector<Integer> binomial_coeffs() const;
  RingElem in_basis(Basis basis) const;

  bool is_zero() const;
  // Constant term F(0) mod p^n.
  Integer constant_term() const;

  // Reduce coefficients to a lower precision n' <= n.
  RingElem with_precision(unsigned coeff_precision) const;
  // Project to a lower level m' <= m (omega_{m'} divides omega_m).
  RingElem with_level(unsigned level) const;

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& rhs);
  RingElem& operator-=(const RingElem& rhs);
  RingElem& operator*=(const Integer& c);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(RingElem a, const Integer& c) { return a *= c; }
  friend RingElem operator*(const Integer& c, RingElem a) { return a *= c; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  friend bool operator==(const RingElem& a, const RingElem& b);

  std::string to_string() const;

 private:
  void require_same_ring(const RingElem& rhs, const char* op) const;

  QuotientRing ring_;
  Basis basis_;
  std::vector<Integer> coeffs_;
};

// Change of basis between monomial coefficients and (1+T)^a coordinates
// (Taylor shift by -1 / +1, exact in both directions).
struct BinomialView {
  QuotientRing ring;
  std::vector<Integer> b;
};
BinomialView basis_convert(const RingElem& f);
RingElem basis_convert(const BinomialView& view);

// Product reduced mod (p^n, omega_m).
RingElem mul_reduce(const RingElem& f, const RingElem& g);

// Inverse of an element with unit constant term, by Newton iteration.
RingElem invert_unit(const RingElem& f);

// sigma_a : F(T) -> F((1+T)^a - 1). `a` must be known mod p^m.
RingElem substitute_exp(const RingElem& f, const PadicInt& a);
RingElem substitute_exp(const RingElem& f, const Integer& a);

// D = (1+T) d/dT. The exponent multiplier is only defined mod p^m, so the
// result lives in R(min(n, m), m).
RingElem op_D(const RingElem& f);

// U: keeps the (1+T)^a components with a a p-adic unit.
RingElem op_U(const RingElem& f);

// gamma_delta = (1/(p-1)) sum_{eta in mu_{p-1}} eta^delta sigma_eta.
RingElem op_gamma(const RingElem& f, long delta);

// Leopoldt transform Gamma_delta : R(n, m) -> R(n, m-1) attached to the
// topological generator kappa.
RingElem op_Gamma(const RingElem& f, long delta, const Integer& kappa);

// Gamma'_delta(F) = sigma_u(Gamma_delta(F)), u = Log_p(kappa)/Log_p(kappa').
RingElem change_kappa(const RingElem& gamma_f, const Integer& kappa, const Integer& kappa_prime);

// F in (p^{n'}, omega_{m'}(T))?
bool ideal_zero(const RingElem& f, unsigned coeff_precision, unsigned level);

struct InvariantReport {
  enum class Verdict { certified, indeterminate };
  Verdict verdict = Verdict::indeterminate;
  std::optional<unsigned> mu;
  std::optional<unsigned> lambda;
  unsigned n = 0;
  unsigned m = 0;

  bool certified() const { return verdict == Verdict::certified; }
};

// Certifies mu = 0 and lambda = index of the first unit coefficient, or
// reports that every coefficient is divisible by p (mu >= 1 or lambda >= p^m).
InvariantReport invariants(const RingElem& f);

// F(t) for v_p(t) >= 1; valid mod p^{min(n, m+1)}.
PadicInt evaluate(const RingElem& f, const PadicInt& t);

// D^k(F)(0) = sum_a b_a a^k, valid mod p^{min(n, m)} (k = 0 gives F(0) mod p^n).
PadicInt dk_at_zero(const RingElem& f, const Integer& k);

// k_n(s, delta) = [s]_{n+1} + delta_n p^{n+1} with delta_n in {1..p-1}
// chosen so the result is delta mod p-1.
Integer k_index(const PadicInt& s, long delta, unsigned n);

// Integer polynomials delta_0..delta_n with
// T^{p^n} = sum_{i+j=n} omega_i(T) p^j delta_j(T).
using IntPoly = std::vector<Integer>;
std::vector<IntPoly> decompose_T_power(unsigned n, unsigned p);
// T^{p^n} - sum_{i+j=n} omega_i p^j delta_j; zero when the decomposition is valid.
IntPoly decomposition_residual(unsigned n, unsigned p, const std::vector<IntPoly>& deltas);

// Integer polynomial helpers used by the decomposition and by callers that
// build explicit elements.
namespace intpoly {
IntPoly omega(unsigned p, unsigned level);  // (1+T)^{p^level} - 1
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly scale(const IntPoly& a, const Integer& c);
IntPoly pow(const IntPoly& a, unsigned e);
// Exact division by a monic polynomial; throws if the remainder is nonzero.
IntPoly divide_exact(const IntPoly& num, const IntPoly& den);
void trim(IntPoly& a);
}  // namespace intpoly

}  // namespace iwasawa
