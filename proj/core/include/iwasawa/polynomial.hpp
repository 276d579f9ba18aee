#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace iwasawa {

// Dense polynomial over F_p, lowest degree first, no trailing zeros.
class FpPoly {
 public:
  explicit FpPoly(unsigned p) : p_(p) {}
  FpPoly(unsigned p, const std::vector<long>& coeffs);

  static FpPoly constant(unsigned p, long c) { return FpPoly(p, {c}); }
  static FpPoly monomial(unsigned p, std::size_t degree, long c = 1);
  static FpPoly one_plus_T(unsigned p) { return FpPoly(p, {1, 1}); }

  unsigned prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return c_.empty(); }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
  std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  FpPoly monic() const;
  FpPoly derivative() const;
  std::uint64_t eval(std::uint64_t x) const;
  FpPoly pow(unsigned e) const;

  FpPoly operator-() const;
  FpPoly& operator+=(const FpPoly& rhs);
  FpPoly& operator-=(const FpPoly& rhs);
  FpPoly& operator*=(long c);
  friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
  friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }
  friend FpPoly operator*(FpPoly a, long c) { return a *= c; }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  unsigned p_;
  std::vector<std::uint64_t> c_;
};

// Quotient and remainder; the divisor must be nonzero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
// Monic gcd (zero when both inputs are zero).
FpPoly gcd(const FpPoly& a, const FpPoly& b);
// The d-th cyclotomic polynomial reduced mod p.
FpPoly cyclotomic_fp(unsigned p, unsigned d);
// P(X + shift).
FpPoly taylor_shift(const FpPoly& a, long shift);
// Monic product of the distinct irreducible factors (1 for constants).
FpPoly radical(const FpPoly& a);

// Dense polynomial over Q.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);
  static QPoly from_integers(const std::vector<long>& coeffs);
  static QPoly constant(const mpq_class& c) { return QPoly({c}); }

  bool is_zero() const noexcept { return c_.empty(); }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const noexcept { return c_; }
  mpq_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
  mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

  QPoly derivative() const;
  mpq_class eval(const mpq_class& x) const;
  QPoly pow(unsigned e) const;
  // Coefficients scaled so they are coprime integers with positive leading term.
  QPoly primitive() const;

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& rhs);
  QPoly& operator-=(const QPoly& rhs);
  QPoly& operator*=(const mpq_class& c);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const mpq_class& c) { return a *= c; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
// Primitive integer gcd with positive leading coefficient, via a
// fraction-free primitive remainder sequence.
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly taylor_shift(const QPoly& a, const mpq_class& shift);
// Reduction mod p of a p-integral polynomial.
FpPoly reduce_mod_p(const QPoly& a, unsigned p);

}  // namespace iwasawa
