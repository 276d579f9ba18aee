#pragma once

#include <map>
#include <string>
#include <vector>

#include "iwasawa/padic.hpp"

namespace iwasawa {

// Primitive Dirichlet character of conductor d (p does not divide d) with
// values in mu_{p-1} of Z_p. A value is stored as an exponent t(a) mod p-1:
// chi(a) = omega(g)^{t(a)}, g the least primitive root mod p.
class DirichletCharacter {
 public:
  // Validates the exponent table (keys: units a in [1, d)). Throws
  // CharacterError for missing entries, non-multiplicative tables and
  // imprimitive tables (the witness is the proper divisor it is induced from).
  static DirichletCharacter build_validate(unsigned p, unsigned d,
                                           const std::map<unsigned, long>& exponents);
  static DirichletCharacter trivial(unsigned p);
  // Kronecker symbol (D/.) for a fundamental discriminant D; conductor |D|.
  static DirichletCharacter quadratic(unsigned p, long discriminant);

  unsigned prime() const noexcept { return p_; }
  unsigned conductor() const noexcept { return d_; }
  unsigned generator() const noexcept { return g_; }
  bool is_trivial() const noexcept { return d_ == 1; }
  // +1 for even, -1 for odd characters.
  int parity() const noexcept { return parity_; }
  unsigned order() const noexcept { return order_; }

  bool is_unit(const Integer& a) const;
  // t(a) in [0, p-1) for a unit mod d.
  long exponent(const Integer& a) const;
  // chi(a) mod p^N; 0 when gcd(a, d) > 1.
  Integer value(const Integer& a, unsigned precision) const;
  // Exponent table indexed by a mod d; -1 marks non-units.
  const std::vector<long>& table() const noexcept { return table_; }

  std::string label() const;
  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.table_ == b.table_;
  }

 private:
  DirichletCharacter(unsigned p, unsigned d, std::vector<long> table);

  unsigned p_;
  unsigned d_;
  unsigned g_;
  std::vector<long> table_;
  int parity_ = 1;
  unsigned order_ = 1;
};

// theta = chi * omega^{delta+1}.
struct ThetaCharacter {
  DirichletCharacter chi;
  long delta;  // in [0, p-1)

  // Builds theta and checks it is even and nontrivial.
  static ThetaCharacter make(const DirichletCharacter& chi, long delta);
  // theta = omega^j for d = 1.
  static ThetaCharacter omega_power(unsigned p, long j);

  unsigned prime() const { return chi.prime(); }
  std::string label() const;
};

// Every even nontrivial theta = chi omega^{delta+1} with chi primitive of
// conductor dividing d and order dividing p-1. Ordered by conductor, then by
// the character's generator exponents, then by delta.
std::vector<ThetaCharacter> enumerate_even_theta(unsigned p, unsigned d);

// All primitive characters of conductor exactly d with order dividing p-1.
std::vector<DirichletCharacter> primitive_characters(unsigned p, unsigned d);

struct BernoulliValue {
  // B_{k,chi} = value / p^{denominator_exponent}; value known mod p^{value.precision()}.
  PadicInt value;
  unsigned denominator_exponent = 0;
  bool parity_zero = false;  // chi(-1) != (-1)^k: exactly 0
};

// Largest d * p^N the limit sums may touch.
inline constexpr unsigned long long kBernoulliTermLimit = 100000000ULL;

// B_{k,chi} mod p^{N_target} as (1/(d p^N)) sum_{a <= d p^N} chi(a) a^k with
// N = N_target + guard, accumulated mod p^{N_target + N}.
BernoulliValue bernoulli_chi(const DirichletCharacter& chi, unsigned k, unsigned target_precision,
                             unsigned guard = 2);

// L_p(-k, theta) = -(1 - chi(p) p^k) B_{k+1,chi} / (k+1) mod p^N, k = delta mod p-1.
PadicInt lp_value(const ThetaCharacter& theta, unsigned k, unsigned precision);

unsigned euler_phi(unsigned n);

}  // namespace iwasawa
