#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace iwasawa {

using Integer = mpz_class;

bool is_prime(std::uint64_t n);

// p^k as a big integer.
Integer prime_power(unsigned p, unsigned k);

// v_p(x) for x != 0.
unsigned valuation(const Integer& x, unsigned p);

// Non-negative representative of x mod m.
Integer reduce(const Integer& x, const Integer& m);

// Least positive primitive root modulo the odd prime p.
unsigned primitive_root(unsigned p);

// Odd prime validation shared by every module.
void require_odd_prime(unsigned p);

// An element of Z/p^N. Arithmetic between two values requires the same p and
// yields the smaller of the two precisions.
class PadicInt {
 public:
  PadicInt(unsigned p, unsigned precision, const Integer& value);
  PadicInt(unsigned p, unsigned precision, long value)
      : PadicInt(p, precision, Integer(value)) {}

  unsigned prime() const noexcept { return p_; }
  unsigned precision() const noexcept { return precision_; }
  const Integer& value() const noexcept { return value_; }
  Integer modulus() const { return prime_power(p_, precision_); }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;
  // v_p of the value, capped at the precision.
  unsigned valuation() const;

  PadicInt with_precision(unsigned precision) const;
  PadicInt inverse() const;
  PadicInt pow(const Integer& exponent) const;

  PadicInt operator-() const;
  PadicInt& operator+=(const PadicInt& rhs);
  PadicInt& operator-=(const PadicInt& rhs);
  PadicInt& operator*=(const PadicInt& rhs);

  friend PadicInt operator+(PadicInt a, const PadicInt& b) { return a += b; }
  friend PadicInt operator-(PadicInt a, const PadicInt& b) { return a -= b; }
  friend PadicInt operator*(PadicInt a, const PadicInt& b) { return a *= b; }
  friend bool operator==(const PadicInt& a, const PadicInt& b) {
    return a.p_ == b.p_ && a.precision_ == b.precision_ && a.value_ == b.value_;
  }

  std::string to_string() const;

 private:
  void align_with(const PadicInt& rhs);

  unsigned p_;
  unsigned precision_;
  Integer value_;
};

std::ostream& operator<<(std::ostream& os, const PadicInt& x);

// Extra p-adic digits carried by logarithm and division steps.
struct PrecisionPlan {
  unsigned target_n = 1;
  unsigned target_m = 1;
  unsigned guard = 2;

  static unsigned minimum_guard(unsigned p, unsigned target_m);
  static PrecisionPlan make(unsigned p, unsigned n, unsigned m);
  bool valid_for(unsigned p) const { return guard >= minimum_guard(p, target_m); }
};

// The (p-1)-th root of unity congruent to a mod p, as a^{p^{N-1}} mod p^N.
PadicInt teichmuller(const Integer& a, unsigned p, unsigned precision);

// Log_p(u) mod p^M for a unit u, via Log_p(<u>) with <u> = u / omega(u).
// The series sum(-1)^{k+1} x^k / k stops at the least K with
// K - floor(log_p K) >= M + guard.
PadicInt iwasawa_log(const PadicInt& u, unsigned output_precision,
                     std::optional<unsigned> guard = std::nullopt);

// Log_p(a) / Log_p(kappa) mod p^M for a unit a and a topological generator
// kappa of 1 + pZ_p. Both logarithms are divided by p before inverting, so a
// and kappa must be known mod p^{M+1}.
PadicInt kappa_exponent(const PadicInt& a, const PadicInt& kappa,
                        unsigned output_precision);

// Throws DomainError unless kappa = 1 mod p and kappa != 1 mod p^2.
void require_topological_generator(const PadicInt& kappa);

struct ValuationSplit {
  // When `saturated` is set, x = 0 mod p^N and only `v >= N` is known.
  unsigned v = 0;
  bool saturated = false;
  std::optional<PadicInt> unit;
};

// x = p^v * unit mod p^N.
ValuationSplit valuation_split(const Integer& x, unsigned p, unsigned precision);

}  // namespace iwasawa
