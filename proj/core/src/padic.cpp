#include "iwasawa/padic.hpp"

#include <algorithm>
#include <vector>
#include <ostream>

#include "iwasawa/errors.hpp"

namespace iwasawa {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Integer prime_power(unsigned p, unsigned k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

unsigned valuation(const Integer& x, unsigned p) {
  if (x == 0) throw DomainError("valuation of zero is infinite");
  Integer t = x;
  unsigned v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

Integer reduce(const Integer& x, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

void require_odd_prime(unsigned p) {
  if (p < 3 || !is_prime(p)) {
    throw DomainError("p must be an odd prime, got " + std::to_string(p));
  }
}

unsigned primitive_root(unsigned p) {
  require_odd_prime(p);
  const unsigned order = p - 1;
  std::vector<unsigned> factors;
  unsigned r = order;
  for (unsigned q = 2; q * q <= r; ++q) {
    if (r % q == 0) {
      factors.push_back(q);
      while (r % q == 0) r /= q;
    }
  }
  if (r > 1) factors.push_back(r);
  for (unsigned g = 2; g < p; ++g) {
    bool ok = true;
    for (unsigned q : factors) {
      Integer t;
      Integer base(g), mod(p);
      mpz_powm_ui(t.get_mpz_t(), base.get_mpz_t(), order / q, mod.get_mpz_t());
      if (t == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // p = 2 is rejected above; unreachable for odd primes
}

PadicInt::PadicInt(unsigned p, unsigned precision, const Integer& value)
    : p_(p), precision_(precision) {
  require_odd_prime(p);
  value_ = reduce(value, prime_power(p, precision));
}

bool PadicInt::is_unit() const {
  return precision_ > 0 && !mpz_divisible_ui_p(value_.get_mpz_t(), p_);
}

unsigned PadicInt::valuation() const {
  if (value_ == 0) return precision_;
  return iwasawa::valuation(value_, p_);
}

PadicInt PadicInt::with_precision(unsigned precision) const {
  if (precision > precision_) {
    throw PrecisionError("cannot raise precision of a p-adic value from " +
                         std::to_string(precision_) + " to " + std::to_string(precision));
  }
  return PadicInt(p_, precision, value_);
}

PadicInt PadicInt::inverse() const {
  if (!is_unit()) throw NotAUnit("inverse of a non-unit " + to_string());
  Integer r;
  const Integer m = modulus();
  mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), m.get_mpz_t());
  return PadicInt(p_, precision_, r);
}

PadicInt PadicInt::pow(const Integer& exponent) const {
  const Integer m = modulus();
  if (exponent < 0) return inverse().pow(-exponent);
  Integer r;
  mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), exponent.get_mpz_t(), m.get_mpz_t());
  return PadicInt(p_, precision_, r);
}

PadicInt PadicInt::operator-() const { return PadicInt(p_, precision_, -value_); }

void PadicInt::align_with(const PadicInt& rhs) {
  if (p_ != rhs.p_) {
    throw ContextMismatch("p-adic values at different primes: " + std::to_string(p_) +
                          " vs " + std::to_string(rhs.p_));
  }
  if (rhs.precision_ < precision_) {
    precision_ = rhs.precision_;
    value_ = reduce(value_, modulus());
  }
}

PadicInt& PadicInt::operator+=(const PadicInt& rhs) {
  align_with(rhs);
  value_ = reduce(value_ + rhs.value_, modulus());
  return *this;
}

PadicInt& PadicInt::operator-=(const PadicInt& rhs) {
  align_with(rhs);
  value_ = reduce(value_ - rhs.value_, modulus());
  return *this;
}

PadicInt& PadicInt::operator*=(const PadicInt& rhs) {
  align_with(rhs);
  value_ = reduce(value_ * rhs.value_, modulus());
  return *this;
}

std::string PadicInt::to_string() const {
  return value_.get_str() + " mod " + std::to_string(p_) + "^" + std::to_string(precision_);
}

std::ostream& operator<<(std::ostream& os, const PadicInt& x) { return os << x.to_string(); }

unsigned PrecisionPlan::minimum_guard(unsigned p, unsigned target_m) {
  // ceil(log_p(target_m + 2)) + 1
  unsigned digits = 0;
  Integer pk = 1;
  while (pk < target_m + 2) {
    pk *= p;
    ++digits;
  }
  return digits + 1;
}

PrecisionPlan PrecisionPlan::make(unsigned p, unsigned n, unsigned m) {
  return PrecisionPlan{n, m, minimum_guard(p, m)};
}

PadicInt teichmuller(const Integer& a, unsigned p, unsigned precision) {
  require_odd_prime(p);
  if (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
    throw DomainError("Teichmuller lift of a non-unit " + a.get_str() + " mod " +
                      std::to_string(p));
  }
  if (precision == 0) return PadicInt(p, 0, 0);
  const PadicInt base(p, precision, a);
  return base.pow(prime_power(p, precision - 1));
}

namespace {

// Least K with K - floor(log_p K) >= target.
unsigned log_series_length(unsigned p, unsigned target) {
  unsigned k = 1;
  while (true) {
    unsigned lg = 0;
    for (unsigned long long q = p; q <= k; q *= p) ++lg;
    if (k - lg >= target) return k;
    ++k;
  }
}

unsigned floor_log(unsigned p, unsigned k) {
  unsigned lg = 0;
  for (unsigned long long q = p; q <= k; q *= p) ++lg;
  return lg;
}

}  // namespace

PadicInt iwasawa_log(const PadicInt& u, unsigned output_precision,
                     std::optional<unsigned> guard) {
  const unsigned p = u.prime();
  if (!u.is_unit()) throw DomainError("Iwasawa logarithm of a non-unit " + u.to_string());
  if (u.precision() < output_precision) {
    throw PrecisionError("logarithm requested mod p^" + std::to_string(output_precision) +
                         " of a value known mod p^" + std::to_string(u.precision()));
  }
  if (output_precision == 0) return PadicInt(p, 0, 0);

  const unsigned g = guard.value_or(PrecisionPlan::minimum_guard(p, output_precision));
  const unsigned working = output_precision + g;
  const unsigned terms = log_series_length(p, working);
  // Terms x^k / k with p | k are divided exactly, which costs up to
  // floor(log_p K) digits.
  const unsigned wide = working + floor_log(p, terms);
  const Integer mod = prime_power(p, wide);

  const PadicInt lifted(p, wide, u.value());
  const PadicInt principal = lifted * teichmuller(u.value(), p, wide).inverse();
  const Integer x = reduce(principal.value() - 1, mod);

  Integer sum = 0;
  Integer power = 1;
  for (unsigned k = 1; k < terms; ++k) {
    power = reduce(power * x, mod);
    unsigned vk = 0;
    unsigned unit_k = k;
    while (unit_k % p == 0) {
      unit_k /= p;
      ++vk;
    }
    Integer term = power;
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), prime_power(p, vk).get_mpz_t());
    Integer inv;
    const Integer uk(unit_k);
    mpz_invert(inv.get_mpz_t(), uk.get_mpz_t(), mod.get_mpz_t());
    term = reduce(term * inv, mod);
    if (k % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return PadicInt(p, output_precision, sum);
}

void require_topological_generator(const PadicInt& kappa) {
  const unsigned p = kappa.prime();
  if (kappa.precision() < 2) {
    throw PrecisionError("a topological generator must be known at least mod p^2");
  }
  const Integer r1 = reduce(kappa.value() - 1, Integer(p));
  const Integer r2 = reduce(kappa.value() - 1, prime_power(p, 2));
  if (r1 != 0 || r2 == 0) {
    throw DomainError(kappa.value().get_str() + " is not a topological generator of 1+" +
                      std::to_string(p) + "Z_" + std::to_string(p));
  }
}

PadicInt kappa_exponent(const PadicInt& a, const PadicInt& kappa, unsigned output_precision) {
  const unsigned p = a.prime();
  if (kappa.prime() != p) throw ContextMismatch("kappa_exponent: primes differ");
  require_topological_generator(kappa);
  if (!a.is_unit()) throw DomainError("kappa_exponent of a non-unit " + a.to_string());
  if (output_precision == 0) return PadicInt(p, 0, 0);
  const unsigned wide = output_precision + 1;
  if (a.precision() < wide || kappa.precision() < wide) {
    throw PrecisionError("kappa_exponent mod p^" + std::to_string(output_precision) +
                         " needs inputs mod p^" + std::to_string(wide));
  }
  const Integer p_int(p);
  Integer log_a = iwasawa_log(a.with_precision(wide), wide).value();
  Integer log_k = iwasawa_log(kappa.with_precision(wide), wide).value();
  // v_p(Log_p a) >= 1 and v_p(Log_p kappa) = 1.
  mpz_divexact_ui(log_a.get_mpz_t(), log_a.get_mpz_t(), p);
  mpz_divexact_ui(log_k.get_mpz_t(), log_k.get_mpz_t(), p);
  const PadicInt num(p, output_precision, log_a);
  const PadicInt den(p, output_precision, log_k);
  return num * den.inverse();
}

ValuationSplit valuation_split(const Integer& x, unsigned p, unsigned precision) {
  require_odd_prime(p);
  const Integer r = reduce(x, prime_power(p, precision));
  ValuationSplit out;
  if (r == 0) {
    out.v = precision;
    out.saturated = true;
    return out;
  }
  out.v = valuation(r, p);
  Integer unit = r;
  mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), prime_power(p, out.v).get_mpz_t());
  out.unit = PadicInt(p, precision - out.v, unit);
  return out;
}

}  // namespace iwasawa
