#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "iwasawa/errors.hpp"
#include "iwasawa/ring.hpp"
#include "modarith.hpp"

namespace iwasawa {

using detail::with_ops;
using Basis = RingElem::Basis;

namespace {

std::uint64_t to_u64(const Integer& x) { return mpz_get_ui(x.get_mpz_t()); }

long residue(long x, long m) {
  long r = x % m;
  return r < 0 ? r + m : r;
}

// omega(r)^delta mod modulus for r = 1..p-1 (index 0 unused).
std::vector<Integer> teichmuller_powers(unsigned p, unsigned precision, long delta) {
  std::vector<Integer> out(p, 0);
  if (precision == 0) return out;
  const long e = residue(delta, static_cast<long>(p) - 1);
  for (unsigned r = 1; r < p; ++r) {
    out[r] = teichmuller(r, p, precision).pow(e).value();
  }
  return out;
}

// e_a = Log_p(a)/Log_p(kappa) mod p^{m-1} for units a < p^m; shared across calls.
using ExponentTable = std::vector<std::uint32_t>;

std::shared_ptr<const ExponentTable> kappa_exponent_table(unsigned p, const Integer& kappa,
                                                          unsigned m) {
  static std::mutex mutex;
  static std::map<std::tuple<unsigned, std::string, unsigned>,
                  std::shared_ptr<const ExponentTable>>
      cache;
  const unsigned kprec = std::max(2u, m);
  const Integer kappa_red = reduce(kappa, prime_power(p, kprec));
  const auto key = std::make_tuple(p, kappa_red.get_str(), m);
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const PadicInt k(p, kprec, kappa_red);
  require_topological_generator(k);
  const std::size_t len = static_cast<std::size_t>(to_u64(prime_power(p, m)));
  auto table = std::make_shared<ExponentTable>(len, 0);
  if (m >= 2) {
    const unsigned out_prec = m - 1;
    const Integer log_k = [&] {
      Integer v = iwasawa_log(k.with_precision(m), m).value();
      mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
      return v;
    }();
    const Integer out_mod = prime_power(p, out_prec);
    Integer inv_log_k;
    mpz_invert(inv_log_k.get_mpz_t(), log_k.get_mpz_t(), out_mod.get_mpz_t());
    for (std::size_t a = 1; a < len; ++a) {
      if (a % p == 0) continue;
      Integer log_a = iwasawa_log(PadicInt(p, m, static_cast<unsigned long>(a)), m).value();
      mpz_divexact_ui(log_a.get_mpz_t(), log_a.get_mpz_t(), p);
      (*table)[a] = static_cast<std::uint32_t>(to_u64(reduce(log_a * inv_log_k, out_mod)));
    }
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, table);
  return table;
}

}  // namespace

RingElem substitute_exp(const RingElem& f, const Integer& a) {
  const QuotientRing& ring = f.ring();
  const std::size_t len = ring.size();
  const std::uint64_t mult = to_u64(reduce(a, Integer(static_cast<unsigned long>(len))));
  const auto b = f.binomial_coeffs();
  std::vector<Integer> out(len, 0);
  for (std::size_t j = 0; j < len; ++j) {
    if (b[j] == 0) continue;
    out[(mult * j) % len] += b[j];
  }
  return RingElem(ring, Basis::binomial, std::move(out));
}

RingElem substitute_exp(const RingElem& f, const PadicInt& a) {
  if (a.prime() != f.ring().p) throw ContextMismatch("substitute_exp: primes differ");
  if (a.precision() < f.ring().m) {
    throw PrecisionError("substitute_exp needs the exponent mod p^" +
                         std::to_string(f.ring().m) + ", got " + a.to_string());
  }
  return substitute_exp(f, a.value());
}

RingElem op_D(const RingElem& f) {
  const QuotientRing& ring = f.ring();
  const QuotientRing target = ring.with_precision(std::min(ring.n, ring.m));
  const auto b = f.binomial_coeffs();
  std::vector<Integer> out(b.size());
  for (std::size_t a = 0; a < b.size(); ++a) out[a] = b[a] * static_cast<unsigned long>(a);
  return RingElem(target, Basis::binomial, std::move(out));
}

RingElem op_U(const RingElem& f) {
  auto b = f.binomial_coeffs();
  for (std::size_t a = 0; a < b.size(); a += f.ring().p) b[a] = 0;
  return RingElem(f.ring(), Basis::binomial, std::move(b));
}

RingElem op_gamma(const RingElem& f, long delta) {
  const QuotientRing& ring = f.ring();
  const unsigned p = ring.p;
  const std::size_t len = ring.size();
  const Integer mod = ring.modulus();
  const unsigned eta_prec = std::max({ring.n, ring.m, 1u});
  std::vector<std::uint64_t> eta_exp(p, 0);
  std::vector<Integer> eta_coef(p, 0);
  Integer inv_pm1 = 0;
  if (ring.n > 0) {
    const Integer pm1(p - 1);
    mpz_invert(inv_pm1.get_mpz_t(), pm1.get_mpz_t(), mod.get_mpz_t());
  }
  const Integer len_int(static_cast<unsigned long>(len));
  const long e = residue(delta, static_cast<long>(p) - 1);
  for (unsigned r = 1; r < p; ++r) {
    const PadicInt eta = teichmuller(r, p, eta_prec);
    eta_exp[r] = to_u64(reduce(eta.value(), len_int));
    eta_coef[r] = reduce(eta.pow(e).value() * inv_pm1, mod);
  }
  auto out = with_ops(mod, [&](const auto& ops) {
    using V = typename std::decay_t<decltype(ops)>::value_type;
    const auto b = detail::load_all(ops, f.binomial_coeffs());
    const auto c = detail::load_all(ops, eta_coef);
    std::vector<V> acc(len, ops.zero());
    for (std::size_t a = 0; a < len; ++a) {
      if (ops.is_zero(b[a])) continue;
      for (unsigned r = 1; r < p; ++r) {
        const std::size_t target = static_cast<std::size_t>((eta_exp[r] * a) % len);
        acc[target] = ops.add(acc[target], ops.mul(c[r], b[a]));
      }
    }
    return detail::store_all(ops, acc);
  });
  return RingElem(ring, Basis::binomial, std::move(out));
}

RingElem op_Gamma(const RingElem& f, long delta, const Integer& kappa) {
  const QuotientRing& ring = f.ring();
  if (ring.m == 0) throw DomainError("Gamma needs level m >= 1 to produce an element of level m-1");
  const unsigned p = ring.p;
  const auto table = kappa_exponent_table(p, kappa, ring.m);
  const QuotientRing target = ring.with_level(ring.m - 1);
  const std::size_t out_len = target.size();
  const Integer mod = ring.modulus();
  const auto twist = teichmuller_powers(p, ring.n, delta);
  auto out = with_ops(mod, [&](const auto& ops) {
    using V = typename std::decay_t<decltype(ops)>::value_type;
    const auto b = detail::load_all(ops, f.binomial_coeffs());
    const auto w = detail::load_all(ops, twist);
    std::vector<V> acc(out_len, ops.zero());
    for (std::size_t a = 1; a < b.size(); ++a) {
      if (a % p == 0 || ops.is_zero(b[a])) continue;
      const std::size_t idx = out_len == 1 ? 0 : (*table)[a] % out_len;
      acc[idx] = ops.add(acc[idx], ops.mul(w[a % p], b[a]));
    }
    return detail::store_all(ops, acc);
  });
  return RingElem(target, Basis::binomial, std::move(out));
}

RingElem change_kappa(const RingElem& gamma_f, const Integer& kappa, const Integer& kappa_prime) {
  const QuotientRing& ring = gamma_f.ring();
  const unsigned p = ring.p;
  const unsigned prec = std::max(2u, ring.m + 1);
  const PadicInt k(p, prec, kappa);
  const PadicInt kp(p, prec, kappa_prime);
  require_topological_generator(k);
  require_topological_generator(kp);
  if (ring.m == 0) return gamma_f;
  return substitute_exp(gamma_f, kappa_exponent(k, kp, ring.m));
}

bool ideal_zero(const RingElem& f, unsigned coeff_precision, unsigned level) {
  const QuotientRing& ring = f.ring();
  if (coeff_precision > ring.n || level > ring.m) {
    throw PrecisionError("ideal_zero: (" + std::to_string(coeff_precision) + "," +
                         std::to_string(level) + ") exceeds " + ring.to_string());
  }
  const RingElem folded = f.with_level(level);
  const Integer mod = prime_power(ring.p, coeff_precision);
  for (const auto& c : folded.raw()) {
    if (reduce(c, mod) != 0) return false;
  }
  return true;
}

InvariantReport invariants(const RingElem& f) {
  InvariantReport report;
  report.n = f.ring().n;
  report.m = f.ring().m;
  if (f.ring().n == 0) return report;
  const auto c = f.monomial_coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mpz_divisible_ui_p(c[i].get_mpz_t(), f.ring().p)) {
      report.verdict = InvariantReport::Verdict::certified;
      report.mu = 0;
      report.lambda = static_cast<unsigned>(i);
      return report;
    }
  }
  return report;
}

PadicInt evaluate(const RingElem& f, const PadicInt& t) {
  const QuotientRing& ring = f.ring();
  if (t.prime() != ring.p) throw ContextMismatch("evaluate: primes differ");
  if (t.precision() == 0 || !mpz_divisible_ui_p(t.value().get_mpz_t(), ring.p)) {
    throw DomainError("evaluate needs v_p(t) >= 1, got " + t.to_string());
  }
  const unsigned prec = std::min({ring.n, ring.m + 1, t.precision()});
  const Integer mod = prime_power(ring.p, prec);
  const auto c = f.monomial_coeffs();
  Integer acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = reduce(acc * t.value() + c[i], mod);
  return PadicInt(ring.p, prec, acc);
}

PadicInt dk_at_zero(const RingElem& f, const Integer& k) {
  const QuotientRing& ring = f.ring();
  if (k < 0) throw DomainError("dk_at_zero needs k >= 0");
  if (k == 0) return PadicInt(ring.p, ring.n, f.constant_term());
  const unsigned prec = std::min(ring.n, ring.m);
  const Integer mod = prime_power(ring.p, prec);
  const auto b = f.binomial_coeffs();
  Integer acc = 0;
  for (std::size_t a = 1; a < b.size(); ++a) {
    if (b[a] == 0) continue;
    Integer term;
    const Integer base(static_cast<unsigned long>(a));
    mpz_powm(term.get_mpz_t(), base.get_mpz_t(), k.get_mpz_t(), mod.get_mpz_t());
    acc += term * b[a];
  }
  return PadicInt(ring.p, prec, reduce(acc, mod));
}

Integer k_index(const PadicInt& s, long delta, unsigned n) {
  const unsigned p = s.prime();
  if (s.precision() < n + 1) {
    throw PrecisionError("k_index at n=" + std::to_string(n) + " needs s mod p^" +
                         std::to_string(n + 1) + ", got " + s.to_string());
  }
  const Integer pn1 = prime_power(p, n + 1);
  const Integer base = reduce(s.value(), pn1);
  const long pm1 = static_cast<long>(p) - 1;
  const long base_res = static_cast<long>(mpz_fdiv_ui(base.get_mpz_t(), pm1));
  // p^{n+1} = 1 mod p-1, so the digit must be delta - [s]_{n+1} mod p-1.
  long digit = residue(delta - base_res, pm1);
  if (digit == 0) digit = pm1;
  return base + Integer(digit) * pn1;
}

}  // namespace iwasawa
