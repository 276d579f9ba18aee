#include "iwasawa/characters.hpp"
#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

using u64 = unsigned long long;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, unsigned e, u64 m) {
  u64 result = 1 % m;
  while (e) {
    if (e & 1u) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

// sum_{a=1}^{count} chi(a) a^k mod `mod`, chi given by its values on residues mod d.
Integer character_power_sum(const std::vector<Integer>& chi_values, unsigned d, u64 count,
                            unsigned k, const Integer& mod) {
  if (mod <= Integer("4611686018427387904")) {  // 2^62
    const u64 m = mpz_get_ui(mod.get_mpz_t());
    std::vector<u64> chi(d);
    for (unsigned r = 0; r < d; ++r) chi[r] = mpz_get_ui(chi_values[r].get_mpz_t());
    u64 acc = 0;
    unsigned r = 0;
    for (u64 a = 1; a <= count; ++a) {
      r = (r + 1 == d) ? 0 : r + 1;
      if (chi[r] == 0) continue;
      acc += mulmod(chi[r], powmod(a % m, k, m), m);
      if (acc >= m) acc -= m;
    }
    return Integer(static_cast<unsigned long>(acc));
  }
  Integer acc = 0;
  Integer term;
  const Integer kk(k);
  for (u64 a = 1; a <= count; ++a) {
    const Integer& c = chi_values[a % d];
    if (c == 0) continue;
    const Integer base(static_cast<unsigned long>(a));
    mpz_powm(term.get_mpz_t(), base.get_mpz_t(), kk.get_mpz_t(), mod.get_mpz_t());
    acc += term * c;
    if (acc >= mod) acc = reduce(acc, mod);
  }
  return reduce(acc, mod);
}

}  // namespace

BernoulliValue bernoulli_chi(const DirichletCharacter& chi, unsigned k, unsigned target_precision,
                             unsigned guard) {
  const unsigned p = chi.prime();
  const unsigned d = chi.conductor();
  const int sign_k = (k % 2 == 0) ? 1 : -1;
  // B_{1,1} = 1/2 is the one nonzero value off the parity line.
  if (chi.parity() != sign_k && !(chi.is_trivial() && k == 1)) {
    return BernoulliValue{PadicInt(p, target_precision, 0), 0, true};
  }
  const unsigned N = target_precision + guard;
  const Integer count = Integer(d) * prime_power(p, N);
  if (count > Integer(static_cast<unsigned long>(kBernoulliTermLimit))) {
    throw ResourceLimit("limit sum for B_{" + std::to_string(k) + "," + chi.label() + "} mod " +
                        std::to_string(p) + "^" + std::to_string(target_precision) + " needs " +
                        count.get_str() + " terms (limit " +
                        std::to_string(kBernoulliTermLimit) + ")");
  }
  const unsigned working = target_precision + N;
  const Integer mod = prime_power(p, working);
  std::vector<Integer> chi_values(d);
  for (unsigned r = 0; r < d; ++r) chi_values[r] = chi.value(Integer(r), working);
  if (d == 1) chi_values[0] = 1;
  const Integer S = character_power_sum(chi_values, d, mpz_get_ui(count.get_mpz_t()), k, mod);

  Integer dinv;
  const Integer dz(d);
  mpz_invert(dinv.get_mpz_t(), dz.get_mpz_t(), mod.get_mpz_t());
  if (S == 0) return BernoulliValue{PadicInt(p, target_precision, 0), 0, false};
  const unsigned v = valuation(S, p);
  Integer unit_part = S;
  if (v >= N) {
    mpz_divexact(unit_part.get_mpz_t(), unit_part.get_mpz_t(), prime_power(p, N).get_mpz_t());
    return BernoulliValue{PadicInt(p, target_precision, unit_part * dinv), 0, false};
  }
  // Non-integral value: p^{N-v} B is returned.
  mpz_divexact(unit_part.get_mpz_t(), unit_part.get_mpz_t(), prime_power(p, v).get_mpz_t());
  return BernoulliValue{PadicInt(p, target_precision, unit_part * dinv), N - v, false};
}

PadicInt lp_value(const ThetaCharacter& theta, unsigned k, unsigned precision) {
  const unsigned p = theta.prime();
  const long pm1 = static_cast<long>(p) - 1;
  if (static_cast<long>(k % pm1) != theta.delta) {
    throw DomainError("L_p(-k, theta) needs k = delta mod p-1; got k=" + std::to_string(k) +
                      ", delta=" + std::to_string(theta.delta));
  }
  const unsigned extra = valuation(Integer(k + 1), p);
  const BernoulliValue B = bernoulli_chi(theta.chi, k + 1, precision + extra);
  if (B.denominator_exponent > 0) {
    throw DomainError("B_{" + std::to_string(k + 1) + "," + theta.chi.label() +
                      "} is not p-integral");
  }
  Integer b = B.value.value();
  const Integer pe = prime_power(p, extra);
  if (!mpz_divisible_p(b.get_mpz_t(), pe.get_mpz_t())) {
    throw PrecisionError("B_{k+1,chi}/(k+1) is not p-integral at k=" + std::to_string(k));
  }
  mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), pe.get_mpz_t());
  const PadicInt quotient(p, precision, b);
  const PadicInt unit_k(p, precision, Integer(k + 1) / pe);
  const PadicInt chi_p(p, precision, theta.chi.value(Integer(p), precision));
  const PadicInt euler = PadicInt(p, precision, 1) - chi_p * PadicInt(p, precision, prime_power(p, k));
  return -(euler * quotient * unit_k.inverse());
}

}  // namespace iwasawa
