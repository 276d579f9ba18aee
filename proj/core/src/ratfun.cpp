#include "iwasawa/ratfun.hpp"

#include <sstream>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

long inverse_mod(std::uint64_t a, unsigned p) {
  mpz_class r;
  const mpz_class x(static_cast<unsigned long>(a));
  const mpz_class m(p);
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DomainError("division by zero in F_" + std::to_string(p));
  }
  return r.get_si();
}

bool p_integral(const mpq_class& v, unsigned p) {
  return !mpz_divisible_ui_p(v.get_den_mpz_t(), p);
}

Integer residue_mod(const mpq_class& v, const Integer& mod) {
  Integer inv;
  const Integer den = v.get_den();
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  return reduce(v.get_num() * inv, mod);
}

// P(-T/(1+T)) (1+T)^deg for a polynomial P of degree <= deg.
template <class Poly>
Poly homogenized_inverse(const Poly& P, std::size_t deg, const Poly& one, const Poly& one_plus_t,
                         const Poly& minus_t) {
  Poly acc = one * 0L;
  Poly minus_pow = one;
  for (std::size_t i = 0; i <= deg; ++i) {
    const auto c = P.coeff(i);
    if (c != 0) acc = acc + minus_pow * one_plus_t.pow(static_cast<unsigned>(deg - i)) * c;
    minus_pow = minus_pow * minus_t;
  }
  return acc;
}

QPoly operator*(const QPoly& a, long c) { return a * mpq_class(c); }
FpPoly operator*(const FpPoly& a, std::uint64_t c) { return a * static_cast<long>(c); }

// Reduced monic denominator split as (1+T)^n * witness.
CriterionResult power_of_one_plus_T(const RatFuncFp& G) {
  const unsigned p = G.prime();
  CriterionResult out(p);
  out.denominator = G.den();
  FpPoly rest = G.den();
  const FpPoly lin = FpPoly::one_plus_T(p);
  while (rest.degree() >= 1) {
    auto [q, r] = divmod(rest, lin);
    if (!r.is_zero()) break;
    rest = q;
    ++out.n;
  }
  out.witness = rest.monic();
  out.witness_factor = radical(out.witness);
  out.holds = out.witness.degree() == 0;
  return out;
}

}  // namespace

RatFuncFp::RatFuncFp(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
  const unsigned p = num_.prime();
  if (den_.prime() != p) throw ContextMismatch("numerator and denominator over different fields");
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = FpPoly::constant(p, 1);
    return;
  }
  const FpPoly g = gcd(num_, den_);
  num_ = divmod(num_, g).first;
  den_ = divmod(den_, g).first;
  const long inv = inverse_mod(den_.leading(), p);
  num_ *= inv;
  den_ *= inv;
  if (den_.coeff(0) == 0) {
    throw NotInPowerSeriesRing("reduced denominator " + den_.to_string() + " vanishes at T = 0");
  }
}

std::vector<std::uint64_t> RatFuncFp::series(std::size_t count) const {
  const unsigned p = prime();
  std::vector<std::uint64_t> s(count, 0);
  const std::uint64_t inv0 = static_cast<std::uint64_t>(inverse_mod(den_.coeff(0), p));
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t acc = num_.coeff(k);
    for (std::size_t j = 1; j <= k && j < den_.coeffs().size(); ++j) {
      acc = (acc + p - den_.coeff(j) * s[k - j] % p) % p;
    }
    s[k] = acc * inv0 % p;
  }
  return s;
}

RatFuncFp operator+(const RatFuncFp& a, const RatFuncFp& b) {
  return RatFuncFp(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFuncFp operator*(const RatFuncFp& a, const RatFuncFp& b) {
  return RatFuncFp(a.num_ * b.num_, a.den_ * b.den_);
}

RatFuncFp operator*(const RatFuncFp& a, long c) { return RatFuncFp(a.num_ * c, a.den_); }

std::string RatFuncFp::to_string() const {
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ") over F_" +
         std::to_string(prime());
}

RatFuncZp::RatFuncZp(unsigned p, QPoly num, QPoly den)
    : p_(p), num_(std::move(num)), den_(std::move(den)) {
  require_odd_prime(p);
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = QPoly::constant(1);
    return;
  }
  const QPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  const mpq_class d0 = den_.coeff(0);
  if (d0 == 0) {
    throw NotInPowerSeriesRing("reduced denominator " + den_.to_string() + " vanishes at T = 0");
  }
  num_ *= 1 / d0;
  den_ *= 1 / d0;
  for (const auto& c : den_.coeffs()) {
    if (!p_integral(c, p)) {
      throw NotInLambda("denominator " + den_.to_string() + " (normalized at T = 0) is not " +
                        std::to_string(p) + "-integral");
    }
  }
  for (const auto& c : num_.coeffs()) {
    if (!p_integral(c, p)) {
      throw NotInLambda("numerator " + num_.to_string() + " is not " + std::to_string(p) +
                        "-integral");
    }
  }
}

RatFuncFp RatFuncZp::reduce_mod_p() const {
  return RatFuncFp(iwasawa::reduce_mod_p(num_, p_), iwasawa::reduce_mod_p(den_, p_));
}

RingElem RatFuncZp::to_ring(unsigned n, unsigned m) const {
  const QuotientRing ring(p_, n, m);
  const Integer mod = ring.modulus();
  auto convert = [&](const QPoly& poly) {
    std::vector<Integer> c;
    for (const auto& v : poly.coeffs()) c.push_back(residue_mod(v, mod));
    return RingElem::from_polynomial(ring, c);
  };
  const RingElem num = convert(num_);
  if (den_.degree() == 0) return num;
  return num * invert_unit(convert(den_));
}

RatFuncZp operator+(const RatFuncZp& a, const RatFuncZp& b) {
  if (a.p_ != b.p_) throw ContextMismatch("rational functions at different primes");
  return RatFuncZp(a.p_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFuncZp operator*(const RatFuncZp& a, const RatFuncZp& b) {
  if (a.p_ != b.p_) throw ContextMismatch("rational functions at different primes");
  return RatFuncZp(a.p_, a.num_ * b.num_, a.den_ * b.den_);
}

RatFuncZp operator*(const RatFuncZp& a, const mpq_class& c) {
  return RatFuncZp(a.p_, a.num_ * c, a.den_);
}

std::string RatFuncZp::to_string() const {
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RatFuncFp normal_form(const FpPoly& num, const FpPoly& den) { return RatFuncFp(num, den); }

RatFuncZp normal_form(unsigned p, const QPoly& num, const QPoly& den) {
  return RatFuncZp(p, num, den);
}

RatFuncFp D_rat(const RatFuncFp& F) {
  const unsigned p = F.prime();
  const FpPoly& N = F.num();
  const FpPoly& D = F.den();
  return RatFuncFp(FpPoly::one_plus_T(p) * (N.derivative() * D - N * D.derivative()), D * D);
}

RatFuncZp D_rat(const RatFuncZp& F) {
  const QPoly& N = F.num();
  const QPoly& D = F.den();
  return RatFuncZp(F.prime(), QPoly::from_integers({1, 1}) * (N.derivative() * D - N * D.derivative()),
                   D * D);
}

RatFuncFp U_rat(const RatFuncFp& F) {
  RatFuncFp out = F;
  for (unsigned i = 0; i + 1 < F.prime(); ++i) out = D_rat(out);
  return out;
}

RatFuncZp U_rat(const RatFuncZp& F) {
  const unsigned p = F.prime();
  if (F.is_zero()) return F;
  const QPoly A = taylor_shift(F.num(), mpq_class(-1));
  const QPoly B = taylor_shift(F.den(), mpq_class(-1));
  const long e = B.degree();
  const mpq_class lc = B.leading();

  // C(y) = lc^p prod (y - beta^p) from the power sums of the roots beta of B.
  std::vector<mpq_class> a(static_cast<std::size_t>(e) + 1, 0);  // monic B: x^e + a_1 x^{e-1} + ...
  for (long i = 1; i <= e; ++i) a[i] = B.coeff(static_cast<std::size_t>(e - i)) / lc;
  const long top = static_cast<long>(p) * e;
  std::vector<mpq_class> s(static_cast<std::size_t>(top) + 1, 0);
  for (long k = 1; k <= top; ++k) {
    mpq_class acc = k <= e ? mpq_class(k * a[k]) : mpq_class(0);
    for (long i = 1; i < k && i <= e; ++i) acc += a[i] * s[k - i];
    s[k] = -acc;
  }
  std::vector<mpq_class> E(static_cast<std::size_t>(e) + 1, 0);
  E[0] = 1;
  for (long k = 1; k <= e; ++k) {
    mpq_class acc = 0;
    for (long i = 1; i <= k; ++i) {
      const mpq_class term = E[k - i] * s[p * i];
      acc += (i % 2 == 1) ? term : mpq_class(-term);
    }
    E[k] = acc / k;
  }
  mpq_class lc_p = 1;
  for (unsigned i = 0; i < p; ++i) lc_p *= lc;
  std::vector<mpq_class> cxp(static_cast<std::size_t>(top) + 1, 0);  // C(x^p)
  for (long k = 0; k <= e; ++k) {
    cxp[static_cast<std::size_t>(p * (e - k))] = lc_p * ((k % 2 == 0) ? E[k] : mpq_class(-E[k]));
  }
  const QPoly Cxp(cxp);
  const auto [Bstar, rem] = divmod(Cxp, B);
  if (!rem.is_zero()) throw DomainError("internal: norm polynomial is not divisible by B");
  const QPoly prod = A * Bstar;
  std::vector<mpq_class> kept(prod.coeffs().size(), 0);
  for (std::size_t i = 0; i < kept.size(); i += p) kept[i] = prod.coeffs()[i];
  const QPoly trace_num = taylor_shift(QPoly(kept), mpq_class(1));
  const QPoly trace_den = taylor_shift(Cxp, mpq_class(1));
  return F - RatFuncZp(p, trace_num, trace_den);
}

RatFuncFp compose_inv(const RatFuncFp& F) {
  const unsigned p = F.prime();
  const FpPoly one = FpPoly::constant(p, 1);
  const FpPoly lin = FpPoly::one_plus_T(p);
  const FpPoly minus_t(p, {0, -1});
  const long a = std::max(0L, F.num().degree());
  const long b = F.den().degree();
  FpPoly num = homogenized_inverse(F.num(), a, one, lin, minus_t);
  FpPoly den = homogenized_inverse(F.den(), b, one, lin, minus_t);
  if (b >= a) {
    num = num * lin.pow(static_cast<unsigned>(b - a));
  } else {
    den = den * lin.pow(static_cast<unsigned>(a - b));
  }
  return RatFuncFp(num, den);
}

RatFuncZp compose_inv(const RatFuncZp& F) {
  const QPoly one = QPoly::constant(1);
  const QPoly lin = QPoly::from_integers({1, 1});
  const QPoly minus_t = QPoly::from_integers({0, -1});
  const long a = std::max(0L, F.num().degree());
  const long b = F.den().degree();
  QPoly num = homogenized_inverse(F.num(), a, one, lin, minus_t);
  QPoly den = homogenized_inverse(F.den(), b, one, lin, minus_t);
  if (b >= a) {
    num = num * lin.pow(static_cast<unsigned>(b - a));
  } else {
    den = den * lin.pow(static_cast<unsigned>(a - b));
  }
  return RatFuncZp(F.prime(), num, den);
}

std::optional<unsigned> gauss_mu(const RatFuncZp& F) {
  if (F.is_zero()) return std::nullopt;
  std::optional<unsigned> best;
  for (const auto& c : F.num().coeffs()) {
    if (c == 0) continue;
    const unsigned v = valuation(c.get_num(), F.prime());
    if (!best || v < *best) best = v;
  }
  return best;
}

CriterionResult pseudo_polynomial_test(const RatFuncFp& F) { return power_of_one_plus_T(F); }

CriterionResult symmetrized_test(const RatFuncFp& F, long delta) {
  const RatFuncFp inv = compose_inv(F);
  const RatFuncFp G = (delta % 2 == 0) ? F + inv : F - inv;
  return power_of_one_plus_T(G);
}

CriterionResult sym_poly_criterion(const RatFuncFp& F, long delta) {
  const RatFuncFp UF = U_rat(F);
  const RatFuncFp UFi = U_rat(compose_inv(F));
  const RatFuncFp G = (delta % 2 == 0) ? UF + UFi : UF - UFi;
  return power_of_one_plus_T(G);
}

MuFormulaReport mu_gamma_formula(const RatFuncZp& F, long delta, std::size_t level_cap) {
  const unsigned p = F.prime();
  const long pm1 = static_cast<long>(p) - 1;
  const long d = ((delta % pm1) + pm1) % pm1;
  const int branch = (d == 0 || d % 2 == 1) ? 1 : 2;
  const RatFuncZp UF = U_rat(F);
  const RatFuncZp UFi = U_rat(compose_inv(F));
  RatFuncZp comb = d % 2 == 0 ? UF + UFi : UF - UFi;
  if (branch == 2) comb = comb - RatFuncZp(p, QPoly::constant(2 * UF.at_zero()));
  const std::optional<unsigned> mu = gauss_mu(comb);

  std::optional<unsigned> level;
  if (mu) {
    const unsigned n = *mu + 1;
    const Integer exact_mod = prime_power(p, *mu);
    for (unsigned m = 1; prime_power(p, m) <= Integer(static_cast<unsigned long>(level_cap)); ++m) {
      const RingElem f = F.to_ring(n, m);
      const RingElem uf = op_U(f);
      const RingElem ufi = op_U(substitute_exp(f, Integer(-1)));
      RingElem e = d % 2 == 0 ? uf + ufi : uf - ufi;
      if (branch == 2) e = e - RingElem::constant(e.ring(), 2 * uf.constant_term());
      bool all_divisible = true;
      bool exact_hit = false;
      for (const auto& c : e.monomial_coeffs()) {
        if (reduce(c, exact_mod) != 0) all_divisible = false;
        if (c != 0 && valuation(c, p) == *mu) exact_hit = true;
      }
      if (!all_divisible) {
        throw PrecisionError("mu formula: truncation at level " + std::to_string(m) +
                             " contradicts the exact Gauss content");
      }
      if (exact_hit) {
        level = m;
        break;
      }
    }
  }
  return MuFormulaReport{branch, mu, level, comb};
}

}  // namespace iwasawa
