#include "iwasawa/lfunc.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

unsigned long pow_mod_small(unsigned long base, unsigned long e, unsigned long mod) {
  unsigned long r = 1 % mod;
  base %= mod;
  while (e) {
    if (e & 1) r = r * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return r;
}

void require_multiplier(unsigned p, unsigned c, long delta) {
  if (c < 2 || c + 1 > p) {
    throw DomainError("multiplier c=" + std::to_string(c) + " is outside [2, " +
                      std::to_string(p - 1) + "]");
  }
  const long pm1 = static_cast<long>(p) - 1;
  const unsigned long e = static_cast<unsigned long>(((delta + 1) % pm1 + pm1) % pm1);
  if (pow_mod_small(c, e, p) == 1) {
    throw DomainError("multiplier c=" + std::to_string(c) + " has c^{delta+1} = 1 mod p");
  }
}

}  // namespace

Integer default_kappa(unsigned p, unsigned d) { return 1 + Integer(p) * d; }

RingElem geometric_sum_inverse(const QuotientRing& ring, unsigned c) {
  if (c == 0 || c % ring.p == 0) {
    throw NotAUnit("sum_{i<c} (1+T)^i needs p not dividing c, got c=" + std::to_string(c));
  }
  const std::size_t len = ring.size();
  std::vector<Integer> b(len, 0);
  const Integer P(static_cast<unsigned long>(len));
  const Integer cz(c);
  Integer c_inv = 0;
  if (len > 1) mpz_invert(c_inv.get_mpz_t(), cz.get_mpz_t(), P.get_mpz_t());
  Integer k = cz * c_inv - 1;
  mpz_divexact(k.get_mpz_t(), k.get_mpz_t(), P.get_mpz_t());
  const unsigned long count = mpz_get_ui(c_inv.get_mpz_t());
  for (unsigned long j = 0; j < count; ++j) b[(j * c) % len] += 1;
  const Integer mod = ring.modulus();
  Integer c_inv_n;
  mpz_invert(c_inv_n.get_mpz_t(), cz.get_mpz_t(), mod.get_mpz_t());
  const Integer norm_coeff = reduce(k * c_inv_n, mod);
  if (norm_coeff != 0) {
    for (auto& x : b) x -= norm_coeff;
  }
  return RingElem(ring, RingElem::Basis::binomial, std::move(b));
}

RingElem f_chi(const DirichletCharacter& chi, unsigned n, unsigned m) {
  const unsigned d = chi.conductor();
  if (d < 2) throw DomainError("f_chi needs conductor d >= 2; use g_c_surrogate for d = 1");
  const QuotientRing ring(chi.prime(), n, m);
  const Integer mod = ring.modulus();
  std::vector<Integer> N(d + 1, 0);
  for (unsigned a = 1; a <= d; ++a) N[a] = chi.value(Integer(a), n);
  // N(x) = (x - 1) Q(x).
  std::vector<Integer> Q(d, 0);
  Q[d - 1] = N[d];
  for (unsigned i = d - 1; i >= 1; --i) Q[i - 1] = N[i] + Q[i];
  if (reduce(N[0] + Q[0], mod) != 0) {
    throw DomainError("character values of " + chi.label() + " do not sum to zero");
  }
  RingElem q = RingElem::from_x_polynomial(ring, Q);
  return -(q * geometric_sum_inverse(ring, d));
}

IntPoly surrogate_numerator(unsigned c) {
  if (c < 2) throw DomainError("h_c needs c >= 2");
  IntPoly num(c + 1, 0);
  num[0] = 1;
  num[c - 1] = -Integer(c);
  num[c] = Integer(c - 1);
  return intpoly::divide_exact(num, IntPoly{1, -2, 1});
}

RingElem g_c_surrogate(unsigned p, unsigned c, unsigned n, unsigned m) {
  require_odd_prime(p);
  if (c < 2 || c + 1 > p) {
    throw DomainError("multiplier c=" + std::to_string(c) + " is outside [2, " +
                      std::to_string(p - 1) + "]");
  }
  static std::mutex cache_mutex;
  static std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, RingElem> cache;
  const auto key = std::make_tuple(p, c, n, m);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const QuotientRing ring(p, n, m);
  const IntPoly h = surrogate_numerator(c);
  std::vector<Integer> xh(h.size() + 1, 0);
  std::copy(h.begin(), h.end(), xh.begin() + 1);
  RingElem g = RingElem::from_x_polynomial(ring, xh) * geometric_sum_inverse(ring, c);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(key, std::move(g)).first->second;
}

unsigned surrogate_multiplier(unsigned p, long delta) {
  require_odd_prime(p);
  const long pm1 = static_cast<long>(p) - 1;
  const unsigned long e = static_cast<unsigned long>(((delta + 1) % pm1 + pm1) % pm1);
  for (unsigned c = 2; c < p; ++c) {
    if (pow_mod_small(c, e, p) != 1) return c;
  }
  throw DomainError("no multiplier: omega^{delta+1} is trivial");
}

RingElem iwasawa_series(const ThetaCharacter& theta, unsigned n, unsigned m,
                        const SeriesOptions& options) {
  const unsigned p = theta.prime();
  const unsigned d = theta.chi.conductor();
  const long delta = theta.delta;
  const Integer kappa = options.kappa.value_or(default_kappa(p, d));
  require_topological_generator(PadicInt(p, 2, kappa));
  if (n == 0) throw PrecisionError("iwasawa_series needs n >= 1");

  unsigned c = 0;
  RingElem source = [&] {
    if (d >= 2) {
      if (options.multiplier) throw DomainError("a multiplier applies only to d = 1");
      return f_chi(theta.chi, n, m + 1);
    }
    c = options.multiplier.value_or(surrogate_multiplier(p, delta));
    require_multiplier(p, c, delta);
    return g_c_surrogate(p, c, n, m + 1);
  }();
  RingElem g = op_Gamma(op_gamma(op_U(source), -delta), delta, kappa);
  if (d == 1) {
    const QuotientRing& ring = g.ring();
    Integer e = 0;
    if (m > 0) {
      e = kappa_exponent(PadicInt(p, m + 1, Integer(c)), PadicInt(p, m + 1, kappa), m).value();
    }
    const Integer coef = (Integer(c) * teichmuller(Integer(c), p, n).pow(delta).value());
    const RingElem factor = RingElem::one(ring) - RingElem::x_power(ring, e) * coef;
    g = g * invert_unit(factor);
  }
  return substitute_exp(g, Integer(-1));
}

LambdaBounds bounds(unsigned p, unsigned d) {
  require_odd_prime(p);
  if (d == 0 || d % p == 0) throw DomainError("bounds need a conductor prime to p");
  const unsigned e = euler_phi(p - 1);
  const Integer base = Integer((p - 1) / 2) * euler_phi(d);
  LambdaBounds out;
  mpz_pow_ui(out.new_bound.get_mpz_t(), base.get_mpz_t(), e);
  const Integer ros_base = Integer(4) * p * (p - 1);
  mpz_pow_ui(out.rosenberg.get_mpz_t(), ros_base.get_mpz_t(), e);
  mpz_pow_ui(out.field.get_mpz_t(), base.get_mpz_t(), e + 1);
  out.field *= 2;
  return out;
}

std::vector<unsigned> default_check_exponents(const ThetaCharacter& theta, std::size_t count) {
  const unsigned p = theta.prime();
  unsigned k = theta.delta == 0 ? p - 1 : static_cast<unsigned>(theta.delta);
  std::vector<unsigned> out;
  for (; out.size() < count; k += p - 1) {
    if ((k + 1) % p != 0) out.push_back(k);
  }
  return out;
}

std::vector<InterpolationCheck> interpolation_selfcheck(const ThetaCharacter& theta,
                                                        const RingElem& f,
                                                        const std::vector<unsigned>& ks,
                                                        unsigned n,
                                                        const std::optional<Integer>& kappa) {
  const unsigned p = theta.prime();
  const QuotientRing& ring = f.ring();
  if (ring.p != p) throw ContextMismatch("interpolation_selfcheck: primes differ");
  const unsigned prec = std::min({n, ring.n, ring.m + 1});
  if (prec == 0) throw PrecisionError("interpolation_selfcheck needs precision >= 1");
  const Integer k0 = kappa.value_or(default_kappa(p, theta.chi.conductor()));
  const PadicInt kp(p, prec, k0);
  std::vector<InterpolationCheck> out;
  for (unsigned k : ks) {
    if (static_cast<long>(k % (p - 1)) != theta.delta) {
      throw DomainError("interpolation check needs k = delta mod p-1; got k=" + std::to_string(k));
    }
    InterpolationCheck check;
    check.k = k;
    check.precision = prec;
    const PadicInt t = kp.pow(-Integer(k)) - PadicInt(p, prec, 1);
    check.series_value = evaluate(f, t);
    try {
      check.l_value = lp_value(theta, k, prec);
    } catch (const ResourceLimit& e) {
      check.skipped = true;
      check.note = e.what();
      out.push_back(std::move(check));
      continue;
    }
    check.pass = (*check.series_value == *check.l_value);
    if (!check.pass) check.note = "series and L-value differ";
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<InterpolationCheck> interpolation_selfcheck(const ThetaCharacter& theta,
                                                        const std::vector<unsigned>& ks,
                                                        unsigned n, unsigned m) {
  return interpolation_selfcheck(theta, iwasawa_series(theta, n, m), ks, n);
}

bool IwasawaSeriesReport::checks_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InterpolationCheck& c) { return c.skipped || c.pass; });
}

IwasawaSeriesReport iwasawa_invariants(const ThetaCharacter& theta, unsigned m_max,
                                       const InvariantsOptions& options) {
  const unsigned p = theta.prime();
  const unsigned d = theta.chi.conductor();
  IwasawaSeriesReport report{.theta = theta, .kappa = default_kappa(p, d)};
  report.n = options.n;
  report.bounds = bounds(p, d);
  report.new_below_rosenberg = report.bounds.new_bound < report.bounds.rosenberg;
  unsigned m = std::max(1u, options.m_start);
  while (m <= m_max) {
    if (prime_power(p, m) > Integer(static_cast<unsigned long>(options.level_cap))) {
      report.note = "level cap reached at m=" + std::to_string(m);
      break;
    }
    std::optional<RingElem> f;
    try {
      f = iwasawa_series(theta, options.n, m);
    } catch (const ResourceLimit& e) {
      report.note = e.what();
      break;
    }
    report.levels_tried.push_back(m);
    report.invariants = invariants(*f);
    report.series = std::move(f);
    report.m = m;
    if (report.invariants.certified() || m == m_max) break;
    m = std::min(2 * m, m_max);
  }
  if (report.certified()) {
    report.lambda_below_new = Integer(*report.invariants.lambda) < report.bounds.new_bound;
  }
  if (report.series && options.check_count > 0) {
    report.checks = interpolation_selfcheck(
        theta, *report.series, default_check_exponents(theta, options.check_count), options.n);
  }
  return report;
}

LambdaSumReport lambda_sum_cyclotomic(unsigned p, unsigned m_max, const InvariantsOptions& options,
                                      unsigned threads) {
  const auto thetas = enumerate_even_theta(p, 1);
  std::vector<std::optional<IwasawaSeriesReport>> slots(thetas.size());
  std::vector<std::exception_ptr> errors(thetas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < thetas.size(); i = next++) {
      try {
        slots[i] = iwasawa_invariants(thetas[i], m_max, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, thetas.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  LambdaSumReport out;
  out.p = p;
  bool all = true;
  unsigned total = 0;
  for (auto& s : slots) {
    if (s->certified()) {
      total += *s->invariants.lambda;
    } else {
      all = false;
    }
    out.per_theta.push_back(std::move(*s));
  }
  if (all) out.total = total;
  return out;
}

RatFuncFp f_chi_reduced(const DirichletCharacter& chi) {
  const unsigned p = chi.prime();
  const unsigned d = chi.conductor();
  if (d < 2) throw DomainError("f_chi_reduced needs conductor d >= 2");
  std::vector<long> num(d + 1, 0);
  for (unsigned a = 1; a <= d; ++a) num[a] = static_cast<long>(mpz_get_si(chi.value(Integer(a), 1).get_mpz_t()));
  std::vector<long> den(d + 1, 0);
  den[0] = 1;
  den[d] = -1;
  return RatFuncFp(taylor_shift(FpPoly(p, num), 1), taylor_shift(FpPoly(p, den), 1));
}

RatFuncZp g_c_rational(unsigned p, unsigned c) {
  const IntPoly h = surrogate_numerator(c);
  std::vector<mpq_class> num(h.size() + 1, 0);
  for (std::size_t i = 0; i < h.size(); ++i) num[i + 1] = mpq_class(h[i]);
  std::vector<mpq_class> den(c, 1);
  return RatFuncZp(p, taylor_shift(QPoly(num), 1), taylor_shift(QPoly(den), 1));
}

PseudoRationalReport not_pseudorational_report(const DirichletCharacter& chi, long delta) {
  const unsigned p = chi.prime();
  const ThetaCharacter theta = ThetaCharacter::make(chi, delta);
  const bool cyclotomic = chi.conductor() == 1;
  const RatFuncFp F = cyclotomic ? g_c_rational(p, 2).reduce_mod_p() : f_chi_reduced(chi);
  const FpPoly expected = cyclotomic
                              ? FpPoly(p, {2, 1})
                              : taylor_shift(cyclotomic_fp(p, chi.conductor()), 1).monic();
  CriterionResult crit = sym_poly_criterion(F, theta.delta);
  const bool matches = F.den() == expected;
  const bool fails = !crit.holds;
  return PseudoRationalReport{cyclotomic ? "G_c" : "F_chi",
                              cyclotomic ? 2u : 0u,
                              F,
                              expected,
                              matches,
                              std::move(crit),
                              fails};
}

}  // namespace iwasawa
