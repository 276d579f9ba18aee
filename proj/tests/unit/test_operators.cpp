#include <gtest/gtest.h>

#include <random>

#include "iwasawa/errors.hpp"
#include "iwasawa/ring.hpp"
#include "iwasawa/selftest.hpp"
#include "oracles.hpp"
#include "printers.hpp"

using namespace iwasawa;

namespace {

const std::vector<QuotientRing> kRings = {{3, 2, 2}, {5, 2, 2}, {5, 3, 2}, {7, 3, 2}, {3, 3, 3}};

Integer kappa_for(unsigned p) { return Integer(1 + p); }

RingElem twist_factor(const QuotientRing& target, unsigned a, long delta, const Integer& kappa) {
  const unsigned p = target.p;
  const long e = ((delta % static_cast<long>(p - 1)) + (p - 1)) % (p - 1);
  Integer w = oracle::teichmuller(a, p, target.n);
  mpz_powm_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(e),
              oracle::pp(p, target.n).get_mpz_t());
  const auto exp = oracle::kappa_log(a, kappa, p, target.m);
  return RingElem::x_power(target, Integer(*exp)) * w;
}

}  // namespace

TEST(SubstituteExp, MatchesCompositionOracle) {
  std::mt19937_64 gen(31);
  for (const auto& r : kRings) {
    for (unsigned long a : {0ul, 1ul, 2ul, 4ul, 7ul, 11ul}) {
      const RingElem f = random_ring_elem(r, gen);
      EXPECT_EQ(substitute_exp(f, Integer(a)).monomial_coeffs(),
                oracle::compose_power(f.monomial_coeffs(), a, r.p, r.n, r.m))
          << r.to_string() << " a=" << a;
    }
  }
}

TEST(SubstituteExp, Examples) {
  const QuotientRing r(5, 2, 2);
  std::mt19937_64 gen(32);
  const RingElem f = random_ring_elem(r, gen);
  EXPECT_EQ(substitute_exp(f, 1), f);
  EXPECT_EQ(substitute_exp(RingElem::x_power(r, 2), -1), RingElem::x_power(r, 23));
  EXPECT_THROW(substitute_exp(f, PadicInt(5, 1, 2)), PrecisionError);
  EXPECT_THROW(substitute_exp(f, PadicInt(7, 3, 2)), ContextMismatch);
}

TEST(SubstituteExp, Composes) {
  std::mt19937_64 gen(33);
  for (const auto& r : kRings) {
    for (int i = 0; i < 10; ++i) {
      const RingElem f = random_ring_elem(r, gen);
      const Integer a = oracle::random_below(1000, gen);
      const Integer b = oracle::random_below(1000, gen);
      EXPECT_EQ(substitute_exp(substitute_exp(f, a), b), substitute_exp(f, a * b));
    }
  }
}

TEST(OpD, Examples) {
  const QuotientRing r(5, 3, 2);
  const QuotientRing target(5, 2, 2);
  EXPECT_EQ(op_D(RingElem::variable(r)), RingElem::x_power(target, 1));
  EXPECT_EQ(op_D(RingElem::x_power(r, 7)), RingElem::x_power(target, 7) * Integer(7));
  EXPECT_EQ(op_D(RingElem::one(r)).ring(), target);
}

TEST(OpD, MatchesDerivationOracle) {
  std::mt19937_64 gen(34);
  for (const auto& r : kRings) {
    for (int i = 0; i < 10; ++i) {
      const RingElem f = random_ring_elem(r, gen);
      EXPECT_EQ(op_D(f).monomial_coeffs(),
                oracle::derivation(f.monomial_coeffs(), r.p, std::min(r.n, r.m), r.m));
    }
  }
}

TEST(OpU, Examples) {
  const QuotientRing r(5, 2, 2);
  EXPECT_TRUE(op_U(RingElem::one(r)).is_zero());
  EXPECT_EQ(op_U(RingElem::x_power(r, 1)), RingElem::x_power(r, 1));
  EXPECT_TRUE(op_U(RingElem::x_power(r, 10)).is_zero());
}

TEST(OpU, MatchesTraceFormula) {
  // U(F) = F - sum over the p-th roots of unity, realized as sigma_{1+p^{m-1}j} averages.
  std::mt19937_64 gen(35);
  for (const auto& r : kRings) {
    for (int i = 0; i < 10; ++i) {
      const RingElem f = random_ring_elem(r, gen);
      const auto b = f.binomial_coeffs();
      std::vector<Integer> expected(b.size(), 0);
      for (std::size_t a = 0; a < b.size(); ++a) {
        if (a % r.p != 0) expected[a] = b[a];
      }
      EXPECT_EQ(op_U(f), RingElem(r, RingElem::Basis::binomial, expected));
    }
  }
}

TEST(OpGamma, GammaZeroExample) {
  const QuotientRing r(5, 1, 1);
  const RingElem got = op_gamma(RingElem::x_power(r, 1), 0);
  EXPECT_EQ(got.binomial_coeffs(), (std::vector<Integer>{0, 4, 4, 4, 4}));
}

TEST(OpGamma, MatchesDefinitionOracle) {
  std::mt19937_64 gen(36);
  for (const auto& r : kRings) {
    const Integer M = oracle::pp(r.p, r.n);
    const unsigned prec = std::max(r.n, r.m);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(r.p - 1).get_mpz_t(), M.get_mpz_t());
    for (long delta = 0; delta < static_cast<long>(r.p - 1); ++delta) {
      const RingElem f = random_ring_elem(r, gen);
      RingElem acc = RingElem::zero(r);
      for (unsigned eta_root = 1; eta_root < r.p; ++eta_root) {
        const Integer eta = oracle::teichmuller(eta_root, r.p, prec);
        Integer w;
        mpz_powm_ui(w.get_mpz_t(), eta.get_mpz_t(), static_cast<unsigned long>(delta),
                    M.get_mpz_t());
        const auto poly = oracle::compose_power(f.monomial_coeffs(), eta.get_ui(), r.p, r.n, r.m);
        acc += RingElem::from_polynomial(r, poly) * w;
      }
      EXPECT_EQ(op_gamma(f, delta), acc * inv) << r.to_string() << " delta=" << delta;
    }
  }
}

TEST(OpGammaCap, Examples) {
  for (const auto& r : kRings) {
    const Integer kappa = kappa_for(r.p);
    const QuotientRing target = r.with_level(r.m - 1);
    EXPECT_TRUE(op_Gamma(RingElem::one(r), 0, kappa).is_zero());
    EXPECT_EQ(op_Gamma(RingElem::x_power(r, kappa), 1, kappa), RingElem::x_power(target, 1));
    EXPECT_EQ(op_Gamma(RingElem::one(r), 0, kappa).ring(), target);
  }
  EXPECT_THROW(op_Gamma(RingElem::one({5, 2, 0}), 0, 6), DomainError);
  EXPECT_THROW(op_Gamma(RingElem::one({5, 2, 2}), 0, 7), DomainError);
}

TEST(OpGammaCap, ExpandsTermByTerm) {
  std::mt19937_64 gen(37);
  for (const auto& r : kRings) {
    const Integer kappa = kappa_for(r.p);
    const QuotientRing target = r.with_level(r.m - 1);
    for (long delta : {0L, 1L, static_cast<long>(r.p) - 2}) {
      const RingElem f = random_ring_elem(r, gen);
      const auto b = f.binomial_coeffs();
      RingElem expected = RingElem::zero(target);
      for (std::size_t a = 1; a < b.size(); ++a) {
        if (a % r.p == 0) continue;
        expected += twist_factor(target, static_cast<unsigned>(a), delta, kappa) * b[a];
      }
      EXPECT_EQ(op_Gamma(f, delta, kappa), expected) << r.to_string() << " delta=" << delta;
    }
  }
}

TEST(OpGammaCap, FactorsThroughGammaU) {
  std::mt19937_64 gen(38);
  for (const auto& r : kRings) {
    const Integer kappa = kappa_for(r.p);
    for (int i = 0; i < 10; ++i) {
      const RingElem f = random_ring_elem(r, gen);
      const long delta = static_cast<long>(gen() % (r.p - 1));
      EXPECT_EQ(op_Gamma(op_gamma(op_U(f), -delta), delta, kappa), op_Gamma(f, delta, kappa));
    }
  }
}

TEST(OpGammaCap, TwistIdentity) {
  std::mt19937_64 gen(39);
  for (const auto& r : kRings) {
    const Integer kappa = kappa_for(r.p);
    const QuotientRing target = r.with_level(r.m - 1);
    for (int i = 0; i < 10; ++i) {
      const RingElem f = random_ring_elem(r, gen);
      const long delta = static_cast<long>(gen() % (r.p - 1));
      unsigned a = static_cast<unsigned>(gen() % r.size());
      if (a % r.p == 0) a += 1;
      EXPECT_EQ(op_Gamma(substitute_exp(f, Integer(a)), delta, kappa),
                twist_factor(target, a, delta, kappa) * op_Gamma(f, delta, kappa));
    }
  }
}

TEST(ChangeKappa, MatchesDirectComputation) {
  std::mt19937_64 gen(40);
  for (const auto& r : kRings) {
    const Integer kappa = kappa_for(r.p);
    const Integer kappa_prime = 1 + 2 * Integer(r.p) + Integer(r.p) * r.p;
    for (int i = 0; i < 10; ++i) {
      const RingElem f = random_ring_elem(r, gen);
      const long delta = static_cast<long>(gen() % (r.p - 1));
      const RingElem g = op_Gamma(f, delta, kappa);
      EXPECT_EQ(change_kappa(g, kappa, kappa), g);
      EXPECT_EQ(change_kappa(g, kappa, kappa_prime), op_Gamma(f, delta, kappa_prime));
      const auto before = invariants(g);
      const auto after = invariants(change_kappa(g, kappa, kappa_prime));
      EXPECT_EQ(before.verdict, after.verdict);
      EXPECT_EQ(before.mu, after.mu);
      EXPECT_EQ(before.lambda, after.lambda);
    }
  }
  EXPECT_THROW(change_kappa(RingElem::one({5, 2, 1}), 6, 2), DomainError);
}

TEST(OpGammaCap, EquivalenceWithGammaU) {
  std::mt19937_64 gen(41);
  for (const auto& r : kRings) {
    const Integer kappa = kappa_for(r.p);
    int zero_cases = 0;
    int nonzero_cases = 0;
    for (int i = 0; i < 60; ++i) {
      const long delta = static_cast<long>(gen() % (r.p - 1));
      const unsigned n1 = 1 + static_cast<unsigned>(gen() % r.n);
      const unsigned m1 = 1 + static_cast<unsigned>(gen() % r.m);
      RingElem f = random_ring_elem(r, gen);
      if (i % 2 == 0) {
        // Kill the relevant component modulo (p^{n1}, omega_{m1}).
        const RingElem w = RingElem::from_polynomial(r, oracle::omega(r.p, m1));
        f = f - op_gamma(op_U(f), -delta) + w * random_ring_elem(r, gen) +
            random_ring_elem(r, gen) * oracle::pp(r.p, n1);
        if (i % 4 == 0) f += RingElem::x_power(r, 1) * oracle::pp(r.p, n1 - 1);
      }
      const bool lhs = ideal_zero(op_Gamma(f, delta, kappa), n1, m1 - 1);
      const bool rhs = ideal_zero(op_gamma(op_U(f), -delta), n1, m1);
      EXPECT_EQ(lhs, rhs) << r.to_string() << " n'=" << n1 << " m'=" << m1;
      (lhs ? zero_cases : nonzero_cases) += 1;
    }
    EXPECT_GT(zero_cases, 0);
    EXPECT_GT(nonzero_cases, 0);
  }
}

TEST(OpGammaCap, ThresholdRelation) {
  std::mt19937_64 gen(42);
  for (const auto& r : kRings) {
    const Integer kappa = kappa_for(r.p);
    for (unsigned N = 1; N < r.m; ++N) {
      const RingElem w = RingElem::from_polynomial(r, oracle::omega(r.p, N));
      for (int i = 0; i < 20; ++i) {
        const long delta = static_cast<long>(gen() % (r.p - 1));
        RingElem f = random_ring_elem(r, gen);
        if (i % 2 == 0) f = w * f + random_ring_elem(r, gen) * Integer(r.p);
        const auto small = invariants(op_gamma(op_U(f), -delta));
        const auto big = invariants(op_Gamma(f, delta, kappa));
        const Integer pN = oracle::pp(r.p, N);
        const bool lhs = !big.certified() || Integer(*big.lambda) >= pN / r.p;
        const bool rhs = !small.certified() || Integer(*small.lambda) >= pN;
        EXPECT_EQ(lhs, rhs) << r.to_string() << " N=" << N;
        EXPECT_EQ(ideal_zero(op_Gamma(f, delta, kappa), 1, N - 1),
                  ideal_zero(op_gamma(op_U(f), -delta), 1, N));
        if (small.certified() && big.certified()) EXPECT_EQ(*small.mu, *big.mu);
      }
    }
  }
}

TEST(Evaluate, Examples) {
  const QuotientRing r(5, 3, 2);
  const PadicInt t(5, 3, 10);
  EXPECT_EQ(evaluate(RingElem::variable(r), t), t);
  const Integer kappa = 6;
  for (unsigned long s : {1ul, 3ul, 17ul}) {
    Integer ks;
    mpz_powm_ui(ks.get_mpz_t(), kappa.get_mpz_t(), s, oracle::pp(5, 3).get_mpz_t());
    const PadicInt tt(5, 3, ks - 1);
    Integer expect;
    mpz_powm_ui(expect.get_mpz_t(), kappa.get_mpz_t(), 7 * s, oracle::pp(5, 3).get_mpz_t());
    EXPECT_EQ(evaluate(RingElem::x_power(r, 7), tt).value(), expect);
  }
  const QuotientRing big(5, 4, 3);
  const RingElem w = RingElem::from_polynomial(big, oracle::omega(5, 2));
  const auto v = evaluate(w, PadicInt(5, 4, 5));
  EXPECT_EQ(v.precision(), 4u);
  EXPECT_EQ(v.value() % 125, 0);
  EXPECT_THROW(evaluate(RingElem::variable(r), PadicInt(5, 3, 2)), DomainError);
}

TEST(DkAtZero, Examples) {
  const QuotientRing r(5, 3, 3);
  EXPECT_EQ(dk_at_zero(RingElem::x_power(r, 7), 3).value(), oracle::mod(343, 125));
  std::mt19937_64 gen(43);
  const RingElem f = random_ring_elem(r, gen);
  EXPECT_EQ(dk_at_zero(f, 0).value(), f.constant_term());
  const RingElem g = RingElem::x_power(r, 2) * Integer(3) + RingElem::x_power(r, 11);
  EXPECT_EQ(dk_at_zero(g, 4).value(), oracle::mod(3 * 16 + 14641, 125));
  EXPECT_THROW(dk_at_zero(f, -1), DomainError);
}

TEST(KIndex, Examples) {
  EXPECT_EQ(k_index(PadicInt(5, 1, 0), 0, 0), 20);
  std::mt19937_64 gen(44);
  for (unsigned p : {3u, 5u, 7u, 13u}) {
    for (int i = 0; i < 30; ++i) {
      const Integer s = oracle::random_below(oracle::pp(p, 6), gen);
      const long delta = static_cast<long>(gen() % (p - 1));
      const PadicInt sp(p, 6, s);
      Integer prev = -1;
      for (unsigned n = 0; n < 5; ++n) {
        const Integer k = k_index(sp, delta, n);
        EXPECT_EQ(oracle::mod(k - delta, p - 1), 0);
        EXPECT_EQ(oracle::mod(k - s, oracle::pp(p, n + 1)), 0);
        EXPECT_GT(k, prev);
        prev = k;
      }
    }
  }
  EXPECT_THROW(k_index(PadicInt(5, 1, 0), 0, 1), PrecisionError);
}

TEST(Interpolation, GammaMatchesDerivativesAtZero) {
  std::mt19937_64 gen(45);
  for (const auto& r : kRings) {
    const Integer kappa = kappa_for(r.p);
    const unsigned top = std::min(r.n, r.m);
    for (int i = 0; i < 10; ++i) {
      const RingElem f = random_ring_elem(r, gen);
      const long delta = static_cast<long>(gen() % (r.p - 1));
      const RingElem g = op_Gamma(f, delta, kappa);
      const Integer s = oracle::random_below(oracle::pp(r.p, r.m + 2), gen);
      Integer ks;
      mpz_powm(ks.get_mpz_t(), kappa.get_mpz_t(), s.get_mpz_t(),
               oracle::pp(r.p, r.n + 1).get_mpz_t());
      const PadicInt lhs = evaluate(g, PadicInt(r.p, r.n + 1, ks - 1));
      for (unsigned j = 0; j + 1 < top; ++j) {
        const Integer k = k_index(PadicInt(r.p, r.m + 2, s), delta, j);
        const PadicInt rhs = dk_at_zero(f, k);
        const Integer M = oracle::pp(r.p, j + 1);
        EXPECT_EQ(oracle::mod(lhs.value() - rhs.value(), M), 0)
            << r.to_string() << " j=" << j << " s=" << s;
      }
    }
  }
}
