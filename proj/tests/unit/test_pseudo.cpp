#include <gtest/gtest.h>

#include <random>

#include "iwasawa/errors.hpp"
#include "iwasawa/pseudo.hpp"
#include "iwasawa/selftest.hpp"
#include "oracles.hpp"
#include "printers.hpp"

using namespace iwasawa;

namespace {

PseudoPoly single(unsigned p, unsigned n, unsigned M, long c, long a) {
  return PseudoPoly::from_terms(p, n, M, {{Integer(c), Integer(a)}});
}

}  // namespace

TEST(PseudoPoly, MergesByResidueAndDropsZeros) {
  PseudoPoly P = PseudoPoly::from_terms(5, 2, 2, {{1, 3}, {24, 3}, {2, 7}});
  EXPECT_EQ(P.size(), 1u);
  EXPECT_FALSE(P.lossy());
  P.add_exact_term(1, 32);
  EXPECT_EQ(P.size(), 1u);
  EXPECT_TRUE(P.lossy());
  EXPECT_EQ(P.terms()[0].coeff, 3);
  EXPECT_THROW(P.add_term(1, PadicInt(5, 1, 2)), PrecisionError);
  EXPECT_THROW(P + PseudoPoly(5, 3, 2), ContextMismatch);
}

TEST(EqualTest, Examples) {
  std::mt19937_64 gen(51);
  const PseudoPoly P = random_pseudo_poly(5, 3, 4, 6, 1000, gen);
  EXPECT_EQ(equal_test(P, P, 3), Equality::equal);
  // (1+T)^a + (1+T)^{a+p^2} vs 2(1+T)^a with exponents mod p^2: a merge collision.
  const PseudoPoly collided = PseudoPoly::from_terms(5, 3, 2, {{1, 7}, {1, 32}});
  const PseudoPoly doubled = single(5, 3, 2, 2, 7);
  EXPECT_EQ(equal_test(collided, doubled, 3), Equality::indecisive);
  const PseudoPoly fine_a = PseudoPoly::from_terms(5, 3, 3, {{1, 7}, {1, 32}});
  EXPECT_EQ(equal_test(fine_a, single(5, 3, 3, 2, 7), 3), Equality::unequal);
  const PseudoPoly distinct = PseudoPoly::from_terms(5, 3, 3, {{5, 1}, {1, 2}, {25, 3}});
  EXPECT_EQ(equal_test(distinct, PseudoPoly(5, 3, 3), 3), Equality::unequal);
  EXPECT_EQ(equal_test(distinct * Integer(25), PseudoPoly(5, 3, 3), 1), Equality::equal);
  EXPECT_THROW(equal_test(P, P, 4), PrecisionError);
}

TEST(EqualTest, AgreesWithRingMembership) {
  // Decisive answers coincide with membership in (p^n, omega_{N+1}) at a level
  // that separates every exponent.
  std::mt19937_64 gen(52);
  int decisive = 0;
  for (int i = 0; i < 60; ++i) {
    PseudoPoly P = random_pseudo_poly(3, 2, 4, 5, 200, gen);
    PseudoPoly Q = (i % 3 == 0) ? P + random_pseudo_poly(3, 2, 4, 3, 200, gen) * Integer(9) : P;
    if (i % 3 == 1) Q = random_pseudo_poly(3, 2, 4, 5, 200, gen);
    const Equality e = equal_test(P, Q, 2);
    if (e == Equality::indecisive) continue;
    const RingElem diff = to_ring(P - Q, 2, 4);
    EXPECT_EQ(e == Equality::equal, diff.is_zero());
    ++decisive;
  }
  EXPECT_GT(decisive, 20);
}

TEST(ToRing, Examples) {
  EXPECT_EQ(to_ring(single(5, 2, 2, 1, 0), 2, 2), RingElem::one({5, 2, 2}));
  EXPECT_EQ(to_ring(single(5, 2, 2, 1, 25), 2, 2), RingElem::one({5, 2, 2}));
  EXPECT_EQ(to_ring(single(5, 2, 2, 3, -1), 2, 2), RingElem::x_power({5, 2, 2}, -1) * Integer(3));
  EXPECT_THROW(to_ring(single(5, 2, 1, 1, 0), 2, 2), PrecisionError);
  EXPECT_THROW(to_ring(single(5, 2, 2, 1, 0), 3, 2), PrecisionError);
}

TEST(ToRing, MatchesSubstitutionOracle) {
  std::mt19937_64 gen(53);
  for (int i = 0; i < 20; ++i) {
    const PseudoPoly P = random_pseudo_poly(5, 2, 3, 4, 400, gen);
    oracle::Poly acc;
    for (const auto& t : P.terms()) {
      oracle::Poly term = oracle::one_plus_T_pow(t.exponent.get_ui());
      for (auto& c : term) c *= t.coeff;
      acc = oracle::add(acc, term);
    }
    EXPECT_EQ(to_ring(P, 2, 2).monomial_coeffs(), oracle::reduce(acc, 5, 2, 2));
  }
}

TEST(OperatorApply, Examples) {
  EXPECT_TRUE(operator_apply(single(5, 2, 2, 1, 0), PseudoOperator::U).is_zero());
  const PseudoPoly d = operator_apply(single(5, 3, 3, 1, 7), PseudoOperator::D);
  EXPECT_EQ(d.coeff_precision(), 3u);
  EXPECT_EQ(equal_test(d, single(5, 3, 3, 7, 7), 3), Equality::equal);
  std::mt19937_64 gen(54);
  const PseudoPoly P = random_pseudo_poly(5, 2, 3, 5, 300, gen);
  const PseudoPoly gg = operator_apply(operator_apply(P, PseudoOperator::gamma, 1),
                                       PseudoOperator::gamma, 2);
  EXPECT_TRUE(gg.is_zero());
}

TEST(OperatorApply, CommutesWithReduction) {
  std::mt19937_64 gen(55);
  for (unsigned p : {3u, 5u, 7u}) {
    for (int i = 0; i < 20; ++i) {
      const unsigned n = 1 + static_cast<unsigned>(gen() % 3);
      const unsigned m = 1 + static_cast<unsigned>(gen() % 2);
      const unsigned M = m + static_cast<unsigned>(gen() % 2);
      const PseudoPoly P = random_pseudo_poly(p, n, M, 6, 500, gen);
      const RingElem f = to_ring(P, n, m);
      EXPECT_EQ(to_ring(operator_apply(P, PseudoOperator::U), n, m), op_U(f));
      const long delta = static_cast<long>(gen() % (p - 1));
      EXPECT_EQ(to_ring(operator_apply(P, PseudoOperator::gamma, delta), n, m), op_gamma(f, delta));
      const PseudoPoly dP = operator_apply(P, PseudoOperator::D);
      const unsigned nd = std::min(n, m);
      EXPECT_EQ(to_ring(dP, nd, m), op_D(f));
    }
  }
}

TEST(GammaPseudo, Examples) {
  const Integer kappa = 6;
  EXPECT_TRUE(Gamma_pseudo(single(5, 2, 3, 1, 0), 0, kappa, 2).is_zero());
  const PseudoPoly g = Gamma_pseudo(single(5, 2, 3, 1, 6), 3, kappa, 2);
  EXPECT_EQ(equal_test(g, single(5, 2, 2, 1, 1), 2), Equality::equal);
  EXPECT_THROW(Gamma_pseudo(single(5, 2, 2, 1, 6), 0, kappa, 2), PrecisionError);
}

TEST(GammaPseudo, MatchesRingGamma) {
  std::mt19937_64 gen(56);
  for (unsigned p : {3u, 5u, 7u}) {
    const Integer kappa = 1 + Integer(p);
    for (int i = 0; i < 20; ++i) {
      const unsigned n = 1 + static_cast<unsigned>(gen() % 3);
      const unsigned m = 1 + static_cast<unsigned>(gen() % 3);
      const long delta = static_cast<long>(gen() % (p - 1));
      const PseudoPoly P = random_pseudo_poly(p, n, m, 6, 2000, gen);
      EXPECT_EQ(to_ring(Gamma_pseudo(P, delta, kappa, m - 1), n, m - 1),
                op_Gamma(to_ring(P, n, m), delta, kappa));
    }
  }
}

TEST(GammaPseudo, FactorsThroughGammaU) {
  std::mt19937_64 gen(57);
  for (unsigned p : {3u, 5u, 7u}) {
    const Integer kappa = 1 + Integer(p);
    for (int i = 0; i < 20; ++i) {
      const long delta = static_cast<long>(gen() % (p - 1));
      const PseudoPoly P = random_pseudo_poly(p, 2, 3, 6, 2000, gen);
      const PseudoPoly reduced =
          operator_apply(operator_apply(P, PseudoOperator::U), PseudoOperator::gamma, -delta);
      EXPECT_EQ(equal_test(Gamma_pseudo(reduced, delta, kappa, 2),
                           Gamma_pseudo(P, delta, kappa, 2), 2),
                Equality::equal);
    }
  }
}

TEST(InterpCheck, Examples) {
  EXPECT_TRUE(interp_check(single(5, 3, 3, 4, 0), 0, PadicInt(5, 3, 7), 2));
  for (long a : {1L, 2L, 7L, 13L}) {
    for (long delta = 0; delta < 4; ++delta) {
      EXPECT_TRUE(interp_check(single(5, 3, 3, 1, a), delta, PadicInt(5, 3, 11), 2));
    }
  }
  EXPECT_THROW(interp_check(single(5, 2, 3, 1, 1), 0, PadicInt(5, 3, 1), 2), PrecisionError);
}

TEST(InterpCheck, RandomSuites) {
  std::mt19937_64 gen(58);
  for (unsigned p : {3u, 5u, 7u}) {
    for (int i = 0; i < 30; ++i) {
      const unsigned M = 4;
      const PseudoPoly P = random_pseudo_poly(p, M, M, 6, 5000, gen);
      const long delta = static_cast<long>(gen() % (p - 1));
      const PadicInt s(p, M, oracle::random_below(oracle::pp(p, M), gen));
      for (unsigned j = 0; j + 1 < M; ++j) EXPECT_TRUE(interp_check(P, delta, s, j));
      Integer k = (p - 1) * Integer(static_cast<unsigned long>(gen() % 50)) + delta;
      for (unsigned j = 0; j + 1 < M; ++j) EXPECT_TRUE(interp_check(P, delta, PadicInt(p, M, k), j));
    }
  }
}
