#include <gtest/gtest.h>

#include "iwasawa/ring.hpp"
#include "oracles.hpp"

using namespace iwasawa;

namespace {

// sum_{i+j=n} omega_i p^j delta_j, rebuilt with the oracle's arithmetic.
oracle::Poly recombine(unsigned n, unsigned p, const std::vector<IntPoly>& deltas) {
  oracle::Poly acc;
  for (unsigned j = 0; j <= n; ++j) {
    oracle::Poly term = oracle::mul(oracle::omega(p, n - j), deltas[j]);
    for (auto& c : term) c *= oracle::pp(p, j);
    acc = oracle::add(acc, term);
  }
  return acc;
}

oracle::Poly t_power(unsigned long e) {
  oracle::Poly t(e + 1, 0);
  t[e] = 1;
  return t;
}

}  // namespace

TEST(Decompose, LevelZeroIsTrivial) {
  const auto d = decompose_T_power(0, 5);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], (IntPoly{1}));
}

TEST(Decompose, IdentityHoldsExactly) {
  for (unsigned p : {3u, 5u}) {
    for (unsigned n = 0; n <= 2; ++n) {
      const auto d = decompose_T_power(n, p);
      ASSERT_EQ(d.size(), n + 1);
      EXPECT_TRUE(decomposition_residual(n, p, d).empty()) << "p=" << p << " n=" << n;
      EXPECT_EQ(recombine(n, p, d), t_power(oracle::pp(p, n).get_ui())) << "p=" << p << " n=" << n;
    }
  }
  const auto d3 = decompose_T_power(3, 3);
  EXPECT_EQ(recombine(3, 3, d3), t_power(27));
}

TEST(Decompose, ResidualDetectsCorruption) {
  auto d = decompose_T_power(1, 3);
  d[1] = intpoly::add(d[1], IntPoly{0, 1});
  EXPECT_FALSE(decomposition_residual(1, 3, d).empty());
}

TEST(Decompose, PowerOfTLiesInTheIdeal) {
  for (unsigned p : {3u, 5u}) {
    for (unsigned n = 1; n <= 4; ++n) {
      const unsigned h = n / 2;
      const QuotientRing r(p, std::max(h, 1u) + 1, h + 1);
      const RingElem t = RingElem::from_polynomial(r, t_power(oracle::pp(p, n).get_ui()));
      EXPECT_TRUE(ideal_zero(t, h, h + 1)) << "p=" << p << " n=" << n;
    }
  }
}
