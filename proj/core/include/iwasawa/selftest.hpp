#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/pseudo.hpp"
#include "iwasawa/ring.hpp"

namespace iwasawa {

// Uniform element of R(n, m) in the monomial basis.
RingElem random_ring_elem(const QuotientRing& ring, std::mt19937_64& gen);
// Pseudo-polynomial with `terms` exact exponents drawn from [-bound, bound].
PseudoPoly random_pseudo_poly(unsigned p, unsigned n, unsigned M, std::size_t terms,
                              long bound, std::mt19937_64& gen);

struct IdentityResult {
  std::string name;
  unsigned n = 0;
  unsigned m = 0;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

struct SelftestReport {
  unsigned p = 0;
  std::uint64_t seed = 0;
  std::vector<IdentityResult> results;

  bool pass() const;
};

// Operator identities on random ring elements and pseudo-polynomials:
// U^2 = U, DU = UD, gamma idempotent and orthogonal, sum gamma = Id,
// gamma U = U gamma, D gamma_delta = gamma_{delta+1} D.
SelftestReport run_selftest(unsigned p, std::uint64_t seed, std::size_t cases = 100,
                            const std::vector<std::pair<unsigned, unsigned>>& levels = {
                                {1, 2}, {2, 2}, {2, 3}});

}  // namespace iwasawa
