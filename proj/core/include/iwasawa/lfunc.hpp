#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/characters.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/ratfun.hpp"
#include "iwasawa/ring.hpp"

namespace iwasawa {

// kappa = 1 + p d.
Integer default_kappa(unsigned p, unsigned d);

// Inverse of sum_{i<c} (1+T)^i in R(n, m) for p not dividing c, in the
// (1+T)^a basis. With c' = c^{-1} mod p^m and c c' = 1 + k p^m:
//   (sum_{i<c} x^i)^{-1} = sum_{j<c'} x^{j c} - (k/c) sum_{a<p^m} x^a.
RingElem geometric_sum_inverse(const QuotientRing& ring, unsigned c);

// F_chi = (sum_{a=1}^d chi(a)(1+T)^a) / (1 - (1+T)^d) in R(n, m), d >= 2.
RingElem f_chi(const DirichletCharacter& chi, unsigned n, unsigned m);

// h_c(x) = ((c-1)x^c - c x^{c-1} + 1) / (x-1)^2 as integer coefficients in x.
IntPoly surrogate_numerator(unsigned c);

// G_c = F - c sigma_c(F) for F = -(1+T)/T, i.e. x h_c(x) / sum_{i<c} x^i.
RingElem g_c_surrogate(unsigned p, unsigned c, unsigned n, unsigned m);

// Least c in [2, p-1] with c^{delta+1} != 1 mod p.
unsigned surrogate_multiplier(unsigned p, long delta);

struct SeriesOptions {
  std::optional<unsigned> multiplier;  // d = 1 only; default surrogate_multiplier
  std::optional<Integer> kappa;        // default 1 + p d
};

// f(T, theta) in R(n, m).
RingElem iwasawa_series(const ThetaCharacter& theta, unsigned n, unsigned m,
                        const SeriesOptions& options = {});

struct LambdaBounds {
  Integer new_bound;  // ((p-1)/2 phi(d))^{phi(p-1)}
  Integer rosenberg;  // (4p(p-1))^{phi(p-1)}
  Integer field;      // 2((p-1)/2 phi(d))^{phi(p-1)+1}
};
LambdaBounds bounds(unsigned p, unsigned d);

struct InterpolationCheck {
  unsigned k = 0;
  unsigned precision = 0;
  std::optional<PadicInt> series_value;  // f(kappa^{-k} - 1)
  std::optional<PadicInt> l_value;       // L_p(-k, theta)
  bool skipped = false;
  bool pass = false;
  std::string note;
};

// The first `count` exponents k >= 1 with k = delta mod p-1 and p not dividing k+1.
std::vector<unsigned> default_check_exponents(const ThetaCharacter& theta, std::size_t count);

// Compares f(kappa^{-k} - 1) with L_p(-k, theta) mod p^{min(n, f.n, f.m+1)}.
std::vector<InterpolationCheck> interpolation_selfcheck(const ThetaCharacter& theta,
                                                        const RingElem& f,
                                                        const std::vector<unsigned>& ks,
                                                        unsigned n,
                                                        const std::optional<Integer>& kappa = {});
// Builds f at (n, m) first.
std::vector<InterpolationCheck> interpolation_selfcheck(const ThetaCharacter& theta,
                                                        const std::vector<unsigned>& ks,
                                                        unsigned n, unsigned m);

struct InvariantsOptions {
  unsigned n = 2;
  unsigned m_start = 1;
  std::uint64_t level_cap = 100000;  // escalation keeps p^m <= level_cap
  std::size_t check_count = 3;       // interpolation checks on the final series
};

struct IwasawaSeriesReport {
  ThetaCharacter theta;
  Integer kappa;
  unsigned n = 0;
  unsigned m = 0;
  std::vector<unsigned> levels_tried{};
  std::optional<RingElem> series{};
  InvariantReport invariants{};
  LambdaBounds bounds{};
  bool lambda_below_new = false;       // meaningful when certified
  bool new_below_rosenberg = false;
  std::vector<InterpolationCheck> checks{};
  std::string note{};

  bool certified() const { return invariants.certified(); }
  bool checks_pass() const;
};

// Escalates m = m_start, 2 m_start, 4 m_start, ... up to m_max (p^m <= level_cap)
// until invariants certifies.
IwasawaSeriesReport iwasawa_invariants(const ThetaCharacter& theta, unsigned m_max,
                                       const InvariantsOptions& options = {});

struct LambdaSumReport {
  unsigned p = 0;
  std::vector<IwasawaSeriesReport> per_theta;  // enumerate_even_theta order
  std::optional<unsigned> total;               // set when every theta is certified
};

// Sum of lambda(theta) over the even nontrivial powers of omega; thetas run
// concurrently on up to `threads` workers (0: hardware concurrency).
LambdaSumReport lambda_sum_cyclotomic(unsigned p, unsigned m_max,
                                      const InvariantsOptions& options = {},
                                      unsigned threads = 0);

struct PseudoRationalReport {
  std::string source;             // "F_chi" or "G_c"
  unsigned multiplier = 0;        // c for the d = 1 route
  RatFuncFp reduced;              // reduction of the rational input
  FpPoly expected_denominator;    // Phi_d(1+T), or 2+T for G_2
  bool denominator_matches = false;
  CriterionResult criterion;
  bool not_pseudo_rational = false;  // criterion fails
};

// Reduced rational input (F_chi for d >= 2, G_2 for d = 1) run through
// sym_poly_criterion.
PseudoRationalReport not_pseudorational_report(const DirichletCharacter& chi, long delta);

// F_chi mod p as an element of F_p(T).
RatFuncFp f_chi_reduced(const DirichletCharacter& chi);
// G_c = x h_c(x) / sum_{i<c} x^i over Q, x = 1+T.
RatFuncZp g_c_rational(unsigned p, unsigned c);

}  // namespace iwasawa
