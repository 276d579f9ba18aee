// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iwasawa/characters.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/lfunc.hpp"
#include "iwasawa/pseudo.hpp"
#include "iwasawa/ratfun.hpp"
#include "iwasawa/ring.hpp"
#include "iwasawa/selftest.hpp"
#include "lp_oracle.hpp"
#include "oracles.hpp"

using namespace iwasawa;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << "; " << checks_ << " checks";
    if (failures_ > 0) os << ", " << failures_ << " failed, first: " << first_;
    return {failures_ == 0, os.str()};
  }
  std::size_t checks() const { return checks_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string theta_tag(const ThetaCharacter& th) { return th.label(); }

// 1. Operator identities on random ring elements and pseudo-polynomials.
Outcome criterion1() {
  Tally t;
  std::size_t cases = 0;
  for (unsigned p : {3u, 5u, 7u}) {
    const SelftestReport rep = run_selftest(p, 1000 + p, 100, {{1, 2}, {2, 2}, {2, 3}});
    for (const auto& r : rep.results) {
      cases += r.cases;
      t.expect(r.cases >= 100, r.name + " has fewer than 100 cases");
      t.expect(r.failures == 0, "p=" + std::to_string(p) + " " + r.name + " (n,m)=(" +
                                    std::to_string(r.n) + "," + std::to_string(r.m) + ")");
    }
  }
  return t.outcome(std::to_string(cases) + " identity cases, p in {3,5,7}");
}

RingElem twist_factor(const QuotientRing& target, unsigned a, long delta, const Integer& kappa) {
  const unsigned p = target.p;
  const long e = ((delta % static_cast<long>(p - 1)) + (p - 1)) % (p - 1);
  Integer w = oracle::teichmuller(a, p, target.n);
  mpz_powm_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(e),
              oracle::pp(p, target.n).get_mpz_t());
  return RingElem::x_power(target, Integer(*oracle::kappa_log(a, kappa, p, target.m))) * w;
}

// 2. Gamma/gammaU equivalence, the Gamma identities and the interpolation congruence.
Outcome criterion2() {
  Tally t;
  std::mt19937_64 gen(2002);
  const std::vector<QuotientRing> rings = {{3, 3, 3}, {5, 3, 3}, {7, 3, 2}};
  for (const auto& r : rings) {
    const unsigned p = r.p;
    const Integer kappa = 1 + Integer(p);
    const Integer kappa2 = 1 + 2 * Integer(p) + Integer(p) * p;
    const QuotientRing target = r.with_level(r.m - 1);
    for (long delta = 0; delta < static_cast<long>(p - 1); ++delta) {
      const std::string tag = r.to_string() + " delta=" + std::to_string(delta);
      int zero = 0;
      for (int i = 0; i < 100; ++i) {
        const unsigned n1 = 1 + static_cast<unsigned>(gen() % r.n);
        const unsigned m1 = 1 + static_cast<unsigned>(gen() % r.m);
        RingElem f = random_ring_elem(r, gen);
        if (i % 2 == 0) {
          const RingElem w = RingElem::from_polynomial(r, oracle::omega(p, m1));
          f = f - op_gamma(op_U(f), -delta) + w * random_ring_elem(r, gen) +
              random_ring_elem(r, gen) * oracle::pp(p, n1);
          if (i % 4 == 0) f += RingElem::x_power(r, 1) * oracle::pp(p, n1 - 1);
        }
        const bool lhs = ideal_zero(op_Gamma(f, delta, kappa), n1, m1 - 1);
        t.expect(lhs == ideal_zero(op_gamma(op_U(f), -delta), n1, m1), "equivalence " + tag);
        zero += lhs ? 1 : 0;

        const RingElem g = op_Gamma(f, delta, kappa);
        t.expect(op_Gamma(op_gamma(op_U(f), -delta), delta, kappa) == g, "Gamma = Gamma gamma U " + tag);
        unsigned a = static_cast<unsigned>(gen() % r.size());
        if (a % p == 0) a += 1;
        t.expect(op_Gamma(substitute_exp(f, Integer(a)), delta, kappa) ==
                     twist_factor(target, a, delta, kappa) * g,
                 "twist " + tag);
        t.expect(change_kappa(g, kappa, kappa2) == op_Gamma(f, delta, kappa2), "kappa change " + tag);

        const Integer s = oracle::random_below(oracle::pp(p, r.m + 2), gen);
        Integer ks;
        mpz_powm(ks.get_mpz_t(), kappa.get_mpz_t(), s.get_mpz_t(), oracle::pp(p, r.n + 1).get_mpz_t());
        const PadicInt at = evaluate(g, PadicInt(p, r.n + 1, ks - 1));
        for (unsigned j = 0; j + 1 < std::min(r.n, r.m); ++j) {
          const PadicInt rhs = dk_at_zero(f, k_index(PadicInt(p, r.m + 2, s), delta, j));
          t.expect(oracle::mod(at.value() - rhs.value(), oracle::pp(p, j + 1)) == 0,
                   "interpolation " + tag + " j=" + std::to_string(j));
        }
      }
      t.expect(zero > 0 && zero < 100, "equivalence sample lacks both outcomes " + tag);
    }
  }
  return t.outcome("100 cases per (p, delta), p in {3,5,7}");
}

std::vector<ThetaCharacter> criterion3_thetas() {
  std::vector<ThetaCharacter> out;
  for (unsigned p : {5u, 7u, 13u}) {
    for (const auto& th : enumerate_even_theta(p, 1)) out.push_back(th);
  }
  for (long D : {-3L, -4L}) {
    const auto chi = DirichletCharacter::quadratic(5, D);
    for (long delta = 0; delta < 4; ++delta) {
      if ((chi.parity() == 1) == ((delta + 1) % 2 == 0)) out.push_back(ThetaCharacter::make(chi, delta));
    }
  }
  return out;
}

// 3. f(kappa^{-k} - 1) against L_p(-k, theta) from exact Bernoulli numbers.
Outcome criterion3(std::vector<std::pair<ThetaCharacter, InvariantReport>>& certified) {
  Tally t;
  const unsigned n = 3;
  const unsigned m = 2;
  for (const auto& th : criterion3_thetas()) {
    const unsigned p = th.prime();
    const Integer kappa = default_kappa(p, th.chi.conductor());
    const RingElem f = iwasawa_series(th, n, m);
    for (unsigned i = 0; i < 3; ++i) {
      const unsigned k = static_cast<unsigned>(th.delta) + (i + (th.delta == 0 ? 1 : 0)) * (p - 1);
      const auto want = oracle::lp_value(th.chi, k, n);
      t.expect(want.has_value(), "oracle undefined " + theta_tag(th));
      if (!want) continue;
      const PadicInt point =
          PadicInt(p, n + 1, kappa).pow(Integer(k)).inverse() - PadicInt(p, n + 1, 1L);
      const Integer got = oracle::mod(evaluate(f, point).value(), oracle::pp(p, n));
      t.expect(got == *want, theta_tag(th) + " k=" + std::to_string(k));
    }
    const InvariantReport inv = invariants(f);
    if (inv.certified()) certified.emplace_back(th, inv);
  }
  return t.outcome(std::to_string(criterion3_thetas().size()) + " thetas, three k each, mod p^3");
}

// 4. Certified lambda at irregular primes, cross-checked against B_j mod p.
Outcome criterion4(std::vector<std::pair<ThetaCharacter, InvariantReport>>& certified) {
  Tally t;
  std::ostringstream summary;
  for (unsigned p : {37u, 59u, 67u, 101u, 103u, 131u, 149u, 157u}) {
    const auto irregular = oracle::irregular_indices(p);
    const std::set<unsigned> irr(irregular.begin(), irregular.end());
    InvariantsOptions opt;
    opt.n = oracle::pp(p, 4) <= 100000000 ? 2 : 1;
    opt.check_count = 3;
    const LambdaSumReport rep = lambda_sum_cyclotomic(p, 1, opt);
    t.expect(rep.total.has_value(), "p=" + std::to_string(p) + " has an uncertified theta");
    for (const auto& r : rep.per_theta) {
      const unsigned j = static_cast<unsigned>(r.theta.delta + 1);
      const std::string tag = theta_tag(r.theta);
      t.expect(r.certified(), tag + " not certified");
      if (!r.certified()) continue;
      certified.emplace_back(r.theta, r.invariants);
      t.expect(*r.invariants.mu == 0, tag + " mu != 0");
      t.expect(*r.invariants.lambda == (irr.count(j) ? 1u : 0u), tag + " lambda");
      for (const auto& c : r.checks) {
        t.expect(!c.skipped && c.pass, tag + " interpolation k=" + std::to_string(c.k));
      }
      t.expect(r.checks.size() == 3, tag + " missing interpolation checks");
    }
    summary << p << ":" << (rep.total ? std::to_string(*rep.total) : "?") << " ";
    if (p == 37) t.expect(rep.total == 1u, "lambda sum for 37");
    if (p == 157) t.expect(rep.total == 2u, "lambda sum for 157");
  }
  return t.outcome("lambda sums " + summary.str().substr(0, summary.str().size() - 1));
}

// 5. Certified lambda below the new bound, new bound below Rosenberg's.
Outcome criterion5(const std::vector<std::pair<ThetaCharacter, InvariantReport>>& certified) {
  Tally t;
  std::set<std::pair<unsigned, unsigned>> pairs;
  for (const auto& [th, inv] : certified) {
    const unsigned p = th.prime();
    const unsigned d = th.chi.conductor();
    pairs.emplace(p, d);
    t.expect(Integer(*inv.lambda) < bounds(p, d).new_bound, theta_tag(th));
  }
  for (const auto& [p, d] : pairs) {
    const LambdaBounds b = bounds(p, d);
    t.expect(b.new_bound < b.rosenberg, "p=" + std::to_string(p) + " d=" + std::to_string(d));
  }
  t.expect(certified.size() > 0, "no certified lambda");
  return t.outcome(std::to_string(certified.size()) + " certified lambdas over " +
                   std::to_string(pairs.size()) + " (p, d) pairs");
}

// 6. Reduced denominator Phi_d(1+T) and failure of the symmetrized criterion.
Outcome criterion6() {
  Tally t;
  for (const auto& [p, d] : std::vector<std::pair<unsigned, unsigned>>{{5, 4}, {7, 3}}) {
    const FpPoly one_plus_T(p, {1, 1});
    for (const auto& th : enumerate_even_theta(p, d)) {
      if (th.chi.conductor() != d) continue;
      const auto rep = not_pseudorational_report(th.chi, th.delta);
      const std::string tag = theta_tag(th);
      t.expect(rep.denominator_matches, tag + " denominator");
      t.expect(rep.reduced.den() == taylor_shift(cyclotomic_fp(p, d), 1).monic(), tag + " Phi_d");
      t.expect(rep.not_pseudo_rational, tag + " criterion holds");
      t.expect(rep.criterion.witness_factor.degree() >= 1 &&
                   rep.criterion.witness_factor.monic() != one_plus_T,
               tag + " witness factor");
    }
    t.expect(sym_poly_criterion(RatFuncFp(FpPoly(p, {1, 2, 0, 1})), 0).holds, "polynomial control");
    t.expect(sym_poly_criterion(RatFuncFp(FpPoly::constant(p, 1), one_plus_T), 0).holds,
             "1/(1+T) control");
    t.expect(sym_poly_criterion(RatFuncFp(FpPoly::constant(p, 1), one_plus_T), 1).holds,
             "1/(1+T) control, odd delta");
  }
  return t.outcome("p=5 d=4 and p=7 d=3");
}

RatFuncZp random_unit_denominator(unsigned p, std::mt19937_64& gen) {
  auto poly = [&](std::size_t len, long bound) {
    std::vector<long> c(len);
    for (auto& x : c) x = static_cast<long>(gen() % (2 * bound + 1)) - bound;
    return QPoly::from_integers(c);
  };
  const QPoly den = QPoly::constant(1) + poly(1 + gen() % 3, 6) * QPoly::from_integers({0, 1});
  QPoly num = poly(1 + gen() % 4, 9);
  if (num.is_zero()) num = QPoly::constant(1);
  return RatFuncZp(p, num, den);
}

// Minimal coefficient valuation of Gamma_delta(F) at levels m and m+1;
// certified when both agree and sit below the working precision.
std::optional<unsigned> pipeline_mu(const RatFuncZp& F, long delta, unsigned n) {
  const unsigned p = F.prime();
  const Integer kappa = 1 + Integer(p);
  std::optional<unsigned> previous;
  for (unsigned m = 1; m <= 3; ++m) {
    const RingElem g = op_Gamma(F.to_ring(n, m + 1), delta, kappa);
    unsigned v = n;
    for (const auto& c : g.monomial_coeffs()) {
      if (c == 0) continue;
      unsigned e = 0;
      for (Integer x = c; x % p == 0; x /= p) ++e;
      v = std::min(v, e);
    }
    if (previous && *previous == v && v < n) return v;
    previous = v;
  }
  return std::nullopt;
}

// 7. mu of Gamma_delta(F) from the rational formula against the pipeline.
Outcome criterion7() {
  Tally t;
  std::mt19937_64 gen(7007);
  std::size_t compared[3] = {0, 0, 0};
  for (unsigned p : {5u, 7u}) {
    for (int i = 0; i < 40; ++i) {
      const long delta = static_cast<long>(gen() % (p - 1));
      RatFuncZp F = random_unit_denominator(p, gen);
      if (i % 4 == 1) F = F * mpq_class(oracle::pp(p, 1 + gen() % 2));
      if (i % 4 == 2) {
        const RatFuncZp sym = delta % 2 == 0 ? F - compose_inv(F) : F + compose_inv(F);
        F = sym + random_unit_denominator(p, gen) * mpq_class(p);
      }
      const auto report = mu_gamma_formula(F, delta);
      if (!report.mu) continue;
      const auto mu = pipeline_mu(F, delta, *report.mu + 2);
      if (!mu) continue;
      ++compared[report.branch];
      t.expect(*mu == *report.mu, "p=" + std::to_string(p) + " delta=" + std::to_string(delta));
    }
  }
  t.expect(compared[1] >= 20, "branch 1 has fewer than 20 certified samples");
  t.expect(compared[2] >= 20, "branch 2 has fewer than 20 certified samples");
  return t.outcome("certified samples: branch 1 " + std::to_string(compared[1]) + ", branch 2 " +
                   std::to_string(compared[2]));
}

// 8. Integer identity T^{p^n} = sum omega_i p^j delta_j.
Outcome criterion8() {
  Tally t;
  for (unsigned p : {3u, 5u}) {
    for (unsigned n = 0; n <= 2; ++n) {
      const auto deltas = decompose_T_power(n, p);
      const IntPoly residual = decomposition_residual(n, p, deltas);
      bool zero = true;
      for (const auto& c : residual) zero = zero && c == 0;
      t.expect(zero, "p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
  }
  return t.outcome("p in {3,5}, n <= 2");
}

// 9. G_2 closed form and multiplier independence of the d = 1 pipeline.
Outcome criterion9() {
  Tally t;
  for (unsigned p : {3u, 5u, 7u, 13u}) {
    for (const auto& [n, m] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {2, 2}, {3, 2}}) {
      const QuotientRing r{p, n, m};
      const RingElem expected =
          RingElem::one(r) - invert_unit(RingElem::from_polynomial(r, {Integer(2), Integer(1)}));
      t.expect(g_c_surrogate(p, 2, n, m) == expected, "G_2 in " + r.to_string());
    }
  }
  std::size_t pairs = 0;
  for (unsigned p : {5u, 7u, 11u, 13u}) {
    for (const auto& th : enumerate_even_theta(p, 1)) {
      std::vector<unsigned> valid;
      for (unsigned c = 2; c < p; ++c) {
        if (PadicInt(p, 1, Integer(c)).pow(Integer(th.delta + 1)).value() != 1) valid.push_back(c);
      }
      t.expect(valid.size() >= 2, theta_tag(th) + " lacks two multipliers");
      const RingElem base = iwasawa_series(th, 3, 2, {.multiplier = valid[0]});
      for (std::size_t i = 1; i < valid.size(); ++i) {
        ++pairs;
        t.expect(iwasawa_series(th, 3, 2, {.multiplier = valid[i]}) == base,
                 theta_tag(th) + " c=" + std::to_string(valid[i]));
      }
    }
  }
  return t.outcome(std::to_string(pairs) + " multiplier pairs");
}

}  // namespace

int main() {
  std::vector<std::pair<ThetaCharacter, InvariantReport>> certified;
  struct Criterion {
    int id;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 30, criterion1},
      {2, 60, criterion2},
      {3, 300, [&] { return criterion3(certified); }},
      {4, 600, [&] { return criterion4(certified); }},
      {5, 60, [&] { return criterion5(certified); }},
      {6, 5, criterion6},
      {7, 60, criterion7},
      {8, 60, criterion8},
      {9, 60, criterion9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      out.pass = false;
      out.detail += "; over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    }
    std::printf("criterion %d: %s (%.2f s) %s\n", c.id, out.pass ? "PASS" : "FAIL", secs,
                out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
