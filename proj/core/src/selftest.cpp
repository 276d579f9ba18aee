#include "iwasawa/selftest.hpp"

#include <algorithm>
#include <functional>

namespace iwasawa {

namespace {

Integer random_below(const Integer& bound, std::mt19937_64& gen) {
  Integer x(static_cast<unsigned long>(gen()));
  x <<= 64;
  x += static_cast<unsigned long>(gen());
  return reduce(x, bound);
}

}  // namespace

RingElem random_ring_elem(const QuotientRing& ring, std::mt19937_64& gen) {
  const Integer mod = ring.modulus();
  std::vector<Integer> c(ring.size());
  for (auto& x : c) x = random_below(mod, gen);
  return RingElem(ring, RingElem::Basis::monomial, std::move(c));
}

PseudoPoly random_pseudo_poly(unsigned p, unsigned n, unsigned M, std::size_t terms, long bound,
                              std::mt19937_64& gen) {
  const Integer mod = prime_power(p, n);
  const unsigned long span = static_cast<unsigned long>(2 * bound + 1);
  std::vector<std::pair<Integer, Integer>> ce;
  for (std::size_t i = 0; i < terms; ++i) {
    const long e = static_cast<long>(gen() % span) - bound;
    ce.emplace_back(random_below(mod, gen), Integer(e));
  }
  return PseudoPoly::from_terms(p, n, M, ce);
}

bool SelftestReport::pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](const IdentityResult& r) { return r.failures == 0 && r.cases > 0; });
}

SelftestReport run_selftest(unsigned p, std::uint64_t seed, std::size_t cases,
                            const std::vector<std::pair<unsigned, unsigned>>& levels) {
  require_odd_prime(p);
  SelftestReport report;
  report.p = p;
  report.seed = seed;
  std::mt19937_64 gen(seed);
  const long pm1 = static_cast<long>(p) - 1;

  for (const auto& [n, m] : levels) {
    const QuotientRing ring(p, n, m);
    auto run = [&](const std::string& name, const std::function<bool()>& identity) {
      IdentityResult r{name, n, m, cases, 0};
      for (std::size_t i = 0; i < cases; ++i) {
        if (!identity()) ++r.failures;
      }
      report.results.push_back(r);
    };
    auto draw = [&] { return random_ring_elem(ring, gen); };
    auto draw_delta = [&] { return static_cast<long>(gen() % static_cast<unsigned long>(pm1)); };

    run("U^2 = U", [&] {
      const RingElem f = draw();
      const RingElem u = op_U(f);
      return op_U(u) == u;
    });
    run("DU = UD", [&] {
      const RingElem f = draw();
      return op_D(op_U(f)) == op_U(op_D(f));
    });
    run("gamma_delta^2 = gamma_delta", [&] {
      const RingElem f = draw();
      const long d = draw_delta();
      const RingElem g = op_gamma(f, d);
      return op_gamma(g, d) == g;
    });
    run("gamma_delta gamma_delta' = 0", [&] {
      const RingElem f = draw();
      const long d = draw_delta();
      const long d2 = (d + 1 + static_cast<long>(gen() % static_cast<unsigned long>(pm1 - 1))) % pm1;
      return op_gamma(op_gamma(f, d2), d).is_zero();
    });
    run("sum gamma_delta = Id", [&] {
      const RingElem f = draw();
      RingElem sum = RingElem::zero(ring);
      for (long d = 0; d < pm1; ++d) sum += op_gamma(f, d);
      return sum == f;
    });
    run("gamma_delta U = U gamma_delta", [&] {
      const RingElem f = draw();
      const long d = draw_delta();
      return op_gamma(op_U(f), d) == op_U(op_gamma(f, d));
    });
    run("D gamma_delta = gamma_{delta+1} D", [&] {
      const RingElem f = draw();
      const long d = draw_delta();
      return op_D(op_gamma(f, d)) == op_gamma(op_D(f), d + 1);
    });

    // The same identities on pseudo-polynomials with exponents mod p^m.
    auto draw_pseudo = [&] { return random_pseudo_poly(p, n, m, 6, 50, gen); };
    auto same = [](const PseudoPoly& a, const PseudoPoly& b, unsigned prec) {
      return equal_test(a, b, prec) != Equality::unequal;
    };
    const unsigned dn = std::min(n, m);
    run("pseudo U^2 = U", [&] {
      const PseudoPoly P = draw_pseudo();
      const PseudoPoly u = operator_apply(P, PseudoOperator::U);
      return same(operator_apply(u, PseudoOperator::U), u, n);
    });
    run("pseudo DU = UD", [&] {
      const PseudoPoly P = draw_pseudo();
      return same(operator_apply(operator_apply(P, PseudoOperator::U), PseudoOperator::D),
                  operator_apply(operator_apply(P, PseudoOperator::D), PseudoOperator::U), dn);
    });
    run("pseudo D gamma_delta = gamma_{delta+1} D", [&] {
      const PseudoPoly P = draw_pseudo();
      const long d = draw_delta();
      return same(operator_apply(operator_apply(P, PseudoOperator::gamma, d), PseudoOperator::D),
                  operator_apply(operator_apply(P, PseudoOperator::D), PseudoOperator::gamma,
                                 d + 1),
                  dn);
    });
  }
  return report;
}

}  // namespace iwasawa
