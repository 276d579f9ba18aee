#include "iwasawa/pseudo.hpp"

#include <algorithm>
#include <sstream>

#include "iwasawa/errors.hpp"

namespace iwasawa {

PseudoPoly::PseudoPoly(unsigned p, unsigned coeff_precision, unsigned exponent_precision)
    : p_(p), n_(coeff_precision), M_(exponent_precision) {
  require_odd_prime(p);
}

PseudoPoly PseudoPoly::from_terms(unsigned p, unsigned coeff_precision,
                                  unsigned exponent_precision,
                                  const std::vector<std::pair<Integer, Integer>>& coeff_exponent) {
  PseudoPoly out(p, coeff_precision, exponent_precision);
  for (const auto& [c, a] : coeff_exponent) out.add_exact_term(c, a);
  return out;
}

void PseudoPoly::insert(const Integer& coeff, const Integer& residue,
                        const std::optional<Integer>& exact) {
  const Integer c = reduce(coeff, prime_power(p_, n_));
  auto it = terms_.find(residue);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(residue, Term{c, residue, exact});
    return;
  }
  Term& t = it->second;
  if (t.exact && exact && *t.exact != *exact) lossy_ = true;
  if (!exact || (t.exact && *t.exact != *exact)) t.exact.reset();
  t.coeff = reduce(t.coeff + c, prime_power(p_, n_));
  if (t.coeff == 0) terms_.erase(it);
}

void PseudoPoly::add_term(const Integer& coeff, const PadicInt& exponent) {
  if (exponent.prime() != p_) throw ContextMismatch("pseudo-polynomial term at another prime");
  if (exponent.precision() < M_) {
    throw PrecisionError("exponent " + exponent.to_string() + " is coarser than p^" +
                         std::to_string(M_));
  }
  insert(coeff, reduce(exponent.value(), prime_power(p_, M_)), std::nullopt);
}

void PseudoPoly::add_exact_term(const Integer& coeff, const Integer& exponent) {
  insert(coeff, reduce(exponent, prime_power(p_, M_)), exponent);
}

std::vector<PseudoPoly::Term> PseudoPoly::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [key, t] : terms_) out.push_back(t);
  return out;
}

PseudoPoly PseudoPoly::with_coeff_precision(unsigned coeff_precision) const {
  if (coeff_precision > n_) throw PrecisionError("cannot raise pseudo-polynomial precision");
  PseudoPoly out(p_, coeff_precision, M_);
  out.lossy_ = lossy_;
  for (const auto& [key, t] : terms_) out.insert(t.coeff, key, t.exact);
  return out;
}

void PseudoPoly::require_compatible(const PseudoPoly& rhs) const {
  if (p_ != rhs.p_ || n_ != rhs.n_ || M_ != rhs.M_) {
    throw ContextMismatch("pseudo-polynomials with different (p, n, M)");
  }
}

PseudoPoly PseudoPoly::operator-() const {
  PseudoPoly out(p_, n_, M_);
  out.lossy_ = lossy_;
  for (const auto& [key, t] : terms_) out.insert(-t.coeff, key, t.exact);
  return out;
}

PseudoPoly& PseudoPoly::operator+=(const PseudoPoly& rhs) {
  require_compatible(rhs);
  lossy_ = lossy_ || rhs.lossy_;
  for (const auto& [key, t] : rhs.terms_) insert(t.coeff, key, t.exact);
  return *this;
}

PseudoPoly& PseudoPoly::operator-=(const PseudoPoly& rhs) { return *this += -rhs; }

PseudoPoly& PseudoPoly::operator*=(const Integer& c) {
  PseudoPoly out(p_, n_, M_);
  out.lossy_ = lossy_;
  for (const auto& [key, t] : terms_) out.insert(t.coeff * c, key, t.exact);
  return *this = std::move(out);
}

PseudoPoly operator*(const PseudoPoly& a, const PseudoPoly& b) {
  a.require_compatible(b);
  PseudoPoly out(a.p_, a.n_, a.M_);
  out.lossy_ = a.lossy_ || b.lossy_;
  const Integer pm = prime_power(a.p_, a.M_);
  for (const auto& [ka, ta] : a.terms_) {
    for (const auto& [kb, tb] : b.terms_) {
      std::optional<Integer> exact;
      if (ta.exact && tb.exact) exact = *ta.exact + *tb.exact;
      out.insert(ta.coeff * tb.coeff, reduce(ka + kb, pm), exact);
    }
  }
  return out;
}

std::string PseudoPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, t] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.get_str() << "*(1+T)^" << (t.exact ? t.exact->get_str() : key.get_str());
  }
  if (first) os << "0";
  os << " [p=" << p_ << ", coeffs mod p^" << n_ << ", exponents mod p^" << M_ << "]";
  return os.str();
}

const char* to_string(Equality e) {
  switch (e) {
    case Equality::equal:
      return "equal";
    case Equality::unequal:
      return "unequal";
    case Equality::indecisive:
      return "indecisive";
  }
  return "indecisive";
}

Equality equal_test(const PseudoPoly& P, const PseudoPoly& Q, unsigned coeff_precision) {
  if (coeff_precision > std::min(P.coeff_precision(), Q.coeff_precision())) {
    throw PrecisionError("equal_test mod p^" + std::to_string(coeff_precision) +
                         " exceeds the coefficient precision");
  }
  if (P.lossy() || Q.lossy()) return Equality::indecisive;
  const PseudoPoly diff = P - Q;
  if (diff.lossy()) return Equality::indecisive;
  const Integer mod = prime_power(P.prime(), coeff_precision);
  for (const auto& t : diff.terms()) {
    if (reduce(t.coeff, mod) != 0) return Equality::unequal;
  }
  return Equality::equal;
}

RingElem to_ring(const PseudoPoly& P, unsigned coeff_precision, unsigned level) {
  if (P.exponent_precision() < level) {
    throw PrecisionError("to_ring at level " + std::to_string(level) +
                         " needs exponents mod p^" + std::to_string(level));
  }
  if (coeff_precision > P.coeff_precision()) {
    throw PrecisionError("to_ring cannot raise coefficient precision");
  }
  const QuotientRing ring(P.prime(), coeff_precision, level);
  std::vector<Integer> b(ring.size(), 0);
  const Integer len(static_cast<unsigned long>(ring.size()));
  for (const auto& t : P.terms()) {
    b[mpz_get_ui(reduce(t.exponent, len).get_mpz_t())] += t.coeff;
  }
  return RingElem(ring, RingElem::Basis::binomial, std::move(b));
}

PseudoPoly operator_apply(const PseudoPoly& P, PseudoOperator kind, long delta) {
  const unsigned p = P.prime();
  const unsigned M = P.exponent_precision();
  switch (kind) {
    case PseudoOperator::D: {
      PseudoPoly out(p, std::min(P.coeff_precision(), M), M);
      for (const auto& t : P.terms()) {
        const Integer mult = t.exact ? *t.exact : t.exponent;
        if (t.exact) {
          out.add_exact_term(t.coeff * mult, *t.exact);
        } else {
          out.add_term(t.coeff * mult, PadicInt(p, M, t.exponent));
        }
      }
      return out;
    }
    case PseudoOperator::U: {
      PseudoPoly out(p, P.coeff_precision(), M);
      if (M == 0) throw PrecisionError("U needs exponents known mod p");
      for (const auto& t : P.terms()) {
        if (mpz_divisible_ui_p(t.exponent.get_mpz_t(), p)) continue;
        if (t.exact) {
          out.add_exact_term(t.coeff, *t.exact);
        } else {
          out.add_term(t.coeff, PadicInt(p, M, t.exponent));
        }
      }
      return out;
    }
    case PseudoOperator::gamma: {
      const unsigned n = P.coeff_precision();
      PseudoPoly out(p, n, M);
      if (n == 0) return out;
      const Integer mod = prime_power(p, n);
      const long e = ((delta % static_cast<long>(p - 1)) + (p - 1)) % (p - 1);
      Integer inv_pm1;
      const Integer pm1(p - 1);
      mpz_invert(inv_pm1.get_mpz_t(), pm1.get_mpz_t(), mod.get_mpz_t());
      const unsigned eta_prec = std::max({n, M, 1u});
      for (unsigned r = 1; r < p; ++r) {
        const PadicInt eta = teichmuller(r, p, eta_prec);
        const Integer c = reduce(eta.pow(e).value() * inv_pm1, mod);
        for (const auto& t : P.terms()) {
          // eta = 1 keeps exact exponents exact; other roots are irrational.
          if (r == 1 && t.exact) {
            out.add_exact_term(c * t.coeff, *t.exact);
          } else {
            out.add_term(c * t.coeff, PadicInt(p, M, eta.value() * t.exponent));
          }
        }
      }
      return out;
    }
  }
  throw DomainError("unknown pseudo-polynomial operator");
}

PseudoPoly Gamma_pseudo(const PseudoPoly& P, long delta, const Integer& kappa,
                        unsigned exponent_out) {
  const unsigned p = P.prime();
  const unsigned M = P.exponent_precision();
  if (M == 0 || exponent_out + 1 > M) {
    throw PrecisionError("Gamma_pseudo: output exponents mod p^" + std::to_string(exponent_out) +
                         " need input exponents mod p^" + std::to_string(exponent_out + 1));
  }
  const unsigned n = P.coeff_precision();
  PseudoPoly out(p, n, exponent_out);
  const unsigned kprec = std::max(2u, exponent_out + 1);
  const PadicInt k(p, kprec, kappa);
  require_topological_generator(k);
  const long e = ((delta % static_cast<long>(p - 1)) + (p - 1)) % (p - 1);
  for (const auto& t : P.terms()) {
    if (mpz_divisible_ui_p(t.exponent.get_mpz_t(), p)) continue;
    const Integer twist = n == 0 ? Integer(0) : teichmuller(t.exponent, p, n).pow(e).value();
    Integer ea = 0;
    if (exponent_out > 0) {
      ea = kappa_exponent(PadicInt(p, exponent_out + 1, t.exponent), k.with_precision(exponent_out + 1),
                          exponent_out)
               .value();
    }
    out.add_term(twist * t.coeff, PadicInt(p, exponent_out, ea));
  }
  return out;
}

bool interp_check(const PseudoPoly& P, long delta, const PadicInt& s, unsigned j) {
  const unsigned p = P.prime();
  const unsigned prec = j + 1;
  if (P.coeff_precision() < prec || P.exponent_precision() < prec || s.precision() < prec) {
    throw PrecisionError("interp_check mod p^" + std::to_string(prec) +
                         " needs coefficients, exponents and s at that precision");
  }
  const Integer mod = prime_power(p, prec);
  const Integer k = k_index(s, delta, j);
  const long e = ((delta % static_cast<long>(p - 1)) + (p - 1)) % (p - 1);
  Integer lhs = 0;
  Integer rhs = 0;
  for (const auto& t : P.terms()) {
    const PadicInt alpha(p, prec, t.exponent);
    rhs += t.coeff * alpha.pow(k).value();
    if (!alpha.is_unit()) continue;
    const PadicInt w = teichmuller(t.exponent, p, prec);
    const PadicInt principal = alpha * w.inverse();
    lhs += t.coeff * w.pow(e).value() * principal.pow(s.value()).value();
  }
  return reduce(lhs - rhs, mod) == 0;
}

}  // namespace iwasawa
