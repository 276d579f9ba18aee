#include "iwasawa/ring.hpp"

#include <sstream>

#include "iwasawa/errors.hpp"
#include "modarith.hpp"

namespace iwasawa {

using detail::with_ops;

QuotientRing::QuotientRing(unsigned prime, unsigned coeff_precision, unsigned level)
    : p(prime), n(coeff_precision), m(level) {
  require_odd_prime(p);
  if (prime_power(p, m) > Integer(static_cast<unsigned long>(kMaxSize))) {
    throw ResourceLimit("R(" + std::to_string(n) + "," + std::to_string(m) + ") at p=" +
                        std::to_string(p) + " exceeds the supported size 2^24");
  }
}

std::size_t QuotientRing::size() const {
  std::size_t s = 1;
  for (unsigned i = 0; i < m; ++i) s *= p;
  return s;
}

std::string QuotientRing::to_string() const {
  return "R(p=" + std::to_string(p) + ", n=" + std::to_string(n) + ", m=" + std::to_string(m) +
         ")";
}

namespace {

// In-place Taylor shift: coefficients of c(X) become those of c(X + shift).
template <class Ops>
void taylor_shift(const Ops& ops, std::vector<typename Ops::value_type>& c, bool plus_one) {
  const std::size_t len = c.size();
  for (std::size_t i = 0; i + 1 < len; ++i) {
    for (std::size_t j = len - 1; j > i; --j) {
      c[j - 1] = plus_one ? ops.add(c[j - 1], c[j]) : ops.sub(c[j - 1], c[j]);
    }
  }
}

std::vector<Integer> shift_coeffs(const Integer& modulus, const std::vector<Integer>& in,
                                  bool plus_one) {
  return with_ops(modulus, [&](const auto& ops) {
    auto c = detail::load_all(ops, in);
    taylor_shift(ops, c, plus_one);
    return detail::store_all(ops, c);
  });
}

// Fold sum c_a (1+T)^a with arbitrary non-negative exponents to exponents mod p^m.
std::vector<Integer> fold_exponents(const QuotientRing& ring, const std::vector<Integer>& c) {
  const std::size_t len = ring.size();
  const Integer mod = ring.modulus();
  std::vector<Integer> out(len, 0);
  for (std::size_t a = 0; a < c.size(); ++a) out[a % len] += c[a];
  for (auto& v : out) v = reduce(v, mod);
  return out;
}

// C(p^m, j) mod p^n for j = 0..p^m.
std::vector<Integer> omega_binomials(const QuotientRing& ring) {
  const std::size_t len = ring.size();
  const Integer mod = ring.modulus();
  std::vector<Integer> out(len + 1, 0);
  if (mod == 1) return out;
  out[0] = 1;
  Integer unit = 1;
  long v = 0;
  for (std::size_t i = 1; i <= len; ++i) {
    // multiply by (len - i + 1), divide by i
    unsigned long top = len - i + 1;
    unsigned long bottom = i;
    while (top % ring.p == 0) {
      top /= ring.p;
      ++v;
    }
    while (bottom % ring.p == 0) {
      bottom /= ring.p;
      --v;
    }
    Integer inv;
    const Integer b(bottom);
    mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), mod.get_mpz_t());
    unit = reduce(unit * Integer(top) * inv, mod);
    out[i] = v >= static_cast<long>(ring.n) ? Integer(0)
                                             : reduce(unit * prime_power(ring.p, v), mod);
  }
  return out;
}

template <class Ops>
std::vector<typename Ops::value_type> monomial_product(const Ops& ops, const QuotientRing& ring,
                                                       const std::vector<Integer>& fa,
                                                       const std::vector<Integer>& ga) {
  using V = typename Ops::value_type;
  const std::size_t len = ring.size();
  const auto f = detail::load_all(ops, fa);
  const auto g = detail::load_all(ops, ga);
  std::vector<V> c(2 * len - 1, ops.zero());
  for (std::size_t i = 0; i < len; ++i) {
    if (ops.is_zero(f[i])) continue;
    for (std::size_t j = 0; j < len; ++j) c[i + j] = ops.add(c[i + j], ops.mul(f[i], g[j]));
  }
  if (len > 1) {
    const auto binom = detail::load_all(ops, omega_binomials(ring));
    for (std::size_t k = 2 * len - 2; k >= len; --k) {
      const V t = c[k];
      c[k] = ops.zero();
      if (!ops.is_zero(t)) {
        for (std::size_t j = 1; j < len; ++j) {
          c[k - len + j] = ops.sub(c[k - len + j], ops.mul(t, binom[j]));
        }
      }
    }
  }
  c.resize(len);
  return c;
}

template <class Ops>
std::vector<typename Ops::value_type> cyclic_product(const Ops& ops, std::size_t len,
                                                     const std::vector<Integer>& fa,
                                                     const std::vector<Integer>& ga) {
  using V = typename Ops::value_type;
  const auto f = detail::load_all(ops, fa);
  const auto g = detail::load_all(ops, ga);
  std::vector<V> c(len, ops.zero());
  for (std::size_t i = 0; i < len; ++i) {
    if (ops.is_zero(f[i])) continue;
    for (std::size_t j = 0; j < len; ++j) {
      if (ops.is_zero(g[j])) continue;
      std::size_t k = i + j;
      if (k >= len) k -= len;
      c[k] = ops.add(c[k], ops.mul(f[i], g[j]));
    }
  }
  return c;
}

}  // namespace

RingElem::RingElem(QuotientRing ring, Basis basis, std::vector<Integer> coeffs)
    : ring_(ring), basis_(basis), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ring_.size()) {
    throw std::invalid_argument("ring element over " + ring_.to_string() + " needs " +
                                std::to_string(ring_.size()) + " coefficients, got " +
                                std::to_string(coeffs_.size()));
  }
  const Integer mod = ring_.modulus();
  for (auto& c : coeffs_) c = reduce(c, mod);
}

RingElem RingElem::zero(QuotientRing ring, Basis basis) {
  return RingElem(ring, basis, std::vector<Integer>(ring.size(), 0));
}

RingElem RingElem::one(QuotientRing ring) { return constant(ring, 1); }

RingElem RingElem::constant(QuotientRing ring, const Integer& c) {
  std::vector<Integer> coeffs(ring.size(), 0);
  coeffs[0] = c;
  return RingElem(ring, Basis::monomial, std::move(coeffs));
}

RingElem RingElem::variable(QuotientRing ring) {
  return from_polynomial(ring, {Integer(0), Integer(1)});
}

RingElem RingElem::x_power(QuotientRing ring, const Integer& a) {
  std::vector<Integer> coeffs(ring.size(), 0);
  const Integer e = reduce(a, Integer(static_cast<unsigned long>(ring.size())));
  coeffs[mpz_get_ui(e.get_mpz_t())] = 1;
  return RingElem(ring, Basis::binomial, std::move(coeffs));
}

RingElem RingElem::from_polynomial(QuotientRing ring, const std::vector<Integer>& coeffs) {
  if (coeffs.size() <= ring.size()) {
    std::vector<Integer> c(coeffs);
    c.resize(ring.size(), 0);
    return RingElem(ring, Basis::monomial, std::move(c));
  }
  // Rewrite in powers of x = 1+T, then use x^{p^m} = 1.
  const Integer mod = ring.modulus();
  std::vector<Integer> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = reduce(coeffs[i], mod);
  return RingElem(ring, Basis::binomial, fold_exponents(ring, shift_coeffs(mod, c, false)));
}

RingElem RingElem::from_x_polynomial(QuotientRing ring, const std::vector<Integer>& coeffs) {
  return RingElem(ring, Basis::binomial, fold_exponents(ring, coeffs));
}

std::vector<Integer> RingElem::monomial_coeffs() const {
  if (basis_ == Basis::monomial) return coeffs_;
  return shift_coeffs(ring_.modulus(), coeffs_, true);
}

std::vector<Integer> RingElem::binomial_coeffs() const {
  if (basis_ == Basis::binomial) return coeffs_;
  return shift_coeffs(ring_.modulus(), coeffs_, false);
}

RingElem RingElem::in_basis(Basis basis) const {
  if (basis == basis_) return *this;
  return RingElem(ring_, basis,
                  basis == Basis::monomial ? monomial_coeffs() : binomial_coeffs());
}

bool RingElem::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

Integer RingElem::constant_term() const {
  if (basis_ == Basis::monomial) return coeffs_[0];
  Integer s = 0;
  for (const auto& c : coeffs_) s += c;
  return reduce(s, ring_.modulus());
}

RingElem RingElem::with_precision(unsigned coeff_precision) const {
  if (coeff_precision > ring_.n) {
    throw PrecisionError("cannot raise coefficient precision of " + ring_.to_string());
  }
  return RingElem(ring_.with_precision(coeff_precision), basis_, coeffs_);
}

RingElem RingElem::with_level(unsigned level) const {
  if (level > ring_.m) throw PrecisionError("cannot raise the level of " + ring_.to_string());
  const QuotientRing target = ring_.with_level(level);
  return RingElem(target, Basis::binomial, fold_exponents(target, binomial_coeffs()));
}

void RingElem::require_same_ring(const RingElem& rhs, const char* op) const {
  if (!(ring_ == rhs.ring_)) {
    throw ContextMismatch(std::string(op) + ": " + ring_.to_string() + " vs " +
                          rhs.ring_.to_string());
  }
}

RingElem RingElem::operator-() const {
  RingElem out = *this;
  const Integer mod = ring_.modulus();
  for (auto& c : out.coeffs_) c = reduce(-c, mod);
  return out;
}

RingElem& RingElem::operator+=(const RingElem& rhs) {
  require_same_ring(rhs, "add");
  const Integer mod = ring_.modulus();
  if (basis_ == rhs.basis_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = reduce(coeffs_[i] + rhs.coeffs_[i], mod);
  } else {
    const auto other = rhs.basis_ == Basis::monomial ? rhs.binomial_coeffs() : rhs.monomial_coeffs();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = reduce(coeffs_[i] + other[i], mod);
  }
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& rhs) { return *this += -rhs; }

RingElem& RingElem::operator*=(const Integer& c) {
  const Integer mod = ring_.modulus();
  for (auto& v : coeffs_) v = reduce(v * c, mod);
  return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) { return mul_reduce(a, b); }

bool operator==(const RingElem& a, const RingElem& b) {
  if (!(a.ring_ == b.ring_)) return false;
  if (a.basis_ == b.basis_) return a.coeffs_ == b.coeffs_;
  return a.monomial_coeffs() == b.monomial_coeffs();
}

std::string RingElem::to_string() const {
  std::ostringstream os;
  os << ring_.to_string() << " [";
  const auto c = monomial_coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    os << c[i].get_str();
  }
  os << "]";
  return os.str();
}

BinomialView basis_convert(const RingElem& f) { return {f.ring(), f.binomial_coeffs()}; }

RingElem basis_convert(const BinomialView& view) {
  return RingElem(view.ring, RingElem::Basis::binomial, view.b).in_basis(RingElem::Basis::monomial);
}

RingElem mul_reduce(const RingElem& f, const RingElem& g) {
  if (!(f.ring() == g.ring())) {
    throw ContextMismatch("mul_reduce: " + f.ring().to_string() + " vs " + g.ring().to_string());
  }
  const QuotientRing& ring = f.ring();
  const Integer mod = ring.modulus();
  if (f.basis() == RingElem::Basis::binomial || g.basis() == RingElem::Basis::binomial) {
    // Group ring of Z/p^m: cyclic convolution in the (1+T)^a basis.
    auto c = with_ops(mod, [&](const auto& ops) {
      return detail::store_all(ops, cyclic_product(ops, ring.size(), f.binomial_coeffs(),
                                                   g.binomial_coeffs()));
    });
    return RingElem(ring, RingElem::Basis::binomial, std::move(c));
  }
  auto c = with_ops(mod, [&](const auto& ops) {
    return detail::store_all(ops, monomial_product(ops, ring, f.raw(), g.raw()));
  });
  return RingElem(ring, RingElem::Basis::monomial, std::move(c));
}

RingElem invert_unit(const RingElem& f) {
  const QuotientRing& ring = f.ring();
  const Integer c0 = f.constant_term();
  if (ring.n == 0) return RingElem::zero(ring);
  if (mpz_divisible_ui_p(c0.get_mpz_t(), ring.p)) {
    throw NotAUnit("invert_unit: constant term " + c0.get_str() + " is not a unit mod " +
                   std::to_string(ring.p));
  }
  const Integer mod = ring.modulus();
  Integer inv0;
  mpz_invert(inv0.get_mpz_t(), c0.get_mpz_t(), mod.get_mpz_t());
  const RingElem one = RingElem::one(ring).in_basis(f.basis());
  RingElem g = RingElem::constant(ring, inv0).in_basis(f.basis());
  // The error 1 - f g squares each round; it lies in (T) and
  // T^{n p^m} is 0 in R(n, m), so the loop ends after O(log(n p^m)) rounds.
  for (int round = 0; round < 80; ++round) {
    const RingElem err = one - f * g;
    if (err.is_zero()) return g;
    g = g + g * err;
  }
  throw PrecisionError("invert_unit: Newton iteration did not converge over " + ring.to_string());
}

}  // namespace iwasawa
