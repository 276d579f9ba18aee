#include "iwasawa/polynomial.hpp"

#include <sstream>

#include "iwasawa/errors.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

namespace {

std::uint64_t mod_of(long v, unsigned p) {
  long r = v % static_cast<long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t inv_mod(std::uint64_t a, unsigned p) {
  if (a % p == 0) throw DomainError("division by zero in F_" + std::to_string(p));
  // a^{p-2}
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  unsigned e = p - 2;
  while (e) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

}  // namespace

FpPoly::FpPoly(unsigned p, const std::vector<long>& coeffs) : p_(p) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.push_back(mod_of(v, p));
  trim();
}

FpPoly FpPoly::monomial(unsigned p, std::size_t degree, long c) {
  FpPoly out(p);
  out.c_.assign(degree + 1, 0);
  out.c_[degree] = mod_of(c, p);
  out.trim();
  return out;
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  const std::uint64_t inv = inv_mod(leading(), p_);
  FpPoly out = *this;
  for (auto& v : out.c_) v = v * inv % p_;
  return out;
}

FpPoly FpPoly::derivative() const {
  FpPoly out(p_);
  if (c_.size() <= 1) return out;
  out.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out.c_[i - 1] = c_[i] * (i % p_) % p_;
  out.trim();
  return out;
}

std::uint64_t FpPoly::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= p_;
  for (std::size_t i = c_.size(); i-- > 0;) acc = (acc * x + c_[i]) % p_;
  return acc;
}

FpPoly FpPoly::pow(unsigned e) const {
  FpPoly result = constant(p_, 1);
  FpPoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

FpPoly FpPoly::operator-() const {
  FpPoly out = *this;
  for (auto& v : out.c_) v = v == 0 ? 0 : p_ - v;
  return out;
}

FpPoly& FpPoly::operator+=(const FpPoly& rhs) {
  if (rhs.p_ != p_) throw ContextMismatch("polynomials over different fields");
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0);
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] = (c_[i] + rhs.c_[i]) % p_;
  trim();
  return *this;
}

FpPoly& FpPoly::operator-=(const FpPoly& rhs) { return *this += -rhs; }

FpPoly& FpPoly::operator*=(long c) {
  const std::uint64_t k = mod_of(c, p_);
  for (auto& v : c_) v = v * k % p_;
  trim();
  return *this;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.p_ != b.p_) throw ContextMismatch("polynomials over different fields");
  FpPoly out(a.p_);
  if (a.is_zero() || b.is_zero()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out.c_[i + j] = (out.c_[i + j] + a.c_[i] * b.c_[j]) % a.p_;
    }
  }
  out.trim();
  return out;
}

std::string FpPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c_[i] != 1) os << c_[i];
    if (i > 0) os << (c_[i] != 1 ? "*" : "") << "T" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const unsigned p = a.prime();
  if (a.degree() < b.degree()) return {FpPoly(p), a};
  std::vector<std::uint64_t> r = a.coeffs();
  const auto& d = b.coeffs();
  const std::uint64_t inv = inv_mod(b.leading(), p);
  std::vector<long> q(r.size() - d.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::uint64_t c = r[k + d.size() - 1] * inv % p;
    q[k] = static_cast<long>(c);
    if (c == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) {
      r[k + j] = (r[k + j] + p - c * d[j] % p) % p;
    }
  }
  std::vector<long> rl(r.begin(), r.end());
  return {FpPoly(p, q), FpPoly(p, rl)};
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly x = a;
  FpPoly y = b;
  while (!y.is_zero()) {
    FpPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FpPoly cyclotomic_fp(unsigned p, unsigned d) {
  if (d == 0) throw DomainError("cyclotomic polynomial of order 0");
  // Phi_d = (X^d - 1) / prod_{e | d, e < d} Phi_e, computed over Z.
  std::vector<QPoly> phi(d + 1);
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    std::vector<mpq_class> c(e + 1, 0);
    c[0] = -1;
    c[e] = 1;
    QPoly num{c};
    for (unsigned f = 1; f < e; ++f) {
      if (e % f == 0) num = divmod(num, phi[f]).first;
    }
    phi[e] = num;
  }
  return reduce_mod_p(phi[d], p);
}

FpPoly taylor_shift(const FpPoly& a, long shift) {
  const unsigned p = a.prime();
  FpPoly out(p);
  const FpPoly lin(p, {shift, 1});
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    out = out * lin + FpPoly::constant(p, static_cast<long>(a.coeffs()[i]));
  }
  return out;
}

FpPoly radical(const FpPoly& a) {
  const unsigned p = a.prime();
  if (a.degree() <= 0) return FpPoly::constant(p, 1);
  const FpPoly da = a.derivative();
  if (da.is_zero()) {
    // a(X) = b(X^p) = b(X)^p over F_p.
    std::vector<long> root;
    for (std::size_t i = 0; i < a.coeffs().size(); i += p) {
      root.push_back(static_cast<long>(a.coeffs()[i]));
    }
    return radical(FpPoly(p, root));
  }
  const FpPoly g = gcd(a, da);
  const FpPoly w = divmod(a, g).first.monic();
  const FpPoly rg = radical(g);
  return divmod(w * rg, gcd(w, rg)).first.monic();
}

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& v : c_) v.canonicalize();
  trim();
}

QPoly QPoly::from_integers(const std::vector<long>& coeffs) {
  std::vector<mpq_class> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return QPoly(std::move(c));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::derivative() const {
  std::vector<mpq_class> out;
  for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * static_cast<long>(i));
  return QPoly(std::move(out));
}

mpq_class QPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

QPoly QPoly::pow(unsigned e) const {
  QPoly result = constant(1);
  QPoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

QPoly QPoly::primitive() const {
  if (is_zero()) return *this;
  mpz_class l = 1;
  for (const auto& v : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& v : c_) {
    mpz_class t = v.get_num() * (l / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    ints.push_back(t);
  }
  if (ints.back() < 0) g = -g;
  std::vector<mpq_class> out;
  for (auto& t : ints) out.emplace_back(mpz_class(t / g));
  return QPoly(std::move(out));
}

QPoly QPoly::operator-() const {
  QPoly out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

QPoly& QPoly::operator+=(const QPoly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0);
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& rhs) { return *this += -rhs; }

QPoly& QPoly::operator*=(const mpq_class& c) {
  for (auto& v : c_) v *= c;
  trim();
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(out));
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i > 0) os << "*T" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly(), a};
  std::vector<mpq_class> r = a.coeffs();
  const auto& d = b.coeffs();
  std::vector<mpq_class> q(r.size() - d.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpq_class c = r[k + d.size() - 1] / d.back();
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= c * d[j];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a.primitive();
  QPoly y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    // Pseudo-remainder: lc(y)^{deg x - deg y + 1} x mod y stays integral.
    mpq_class scale = 1;
    for (long i = 0; i <= x.degree() - y.degree(); ++i) scale *= y.leading();
    QPoly r = divmod(x * scale, y).second.primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.primitive();
}

QPoly taylor_shift(const QPoly& a, const mpq_class& shift) {
  QPoly out;
  const QPoly lin({shift, mpq_class(1)});
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    out = out * lin + QPoly::constant(a.coeffs()[i]);
  }
  return out;
}

FpPoly reduce_mod_p(const QPoly& a, unsigned p) {
  std::vector<long> out;
  const mpz_class pz(p);
  for (const auto& v : a.coeffs()) {
    if (mpz_divisible_p(v.get_den_mpz_t(), pz.get_mpz_t())) {
      throw NotInLambda("coefficient " + v.get_str() + " is not " + std::to_string(p) +
                        "-integral");
    }
    mpz_class inv;
    mpz_class den = v.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    mpz_class r = v.get_num() * inv;
    out.push_back(static_cast<long>(mpz_fdiv_ui(r.get_mpz_t(), p)));
  }
  return FpPoly(p, out);
}

}  // namespace iwasawa
