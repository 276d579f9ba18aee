#include "iwasawa/errors.hpp"
#include "iwasawa/ring.hpp"

namespace iwasawa {

namespace intpoly {

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
  IntPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

IntPoly scale(const IntPoly& a, const Integer& c) {
  IntPoly out(a);
  for (auto& v : out) v *= c;
  trim(out);
  return out;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

IntPoly pow(const IntPoly& a, unsigned e) {
  IntPoly result{1};
  IntPoly base = a;
  while (e) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

IntPoly omega(unsigned p, unsigned level) {
  const Integer pk = prime_power(p, level);
  const unsigned long deg = mpz_get_ui(pk.get_mpz_t());
  IntPoly out(deg + 1);
  for (unsigned long j = 0; j <= deg; ++j) {
    mpz_bin_uiui(out[j].get_mpz_t(), deg, j);
  }
  out[0] = 0;
  return out;
}

IntPoly divide_exact(const IntPoly& num, const IntPoly& den) {
  IntPoly d = den;
  trim(d);
  if (d.empty() || d.back() != 1) throw DomainError("divide_exact needs a monic divisor");
  IntPoly r = num;
  trim(r);
  if (r.size() < d.size()) {
    if (!r.empty()) throw DomainError("divide_exact: nonzero remainder");
    return {};
  }
  IntPoly q(r.size() - d.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer c = r[k + d.size() - 1];
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= c * d[j];
  }
  trim(r);
  if (!r.empty()) throw DomainError("divide_exact: nonzero remainder");
  trim(q);
  return q;
}

}  // namespace intpoly

namespace {

IntPoly divide_by_integer(const IntPoly& a, unsigned p) {
  IntPoly out(a);
  for (auto& c : out) {
    if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) {
      throw DomainError("coefficient " + c.get_str() + " is not divisible by " + std::to_string(p));
    }
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
  }
  return out;
}

IntPoly monomial(std::size_t degree) {
  IntPoly out(degree + 1, 0);
  out[degree] = 1;
  return out;
}

}  // namespace

std::vector<IntPoly> decompose_T_power(unsigned n, unsigned p) {
  using namespace intpoly;
  require_odd_prime(p);
  if (prime_power(p, n) > 4096) {
    throw ResourceLimit("decompose_T_power: p^n = " + prime_power(p, n).get_str() +
                        " is beyond the supported degree");
  }
  std::vector<IntPoly> deltas{{1}};
  for (unsigned level = 0; level < n; ++level) {
    const IntPoly w_n = omega(p, level);
    const IntPoly w_next = omega(p, level + 1);
    const IntPoly ratio = divide_exact(w_next, w_n);
    const std::size_t pn = mpz_get_ui(prime_power(p, level).get_mpz_t());
    const IntPoly r = divide_by_integer(sub(monomial(pn * (p - 1)), ratio), p);
    const IntPoly q = divide_by_integer(sub(ratio, pow(w_n, p - 1)), p);
    const IntPoly w_n_pm2 = pow(w_n, p - 2);

    std::vector<IntPoly> next(level + 2);
    next[0] = deltas[0];
    for (unsigned j = 1; j <= level + 1; ++j) {
      IntPoly term;
      if (j <= level) {
        // omega_{n-j} * omega_n^{p-1} = omega_{n-j+1} * (omega_{n-j} omega_n^{p-2} omega_n / omega_{n-j+1})
        const IntPoly cofactor =
            mul(mul(omega(p, level - j), w_n_pm2), divide_exact(w_n, omega(p, level - j + 1)));
        term = mul(deltas[j], cofactor);
      }
      const IntPoly lift = j - 1 >= 1 ? add(q, r) : r;
      next[j] = add(term, mul(lift, deltas[j - 1]));
    }
    deltas = std::move(next);
  }
  return deltas;
}

IntPoly decomposition_residual(unsigned n, unsigned p, const std::vector<IntPoly>& deltas) {
  using namespace intpoly;
  if (deltas.size() != n + 1) throw DomainError("decomposition needs n+1 polynomials");
  const std::size_t pn = mpz_get_ui(prime_power(p, n).get_mpz_t());
  IntPoly acc = monomial(pn);
  for (unsigned j = 0; j <= n; ++j) {
    acc = sub(acc, scale(mul(omega(p, n - j), deltas[j]), prime_power(p, j)));
  }
  return acc;
}

}  // namespace iwasawa
