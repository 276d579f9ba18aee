#pragma once

// Residue arithmetic kernels shared by the ring operators. Moduli below 2^32
// run on machine words; anything larger falls back to GMP.

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "iwasawa/padic.hpp"

namespace iwasawa::detail {

struct WordOps {
  using value_type = std::uint64_t;
  std::uint64_t mod;

  value_type load(const Integer& x) const { return mpz_get_ui(x.get_mpz_t()) % mod; }
  Integer store(value_type x) const { return Integer(static_cast<unsigned long>(x)); }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % mod; }
  value_type add(value_type a, value_type b) const {
    const value_type s = a + b;
    return s >= mod ? s - mod : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + mod - b; }
  value_type mul(value_type a, value_type b) const { return (a * b) % mod; }
  value_type neg(value_type a) const { return a == 0 ? 0 : mod - a; }
  value_type from_long(long v) const {
    const long m = static_cast<long>(mod);
    long r = v % m;
    if (r < 0) r += m;
    return static_cast<value_type>(r);
  }
  bool is_zero(value_type a) const { return a == 0; }
};

struct BigOps {
  using value_type = Integer;
  Integer mod;

  value_type load(const Integer& x) const { return reduce(x, mod); }
  Integer store(const value_type& x) const { return x; }
  value_type zero() const { return 0; }
  value_type one() const { return reduce(Integer(1), mod); }
  value_type add(const value_type& a, const value_type& b) const {
    Integer s = a + b;
    if (s >= mod) s -= mod;
    return s;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    Integer s = a - b;
    if (s < 0) s += mod;
    return s;
  }
  value_type mul(const value_type& a, const value_type& b) const { return reduce(a * b, mod); }
  value_type neg(const value_type& a) const { return a == 0 ? Integer(0) : Integer(mod - a); }
  value_type from_long(long v) const { return reduce(Integer(v), mod); }
  bool is_zero(const value_type& a) const { return a == 0; }
};

inline bool fits_word(const Integer& modulus) {
  return modulus <= Integer(static_cast<unsigned long>(std::numeric_limits<std::uint32_t>::max()));
}

template <class F>
decltype(auto) with_ops(const Integer& modulus, F&& f) {
  if (fits_word(modulus)) {
    return std::forward<F>(f)(WordOps{mpz_get_ui(modulus.get_mpz_t())});
  }
  return std::forward<F>(f)(BigOps{modulus});
}

template <class Ops>
std::vector<typename Ops::value_type> load_all(const Ops& ops, const std::vector<Integer>& xs) {
  std::vector<typename Ops::value_type> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(ops.load(x));
  return out;
}

template <class Ops>
std::vector<Integer> store_all(const Ops& ops, const std::vector<typename Ops::value_type>& xs) {
  std::vector<Integer> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(ops.store(x));
  return out;
}

}  // namespace iwasawa::detail
