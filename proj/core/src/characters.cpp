#include "iwasawa/characters.hpp"

#include <numeric>
#include <sstream>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

struct CyclicFactor {
  unsigned long generator;  // residue mod d
  unsigned order;
};

std::vector<std::pair<unsigned, unsigned>> factorize(unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

unsigned long pow_mod_ul(unsigned long base, unsigned long e, unsigned long mod) {
  unsigned long result = 1 % mod;
  base %= mod;
  while (e) {
    if (e & 1) result = result * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return result;
}

// Order of a unit x mod n by direct iteration (n is small).
unsigned multiplicative_order(unsigned long x, unsigned long n) {
  unsigned k = 1;
  unsigned long y = x % n;
  while (y != 1 % n) {
    y = y * x % n;
    ++k;
  }
  return k;
}

// Generators of (Z/d)^* as residues mod d, one cyclic factor each.
std::vector<CyclicFactor> unit_group_generators(unsigned d) {
  std::vector<CyclicFactor> out;
  for (const auto& [q, e] : factorize(d)) {
    unsigned long qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;
    const unsigned long rest = d / qe;
    // Lift a local generator to mod d, congruent to 1 modulo the other factors.
    auto lift = [&](unsigned long local) {
      for (unsigned long x = local; x < d; x += qe) {
        if (x % rest == 1 % rest) return x;
      }
      return local;
    };
    if (q == 2) {
      if (e == 2) out.push_back({lift(3), 2});
      if (e >= 3) {
        out.push_back({lift(qe - 1), 2});
        out.push_back({lift(5), static_cast<unsigned>(qe / 4)});
      }
      continue;
    }
    const unsigned long phi = qe / q * (q - 1);
    for (unsigned long g = 2; g < qe; ++g) {
      if (g % q == 0) continue;
      if (multiplicative_order(g, qe) == phi) {
        out.push_back({lift(g), static_cast<unsigned>(phi)});
        break;
      }
    }
  }
  return out;
}

bool table_primitive(unsigned d, const std::vector<long>& table, unsigned* witness) {
  for (unsigned dp = 1; dp < d; ++dp) {
    if (d % dp) continue;
    bool nontrivial = false;
    for (unsigned a = 1; a < d && !nontrivial; a += dp) {
      if (std::gcd(a, d) == 1 && table[a] != 0) nontrivial = true;
    }
    if (!nontrivial) {
      if (witness) *witness = dp;
      return false;
    }
  }
  return true;
}

}  // namespace

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (const auto& [q, e] : factorize(n)) result = result / q * (q - 1);
  return result;
}

DirichletCharacter::DirichletCharacter(unsigned p, unsigned d, std::vector<long> table)
    : p_(p), d_(d), g_(primitive_root(p)), table_(std::move(table)) {
  const long half = static_cast<long>(p - 1) / 2;
  parity_ = (d_ >= 3 && table_[d_ - 1] == half) ? -1 : 1;
  long g = static_cast<long>(p - 1);
  for (long t : table_) {
    if (t > 0) g = std::gcd(g, t);
  }
  order_ = static_cast<unsigned>((p - 1) / g);
}

DirichletCharacter DirichletCharacter::build_validate(unsigned p, unsigned d,
                                                      const std::map<unsigned, long>& exponents) {
  require_odd_prime(p);
  if (d == 0) throw CharacterError("conductor must be positive", "d=0");
  if (d % p == 0) {
    throw CharacterError("conductor " + std::to_string(d) + " is divisible by p=" +
                             std::to_string(p),
                         "d=" + std::to_string(d));
  }
  const long pm1 = static_cast<long>(p) - 1;
  std::vector<long> table(d, -1);
  if (d == 1) {
    table[0] = 0;
    return DirichletCharacter(p, 1, table);
  }
  for (const auto& [a, t] : exponents) {
    if (a == 0 || a >= d || std::gcd(a, d) != 1) {
      throw CharacterError("table entry " + std::to_string(a) + " is not a unit in [1, " +
                               std::to_string(d) + ")",
                           "a=" + std::to_string(a));
    }
    table[a] = ((t % pm1) + pm1) % pm1;
  }
  for (unsigned a = 1; a < d; ++a) {
    if (std::gcd(a, d) == 1 && table[a] < 0) {
      throw CharacterError("table misses the unit " + std::to_string(a),
                           "a=" + std::to_string(a));
    }
  }
  for (unsigned a = 1; a < d; ++a) {
    if (table[a] < 0) continue;
    for (unsigned b = a; b < d; ++b) {
      if (table[b] < 0) continue;
      const unsigned long ab = static_cast<unsigned long>(a) * b % d;
      if (table[ab] != (table[a] + table[b]) % pm1) {
        throw CharacterError("table is not multiplicative: t(" + std::to_string(a) + "*" +
                                 std::to_string(b) + ") != t(" + std::to_string(a) + ") + t(" +
                                 std::to_string(b) + ")",
                             "a=" + std::to_string(a) + ",b=" + std::to_string(b));
      }
    }
  }
  unsigned witness = 0;
  if (!table_primitive(d, table, &witness)) {
    throw CharacterError("table mod " + std::to_string(d) + " is induced from modulus " +
                             std::to_string(witness),
                         "d'=" + std::to_string(witness));
  }
  return DirichletCharacter(p, d, table);
}

DirichletCharacter DirichletCharacter::trivial(unsigned p) { return build_validate(p, 1, {}); }

DirichletCharacter DirichletCharacter::quadratic(unsigned p, long discriminant) {
  if (discriminant == 0 || discriminant == 1) {
    throw CharacterError("quadratic character needs a fundamental discriminant",
                         "D=" + std::to_string(discriminant));
  }
  const unsigned d = static_cast<unsigned>(discriminant < 0 ? -discriminant : discriminant);
  std::map<unsigned, long> exps;
  for (unsigned a = 1; a < d; ++a) {
    if (std::gcd(a, d) != 1) continue;
    const mpz_class az(a);
    const int k = mpz_si_kronecker(discriminant, az.get_mpz_t());
    exps[a] = k == 1 ? 0 : static_cast<long>(p - 1) / 2;
  }
  return build_validate(p, d, exps);
}

bool DirichletCharacter::is_unit(const Integer& a) const {
  if (d_ == 1) return true;
  const unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), d_);
  return std::gcd(r, static_cast<unsigned long>(d_)) == 1;
}

long DirichletCharacter::exponent(const Integer& a) const {
  if (d_ == 1) return 0;
  const long t = table_[mpz_fdiv_ui(a.get_mpz_t(), d_)];
  if (t < 0) throw DomainError("chi is not defined on the non-unit " + a.get_str());
  return t;
}

Integer DirichletCharacter::value(const Integer& a, unsigned precision) const {
  if (!is_unit(a)) return 0;
  if (precision == 0) return 0;
  return teichmuller(g_, p_, precision).pow(exponent(a)).value();
}

std::string DirichletCharacter::label() const {
  if (d_ == 1) return "1";
  std::ostringstream os;
  os << "chi_" << d_ << "[";
  bool first = true;
  for (unsigned a = 1; a < d_; ++a) {
    if (table_[a] < 0) continue;
    if (!first) os << ",";
    first = false;
    os << a << ":" << table_[a];
  }
  os << "]";
  return os.str();
}

ThetaCharacter ThetaCharacter::make(const DirichletCharacter& chi, long delta) {
  const long pm1 = static_cast<long>(chi.prime()) - 1;
  const long dl = ((delta % pm1) + pm1) % pm1;
  const int omega_sign = ((dl + 1) % 2 == 0) ? 1 : -1;
  if (chi.parity() * omega_sign != 1) {
    throw CharacterError("theta = " + chi.label() + " * omega^" + std::to_string(dl + 1) +
                             " is odd",
                         "delta=" + std::to_string(dl));
  }
  if (chi.is_trivial() && (dl + 1) % pm1 == 0) {
    throw CharacterError("theta is the trivial character", "delta=" + std::to_string(dl));
  }
  return ThetaCharacter{chi, dl};
}

ThetaCharacter ThetaCharacter::omega_power(unsigned p, long j) {
  return make(DirichletCharacter::trivial(p), j - 1);
}

std::string ThetaCharacter::label() const {
  const long pm1 = static_cast<long>(chi.prime()) - 1;
  const long j = (delta + 1) % pm1;
  std::string w = "omega^" + std::to_string(j);
  return chi.is_trivial() ? w : chi.label() + "*" + w;
}

std::vector<DirichletCharacter> primitive_characters(unsigned p, unsigned d) {
  require_odd_prime(p);
  if (d % p == 0) throw DomainError("conductor divisible by p");
  if (d == 1) return {DirichletCharacter::trivial(p)};
  const long pm1 = static_cast<long>(p) - 1;
  const auto gens = unit_group_generators(d);
  // Discrete logs of every unit with respect to the generators.
  std::vector<std::vector<unsigned>> logs(d);
  std::vector<unsigned> idx(gens.size(), 0);
  while (true) {
    unsigned long a = 1 % d;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      a = a * pow_mod_ul(gens[i].generator, idx[i], d) % d;
    }
    logs[a] = idx;
    std::size_t i = 0;
    while (i < gens.size() && ++idx[i] == gens[i].order) idx[i++] = 0;
    if (i == gens.size()) break;
  }
  // Admissible exponents per generator: o * t = 0 mod p-1.
  std::vector<std::vector<long>> choices(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const long step = pm1 / std::gcd(pm1, static_cast<long>(gens[i].order));
    for (long t = 0; t < pm1; t += step) choices[i].push_back(t);
  }
  std::vector<DirichletCharacter> out;
  std::vector<std::size_t> pick(gens.size(), 0);
  while (true) {
    std::vector<long> table(d, -1);
    for (unsigned a = 1; a < d; ++a) {
      if (std::gcd(a, d) != 1) continue;
      long t = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) t += logs[a][i] * choices[i][pick[i]];
      table[a] = t % pm1;
    }
    if (table_primitive(d, table, nullptr)) {
      std::map<unsigned, long> exps;
      for (unsigned a = 1; a < d; ++a) {
        if (table[a] >= 0) exps[a] = table[a];
      }
      out.push_back(DirichletCharacter::build_validate(p, d, exps));
    }
    std::size_t i = gens.size();
    // Lexicographic order with the first generator most significant.
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (gens.empty()) return out;
  }
}

std::vector<ThetaCharacter> enumerate_even_theta(unsigned p, unsigned d) {
  require_odd_prime(p);
  if (d == 0 || d % p == 0) throw DomainError("conductor must be positive and prime to p");
  std::vector<ThetaCharacter> out;
  const long pm1 = static_cast<long>(p) - 1;
  for (unsigned dp = 1; dp <= d; ++dp) {
    if (d % dp) continue;
    for (const auto& chi : primitive_characters(p, dp)) {
      for (long delta = 0; delta < pm1; ++delta) {
        const int omega_sign = ((delta + 1) % 2 == 0) ? 1 : -1;
        if (chi.parity() * omega_sign != 1) continue;
        if (chi.is_trivial() && (delta + 1) % pm1 == 0) continue;
        out.push_back(ThetaCharacter{chi, delta});
      }
    }
  }
  return out;
}

}  // namespace iwasawa
