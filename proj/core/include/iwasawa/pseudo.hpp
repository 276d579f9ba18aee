#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/padic.hpp"
#include "iwasawa/ring.hpp"

namespace iwasawa {

// Finite sum of c_i (1+T)^{a_i} with coefficients mod p^n and p-adic
// exponents known mod p^M. Terms are merged by exponent residue mod p^M.
//
// An exponent may also be recorded exactly (an integer). Merging two terms
// whose exact exponents differ loses information; such a polynomial is
// flagged `lossy` and never takes part in a decisive equality test.
class PseudoPoly {
 public:
  struct Term {
    Integer coeff;                 // in [0, p^n)
    Integer exponent;              // residue in [0, p^M)
    std::optional<Integer> exact;  // the exponent itself, when known exactly
  };

  PseudoPoly(unsigned p, unsigned coeff_precision, unsigned exponent_precision);

  // Terms with exact integer exponents (negative exponents allowed).
  static PseudoPoly from_terms(unsigned p, unsigned coeff_precision, unsigned exponent_precision,
                               const std::vector<std::pair<Integer, Integer>>& coeff_exponent);

  void add_term(const Integer& coeff, const PadicInt& exponent);
  void add_exact_term(const Integer& coeff, const Integer& exponent);

  unsigned prime() const noexcept { return p_; }
  unsigned coeff_precision() const noexcept { return n_; }
  unsigned exponent_precision() const noexcept { return M_; }
  bool lossy() const noexcept { return lossy_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  // Terms in increasing order of exponent residue.
  std::vector<Term> terms() const;

  PseudoPoly with_coeff_precision(unsigned coeff_precision) const;

  PseudoPoly operator-() const;
  PseudoPoly& operator+=(const PseudoPoly& rhs);
  PseudoPoly& operator-=(const PseudoPoly& rhs);
  PseudoPoly& operator*=(const Integer& c);
  friend PseudoPoly operator+(PseudoPoly a, const PseudoPoly& b) { return a += b; }
  friend PseudoPoly operator-(PseudoPoly a, const PseudoPoly& b) { return a -= b; }
  friend PseudoPoly operator*(PseudoPoly a, const Integer& c) { return a *= c; }
  friend PseudoPoly operator*(const PseudoPoly& a, const PseudoPoly& b);

  std::string to_string() const;

 private:
  void insert(const Integer& coeff, const Integer& residue, const std::optional<Integer>& exact);
  void require_compatible(const PseudoPoly& rhs) const;

  unsigned p_;
  unsigned n_;
  unsigned M_;
  bool lossy_ = false;
  std::map<Integer, Term> terms_;
};

enum class Equality { equal, unequal, indecisive };
const char* to_string(Equality e);

// P - Q = 0 mod p^n after merging exponents. Decisive unless an operand (or
// the difference) merged exponents that are known to be distinct.
Equality equal_test(const PseudoPoly& P, const PseudoPoly& Q, unsigned coeff_precision);

// Reduction to R(n, m): b_{[a_i]_m} += c_i. Needs M >= m and n <= coefficient precision.
RingElem to_ring(const PseudoPoly& P, unsigned coeff_precision, unsigned level);

enum class PseudoOperator { D, U, gamma };
// D: coefficients times exponents (coefficient precision min(n, M)).
// U: drops terms with p | a.  gamma: averages a -> eta a over mu_{p-1}.
PseudoPoly operator_apply(const PseudoPoly& P, PseudoOperator kind, long delta = 0);

// Sum over unit exponents of c_i omega^delta(a_i) (1+T)^{e_{a_i}}, e_a known
// mod p^{M_out}, M_out <= M-1.
PseudoPoly Gamma_pseudo(const PseudoPoly& P, long delta, const Integer& kappa, unsigned exponent_out);

// sum_{a_i unit} c_i omega^delta(a_i) <a_i>^s  vs  sum_i c_i a_i^{k_j(s, delta)}, mod p^{j+1}.
// Needs n, M and the precision of s all at least j+1.
bool interp_check(const PseudoPoly& P, long delta, const PadicInt& s, unsigned j);

}  // namespace iwasawa
