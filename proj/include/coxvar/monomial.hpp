#pragma once

// Sparse monomials over hyperplane variables, Varchenko factorizations
// prod (1 - m_i^2)^{e_i}, and sparse integer polynomials for the symbolic
// determinant anchor.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coxvar/modular.hpp"

namespace coxvar {

using VarId = std::uint32_t;

class Monomial {
 public:
  using Term = std::pair<VarId, std::uint32_t>;  // (variable, exponent > 0)

  Monomial() = default;
  static Monomial variable(VarId v, std::uint32_t exp = 1);
  // Builds from arbitrary (var, exp) pairs; merges duplicates, drops zeros.
  static Monomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_one() const { return terms_.empty(); }
  std::uint64_t degree() const;
  std::uint32_t exponent(VarId v) const;

  Monomial operator*(const Monomial& o) const;
  Monomial pow(std::uint32_t k) const;

  // Replace each variable v with substitution[v]; collapses merged variables.
  Monomial substitute(std::span<const VarId> substitution) const;

  // Canonical total order: total degree first, then lexicographic on the
  // sorted (variable, exponent) list.
  std::strong_ordering operator<=>(const Monomial& o) const;
  bool operator==(const Monomial& o) const = default;

  // "a1^2a3" style; `scale` multiplies every exponent (2 renders a(E)^2).
  std::string to_string(const std::vector<std::string>& names, std::uint32_t scale = 1) const;

 private:
  std::vector<Term> terms_;  // sorted by variable, exponents > 0
};

// Values for a modular evaluation; one optional slot per variable id.
struct ModPoint {
  u64 p = 0;
  std::vector<std::optional<u64>> values;
};

u64 evaluate_mod_p(const Monomial& m, const ModPoint& point);

// Represents prod_i (1 - monomial_i^2)^{exponent_i}. The stored monomial is
// the edge weight a(E) itself; squaring happens at render and evaluation time.
struct Factor {
  Monomial monomial;
  std::uint64_t exponent = 0;
  bool operator==(const Factor&) const = default;
};

class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(std::vector<Factor> factors) : factors_(std::move(factors)) {}

  const std::vector<Factor>& factors() const { return factors_; }
  void add(Monomial m, std::uint64_t exponent) { factors_.push_back({std::move(m), exponent}); }
  bool empty() const { return factors_.empty(); }

  // Sorted by monomial order, equal monomials merged by summing exponents.
  Factorization normalized() const;
  bool is_normalized() const;

  Factorization substitute(std::span<const VarId> substitution) const;
  Factorization scaled(std::uint64_t k) const;

  // Sum of exponent * 2 * deg(monomial): total degree of the expanded product.
  std::uint64_t total_degree() const;

  bool operator==(const Factorization&) const = default;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<Factor> factors_;
};

inline Factorization factorization_normalize(const Factorization& f) { return f.normalized(); }

// prod (1 - eval(m)^2)^e mod p. Throws UnassignedVariable.
u64 factorization_eval_mod_p(const Factorization& f, const ModPoint& point);

// Sparse multivariate polynomial with arbitrary-precision integer coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const mpz_class& c);
  static Polynomial from_monomial(const Monomial& m, const mpz_class& c = 1);

  const std::map<Monomial, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint64_t degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial pow(std::uint64_t k) const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  // Exact quotient by (1 - m) with deg m > 0, or nullopt if not divisible.
  std::optional<Polynomial> divide_by_one_minus(const Monomial& m) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& m, const mpz_class& c);
  std::map<Monomial, mpz_class> terms_;
};

// Fully expanded prod (1 - m_i^2)^{e_i}.
Polynomial expand(const Factorization& f);

// Divides p by every factor of f (with multiplicity); true iff every division
// is exact and the final quotient is 1.
bool trial_divide(const Polynomial& p, const Factorization& f);

}  // namespace coxvar
