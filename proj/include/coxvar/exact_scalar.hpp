#pragma once

// Exact scalar rings used by the geometric representation of Coxeter groups.
//
// Four variants share one value type:
//   Integer      arbitrary precision (crystallographic Cartan entries)
//   Rational     arbitrary precision
//   Golden       a + b*phi over the rationals, phi^2 = phi + 1 (H3, H4, I2(5))
//   CycloReal    rational polynomial in theta = 2cos(pi/m), reduced modulo the
//                minimal polynomial of theta (generic dihedral groups)
//
// Binary operations require both operands to be in the same variant (and for
// CycloReal, the same m); otherwise Error{MixedRings} is thrown.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace coxvar {

// Dense integer polynomial, coefficient i multiplies x^i. Trailing zeros trimmed.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);

  static IntPoly monomial(std::size_t degree, const mpz_class& c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const = default;

  // Division by a monic polynomial; exact integer arithmetic.
  std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& divisor) const;

  double evaluate(double x) const;
  std::string to_string(const char* var = "x") const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

// n-th cyclotomic polynomial, by exact division of x^n - 1.
IntPoly cyclotomic_polynomial(unsigned n);

// Minimal polynomial of 2cos(pi/m) over Q, m >= 3. Monic, degree phi(2m)/2.
IntPoly minimal_polynomial_2cos(unsigned m);

struct Golden {
  mpq_class a;  // rational part
  mpq_class b;  // coefficient of phi

  bool operator==(const Golden& o) const { return a == o.a && b == o.b; }
};

class CycloReal {
 public:
  // Zero in the ring Q[theta], theta = 2cos(pi/m).
  explicit CycloReal(unsigned m);
  CycloReal(unsigned m, std::vector<mpq_class> coeffs);

  static CycloReal theta(unsigned m);

  unsigned m() const { return m_; }
  std::size_t degree() const;  // degree of the minimal polynomial
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  bool operator==(const CycloReal& o) const { return m_ == o.m_ && coeffs_ == o.coeffs_; }

 private:
  friend class ExactScalar;
  void reduce();
  unsigned m_;
  std::shared_ptr<const IntPoly> minpoly_;
  std::vector<mpq_class> coeffs_;  // length == degree(), always reduced
};

class ExactScalar {
 public:
  enum class Ring { Integer, Rational, Golden, CycloReal };

  ExactScalar() : value_(mpz_class(0)) {}

  static ExactScalar integer(const mpz_class& v) { return ExactScalar(Storage(v)); }
  static ExactScalar integer(long v) { return ExactScalar(Storage(mpz_class(v))); }
  static ExactScalar rational(const mpq_class& v);
  static ExactScalar golden(const mpq_class& a, const mpq_class& b);
  static ExactScalar phi() { return golden(0, 1); }
  static ExactScalar cyclo(const CycloReal& v) { return ExactScalar(Storage(v)); }

  // The same integer, expressed in the ring of `like`.
  static ExactScalar from_int_like(long v, const ExactScalar& like);

  Ring ring() const { return static_cast<Ring>(value_.index()); }
  bool is_zero() const;

  ExactScalar operator+(const ExactScalar& o) const;
  ExactScalar operator-(const ExactScalar& o) const;
  ExactScalar operator*(const ExactScalar& o) const;
  ExactScalar operator/(const ExactScalar& o) const;
  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  // Throws MixedRings when the variants differ.
  bool operator==(const ExactScalar& o) const;

  // Canonical order within a ring (lexicographic on canonical components).
  std::strong_ordering compare(const ExactScalar& o) const;

  // Canonical, injective text form; also used as a hashing key.
  std::string to_string() const;

  double approx() const;

  const mpz_class* as_integer() const { return std::get_if<mpz_class>(&value_); }
  const mpq_class* as_rational() const { return std::get_if<mpq_class>(&value_); }
  const Golden* as_golden() const { return std::get_if<Golden>(&value_); }
  const CycloReal* as_cyclo() const { return std::get_if<CycloReal>(&value_); }

 private:
  using Storage = std::variant<mpz_class, mpq_class, Golden, CycloReal>;
  explicit ExactScalar(Storage v) : value_(std::move(v)) {}
  void require_same_ring(const ExactScalar& o, const char* op) const;

  Storage value_;
};

const char* to_string(ExactScalar::Ring ring);

}  // namespace coxvar
