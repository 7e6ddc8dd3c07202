#include "coxvar/exact_scalar.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "coxvar/error.hpp"

namespace coxvar {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(std::size_t degree, const mpz_class& c) {
  std::vector<mpz_class> v(degree + 1, 0);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<mpz_class> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<mpz_class> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] -= o.coeffs_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpz_class> r(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  return IntPoly(std::move(r));
}

std::pair<IntPoly, IntPoly> IntPoly::divmod_monic(const IntPoly& divisor) const {
  if (divisor.is_zero() || divisor.coeffs_.back() != 1)
    throw Error(ErrorKind::Internal, "divmod_monic: divisor must be monic");
  std::vector<mpz_class> rem = coeffs_;
  const std::size_t dd = divisor.coeffs_.size() - 1;
  if (rem.size() <= dd) return {IntPoly{}, *this};
  std::vector<mpz_class> quot(rem.size() - dd, 0);
  for (std::size_t i = rem.size(); i-- > dd;) {
    const mpz_class c = rem[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= c * divisor.coeffs_[j];
  }
  return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

double IntPoly::evaluate(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i].get_d();
  return acc;
}

std::string IntPoly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const mpz_class& c = coeffs_[i];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

IntPoly cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw Error(ErrorKind::Internal, "cyclotomic_polynomial(0)");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<mpz_class> c(n + 1, 0);
  c[0] = -1;
  c[n] = 1;
  IntPoly p(std::move(c));
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [q, r] = p.divmod_monic(cyclotomic_polynomial(d));
    if (!r.is_zero()) throw Error(ErrorKind::Internal, "cyclotomic division left a remainder");
    p = q;
  }
  return p;
}

IntPoly minimal_polynomial_2cos(unsigned m) {
  if (m < 3) throw Error(ErrorKind::UnsupportedType, "minimal_polynomial_2cos needs m >= 3");
  // 2cos(pi/m) = z + 1/z with z a primitive 2m-th root of unity. Phi_2m is
  // palindromic of degree 2h, so z^-h Phi_2m(z) = c_0 + sum_k c_k (z^k + z^-k),
  // and z^k + z^-k = L_k(x) with L_0 = 2, L_1 = x, L_{k+1} = x L_k - L_{k-1}.
  const IntPoly phi = cyclotomic_polynomial(2 * m);
  const int h = phi.degree() / 2;
  std::vector<IntPoly> lucas;
  lucas.push_back(IntPoly({mpz_class(2)}));
  lucas.push_back(IntPoly::monomial(1));
  for (int k = 2; k <= h; ++k) lucas.push_back(IntPoly::monomial(1) * lucas[k - 1] - lucas[k - 2]);
  IntPoly result({phi.coeff(static_cast<std::size_t>(h))});
  for (int k = 1; k <= h; ++k)
    result = result + IntPoly({phi.coeff(static_cast<std::size_t>(h + k))}) * lucas[k];
  return result;
}

// ---------------------------------------------------------------- CycloReal

namespace {

std::shared_ptr<const IntPoly> cached_minpoly(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const IntPoly>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const IntPoly>(minimal_polynomial_2cos(m));
  cache.emplace(m, p);
  return p;
}

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qtrim(r);
  return r;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qtrim(r);
  return r;
}

std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
  qtrim(a);
  if (b.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpq_class c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  qtrim(q);
  qtrim(a);
  return {q, a};
}

QPoly to_qpoly(const IntPoly& p) {
  QPoly r;
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

}  // namespace

CycloReal::CycloReal(unsigned m) : m_(m), minpoly_(cached_minpoly(m)) {
  coeffs_.assign(static_cast<std::size_t>(minpoly_->degree()), 0);
}

CycloReal::CycloReal(unsigned m, std::vector<mpq_class> coeffs)
    : m_(m), minpoly_(cached_minpoly(m)), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  reduce();
}

CycloReal CycloReal::theta(unsigned m) { return CycloReal(m, {0, 1}); }

std::size_t CycloReal::degree() const { return static_cast<std::size_t>(minpoly_->degree()); }

void CycloReal::reduce() {
  const std::size_t d = degree();
  const auto& mp = minpoly_->coeffs();
  for (std::size_t i = coeffs_.size(); i-- > d;) {
    const mpq_class c = coeffs_[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) coeffs_[i - d + j] -= c * mpq_class(mp[j]);
  }
  coeffs_.resize(d, 0);
}

// ---------------------------------------------------------------- ExactScalar

const char* to_string(ExactScalar::Ring ring) {
  switch (ring) {
    case ExactScalar::Ring::Integer: return "integer";
    case ExactScalar::Ring::Rational: return "rational";
    case ExactScalar::Ring::Golden: return "golden";
    case ExactScalar::Ring::CycloReal: return "cyclo-real";
  }
  return "?";
}

ExactScalar ExactScalar::rational(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  return ExactScalar(Storage(c));
}

ExactScalar ExactScalar::golden(const mpq_class& a, const mpq_class& b) {
  Golden g{a, b};
  g.a.canonicalize();
  g.b.canonicalize();
  return ExactScalar(Storage(g));
}

ExactScalar ExactScalar::from_int_like(long v, const ExactScalar& like) {
  switch (like.ring()) {
    case Ring::Integer: return integer(v);
    case Ring::Rational: return rational(mpq_class(v));
    case Ring::Golden: return golden(v, 0);
    case Ring::CycloReal: {
      CycloReal c(like.as_cyclo()->m());
      c.coeffs_[0] = v;
      return cyclo(c);
    }
  }
  throw Error(ErrorKind::Internal, "unknown ring");
}

void ExactScalar::require_same_ring(const ExactScalar& o, const char* op) const {
  if (value_.index() != o.value_.index())
    throw Error(ErrorKind::MixedRings, std::string(op) + " between " + coxvar::to_string(ring()) +
                                           " and " + coxvar::to_string(o.ring()));
  if (ring() == Ring::CycloReal && as_cyclo()->m() != o.as_cyclo()->m())
    throw Error(ErrorKind::MixedRings, std::string(op) + " between cyclo-real rings of m=" +
                                           std::to_string(as_cyclo()->m()) + " and m=" +
                                           std::to_string(o.as_cyclo()->m()));
}

bool ExactScalar::is_zero() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Golden>) {
          return v.a == 0 && v.b == 0;
        } else if constexpr (std::is_same_v<T, CycloReal>) {
          for (const auto& c : v.coeffs()) {
            if (c != 0) return false;
          }
          return true;
        } else {
          return v == 0;
        }
      },
      value_);
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
  require_same_ring(o, "add");
  switch (ring()) {
    case Ring::Integer: return integer(*as_integer() + *o.as_integer());
    case Ring::Rational: return rational(*as_rational() + *o.as_rational());
    case Ring::Golden: return golden(as_golden()->a + o.as_golden()->a, as_golden()->b + o.as_golden()->b);
    case Ring::CycloReal: {
      CycloReal r = *as_cyclo();
      for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += o.as_cyclo()->coeffs_[i];
      return cyclo(r);
    }
  }
  throw Error(ErrorKind::Internal, "unknown ring");
}

ExactScalar ExactScalar::operator-() const {
  switch (ring()) {
    case Ring::Integer: return integer(-*as_integer());
    case Ring::Rational: return rational(-*as_rational());
    case Ring::Golden: return golden(-as_golden()->a, -as_golden()->b);
    case Ring::CycloReal: {
      CycloReal r = *as_cyclo();
      for (auto& c : r.coeffs_) c = -c;
      return cyclo(r);
    }
  }
  throw Error(ErrorKind::Internal, "unknown ring");
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const {
  require_same_ring(o, "sub");
  return *this + (-o);
}

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
  require_same_ring(o, "mul");
  switch (ring()) {
    case Ring::Integer: return integer(*as_integer() * *o.as_integer());
    case Ring::Rational: return rational(*as_rational() * *o.as_rational());
    case Ring::Golden: {
      // phi^2 = phi + 1
      const Golden& x = *as_golden();
      const Golden& y = *o.as_golden();
      return golden(x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b);
    }
    case Ring::CycloReal: {
      const CycloReal& x = *as_cyclo();
      std::vector<mpq_class> prod(2 * x.coeffs_.size(), 0);
      for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < x.coeffs_.size(); ++j)
          prod[i + j] += x.coeffs_[i] * o.as_cyclo()->coeffs_[j];
      return cyclo(CycloReal(x.m(), std::move(prod)));
    }
  }
  throw Error(ErrorKind::Internal, "unknown ring");
}

ExactScalar ExactScalar::operator/(const ExactScalar& o) const {
  require_same_ring(o, "div");
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by zero");
  switch (ring()) {
    case Ring::Integer:
      throw Error(ErrorKind::NotAField, "division in the integer ring");
    case Ring::Rational: return rational(*as_rational() / *o.as_rational());
    case Ring::Golden: {
      // (a + b phi)^-1 = (a + b - b phi) / (a^2 + ab - b^2)
      const Golden& y = *o.as_golden();
      const mpq_class norm = y.a * y.a + y.a * y.b - y.b * y.b;
      const ExactScalar inv = golden((y.a + y.b) / norm, -y.b / norm);
      return *this * inv;
    }
    case Ring::CycloReal: {
      // Inverse by the extended Euclidean algorithm against the minimal polynomial.
      const CycloReal& y = *o.as_cyclo();
      QPoly r0 = to_qpoly(*y.minpoly_);
      QPoly r1 = y.coeffs_;
      qtrim(r1);
      QPoly s0;  // coefficient of y in r0
      QPoly s1{1};
      while (r1.size() > 1) {
        auto [q, r] = qdivmod(r0, r1);
        QPoly s = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
      }
      // r1 is a nonzero constant since the minimal polynomial is irreducible.
      for (auto& c : s1) c /= r1[0];
      return *this * cyclo(CycloReal(y.m(), s1));
    }
  }
  throw Error(ErrorKind::Internal, "unknown ring");
}

bool ExactScalar::operator==(const ExactScalar& o) const {
  require_same_ring(o, "eq");
  return value_ == o.value_;
}

std::strong_ordering ExactScalar::compare(const ExactScalar& o) const {
  require_same_ring(o, "compare");
  auto cmpq = [](const mpq_class& x, const mpq_class& y) {
    const int c = cmp(x, y);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  };
  switch (ring()) {
    case Ring::Integer: {
      const int c = cmp(*as_integer(), *o.as_integer());
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case Ring::Rational: return cmpq(*as_rational(), *o.as_rational());
    case Ring::Golden: {
      auto c = cmpq(as_golden()->a, o.as_golden()->a);
      return c != 0 ? c : cmpq(as_golden()->b, o.as_golden()->b);
    }
    case Ring::CycloReal: {
      const auto& x = as_cyclo()->coeffs();
      const auto& y = o.as_cyclo()->coeffs();
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto c = cmpq(x[i], y[i]);
        if (c != 0) return c;
      }
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

std::string ExactScalar::to_string() const {
  switch (ring()) {
    case Ring::Integer: return as_integer()->get_str();
    case Ring::Rational: return as_rational()->get_str();
    case Ring::Golden: {
      const Golden& g = *as_golden();
      if (g.b == 0) return g.a.get_str();
      std::string s = g.a == 0 ? "" : g.a.get_str() + (g.b < 0 ? "-" : "+");
      const mpq_class mag = (g.a == 0) ? g.b : mpq_class(abs(g.b));
      if (mag == 1) return s + "phi";
      if (mag == -1) return s + "-phi";
      return s + mag.get_str() + "*phi";
    }
    case Ring::CycloReal: {
      std::string s = "[m=" + std::to_string(as_cyclo()->m()) + ":";
      for (const auto& c : as_cyclo()->coeffs()) s += " " + c.get_str();
      return s + "]";
    }
  }
  return "?";
}

double ExactScalar::approx() const {
  switch (ring()) {
    case Ring::Integer: return as_integer()->get_d();
    case Ring::Rational: return as_rational()->get_d();
    case Ring::Golden: return as_golden()->a.get_d() + as_golden()->b.get_d() * (1.0 + std::sqrt(5.0)) / 2.0;
    case Ring::CycloReal: {
      const double th = 2.0 * std::cos(M_PI / as_cyclo()->m());
      double acc = 0.0;
      const auto& c = as_cyclo()->coeffs();
      for (std::size_t i = c.size(); i-- > 0;) acc = acc * th + c[i].get_d();
      return acc;
    }
  }
  return 0.0;
}

}  // namespace coxvar
