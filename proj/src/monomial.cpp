#include "coxvar/monomial.hpp"

#include <algorithm>
#include <sstream>

#include "coxvar/error.hpp"

namespace coxvar {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(VarId v, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.terms_.push_back({v, exp});
  return m;
}

Monomial Monomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  Monomial m;
  for (const auto& [v, e] : terms) {
    if (e == 0) continue;
    if (!m.terms_.empty() && m.terms_.back().first == v) {
      m.terms_.back().second += e;
    } else {
      m.terms_.push_back({v, e});
    }
  }
  return m;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d += t.second;
  return d;
}

std::uint32_t Monomial::exponent(VarId v) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{v, 0});
  return (it != terms_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      r.terms_.push_back(*b++);
    } else {
      r.terms_.push_back({a->first, a->second + b->second});
      ++a;
      ++b;
    }
  }
  return r;
}

Monomial Monomial::pow(std::uint32_t k) const {
  if (k == 0) return {};
  Monomial r = *this;
  for (auto& t : r.terms_) t.second *= k;
  return r;
}

Monomial Monomial::substitute(std::span<const VarId> substitution) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [v, e] : terms_) {
    if (v >= substitution.size()) throw Error(ErrorKind::UnassignedVariable, "substitution misses variable " + std::to_string(v));
    out.push_back({substitution[v], e});
  }
  return from_terms(std::move(out));
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  if (auto c = degree() <=> o.degree(); c != 0) return c;
  return terms_ <=> o.terms_;
}

std::string Monomial::to_string(const std::vector<std::string>& names, std::uint32_t scale) const {
  if (terms_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : terms_) {
    s += v < names.size() ? names[v] : ("v" + std::to_string(v));
    const std::uint64_t exp = static_cast<std::uint64_t>(e) * scale;
    if (exp != 1) s += "^" + std::to_string(exp);
  }
  return s;
}

u64 evaluate_mod_p(const Monomial& m, const ModPoint& point) {
  u64 acc = 1 % point.p;
  for (const auto& [v, e] : m.terms()) {
    if (v >= point.values.size() || !point.values[v])
      throw Error(ErrorKind::UnassignedVariable, "no value for variable " + std::to_string(v));
    acc = mod_mul(acc, mod_pow(*point.values[v], e, point.p), point.p);
  }
  return acc;
}

// ---------------------------------------------------------------- Factorization

Factorization Factorization::normalized() const {
  std::vector<Factor> sorted = factors_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Factor& a, const Factor& b) { return a.monomial < b.monomial; });
  std::vector<Factor> out;
  for (auto& f : sorted) {
    if (f.exponent == 0) continue;
    if (!out.empty() && out.back().monomial == f.monomial) {
      out.back().exponent += f.exponent;
    } else {
      out.push_back(std::move(f));
    }
  }
  return Factorization(std::move(out));
}

bool Factorization::is_normalized() const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].exponent == 0) return false;
    if (i > 0 && !(factors_[i - 1].monomial < factors_[i].monomial)) return false;
  }
  return true;
}

Factorization Factorization::substitute(std::span<const VarId> substitution) const {
  std::vector<Factor> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back({f.monomial.substitute(substitution), f.exponent});
  return Factorization(std::move(out)).normalized();
}

Factorization Factorization::scaled(std::uint64_t k) const {
  std::vector<Factor> out = factors_;
  for (auto& f : out) f.exponent *= k;
  return Factorization(std::move(out)).normalized();
}

std::uint64_t Factorization::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& f : factors_) d += f.exponent * 2 * f.monomial.degree();
  return d;
}

std::string Factorization::to_string(const std::vector<std::string>& names) const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& f : factors_) {
    if (!s.empty()) s += " ";
    s += "(1-" + f.monomial.to_string(names, 2) + ")^" + std::to_string(f.exponent);
  }
  return s;
}

u64 factorization_eval_mod_p(const Factorization& f, const ModPoint& point) {
  const u64 p = point.p;
  u64 acc = 1 % p;
  for (const auto& factor : f.factors()) {
    const u64 m = evaluate_mod_p(factor.monomial, point);
    const u64 base = mod_sub(1 % p, mod_mul(m, m, p), p);
    acc = mod_mul(acc, mod_pow(base, factor.exponent, p), p);
  }
  return acc;
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(const mpz_class& c) {
  Polynomial p;
  if (c != 0) p.terms_[Monomial{}] = c;
  return p;
}

Polynomial Polynomial::from_monomial(const Monomial& m, const mpz_class& c) {
  Polynomial p;
  if (c != 0) p.terms_[m] = c;
  return p;
}

void Polynomial::add_term(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::uint64_t Polynomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_by_one_minus(const Monomial& m) const {
  const std::uint64_t k = m.degree();
  if (k == 0) throw Error(ErrorKind::DivisionByZero, "division by 1 - 1");
  if (is_zero()) return Polynomial{};
  const std::uint64_t top = degree();
  // P = Q (1 - m)  =>  Q_d = P_d + m * Q_{d-k}, graded by total degree.
  std::vector<std::vector<std::pair<Monomial, mpz_class>>> by_degree(top + 1);
  for (const auto& [mono, c] : terms_) by_degree[mono.degree()].push_back({mono, c});
  if (top < k) return std::nullopt;
  std::vector<Polynomial> q(top - k + 1);
  for (std::uint64_t d = 0; d + k <= top; ++d) {
    for (const auto& [mono, c] : by_degree[d]) q[d].add_term(mono, c);
    if (d >= k)
      for (const auto& [mono, c] : q[d - k].terms_) q[d].add_term(mono * m, c);
  }
  Polynomial quotient;
  for (const auto& part : q)
    for (const auto& [mono, c] : part.terms_) quotient.add_term(mono, c);
  const Polynomial back = quotient - quotient * from_monomial(m);
  if (!(back == *this)) return std::nullopt;
  return quotient;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const mpz_class mag = abs(c);
    if (m.is_one()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << m.to_string(names);
    }
  }
  return os.str();
}

Polynomial expand(const Factorization& f) {
  Polynomial result = Polynomial::constant(1);
  for (const auto& factor : f.factors()) {
    const Polynomial base = Polynomial::constant(1) - Polynomial::from_monomial(factor.monomial.pow(2));
    result = result * base.pow(factor.exponent);
  }
  return result;
}

bool trial_divide(const Polynomial& p, const Factorization& f) {
  Polynomial rest = p;
  for (const auto& factor : f.factors()) {
    const Monomial sq = factor.monomial.pow(2);
    for (std::uint64_t i = 0; i < factor.exponent; ++i) {
      auto q = rest.divide_by_one_minus(sq);
      if (!q) return false;
      rest = std::move(*q);
    }
  }
  return rest == Polynomial::constant(1);
}

}  // namespace coxvar
