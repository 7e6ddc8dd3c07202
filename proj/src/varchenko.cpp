#include "coxvar/varchenko.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <unordered_map>

#include "coxvar/geometry.hpp"

namespace coxvar {

const char* to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::PerHyperplane: return "per-hyperplane";
    case WeightMode::PerOrbit: return "per-orbit";
    case WeightMode::SingleQ: return "q";
    case WeightMode::Explicit: return "explicit";
  }
  return "?";
}

// ------------------------------------------------------------------ weights

WeightAssignment WeightAssignment::per_hyperplane(const EnumeratedGroup& g) {
  WeightAssignment w;
  w.mode = WeightMode::PerHyperplane;
  for (ReflId t = 0; t < g.reflection_count(); ++t) {
    w.var_of.push_back(t);
    w.var_names.push_back("a" + std::to_string(t + 1));
  }
  return w;
}

WeightAssignment WeightAssignment::per_orbit(const EnumeratedGroup& g) {
  WeightAssignment w;
  w.mode = WeightMode::PerOrbit;
  w.var_of.assign(g.reflection_count(), 0);
  const auto classes = reflection_conjugacy_classes(g);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (ReflId t : classes[c]) w.var_of[t] = static_cast<VarId>(c);
    w.var_names.push_back("b" + std::to_string(c + 1));
  }
  return w;
}

WeightAssignment WeightAssignment::single_q(const EnumeratedGroup& g) {
  WeightAssignment w;
  w.mode = WeightMode::SingleQ;
  w.var_of.assign(g.reflection_count(), 0);
  w.var_names = {"q"};
  return w;
}

WeightAssignment WeightAssignment::explicit_map(const EnumeratedGroup& g, std::string_view text) {
  WeightAssignment w;
  w.mode = WeightMode::Explicit;
  const std::size_t T = g.reflection_count();
  std::vector<std::optional<VarId>> assigned(T);
  std::unordered_map<std::string, VarId> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string index_text, name, extra;
    if (!(fields >> index_text)) continue;
    const std::string where = "weight file line " + std::to_string(line_no);
    if (!(fields >> name) || (fields >> extra)) throw Error(ErrorKind::ParseError, where + ": expected 'index name'");
    std::size_t index = 0;
    try {
      std::size_t used = 0;
      index = std::stoul(index_text, &used);
      if (used != index_text.size()) throw std::invalid_argument(index_text);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, where + ": bad reflection index '" + index_text + "'");
    }
    if (index < 1 || index > T)
      throw Error(ErrorKind::ParseError, where + ": reflection index out of range 1.." + std::to_string(T));
    const bool valid_name = std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; }) &&
                            std::isalpha(static_cast<unsigned char>(name.front()));
    if (!valid_name) throw Error(ErrorKind::ParseError, where + ": bad variable name '" + name + "'");
    if (assigned[index - 1]) throw Error(ErrorKind::ParseError, where + ": reflection " + index_text + " assigned twice");
    auto [it, inserted] = ids.try_emplace(name, static_cast<VarId>(w.var_names.size()));
    if (inserted) w.var_names.push_back(name);
    assigned[index - 1] = it->second;
  }
  for (ReflId t = 0; t < T; ++t) {
    if (!assigned[t]) throw Error(ErrorKind::UnassignedVariable, "reflection " + std::to_string(t + 1) + " has no variable");
    w.var_of.push_back(*assigned[t]);
  }
  return w;
}

Monomial weight_of(const WeightAssignment& w, const ReflectionSet& reflections) {
  std::vector<Monomial::Term> terms;
  reflections.for_each([&](std::size_t t) { terms.push_back({w.var_of[t], 1}); });
  return Monomial::from_terms(std::move(terms));
}

// ------------------------------------------------------------------ matrix

VarchenkoMatrix build_varchenko_matrix(const EnumeratedGroup& g, const WeightAssignment& w, std::uint64_t limit) {
  if (g.order() > limit)
    throw Error(ErrorKind::OrderLimitExceeded, "Varchenko matrix of order " + std::to_string(g.order()) +
                                                   " exceeds the limit " + std::to_string(limit));
  VarchenkoMatrix m;
  m.order = g.order();
  m.entries.resize(m.order * m.order);
  for (ElemId x = 0; x < m.order; ++x)
    for (ElemId y = 0; y < m.order; ++y) m.entries[x * m.order + y] = weight_of(w, separating_set(g, x, y));
  return m;
}

namespace {

std::vector<u64> reflection_values(const WeightAssignment& w, const ModPoint& point) {
  std::vector<u64> vals(w.var_of.size());
  for (std::size_t t = 0; t < w.var_of.size(); ++t) {
    const VarId v = w.var_of[t];
    if (v >= point.values.size() || !point.values[v])
      throw Error(ErrorKind::UnassignedVariable, "no value for variable " + w.var_names[v]);
    vals[t] = *point.values[v] % point.p;
  }
  return vals;
}

}  // namespace

ModMatrix varchenko_matrix_mod_p(const EnumeratedGroup& g, const WeightAssignment& w, const ModPoint& point) {
  const u64 p = point.p;
  const std::vector<u64> vals = reflection_values(w, point);
  const auto N = static_cast<std::int64_t>(g.order());
  ModMatrix m(g.order(), p);
  const bool montgomery = (p & 1) && p > 2 && p < (u64{1} << 62);
  if (montgomery) {
    const Montgomery mont(p);
    std::vector<u64> mvals(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) mvals[i] = mont.to_mont(vals[i]);
    const u64 one = mont.to_mont(1);
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < N; ++x) {
      auto row = m.row(static_cast<std::size_t>(x));
      for (std::int64_t y = 0; y < N; ++y) {
        u64 acc = one;
        separating_set(g, static_cast<ElemId>(x), static_cast<ElemId>(y)).for_each([&](std::size_t t) {
          acc = mont.mul(acc, mvals[t]);
        });
        row[static_cast<std::size_t>(y)] = mont.from_mont(acc);
      }
    }
  } else {
    for (std::int64_t x = 0; x < N; ++x)
      for (std::int64_t y = 0; y < N; ++y) {
        u64 acc = 1 % p;
        separating_set(g, static_cast<ElemId>(x), static_cast<ElemId>(y)).for_each([&](std::size_t t) {
          acc = mod_mul(acc, vals[t], p);
        });
        m.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc;
      }
  }
  return m;
}

// ------------------------------------------------------------------ closed form

ClosedForm closed_form(const EnumeratedGroup& g, const EdgeCatalog& catalog, const WeightAssignment& w,
                       const FormulaOptions& options) {
  std::unordered_map<std::uint32_t, std::uint64_t> l_of_class;
  for (const auto& cls : catalog.classes) l_of_class[cls.J.bits()] = multiplicity_formula(g, cls.J, options).product();
  std::unordered_map<std::uint32_t, std::string> label_of_class;
  for (const auto& cls : catalog.classes) label_of_class[cls.J.bits()] = cls.label;
  ClosedForm out;
  Factorization raw;
  for (std::size_t i = 0; i < catalog.edges.size(); ++i) {
    const Edge& e = catalog.edges[i];
    EdgeFactor f;
    f.monomial = weight_of(w, e.reflections);
    f.multiplicity = l_of_class.at(e.class_J.bits());
    f.edge_index = i;
    f.class_label = label_of_class.at(e.class_J.bits());
    f.class_J = e.class_J;
    f.edge_size = e.reflections.count();
    f.coset_id = e.coset_id;
    raw.add(f.monomial, f.multiplicity);
    out.edge_factors.push_back(std::move(f));
  }
  out.factorization = raw.normalized();
  return out;
}

Factorization closed_form_factorization(const EnumeratedGroup& g, const WeightAssignment& w,
                                        const FormulaOptions& options) {
  return closed_form(g, enumerate_relevant_edges(g), w, options).factorization;
}

// ------------------------------------------------------------------ special formulas

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

Factorization zagier_formula(int n) {
  if (n < 2) throw Error(ErrorKind::UnsupportedType, "Zagier's formula needs n >= 2");
  Factorization f;
  for (int k = 1; k <= n - 1; ++k) {
    const std::uint64_t num = factorial(n) * static_cast<std::uint64_t>(n - k);
    const auto den = static_cast<std::uint64_t>(k * k + k);
    if (num % den != 0)
      throw Error(ErrorKind::NonIntegerExponent, std::to_string(num) + "/" + std::to_string(den) + " at k = " +
                                                     std::to_string(k));
    // (1 - q^{k^2+k}) = (1 - (q^{(k^2+k)/2})^2)
    f.add(Monomial::variable(0, static_cast<std::uint32_t>(den / 2)), num / den);
  }
  return f.normalized();
}

PairDictionary type_A_dictionary(const EnumeratedGroup& g) {
  const auto& d = g.diagram();
  if (d.components.size() != 1 || d.components[0].family != Family::A)
    throw Error(ErrorKind::UnsupportedType, "pair dictionary needs a group of type A");
  PairDictionary dict;
  for (ReflId t = 0; t < g.reflection_count(); ++t) {
    const ReflectionRoot r = reflection_root(g, t);
    // Root e_i - e_j = alpha_i + ... + alpha_{j-1}: a block of ones.
    int first = -1, last = -1;
    for (int k = 0; k < g.rank(); ++k) {
      const mpz_class* c = r.coords[static_cast<std::size_t>(k)].as_integer();
      if (!c || (*c != 0 && *c != 1)) throw Error(ErrorKind::Internal, "unexpected type A root");
      if (*c == 1) {
        if (first < 0) first = k;
        else if (last != k - 1) throw Error(ErrorKind::Internal, "type A root is not contiguous");
        last = k;
      }
    }
    dict.pair[{first + 1, last + 2}] = t;
  }
  return dict;
}

SignedDictionary type_B_dictionary(const EnumeratedGroup& g) {
  const auto& d = g.diagram();
  if (d.components.size() != 1 || d.components[0].family != Family::B)
    throw Error(ErrorKind::UnsupportedType, "signed dictionary needs a group of type B");
  const int n = g.rank();
  SignedDictionary dict;
  for (ReflId t = 0; t < g.reflection_count(); ++t) {
    const ReflectionRoot r = reflection_root(g, t);
    // alpha_k = e_{k+1} - e_{k+2} for k < n-1, alpha_{n-1} = e_n.
    std::vector<mpz_class> eps(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
      const mpz_class c = *r.coords[static_cast<std::size_t>(k)].as_integer();
      eps[static_cast<std::size_t>(k)] += c;
      if (k + 1 < n) eps[static_cast<std::size_t>(k + 1)] -= c;
    }
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
      if (eps[static_cast<std::size_t>(i)] != 0) support.push_back(i);
    if (support.size() == 1) {
      dict.single[support[0] + 1] = t;
    } else if (support.size() == 2) {
      const int i = support[0] + 1, j = support[1] + 1;
      const bool same = sgn(eps[static_cast<std::size_t>(support[0])]) == sgn(eps[static_cast<std::size_t>(support[1])]);
      // e_i - e_j is orthogonal to x_i = x_j; e_i + e_j to x_i = -x_j.
      (same ? dict.opposite : dict.same_sign)[{i, j}] = t;
    } else {
      throw Error(ErrorKind::Internal, "unexpected type B root");
    }
  }
  return dict;
}

Factorization duchamp_formula_A(int n, const PairDictionary& dict) {
  if (n < 2) throw Error(ErrorKind::UnsupportedType, "the formula needs n >= 2");
  Factorization f;
  for (std::uint32_t I = 0; I < (std::uint32_t{1} << n); ++I) {
    const int size = std::popcount(I);
    if (size < 2) continue;
    std::vector<Monomial::Term> terms;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (((I >> i) & 1U) && ((I >> j) & 1U)) terms.push_back({dict.pair.at({i + 1, j + 1}), 1});
    f.add(Monomial::from_terms(std::move(terms)), factorial(size - 2) * factorial(n - size + 1));
  }
  return f.normalized();
}

Factorization randriamaro_formula_B(int n, const SignedDictionary& dict) {
  if (n < 1) throw Error(ErrorKind::UnsupportedType, "the formula needs n >= 1");
  Factorization f;
  auto pair_var = [&](int a, int b) {
    // Signed entries a, b with |a| < |b|: x_a = x_b in signed coordinates.
    const std::pair<int, int> key{std::abs(a), std::abs(b)};
    return ((a > 0) == (b > 0)) ? dict.same_sign.at(key) : dict.opposite.at(key);
  };
  for (std::uint32_t M = 0; M < (std::uint32_t{1} << n); ++M) {
    const int size = std::popcount(M);
    std::vector<int> mags;
    for (int i = 0; i < n; ++i)
      if ((M >> i) & 1U) mags.push_back(i + 1);
    // Signed subsets with these magnitudes; the smallest magnitude stays positive.
    if (size >= 2) {
      for (std::uint32_t signs = 0; signs < (std::uint32_t{1} << (size - 1)); ++signs) {
        std::vector<int> J{mags[0]};
        for (int k = 1; k < size; ++k) J.push_back(((signs >> (k - 1)) & 1U) ? -mags[static_cast<std::size_t>(k)] : mags[static_cast<std::size_t>(k)]);
        std::vector<Monomial::Term> terms;
        for (std::size_t a = 0; a < J.size(); ++a)
          for (std::size_t b = a + 1; b < J.size(); ++b) terms.push_back({pair_var(J[a], J[b]), 1});
        f.add(Monomial::from_terms(std::move(terms)),
              (std::uint64_t{1} << (n - size + 1)) * factorial(size - 2) * factorial(n - size + 1));
      }
    }
    if (size >= 1) {
      std::vector<Monomial::Term> terms;
      for (int i : mags) terms.push_back({dict.single.at(i), 1});
      for (std::size_t a = 0; a < mags.size(); ++a)
        for (std::size_t b = a + 1; b < mags.size(); ++b) {
          terms.push_back({dict.same_sign.at({mags[a], mags[b]}), 1});
          terms.push_back({dict.opposite.at({mags[a], mags[b]}), 1});
        }
      f.add(Monomial::from_terms(std::move(terms)),
            (std::uint64_t{1} << (n - 1)) * factorial(size - 1) * factorial(n - size));
    }
  }
  return f.normalized();
}

Factorization reducible_product(const Factorization& f1, std::uint64_t order2, const Factorization& f2,
                                std::uint64_t order1) {
  std::vector<VarId> vars1;
  for (const auto& factor : f1.factors())
    for (const auto& [v, e] : factor.monomial.terms()) vars1.push_back(v);
  std::sort(vars1.begin(), vars1.end());
  for (const auto& factor : f2.factors())
    for (const auto& [v, e] : factor.monomial.terms())
      if (std::binary_search(vars1.begin(), vars1.end(), v))
        throw Error(ErrorKind::VariableCollision, "variable " + std::to_string(v) + " occurs in both factors");
  std::vector<Factor> all;
  for (const auto& factor : f1.factors()) all.push_back({factor.monomial, factor.exponent * order2});
  for (const auto& factor : f2.factors()) all.push_back({factor.monomial, factor.exponent * order1});
  return Factorization(std::move(all)).normalized();
}

std::vector<ReflId> embed_component_reflections(const EnumeratedGroup& product, std::size_t c,
                                                const EnumeratedGroup& component) {
  const int offset = product.diagram().components.at(c).offset;
  std::vector<ReflId> out;
  for (ReflId t = 0; t < component.reflection_count(); ++t) {
    std::vector<int> word;
    for (std::uint8_t s : component.reduced_word(component.reflection_element(t))) word.push_back(s + offset);
    const auto r = product.as_reflection(product.from_word(word));
    if (!r) throw Error(ErrorKind::Internal, "component reflection is not a reflection of the product");
    out.push_back(*r);
  }
  return out;
}

// ------------------------------------------------------------------ verification

bool VerifyReport::pass() const {
  return !records.empty() && std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.verdict; });
}

std::size_t VerifyReport::passed() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.verdict; }));
}

std::vector<std::uint64_t> verification_primes(const VerifyOptions& options) {
  if (!options.primes.empty()) {
    for (u64 p : options.primes)
      if (!is_prime_u64(p)) throw Error(ErrorKind::NotAField, std::to_string(p) + " is not prime");
    return options.primes;
  }
  return primes_below(u64{1} << 62, options.prime_count);
}

namespace {

// Uniform in [1, p-1] by rejection on the bit width of p - 1; the raw engine
// output is platform independent, unlike std::uniform_int_distribution.
u64 sample_nonzero(std::mt19937_64& rng, u64 p) {
  const int width = std::bit_width(p - 1);
  const u64 mask = width >= 64 ? ~u64{0} : ((u64{1} << width) - 1);
  while (true) {
    const u64 v = rng() & mask;
    if (v >= 1 && v < p) return v;
  }
}

}  // namespace

VerifyReport verify_mod_p(const EnumeratedGroup& g, const WeightAssignment& w, const VerifyOptions& options) {
  if (g.order() > options.limit)
    throw Error(ErrorKind::OrderLimitExceeded, "determinant of order " + std::to_string(g.order()) +
                                                   " exceeds the budget " + std::to_string(options.limit));
  const Factorization closed = closed_form_factorization(g, w, options.formula);
  std::mt19937_64 rng(options.seed);
  VerifyReport report;
  for (u64 p : verification_primes(options)) {
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      ModPoint point{p, {}};
      for (std::size_t v = 0; v < w.variable_count(); ++v) point.values.push_back(sample_nonzero(rng, p));
      CheckRecord r;
      r.check = "det_vs_closed_form";
      r.group = g.diagram().label();
      r.mode = to_string(w.mode);
      r.prime = p;
      r.seed = options.seed;
      r.lhs = std::to_string(det_mod_p(varchenko_matrix_mod_p(g, w, point)));
      r.rhs = std::to_string(factorization_eval_mod_p(closed, point));
      r.verdict = r.lhs == r.rhs;
      report.records.push_back(std::move(r));
    }
  }
  return report;
}

namespace {

CheckRecord formal_record(const std::string& check, const EnumeratedGroup& g, const WeightAssignment& w,
                          const Factorization& lhs, const Factorization& rhs) {
  CheckRecord r;
  r.check = check;
  r.group = g.diagram().label();
  r.mode = to_string(w.mode);
  r.lhs = lhs.to_string(w.var_names);
  r.rhs = rhs.to_string(w.var_names);
  r.verdict = lhs == rhs;
  return r;
}

}  // namespace

VerifyReport concordance_checks(const EnumeratedGroup& g, const FormulaOptions& options) {
  VerifyReport report;
  const auto& components = g.diagram().components;
  const EdgeCatalog catalog = enumerate_relevant_edges(g);
  const WeightAssignment hyper = WeightAssignment::per_hyperplane(g);
  const Factorization closed = closed_form(g, catalog, hyper, options).factorization;
  if (components.size() == 1) {
    const Component& c = components[0];
    if (c.family == Family::A) {
      const WeightAssignment q = WeightAssignment::single_q(g);
      const int n = c.rank + 1;
      report.records.push_back(
          formal_record("closed_form_vs_zagier", g, q, closed_form(g, catalog, q, options).factorization, zagier_formula(n)));
      report.records.push_back(
          formal_record("closed_form_vs_duchamp", g, hyper, closed, duchamp_formula_A(n, type_A_dictionary(g))));
    } else if (c.family == Family::B) {
      report.records.push_back(formal_record("closed_form_vs_randriamaro_B", g, hyper, closed,
                                             randriamaro_formula_B(c.rank, type_B_dictionary(g))));
    }
    return report;
  }
  // Fold the components' own closed forms with the product rule, after
  // renaming each component's reflections to the product's.
  Factorization folded;
  std::uint64_t folded_order = 1;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const EnumeratedGroup component = build_group(parse_group_spec(components[i].label()));
    const std::vector<ReflId> embed = embed_component_reflections(g, i, component);
    const Factorization local =
        closed_form_factorization(component, WeightAssignment::per_hyperplane(component), options).substitute(embed);
    folded = reducible_product(folded, component.order(), local, folded_order);
    folded_order *= component.order();
  }
  report.records.push_back(formal_record("closed_form_vs_reducible_product", g, hyper, closed, folded));
  return report;
}

Polynomial symbolic_determinant(const VarchenkoMatrix& m) {
  const std::size_t n = m.order;
  if (n > 8) throw Error(ErrorKind::OrderLimitExceeded, "symbolic determinant is limited to order 8");
  // f[mask] = signed sum over assignments of the first popcount(mask) rows to
  // the columns in mask.
  std::vector<Polynomial> f(std::size_t{1} << n);
  f[0] = Polynomial::constant(1);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (f[mask].is_zero()) continue;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    if (row == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if ((mask >> c) & 1U) continue;
      const int inversions = std::popcount(mask >> (c + 1));
      const Polynomial term = f[mask] * Polynomial::from_monomial(m.at(row, c), inversions % 2 ? -1 : 1);
      f[mask | (std::uint32_t{1} << c)] = f[mask | (std::uint32_t{1} << c)] + term;
    }
  }
  return f[(std::size_t{1} << n) - 1];
}

}  // namespace coxvar
