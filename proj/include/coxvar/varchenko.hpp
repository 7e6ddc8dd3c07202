#pragma once

// Varchenko matrices of Coxeter arrangements, the closed-form determinant of
// Theorem 1, the classical special-case formulas, and their verification by
// modular evaluation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxvar/arrangement.hpp"
#include "coxvar/monomial.hpp"

namespace coxvar {

enum class WeightMode { PerHyperplane, PerOrbit, SingleQ, Explicit };

const char* to_string(WeightMode mode);

struct WeightAssignment {
  WeightMode mode = WeightMode::PerHyperplane;
  std::vector<VarId> var_of;           // per reflection
  std::vector<std::string> var_names;  // per variable

  std::size_t variable_count() const { return var_names.size(); }

  // a1, a2, ... in reflection order.
  static WeightAssignment per_hyperplane(const EnumeratedGroup& g);
  // b1, b2, ... one per conjugacy class of reflections.
  static WeightAssignment per_orbit(const EnumeratedGroup& g);
  // Every hyperplane weighted q.
  static WeightAssignment single_q(const EnumeratedGroup& g);
  // Lines "reflection_index variable_name" (1-based index, '#' comments).
  // Variables are numbered in order of first appearance. Every reflection
  // must be assigned exactly once (ParseError / UnassignedVariable).
  static WeightAssignment explicit_map(const EnumeratedGroup& g, std::string_view text);
};

// Monomial a(U) = prod_{u in U} var(u).
Monomial weight_of(const WeightAssignment& w, const ReflectionSet& reflections);

struct VarchenkoMatrix {
  std::size_t order = 0;
  std::vector<Monomial> entries;  // row-major

  const Monomial& at(std::size_t x, std::size_t y) const { return entries[x * order + y]; }
};

constexpr std::uint64_t kDefaultMatrixLimit = 1152;

// OrderLimitExceeded if |W| > limit.
VarchenkoMatrix build_varchenko_matrix(const EnumeratedGroup& g, const WeightAssignment& w,
                                       std::uint64_t limit = kDefaultMatrixLimit);

// The matrix evaluated at a point, generated row by row without materializing
// monomials. Row x, column y holds prod over separating_set(x, y).
ModMatrix varchenko_matrix_mod_p(const EnumeratedGroup& g, const WeightAssignment& w, const ModPoint& point);

// One factor per relevant edge, before merging.
struct EdgeFactor {
  Monomial monomial;  // a(E)
  std::uint64_t multiplicity = 0;
  std::size_t edge_index = 0;  // into the catalog
  std::string class_label;
  GenSet class_J;
  std::size_t edge_size = 0;  // |reflections|
  std::size_t coset_id = 0;
};

struct ClosedForm {
  std::vector<EdgeFactor> edge_factors;  // catalog order
  Factorization factorization;           // normalized
};

ClosedForm closed_form(const EnumeratedGroup& g, const EdgeCatalog& catalog, const WeightAssignment& w,
                       const FormulaOptions& options = {});
Factorization closed_form_factorization(const EnumeratedGroup& g, const WeightAssignment& w,
                                        const FormulaOptions& options = {});

// A_{n-1}, every hyperplane weighted q (variable 0). NonIntegerExponent if a
// displayed exponent is not an integer.
Factorization zagier_formula(int n);

// Pair and signed-pair dictionaries between the classical coordinates and the
// reflections of A_{n-1} and B_n in this library's numbering.
struct PairDictionary {
  // A_{n-1}: reflection of the transposition (i j), 1 <= i < j <= n.
  std::map<std::pair<int, int>, ReflId> pair;
};
PairDictionary type_A_dictionary(const EnumeratedGroup& g);

struct SignedDictionary {
  std::map<int, ReflId> single;                     // H_i: x_i = 0
  std::map<std::pair<int, int>, ReflId> same_sign;  // H_{i,j}: x_i = x_j, i < j
  std::map<std::pair<int, int>, ReflId> opposite;   // H_{-i,j}: x_i = -x_j, i < j
};
SignedDictionary type_B_dictionary(const EnumeratedGroup& g);

// Factorizations over reflection ids as variables (per-hyperplane numbering).
Factorization duchamp_formula_A(int n, const PairDictionary& dict);
Factorization randriamaro_formula_B(int n, const SignedDictionary& dict);

// (f1)^{|W2|} (f2)^{|W1|}; VariableCollision if the variable sets meet.
Factorization reducible_product(const Factorization& f1, std::uint64_t order2, const Factorization& f2,
                                std::uint64_t order1);

// Reflection ids in `product` of the reflections of component `c`, given the
// component group built on its own.
std::vector<ReflId> embed_component_reflections(const EnumeratedGroup& product, std::size_t c,
                                                const EnumeratedGroup& component);

struct CheckRecord {
  std::string check;
  std::string group;
  std::string mode;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::string lhs;  // a residue mod p, or a rendered factorization
  std::string rhs;
  bool verdict = false;

  bool operator==(const CheckRecord&) const = default;
};

struct VerifyReport {
  std::vector<CheckRecord> records;
  bool pass() const;
  std::size_t passed() const;
};

struct VerifyOptions {
  std::size_t trials = 5;
  std::vector<std::uint64_t> primes;  // empty: the default prime and its predecessors
  std::size_t prime_count = 3;
  std::uint64_t seed = 0;
  std::uint64_t limit = kDefaultMatrixLimit;
  FormulaOptions formula;
};

// det(B) mod p at random nonzero points vs. the closed form at the same points.
VerifyReport verify_mod_p(const EnumeratedGroup& g, const WeightAssignment& w, const VerifyOptions& options = {});

// Formal (not numeric) comparisons of the closed form with the classical
// formulas that apply to g: Zagier and Duchamp et al. for type A, the B_n
// formula for type B, and the reducible product rule for products.
// Per-hyperplane and single-q weights are used regardless of any caller mode.
VerifyReport concordance_checks(const EnumeratedGroup& g, const FormulaOptions& options = {});

// The primes a verification run uses.
std::vector<std::uint64_t> verification_primes(const VerifyOptions& options);

// Exact symbolic determinant by memoized Laplace expansion; order <= 8.
Polynomial symbolic_determinant(const VarchenkoMatrix& m);

}  // namespace coxvar
