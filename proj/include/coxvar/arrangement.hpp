#pragma once

// The reflection arrangement of a finite Coxeter group, handled purely
// combinatorially: chambers are group elements, hyperplanes are reflections,
// and an edge is identified with the closed set of reflections whose
// hyperplanes contain it.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxvar/coxeter.hpp"

namespace coxvar {

struct Hyperplane {
  ReflId reflection;  // H_t = ker(t - 1)
  std::size_t orbit;  // index into reflection_conjugacy_classes
};

std::vector<Hyperplane> hyperplanes(const EnumeratedGroup& g);

// Hyperplanes separating chambers x and y: N(x) xor N(y).
ReflectionSet separating_set(const EnumeratedGroup& g, ElemId x, ElemId y);

struct Edge {
  ReflectionSet reflections;  // closed: every t with E contained in H_t
  GenSet class_J;             // irreducible representative of the Coxeter class
  ElemId witness = 0;         // reflections = T_J^witness
  std::size_t coset_id = 0;   // index of the coset of N_W(W_J) within its class

  bool operator==(const Edge& o) const { return reflections == o.reflections; }
};

struct EdgeClass {
  GenSet J;                  // smallest member of the Coxeter class
  std::string label;         // type of W_J, e.g. "A2"
  std::uint64_t normalizer_order = 0;
  std::size_t edge_count = 0;  // |W| / |N_W(W_J)|
};

// All relevant edges, one Coxeter class of irreducible J at a time.
struct EdgeCatalog {
  std::vector<EdgeClass> classes;
  std::vector<Edge> edges;  // globally sorted by reflection set
  std::unordered_map<ReflectionSet, std::size_t, ReflectionSetHash> index;

  std::optional<std::size_t> find(const ReflectionSet& u) const;
  std::size_t class_of(const Edge& e) const;  // position in `classes`
};

EdgeCatalog enumerate_relevant_edges(const EnumeratedGroup& g);

// Span of the closed face of chamber x on H_t, as a reflection set:
// T_K^x with K = J(t^(x^-1)).
ReflectionSet face_span(const EnumeratedGroup& g, ElemId x, ReflId t);
Edge minimal_edge_through_chamber_face(const EnumeratedGroup& g, ElemId x, ReflId t);

// Precomputed T_K^x for every connected K and every x, so that face spans are
// table lookups. Built by propagation along BFS parents.
class FaceSpanIndex {
 public:
  explicit FaceSpanIndex(const EnumeratedGroup& g);
  const EnumeratedGroup& group() const { return *g_; }
  const ReflectionSet& span(ElemId x, ReflId t) const;

 private:
  const EnumeratedGroup* g_;
  std::vector<std::uint8_t> inner_;               // x t x^-1, per (x, t)
  std::vector<int> slot_;                         // per K bitmask, -1 if unused
  std::vector<std::vector<ReflectionSet>> conj_;  // per slot, per element
};

// |L(E, t)| = #{x : face_span(x, t) = E}. ReflectionNotOnEdge if t is not in E.
std::uint64_t count_L_serial(const EnumeratedGroup& g, const Edge& E, ReflId t);
std::uint64_t count_L(const EnumeratedGroup& g, const Edge& E, ReflId t);
std::uint64_t count_L(const FaceSpanIndex& index, const Edge& E, ReflId t);
std::vector<ElemId> L_set(const EnumeratedGroup& g, const Edge& E, ReflId t);

// l(E) = |L(E, t)| / 2 for the smallest t in E, after checking that every other
// reflection of E gives the same count (InvarianceViolation otherwise).
std::uint64_t multiplicity_oracle(const EnumeratedGroup& g, const Edge& E);
std::uint64_t multiplicity_oracle(const FaceSpanIndex& index, const Edge& E);

struct MultiplicityIngredients {
  GenSet J;
  ReflId t_J = 0;
  int s_J = 0;
  ElemId v = 0;
  std::uint64_t floor = 0;         // |floor(t_J)|
  std::uint64_t class_size = 0;    // |[J]|
  std::uint64_t x_SJ = 0;          // |X(S,J)|
  std::uint64_t x_J_sJ = 0;        // |X(J,{s_J})|
  std::uint64_t product() const { return floor * class_size * x_SJ * x_J_sJ; }
  std::array<std::uint64_t, 4> columns() const { return {floor, class_size, x_SJ, x_J_sJ}; }
};

struct FormulaOptions {
  FloorAmbient ambient = FloorAmbient::ParabolicOfSupport;
  // Re-derive the product for every full-support t_J of W_J when |W_J| is at
  // most this bound, and fail with InvarianceViolation on disagreement.
  std::uint64_t choice_check_limit = 1152;
};

// Ingredients for t_J = the smallest reflection with support J.
MultiplicityIngredients multiplicity_formula(const EnumeratedGroup& g, GenSet J, const FormulaOptions& options = {});
// Same, for a caller-chosen full-support reflection of W_J.
MultiplicityIngredients multiplicity_formula_for(const EnumeratedGroup& g, GenSet J, ReflId t_J,
                                                 FloorAmbient ambient = FloorAmbient::ParabolicOfSupport);

struct MultiplicityReport {
  Edge edge;
  MultiplicityIngredients ingredients;
  std::uint64_t l_formula = 0;
  std::optional<std::uint64_t> l_oracle;
  bool matches() const { return !l_oracle || *l_oracle == l_formula; }
};

// One report per edge class, on the class's identity-coset edge T_J.
// The oracle runs when |W| <= oracle_limit.
std::vector<MultiplicityReport> multiplicity_reports(const EnumeratedGroup& g, const EdgeCatalog& catalog,
                                                     const FormulaOptions& options, std::uint64_t oracle_limit);

// The right-hand side of the block decomposition of L(E_{T_J}, t):
// blocks c_{K,J} X(S,J) c_{u,t} N_{W_J}(W_{s})^v for K in [J], u in floor(t).
struct LDecomposition {
  struct Block {
    GenSet K;
    ReflId u;
    std::vector<ElemId> elements;  // sorted
  };
  std::vector<Block> blocks;
  std::vector<ElemId> elements;  // sorted union
};

// BlocksOverlap if two blocks share an element or a block repeats one.
LDecomposition decompose_L(const EnumeratedGroup& g, GenSet J, ReflId t,
                           FloorAmbient ambient = FloorAmbient::ParabolicOfSupport);

}  // namespace coxvar
