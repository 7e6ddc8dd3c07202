#include "coxvar/arrangement.hpp"

#include <algorithm>
#include <unordered_set>

namespace coxvar {

namespace {

// u^s for every member u.
ReflectionSet conjugate_set_by_generator(const EnumeratedGroup& g, const ReflectionSet& u, int s) {
  ReflectionSet out;
  u.for_each([&](std::size_t t) { out.set(g.conjugate(static_cast<ReflId>(t), s)); });
  return out;
}

// Last letter of the stored reduced word, so that x = parent * s.
int last_letter(const EnumeratedGroup& g, ElemId x) { return g.reduced_word(x).back(); }

}  // namespace

std::vector<Hyperplane> hyperplanes(const EnumeratedGroup& g) {
  std::vector<Hyperplane> out(g.reflection_count());
  const auto classes = reflection_conjugacy_classes(g);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (ReflId t : classes[c]) out[t] = {t, c};
  return out;
}

ReflectionSet separating_set(const EnumeratedGroup& g, ElemId x, ElemId y) {
  return g.inversion_set(x) ^ g.inversion_set(y);
}

// ------------------------------------------------------------------ edges

std::optional<std::size_t> EdgeCatalog::find(const ReflectionSet& u) const {
  auto it = index.find(u);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::size_t EdgeCatalog::class_of(const Edge& e) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].J == e.class_J) return i;
  throw Error(ErrorKind::Internal, "edge with unknown class " + e.class_J.to_string());
}

EdgeCatalog enumerate_relevant_edges(const EnumeratedGroup& g) {
  EdgeCatalog cat;
  const std::size_t N = g.order();
  std::vector<bool> done(std::size_t{1} << g.rank(), false);
  for (GenSet J : irreducible_subsets(g.diagram())) {
    if (done[J.bits()]) continue;
    const ParabolicData pd = parabolic_data(g, J);
    for (const auto& c : pd.coxeter_class) done[c.K.bits()] = true;

    // T_J^w for all w, propagated along reduced words: T_J^(ps) = (T_J^p)^s.
    std::vector<ReflectionSet> conj(N);
    conj[0] = pd.T_J;
    std::unordered_map<ReflectionSet, std::size_t, ReflectionSetHash> seen;
    std::vector<Edge> found;
    for (ElemId w = 0; w < N; ++w) {
      if (w > 0) {
        const int s = last_letter(g, w);
        conj[w] = conjugate_set_by_generator(g, conj[g.right_mul(w, s)], s);
      }
      if (seen.emplace(conj[w], found.size()).second) found.push_back({conj[w], J, w, found.size()});
    }
    if (found.size() * pd.normalizer_order != N)
      throw Error(ErrorKind::Internal, "edge count " + std::to_string(found.size()) + " for class " + J.to_string() +
                                           " disagrees with |W|/|N_W(W_J)|");
    cat.classes.push_back({J, subdiagram_label(g.diagram(), J), pd.normalizer_order, found.size()});
    for (auto& e : found) cat.edges.push_back(std::move(e));
  }
  std::sort(cat.edges.begin(), cat.edges.end(),
            [](const Edge& a, const Edge& b) { return a.reflections < b.reflections; });
  for (std::size_t i = 0; i < cat.edges.size(); ++i)
    if (!cat.index.emplace(cat.edges[i].reflections, i).second)
      throw Error(ErrorKind::Internal, "two edge classes produced the same reflection set");
  return cat;
}

ReflectionSet face_span(const EnumeratedGroup& g, ElemId x, ReflId t) {
  const GenSet K = g.support(g.reflection_element(g.conjugate_by_inverse(t, x)));
  return g.conjugate_set_by(g.parabolic_reflections(K), x);
}

Edge minimal_edge_through_chamber_face(const EnumeratedGroup& g, ElemId x, ReflId t) {
  const GenSet K = g.support(g.reflection_element(g.conjugate_by_inverse(t, x)));
  return {g.conjugate_set_by(g.parabolic_reflections(K), x), K, x, 0};
}

// ------------------------------------------------------------------ face-span index

FaceSpanIndex::FaceSpanIndex(const EnumeratedGroup& g) : g_(&g), slot_(std::size_t{1} << g.rank(), -1) {
  std::vector<std::uint32_t> masks;
  for (ReflId t = 0; t < g.reflection_count(); ++t) {
    const std::uint32_t K = g.support(g.reflection_element(t)).bits();
    if (slot_[K] < 0) {
      slot_[K] = static_cast<int>(masks.size());
      masks.push_back(K);
    }
  }
  conj_.resize(masks.size());
  const std::size_t N = g.order();
  const std::size_t T = g.reflection_count();
  // x t x^-1 with x = p s equals p (t^s) p^-1.
  inner_.resize(N * T);
  for (ReflId t = 0; t < T; ++t) inner_[t] = static_cast<std::uint8_t>(t);
  for (ElemId x = 1; x < N; ++x) {
    const int s = last_letter(g, x);
    const std::size_t p = g.right_mul(x, s);
    for (ReflId t = 0; t < T; ++t) inner_[x * T + t] = inner_[p * T + g.conjugate(t, s)];
  }
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < masks.size(); ++i) {
    auto& table = conj_[i];
    table.resize(N);
    table[0] = g.parabolic_reflections(GenSet(masks[i]));
    for (ElemId w = 1; w < N; ++w) {
      const int s = last_letter(g, w);
      table[w] = conjugate_set_by_generator(g, table[g.right_mul(w, s)], s);
    }
  }
}

const ReflectionSet& FaceSpanIndex::span(ElemId x, ReflId t) const {
  const ReflId inner = inner_[static_cast<std::size_t>(x) * g_->reflection_count() + t];
  const GenSet K = g_->support(g_->reflection_element(inner));
  return conj_[static_cast<std::size_t>(slot_[K.bits()])][x];
}

// ------------------------------------------------------------------ oracle

namespace {

void require_on_edge(const Edge& E, ReflId t) {
  if (!E.reflections.test(t))
    throw Error(ErrorKind::ReflectionNotOnEdge, "reflection " + std::to_string(t + 1) + " is not on the edge");
}

template <typename Count>
std::uint64_t invariant_half_count(const Edge& E, Count count) {
  std::optional<std::uint64_t> reference;
  ReflId first = 0;
  E.reflections.for_each([&](std::size_t u) {
    const std::uint64_t c = count(static_cast<ReflId>(u));
    if (!reference) {
      reference = c;
      first = static_cast<ReflId>(u);
    } else if (c != *reference) {
      throw Error(ErrorKind::InvarianceViolation, "|L(E," + std::to_string(first + 1) + ")| = " +
                                                      std::to_string(*reference) + " but |L(E," +
                                                      std::to_string(u + 1) + ")| = " + std::to_string(c));
    }
  });
  if (!reference) throw Error(ErrorKind::Internal, "empty edge");
  if (*reference % 2 != 0) throw Error(ErrorKind::InvarianceViolation, "odd chamber count " + std::to_string(*reference));
  return *reference / 2;
}

}  // namespace

std::uint64_t count_L_serial(const EnumeratedGroup& g, const Edge& E, ReflId t) {
  require_on_edge(E, t);
  std::uint64_t count = 0;
  for (ElemId x = 0; x < g.order(); ++x)
    if (face_span(g, x, t) == E.reflections) ++count;
  return count;
}

std::uint64_t count_L(const EnumeratedGroup& g, const Edge& E, ReflId t) {
  require_on_edge(E, t);
  const auto N = static_cast<std::int64_t>(g.order());
  std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::int64_t x = 0; x < N; ++x)
    if (face_span(g, static_cast<ElemId>(x), t) == E.reflections) ++count;
  return count;
}

std::uint64_t count_L(const FaceSpanIndex& index, const Edge& E, ReflId t) {
  require_on_edge(E, t);
  const auto N = static_cast<std::int64_t>(index.group().order());
  std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::int64_t x = 0; x < N; ++x)
    if (index.span(static_cast<ElemId>(x), t) == E.reflections) ++count;
  return count;
}

std::vector<ElemId> L_set(const EnumeratedGroup& g, const Edge& E, ReflId t) {
  require_on_edge(E, t);
  std::vector<ElemId> out;
  for (ElemId x = 0; x < g.order(); ++x)
    if (face_span(g, x, t) == E.reflections) out.push_back(x);
  return out;
}

std::uint64_t multiplicity_oracle(const EnumeratedGroup& g, const Edge& E) {
  return invariant_half_count(E, [&](ReflId u) { return count_L(g, E, u); });
}

std::uint64_t multiplicity_oracle(const FaceSpanIndex& index, const Edge& E) {
  return invariant_half_count(E, [&](ReflId u) { return count_L(index, E, u); });
}

// ------------------------------------------------------------------ formula

namespace {

std::vector<ReflId> reflections_with_support(const EnumeratedGroup& g, GenSet J) {
  std::vector<ReflId> out;
  for (ReflId t = 0; t < g.reflection_count(); ++t)
    if (g.support(g.reflection_element(t)) == J) out.push_back(t);
  return out;
}

std::uint64_t count_X_SJ(const EnumeratedGroup& g, GenSet J) {
  std::uint64_t n = 0;
  for (ElemId x : minimal_coset_representatives(g, J)) {
    auto K = conjugate_subset(g, J, x);
    if (K && *K == J) ++n;
  }
  return n;
}

MultiplicityIngredients ingredients_with(const EnumeratedGroup& g, GenSet J, ReflId t, FloorAmbient ambient,
                                         std::uint64_t class_size, std::uint64_t x_SJ) {
  if (g.support(g.reflection_element(t)) != J)
    throw Error(ErrorKind::NoFullSupportReflection, "reflection " + std::to_string(t + 1) + " does not have support " +
                                                        J.to_string());
  const PalindromicDecomposition pd = palindromic_decomposition(g, t);
  MultiplicityIngredients m;
  m.J = J;
  m.t_J = t;
  m.s_J = pd.s;
  m.v = pd.v;
  m.floor = floor_class(g, t, ambient).count();
  m.class_size = class_size;
  m.x_SJ = x_SJ;
  m.x_J_sJ = x_J_s(g, J, pd.s);
  return m;
}

}  // namespace

MultiplicityIngredients multiplicity_formula_for(const EnumeratedGroup& g, GenSet J, ReflId t_J, FloorAmbient ambient) {
  return ingredients_with(g, J, t_J, ambient, coxeter_class(g, J).size(), count_X_SJ(g, J));
}

MultiplicityIngredients multiplicity_formula(const EnumeratedGroup& g, GenSet J, const FormulaOptions& options) {
  const std::vector<ReflId> candidates = reflections_with_support(g, J);
  if (candidates.empty())
    throw Error(ErrorKind::NoFullSupportReflection, "W_J has no reflection of support " + J.to_string());
  const std::uint64_t class_size = coxeter_class(g, J).size();
  const std::uint64_t x_SJ = count_X_SJ(g, J);
  const MultiplicityIngredients base = ingredients_with(g, J, candidates.front(), options.ambient, class_size, x_SJ);
  if (parabolic_elements(g, J).size() <= options.choice_check_limit) {
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const auto other = ingredients_with(g, J, candidates[i], options.ambient, class_size, x_SJ);
      if (other.product() != base.product())
        throw Error(ErrorKind::InvarianceViolation,
                    "multiplicity depends on t_J for J = " + J.to_string() + ": " + std::to_string(base.product()) +
                        " vs " + std::to_string(other.product()));
    }
  }
  return base;
}

std::vector<MultiplicityReport> multiplicity_reports(const EnumeratedGroup& g, const EdgeCatalog& catalog,
                                                     const FormulaOptions& options, std::uint64_t oracle_limit) {
  std::optional<FaceSpanIndex> index;
  if (g.order() <= oracle_limit) index.emplace(g);
  std::vector<MultiplicityReport> out;
  for (const auto& cls : catalog.classes) {
    const auto pos = catalog.find(g.parabolic_reflections(cls.J));
    if (!pos) throw Error(ErrorKind::Internal, "missing identity-coset edge for " + cls.J.to_string());
    MultiplicityReport r;
    r.edge = catalog.edges[*pos];
    r.ingredients = multiplicity_formula(g, cls.J, options);
    r.l_formula = r.ingredients.product();
    if (index) r.l_oracle = multiplicity_oracle(*index, r.edge);
    out.push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------------ Proposition 2 blocks

LDecomposition decompose_L(const EnumeratedGroup& g, GenSet J, ReflId t, FloorAmbient ambient) {
  if (g.support(g.reflection_element(t)) != J)
    throw Error(ErrorKind::ReflectionNotOnEdge, "reflection " + std::to_string(t + 1) + " does not have support " +
                                                    J.to_string());
  const PalindromicDecomposition pd = palindromic_decomposition(g, t);
  const std::vector<ConjugateSubset> cls = coxeter_class(g, J);
  const ParabolicData data = parabolic_data(g, J);

  // N_{W_J}(W_{s}) conjugated by v: v^-1 n v.
  const ReflId s = g.simple_reflection(pd.s);
  std::vector<ElemId> normalizer_v;
  for (ElemId n : data.W_J)
    if (g.conjugate_by(s, n) == s) normalizer_v.push_back(g.multiply(g.multiply(g.inverse(pd.v), n), pd.v));

  const std::vector<ElemId> ambient_elements =
      ambient == FloorAmbient::ParabolicOfSupport ? data.W_J : parabolic_elements(g, GenSet::all(g.rank()));

  LDecomposition out;
  std::unordered_set<ElemId> all;
  for (const auto& [K, c_KJ] : cls) {
    floor_class(g, t, ambient).for_each([&](std::size_t u_index) {
      const auto u = static_cast<ReflId>(u_index);
      auto c_ut = std::find_if(ambient_elements.begin(), ambient_elements.end(),
                               [&](ElemId c) { return g.conjugate_by(u, c) == t; });
      if (c_ut == ambient_elements.end()) throw Error(ErrorKind::Internal, "no conjugator inside the ambient group");
      LDecomposition::Block block{K, u, {}};
      for (ElemId x : data.X_SJ) {
        const ElemId prefix = g.multiply(g.multiply(c_KJ, x), *c_ut);
        for (ElemId m : normalizer_v) {
          const ElemId e = g.multiply(prefix, m);
          if (!all.insert(e).second)
            throw Error(ErrorKind::BlocksOverlap, "element " + g.word_string(e) + " appears twice (block K = " +
                                                      K.to_string() + ", u = " + std::to_string(u + 1) + ")");
          block.elements.push_back(e);
        }
      }
      std::sort(block.elements.begin(), block.elements.end());
      out.blocks.push_back(std::move(block));
    });
  }
  out.elements.assign(all.begin(), all.end());
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

}  // namespace coxvar
