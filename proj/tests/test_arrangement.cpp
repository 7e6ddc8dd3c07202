#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "coxvar/arrangement.hpp"
#include "test_util.hpp"

namespace coxvar {
namespace {

EnumeratedGroup group(const char* spec) { return build_group(parse_group_spec(spec)); }

GenSet set_of(std::initializer_list<int> one_based) {
  GenSet J;
  for (int s : one_based) J = J.with(s - 1);
  return J;
}

ReflId refl_of_word(const EnumeratedGroup& g, std::initializer_list<int> one_based) {
  std::vector<int> word;
  for (int s : one_based) word.push_back(s - 1);
  auto t = g.as_reflection(g.from_word(word));
  if (!t) throw std::runtime_error("word is not a reflection");
  return *t;
}

const Edge& edge_with(const EdgeCatalog& cat, const ReflectionSet& u) {
  auto i = cat.find(u);
  if (!i) throw std::runtime_error("edge not in catalog");
  return cat.edges[*i];
}

// Groups small enough for exhaustive scans over all (x, t) and all edges.
const std::vector<const char*> kDeskGroups = {
    "A1",    "A2",    "A3",    "A4",    "A5",     "B2",     "B3",     "B4",   "D4",     "H3",     "F4",
    "I2(5)", "I2(6)", "I2(7)", "I2(8)", "I2(12)", "A1xA1", "A2xA1", "B2xA1", "A1xA1xA1", "I2(5)xA2"};

// ------------------------------------------------------------------ separating sets

TEST(Separating, Examples) {
  const auto g = group("A2");
  EXPECT_TRUE(separating_set(g, 3, 3).empty());
  ReflectionSet s1;
  s1.set(g.simple_reflection(0));
  EXPECT_EQ(separating_set(g, g.identity(), g.simple(0)), s1);
  EXPECT_EQ(separating_set(g, g.identity(), g.longest()).count(), 3u);
}

TEST(Separating, MetricProperties) {
  std::mt19937_64 rng(7);
  for (const char* spec : {"A4", "B3", "D4", "H3", "F4", "I2(7)", "A2xA1"}) {
    const auto g = group(spec);
    std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(g.order() - 1));
    for (int i = 0; i < 500; ++i) {
      const ElemId x = pick(rng), y = pick(rng), z = pick(rng);
      const auto xy = separating_set(g, x, y);
      EXPECT_EQ(xy, separating_set(g, y, x)) << spec;
      EXPECT_EQ(xy.empty(), x == y) << spec;
      EXPECT_TRUE(separating_set(g, x, z).subset_of(xy | separating_set(g, y, z))) << spec;
      // |H(x,y)| is the length of x^-1 y.
      EXPECT_EQ(xy.count(), static_cast<std::size_t>(g.length(g.multiply(g.inverse(x), y)))) << spec;
    }
  }
}

TEST(Hyperplanes, OrbitsFollowConjugacyClasses) {
  const auto g = group("B3");
  const auto hs = hyperplanes(g);
  ASSERT_EQ(hs.size(), 9u);
  std::set<std::size_t> orbits;
  for (ReflId t = 0; t < hs.size(); ++t) {
    EXPECT_EQ(hs[t].reflection, t);
    orbits.insert(hs[t].orbit);
    for (int s = 0; s < g.rank(); ++s) EXPECT_EQ(hs[g.conjugate(t, s)].orbit, hs[t].orbit);
  }
  EXPECT_EQ(orbits.size(), 2u);
}

// ------------------------------------------------------------------ edges

TEST(Edges, CountExamples) {
  EXPECT_EQ(enumerate_relevant_edges(group("A2")).edges.size(), 4u);
  EXPECT_EQ(enumerate_relevant_edges(group("B2")).edges.size(), 5u);
  EXPECT_EQ(enumerate_relevant_edges(group("A1xA1")).edges.size(), 2u);
  // 6 hyperplanes, 4 lines of type A2, the center.
  EXPECT_EQ(enumerate_relevant_edges(group("A3")).edges.size(), 11u);

  const auto b2 = enumerate_relevant_edges(group("B2"));
  ASSERT_EQ(b2.classes.size(), 3u);
  std::multiset<std::size_t> counts;
  for (const auto& c : b2.classes) counts.insert(c.edge_count);
  EXPECT_EQ(counts, (std::multiset<std::size_t>{2, 2, 1}));
}

TEST(Edges, CatalogIsSortedIndexedAndClassified) {
  for (const char* spec : {"A4", "B4", "D4", "H3", "F4", "A2xA1"}) {
    const auto g = group(spec);
    const auto cat = enumerate_relevant_edges(g);
    std::size_t total = 0;
    for (const auto& c : cat.classes) {
      EXPECT_EQ(c.edge_count * c.normalizer_order, g.order()) << spec;
      total += c.edge_count;
    }
    EXPECT_EQ(total, cat.edges.size()) << spec;
    EXPECT_TRUE(std::is_sorted(cat.edges.begin(), cat.edges.end(),
                               [](const Edge& a, const Edge& b) { return a.reflections < b.reflections; }));
    for (std::size_t i = 0; i < cat.edges.size(); ++i) {
      const Edge& e = cat.edges[i];
      EXPECT_EQ(cat.find(e.reflections), std::optional<std::size_t>(i));
      EXPECT_EQ(g.conjugate_set_by(g.parabolic_reflections(e.class_J), e.witness), e.reflections) << spec;
      EXPECT_EQ(cat.classes[cat.class_of(e)].J, e.class_J);
    }
    EXPECT_FALSE(cat.find(ReflectionSet{}).has_value());
  }
}

TEST(Edges, UnknownClassIsAnInternalError) {
  const auto cat = enumerate_relevant_edges(group("A2"));
  Edge bogus = cat.edges.front();
  bogus.class_J = GenSet(0b100);
  EXPECT_ERROR_KIND(cat.class_of(bogus), Internal);
}

TEST(Edges, CountMatchesScanOfAllChamberFaces) {
  for (const char* spec : kDeskGroups) {
    const auto g = group(spec);
    std::set<ReflectionSet> scanned;
    for (ElemId x = 0; x < g.order(); ++x)
      for (ReflId t = 0; t < g.reflection_count(); ++t) scanned.insert(face_span(g, x, t));
    EXPECT_EQ(scanned.size(), enumerate_relevant_edges(g).edges.size()) << spec;
  }
}

TEST(MinimalEdge, Examples) {
  const auto g = group("A2");
  const ReflId s1 = g.simple_reflection(0);
  const Edge h = minimal_edge_through_chamber_face(g, g.identity(), s1);
  EXPECT_EQ(h.reflections.count(), 1u);
  EXPECT_TRUE(h.reflections.test(s1));

  const ReflId top = refl_of_word(g, {1, 2, 1});
  const Edge centre = minimal_edge_through_chamber_face(g, g.identity(), top);
  EXPECT_EQ(centre.reflections.count(), 3u);
  EXPECT_EQ(centre.class_J, GenSet::all(2));

  // From chamber s2 the face on H_{s1s2s1} is a wall: s1s2s1 conjugated by s2 is s1.
  const Edge from_s2 = minimal_edge_through_chamber_face(g, g.simple(1), top);
  EXPECT_EQ(from_s2.reflections.count(), 1u);
  EXPECT_TRUE(from_s2.reflections.test(top));
  EXPECT_EQ(from_s2.reflections, face_span(g, g.simple(1), top));
}

// Every chamber face spans a relevant edge.
TEST(MinimalEdge, CompletenessExhaustive) {
  for (const char* spec : kDeskGroups) {
    const auto g = group(spec);
    const auto cat = enumerate_relevant_edges(g);
    std::size_t missing = 0;
    for (ElemId x = 0; x < g.order(); ++x)
      for (ReflId t = 0; t < g.reflection_count(); ++t) {
        const Edge e = minimal_edge_through_chamber_face(g, x, t);
        if (!cat.find(e.reflections)) ++missing;
        EXPECT_TRUE(e.reflections.test(t));
      }
    EXPECT_EQ(missing, 0u) << spec;
  }
}

TEST(MinimalEdge, CompletenessSampled) {
  std::mt19937_64 rng(11);
  for (const char* spec : {"H3", "H4", "D5", "A5"}) {
    const auto g = group(spec);
    const auto cat = enumerate_relevant_edges(g);
    std::uniform_int_distribution<ElemId> pick_x(0, static_cast<ElemId>(g.order() - 1));
    std::uniform_int_distribution<ReflId> pick_t(0, static_cast<ReflId>(g.reflection_count() - 1));
    std::size_t missing = 0;
    for (int i = 0; i < 10000; ++i)
      if (!cat.find(face_span(g, pick_x(rng), pick_t(rng)))) ++missing;
    EXPECT_EQ(missing, 0u) << spec;
  }
}

// An emitted edge is closed: its reflections are exactly the reflections of
// the subgroup they generate, i.e. of the pointwise stabilizer of the edge.
TEST(Edges, Closedness) {
  for (const char* spec : {"A3", "A4", "B3", "D4", "H3", "F4", "A2xA1"}) {
    const auto g = group(spec);
    const auto cat = enumerate_relevant_edges(g);
    for (const Edge& e : cat.edges) {
      std::vector<ElemId> gens;
      e.reflections.for_each([&](std::size_t t) { gens.push_back(g.reflection_element(static_cast<ReflId>(t))); });
      std::vector<bool> in(g.order(), false);
      std::vector<ElemId> queue{g.identity()};
      in[g.identity()] = true;
      ReflectionSet generated;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        if (auto t = g.as_reflection(queue[i])) generated.set(*t);
        for (ElemId r : gens) {
          const ElemId y = g.multiply(queue[i], r);
          if (!in[y]) {
            in[y] = true;
            queue.push_back(y);
          }
        }
      }
      EXPECT_EQ(generated, e.reflections) << spec;
      // The stabilizer of a class-J edge is conjugate to W_J.
      EXPECT_EQ(queue.size(), parabolic_elements(g, e.class_J).size()) << spec;
    }
  }
}

// ------------------------------------------------------------------ chamber counts

TEST(CountL, Examples) {
  const auto g = group("A2");
  const auto cat = enumerate_relevant_edges(g);
  const ReflId s1 = g.simple_reflection(0);
  const ReflId top = refl_of_word(g, {1, 2, 1});
  const Edge& h = edge_with(cat, g.parabolic_reflections(GenSet::single(0)));
  const Edge& centre = edge_with(cat, g.parabolic_reflections(GenSet::all(2)));
  EXPECT_EQ(count_L(g, h, s1), 4u);
  EXPECT_EQ(count_L(g, centre, top), 2u);
  EXPECT_EQ(count_L_serial(g, h, s1), 4u);
  EXPECT_EQ(L_set(g, h, s1).size(), 4u);

  const auto h3 = group("H3");
  const auto h3cat = enumerate_relevant_edges(h3);
  for (const Edge& e : h3cat.edges)
    if (e.reflections.count() == 1) {
      EXPECT_EQ(count_L(h3, e, static_cast<ReflId>(*e.reflections.first())), 24u);
    }
}

TEST(CountL, ReflectionNotOnEdge) {
  const auto g = group("A2");
  const auto cat = enumerate_relevant_edges(g);
  const Edge& h = edge_with(cat, g.parabolic_reflections(GenSet::single(0)));
  const ReflId s2 = g.simple_reflection(1);
  EXPECT_ERROR_KIND(count_L(g, h, s2), ReflectionNotOnEdge);
  EXPECT_ERROR_KIND(count_L_serial(g, h, s2), ReflectionNotOnEdge);
  EXPECT_ERROR_KIND(L_set(g, h, s2), ReflectionNotOnEdge);
  const FaceSpanIndex index(g);
  EXPECT_ERROR_KIND(count_L(index, h, s2), ReflectionNotOnEdge);
}

TEST(CountL, ParallelSerialAndIndexedAgree) {
  for (const char* spec : {"A4", "B4", "H3", "F4", "I2(8)xA1"}) {
    const auto g = group(spec);
    const auto cat = enumerate_relevant_edges(g);
    const FaceSpanIndex index(g);
    for (const Edge& e : cat.edges) {
      e.reflections.for_each([&](std::size_t u) {
        const auto t = static_cast<ReflId>(u);
        const auto serial = count_L_serial(g, e, t);
        EXPECT_EQ(count_L(g, e, t), serial) << spec;
        EXPECT_EQ(count_L(index, e, t), serial) << spec;
        EXPECT_EQ(serial % 2, 0u) << spec;
      });
    }
  }
}

TEST(FaceSpanIndex, AgreesWithDirectComputation) {
  for (const char* spec : {"A3", "B3", "H3", "D4", "I2(9)", "A2xA1"}) {
    const auto g = group(spec);
    const FaceSpanIndex index(g);
    EXPECT_EQ(&index.group(), &g);
    for (ElemId x = 0; x < g.order(); ++x)
      for (ReflId t = 0; t < g.reflection_count(); ++t) EXPECT_EQ(index.span(x, t), face_span(g, x, t)) << spec;
  }
}

TEST(Oracle, Examples) {
  const auto a2 = group("A2");
  const auto a2cat = enumerate_relevant_edges(a2);
  EXPECT_EQ(multiplicity_oracle(a2, edge_with(a2cat, a2.parabolic_reflections(GenSet::single(0)))), 2u);

  const auto b2 = group("B2");
  const auto b2cat = enumerate_relevant_edges(b2);
  EXPECT_EQ(multiplicity_oracle(b2, edge_with(b2cat, b2.parabolic_reflections(GenSet::all(2)))), 2u);

  const auto h3 = group("H3");
  const auto h3cat = enumerate_relevant_edges(h3);
  const Edge& centre = edge_with(h3cat, h3.parabolic_reflections(GenSet::all(3)));
  EXPECT_EQ(multiplicity_oracle(h3, centre), 32u);
  EXPECT_EQ(multiplicity_oracle(FaceSpanIndex(h3), centre), 32u);
}

// A reflection set that is not an edge is spanned by no chamber face, so every
// member counts zero chambers; an empty set is rejected outright.
TEST(Oracle, NonEdgeSets) {
  const auto g = group("A2");
  Edge pair;
  pair.reflections.set(g.simple_reflection(0));
  pair.reflections.set(g.simple_reflection(1));
  EXPECT_EQ(multiplicity_oracle(g, pair), 0u);
  EXPECT_EQ(multiplicity_oracle(FaceSpanIndex(g), pair), 0u);

  Edge empty;
  EXPECT_ERROR_KIND(multiplicity_oracle(g, empty), Internal);
}

// ------------------------------------------------------------------ Theorem 1

TEST(Formula, Examples) {
  const auto a3 = group("A3");
  const auto m = multiplicity_formula(a3, set_of({1, 2}));
  EXPECT_EQ(m.columns(), (std::array<std::uint64_t, 4>{1, 2, 1, 1}));
  EXPECT_EQ(m.product(), 2u);

  const auto h3 = group("H3");
  const auto c = multiplicity_formula(h3, GenSet::all(3));
  EXPECT_EQ(c.columns(), (std::array<std::uint64_t, 4>{8, 1, 1, 4}));
  EXPECT_EQ(c.product(), 32u);
}

TEST(Formula, F4B3ProductIndependentOfChoice) {
  const auto f4 = group("F4");
  std::set<std::array<std::uint64_t, 4>> seen;
  for (GenSet J : {set_of({1, 2, 3}), set_of({2, 3, 4})}) {
    for (ReflId t = 0; t < f4.reflection_count(); ++t) {
      if (f4.support(f4.reflection_element(t)) != J) continue;
      const auto m = multiplicity_formula_for(f4, J, t);
      EXPECT_EQ(m.product(), 16u) << J.to_string();
      seen.insert(m.columns());
    }
  }
  EXPECT_TRUE(seen.count({1, 1, 2, 8}));
  EXPECT_TRUE(seen.count({2, 1, 2, 4}));
}

TEST(Formula, Errors) {
  const auto a3 = group("A3");
  // s1 does not have support {s1, s2}.
  EXPECT_ERROR_KIND(multiplicity_formula_for(a3, set_of({1, 2}), a3.simple_reflection(0)), NoFullSupportReflection);
  // {s1, s3} is reducible: no reflection has that support.
  EXPECT_ERROR_KIND(multiplicity_formula(a3, set_of({1, 3})), NoFullSupportReflection);
}

TEST(Formula, AmbientsAgree) {
  for (const char* spec : {"B3", "F4", "H3", "D4", "I2(8)"}) {
    const auto g = group(spec);
    const auto cat = enumerate_relevant_edges(g);
    for (const auto& c : cat.classes) {
      FormulaOptions whole;
      whole.ambient = FloorAmbient::WholeGroup;
      EXPECT_EQ(multiplicity_formula(g, c.J).product(), multiplicity_formula(g, c.J, whole).product())
          << spec << ' ' << c.J.to_string();
    }
  }
}

// l(E) from the chamber count equals the Theorem 1 product on every edge.
TEST(Theorem1, EveryEdgeOfDeskGroups) {
  for (const char* spec : kDeskGroups) {
    const auto g = group(spec);
    const auto cat = enumerate_relevant_edges(g);
    const FaceSpanIndex index(g);
    std::map<std::uint32_t, std::uint64_t> by_class;
    for (const auto& c : cat.classes) by_class[c.J.bits()] = multiplicity_formula(g, c.J).product();
    for (const Edge& e : cat.edges) EXPECT_EQ(multiplicity_oracle(index, e), by_class.at(e.class_J.bits())) << spec;
  }
}

TEST(Theorem1, OneEdgePerClassOnLargerGroups) {
  for (const char* spec : {"A5", "D5", "B5", "H4", "E6"}) {
    const auto g = group(spec);
    const auto cat = enumerate_relevant_edges(g);
    const auto reports = multiplicity_reports(g, cat, {}, g.order());
    ASSERT_EQ(reports.size(), cat.classes.size()) << spec;
    for (const auto& r : reports) {
      ASSERT_TRUE(r.l_oracle.has_value()) << spec;
      EXPECT_EQ(*r.l_oracle, r.l_formula) << spec << ' ' << r.ingredients.J.to_string();
      EXPECT_EQ(r.l_formula, r.ingredients.product());
      EXPECT_TRUE(r.matches());
    }
  }
}

TEST(Theorem1, ReportsSkipOracleAboveLimit) {
  const auto g = group("B3");
  const auto cat = enumerate_relevant_edges(g);
  const auto reports = multiplicity_reports(g, cat, {}, 10);
  for (const auto& r : reports) {
    EXPECT_FALSE(r.l_oracle.has_value());
    EXPECT_TRUE(r.matches());
  }
}

// The chamber set of a translated edge is the translated chamber set.
TEST(Theorem1, TranslationOfChamberSets) {
  const auto g = group("B3");
  const auto cat = enumerate_relevant_edges(g);
  for (const auto& c : cat.classes) {
    const Edge& base = edge_with(cat, g.parabolic_reflections(c.J));
    const auto t = static_cast<ReflId>(*base.reflections.first());
    const auto L = L_set(g, base, t);
    for (const Edge& e : cat.edges) {
      if (e.class_J != c.J) continue;
      const ElemId w = e.witness;
      std::vector<ElemId> moved;
      for (ElemId x : L) moved.push_back(g.multiply(x, w));
      std::sort(moved.begin(), moved.end());
      EXPECT_EQ(L_set(g, e, g.conjugate_by(t, w)), moved);
    }
  }
}

// ------------------------------------------------------------------ block decomposition

TEST(DecomposeL, Examples) {
  const auto a2 = group("A2");
  const auto cat = enumerate_relevant_edges(a2);
  const ReflId s1 = a2.simple_reflection(0);
  const auto d1 = decompose_L(a2, GenSet::single(0), s1);
  EXPECT_EQ(d1.elements.size(), 4u);
  EXPECT_EQ(d1.elements, L_set(a2, edge_with(cat, a2.parabolic_reflections(GenSet::single(0))), s1));

  const ReflId top = refl_of_word(a2, {1, 2, 1});
  const auto d2 = decompose_L(a2, GenSet::all(2), top);
  ASSERT_EQ(d2.blocks.size(), 1u);
  EXPECT_EQ(d2.blocks[0].elements.size(), 2u);

  const auto b2 = group("B2");
  for (ReflId t = 0; t < b2.reflection_count(); ++t)
    if (b2.length(b2.reflection_element(t)) == 3) {
      EXPECT_EQ(decompose_L(b2, GenSet::all(2), t).elements.size(), 4u);
    }
}

TEST(DecomposeL, ReflectionWithWrongSupport) {
  const auto a2 = group("A2");
  const ReflId s1 = a2.simple_reflection(0);
  EXPECT_ERROR_KIND(decompose_L(a2, GenSet::all(2), s1), ReflectionNotOnEdge);
  EXPECT_ERROR_KIND(decompose_L(a2, GenSet::single(1), s1), ReflectionNotOnEdge);
}

TEST(DecomposeL, EqualsChamberSetEverywhere) {
  for (const char* spec : {"A3", "A4", "B3", "B4", "D4", "H3", "F4", "I2(6)", "I2(7)", "A2xA1"}) {
    for (FloorAmbient ambient : {FloorAmbient::ParabolicOfSupport, FloorAmbient::WholeGroup}) {
      const auto g = group(spec);
      const auto cat = enumerate_relevant_edges(g);
      for (const auto& c : cat.classes) {
        const Edge& e = edge_with(cat, g.parabolic_reflections(c.J));
        for (ReflId t = 0; t < g.reflection_count(); ++t) {
          if (g.support(g.reflection_element(t)) != c.J) continue;
          const auto d = decompose_L(g, c.J, t, ambient);
          EXPECT_EQ(d.elements, L_set(g, e, t)) << spec << ' ' << c.J.to_string();
          std::size_t total = 0;
          for (const auto& b : d.blocks) {
            EXPECT_TRUE(std::is_sorted(b.elements.begin(), b.elements.end()));
            total += b.elements.size();
          }
          EXPECT_EQ(total, d.elements.size());
        }
      }
    }
  }
}

}  // namespace
}  // namespace coxvar
