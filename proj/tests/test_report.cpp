#include <gtest/gtest.h>

#include "coxvar/report.hpp"
#include "test_util.hpp"

namespace coxvar {
namespace {

EnumeratedGroup group(const char* spec) { return build_group(parse_group_spec(spec)); }

template <typename Doc>
void expect_round_trip(const Doc& doc) {
  const Json j = doc;
  const std::string text = j.dump(2);
  const Doc back = Json::parse(text).get<Doc>();
  EXPECT_EQ(back, doc);
  EXPECT_EQ(Json(back).dump(2), text);
}

DetDocument det_document(const char* spec, WeightAssignment (*mode)(const EnumeratedGroup&)) {
  const auto g = group(spec);
  const auto w = mode(g);
  return make_det_document(g, w, closed_form(g, enumerate_relevant_edges(g), w));
}

// ------------------------------------------------------------------ det

TEST(DetDocument, A2Contents) {
  const auto d = det_document("A2", WeightAssignment::per_hyperplane);
  EXPECT_EQ(d.group, "A2");
  EXPECT_EQ(d.weight_mode, "per-hyperplane");
  EXPECT_EQ(render_text(d), "(1-a1^2)^2 (1-a2^2)^2 (1-a3^2)^2 (1-a1^2a2^2a3^2)^1\n");
  ASSERT_EQ(d.variables.size(), 3u);
  EXPECT_EQ(d.variables[0].id, 1u);
  EXPECT_EQ(d.variables[0].name, "a1");
  EXPECT_EQ(d.variables[0].orbit, std::optional<std::size_t>(1));
  EXPECT_EQ(d.variables[0].reflections, (std::vector<std::uint32_t>{1}));
  ASSERT_EQ(d.reflections.size(), 3u);
  EXPECT_EQ(d.reflections[0].word, "s1");
  ASSERT_EQ(d.factors.size(), 4u);
  EXPECT_EQ(d.factors[3].multiplicity, 1u);
  EXPECT_EQ(d.factors[3].monomial.size(), 3u);
  ASSERT_EQ(d.factors[3].edges.size(), 1u);
  EXPECT_EQ(d.factors[3].edges[0].cls, "A2");
  EXPECT_EQ(d.factors[3].edges[0].size, 3u);

  const Json j = d;
  for (const char* key : {"group", "weight_mode", "variables", "factors"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["variables"][0].contains("orbit"));
  EXPECT_TRUE(j["factors"][0]["monomial"].is_object());
}

TEST(DetDocument, MergedEdgesUnderSingleQ) {
  const auto d = det_document("A3", WeightAssignment::single_q);
  EXPECT_EQ(render_text(d), "(1-q^2)^36 (1-q^6)^8 (1-q^12)^2\n");
  ASSERT_EQ(d.factors.size(), 3u);
  // 6 hyperplanes, 4 rank-2 edges, the centre.
  EXPECT_EQ(d.factors[0].edges.size(), 6u);
  EXPECT_EQ(d.factors[1].edges.size(), 4u);
  EXPECT_EQ(d.factors[2].edges.size(), 1u);
  // A3 has a single reflection class, so q carries an orbit.
  EXPECT_EQ(d.variables[0].orbit, std::optional<std::size_t>(1));
  EXPECT_EQ(d.variables[0].reflections.size(), 6u);
}

TEST(DetDocument, OrbitAbsentWhenVariableSpansClasses) {
  const auto d = det_document("B2", WeightAssignment::single_q);
  ASSERT_EQ(d.variables.size(), 1u);
  EXPECT_FALSE(d.variables[0].orbit.has_value());
  EXPECT_TRUE(Json(d)["variables"][0]["orbit"].is_null());
}

TEST(DetDocument, RoundTrips) {
  for (const char* spec : {"A1", "A2", "B3", "H3", "I2(5)", "A2xA1"}) {
    expect_round_trip(det_document(spec, WeightAssignment::per_hyperplane));
    expect_round_trip(det_document(spec, WeightAssignment::per_orbit));
    expect_round_trip(det_document(spec, WeightAssignment::single_q));
  }
}

// ------------------------------------------------------------------ matrix

TEST(MatrixDocument, A1) {
  const auto g = group("A1");
  const auto w = WeightAssignment::per_hyperplane(g);
  const auto d = make_matrix_document(g, w, build_varchenko_matrix(g, w));
  EXPECT_EQ(d.labels, (std::vector<std::string>{"e", "s1"}));
  EXPECT_EQ(d.entries, (std::vector<std::string>{"1", "a1", "a1", "1"}));
  const std::string text = render_text(d);
  EXPECT_EQ(text, "e  | 1  a1\ns1 | a1 1\n");
  expect_round_trip(d);
}

TEST(MatrixDocument, RoundTrips) {
  const auto g = group("B2");
  const auto w = WeightAssignment::per_orbit(g);
  expect_round_trip(make_matrix_document(g, w, build_varchenko_matrix(g, w)));
}

// ------------------------------------------------------------------ verify

TEST(VerifyDocument, ContentsAndRoundTrip) {
  const auto g = group("A2");
  const auto w = WeightAssignment::per_hyperplane(g);
  VerifyOptions o;
  o.seed = 9;
  VerifyReport report = verify_mod_p(g, w, o);
  for (auto& r : concordance_checks(g).records) report.records.push_back(r);
  const auto d = make_verify_document(g, w, o, report);
  EXPECT_TRUE(d.pass);
  EXPECT_EQ(d.seed, 9u);
  EXPECT_EQ(d.primes.size(), 3u);
  EXPECT_EQ(d.records.size(), 17u);
  const Json j = d;
  EXPECT_TRUE(j["records"][0]["prime"].is_number());
  EXPECT_TRUE(j["records"][16]["prime"].is_null());
  EXPECT_EQ(j["records"][0]["verdict"], "PASS");
  expect_round_trip(d);

  const std::string text = render_text(d);
  EXPECT_NE(text.find("PASS 17/17"), std::string::npos) << text;
}

TEST(VerifyDocument, FailingRecord) {
  CheckRecord r{"det_vs_closed_form", "A2", "q", 7, 0, "1", "2", false};
  Json j = r;
  EXPECT_EQ(j["verdict"], "FAIL");
  EXPECT_EQ(j.get<CheckRecord>(), r);
}

TEST(VerifyDocument, ByteIdenticalAcrossRuns) {
  const auto g = group("B3");
  const auto w = WeightAssignment::per_orbit(g);
  VerifyOptions o;
  o.seed = 123;
  const auto a = Json(make_verify_document(g, w, o, verify_mod_p(g, w, o))).dump(2);
  const auto b = Json(make_verify_document(g, w, o, verify_mod_p(g, w, o))).dump(2);
  EXPECT_EQ(a, b);
}

// ------------------------------------------------------------------ multiplicity

TEST(MultiplicityDocument, H3) {
  const auto g = group("H3");
  const auto cat = enumerate_relevant_edges(g);
  const auto reports = multiplicity_reports(g, cat, {}, 51840);
  const auto d = make_multiplicity_document(g, cat, reports, FloorAmbient::ParabolicOfSupport);
  EXPECT_TRUE(d.pass);
  EXPECT_EQ(d.floor_ambient, "WJ");
  std::map<std::string, std::pair<Ingredients, std::uint64_t>> by_class;
  for (const auto& r : d.rows) {
    by_class[r.cls] = {r.ingredients, r.l_formula};
    EXPECT_EQ(r.l_oracle, std::optional<std::uint64_t>(r.l_formula));
    EXPECT_GE(r.t_J, 1u);
    EXPECT_GE(r.s_J, 1);
  }
  EXPECT_EQ(by_class["A1"], std::make_pair(Ingredients{1, 3, 4, 1}, std::uint64_t{12}));
  EXPECT_EQ(by_class["A2"], std::make_pair(Ingredients{1, 1, 2, 1}, std::uint64_t{2}));
  EXPECT_EQ(by_class["I2(5)"], std::make_pair(Ingredients{3, 1, 2, 1}, std::uint64_t{6}));
  EXPECT_EQ(by_class["H3"], std::make_pair(Ingredients{8, 1, 1, 4}, std::uint64_t{32}));
  expect_round_trip(d);
  EXPECT_NE(render_text(d).find("H3"), std::string::npos);
}

TEST(MultiplicityDocument, WholeGroupAmbientWithoutOracle) {
  const auto g = group("B3");
  const auto cat = enumerate_relevant_edges(g);
  FormulaOptions o;
  o.ambient = FloorAmbient::WholeGroup;
  const auto d = make_multiplicity_document(g, cat, multiplicity_reports(g, cat, o, 0), o.ambient);
  EXPECT_EQ(d.floor_ambient, "W");
  for (const auto& r : d.rows) EXPECT_FALSE(r.l_oracle.has_value());
  EXPECT_TRUE(Json(d)["rows"][0]["l_oracle"].is_null());
  expect_round_trip(d);
}

// ------------------------------------------------------------------ tables

TEST(Compare, Statuses) {
  const Ingredients c{1, 1, 2, 8};
  EXPECT_EQ(compare_with_published(c, {{1, 1, 2, 8}}, false), RowStatus::Match);
  EXPECT_EQ(compare_with_published(c, {{2, 1, 2, 4}, {1, 1, 2, 8}}, false), RowStatus::Match);
  EXPECT_EQ(compare_with_published(c, {{2, 1, 2, 4}}, false), RowStatus::ProductMatch);
  EXPECT_EQ(compare_with_published(c, {{2, 1, 2, 4}}, true), RowStatus::Match);
  EXPECT_EQ(compare_with_published(c, {{2, 1, 8, 2}}, false), RowStatus::Mismatch);
  EXPECT_EQ(compare_with_published(c, {}, false), RowStatus::Mismatch);
  EXPECT_STREQ(to_string(RowStatus::ProductMatch), "product match, columns differ");
  EXPECT_STREQ(to_string(RowStatus::PaperUnverified), "paper value, unverified");
  EXPECT_STREQ(to_string(RowStatus::NotListed), "not listed");
  EXPECT_STREQ(to_string(RowStatus::Mismatch), "mismatch");
}

TEST(Tables, A2) {
  const auto d = make_tables_document(parse_group_spec("A2"));
  ASSERT_EQ(d.table1.size(), 1u);
  EXPECT_EQ(d.table1[0].match, std::optional<bool>(true));
  ASSERT_EQ(d.table2.size(), 2u);
  EXPECT_EQ(d.table2[0].cls, "A1");
  EXPECT_EQ(d.table2[0].computed, std::optional<Ingredients>(Ingredients{1, 2, 1, 1}));
  EXPECT_EQ(d.table2[0].l_formula, std::optional<std::uint64_t>(2));
  EXPECT_EQ(d.table2[1].computed, std::optional<Ingredients>(Ingredients{1, 1, 1, 1}));
  for (const auto& r : d.table2) {
    EXPECT_EQ(r.status, RowStatus::Match);
    EXPECT_EQ(r.l_oracle, r.l_formula);
  }
  expect_round_trip(d);
}

TEST(Tables, H3MatchesPublishedBlock) {
  const auto d = make_tables_document(parse_group_spec("H3"));
  for (const auto& r : d.table2) EXPECT_EQ(r.status, RowStatus::Match) << r.cls;
  EXPECT_EQ(d.table1[0].full_support, std::optional<std::vector<std::uint64_t>>(std::vector<std::uint64_t>{8}));
}

TEST(Tables, DisplayOnlyComponentsAreNotBuilt) {
  const auto d = make_tables_document(parse_group_spec("E8"));
  ASSERT_EQ(d.table1.size(), 1u);
  EXPECT_FALSE(d.table1[0].reflections.has_value());
  EXPECT_EQ(d.table1[0].published.reflections, 120u);
  bool saw_1154 = false;
  for (const auto& r : d.table2) {
    EXPECT_EQ(r.status, RowStatus::PaperUnverified);
    EXPECT_FALSE(r.computed.has_value());
    for (const auto& p : r.paper) saw_1154 = saw_1154 || p[2] == 1154;
  }
  EXPECT_TRUE(saw_1154);
  expect_round_trip(d);
  EXPECT_NE(render_text(d).find("paper value, unverified"), std::string::npos);
}

TEST(Tables, ProductsHaveOneBlockPerComponent) {
  const auto d = make_tables_document(parse_group_spec("A2xB2"));
  ASSERT_EQ(d.table1.size(), 2u);
  EXPECT_EQ(d.table1[0].component, "A2");
  EXPECT_EQ(d.table1[1].component, "B2");
  for (const auto& r : d.table2) EXPECT_NE(r.status, RowStatus::Mismatch) << r.component << ' ' << r.cls;
  expect_round_trip(d);
}

TEST(Tables, OrderLimitApplies) {
  TablesOptions o;
  o.order_limit = 100;
  EXPECT_ERROR_KIND(make_tables_document(parse_group_spec("B4"), o), OrderLimitExceeded);
}

TEST(Tables, BadStatusIsRejected) {
  Json j = make_tables_document(parse_group_spec("A1"));
  j["table2"][0]["status"] = "bogus";
  EXPECT_ERROR_KIND(j.get<TablesDocument>(), ParseError);
}

// ------------------------------------------------------------------ published data

TEST(Published, ProductsAndShapes) {
  EXPECT_EQ(ingredient_product({2, 3, 5, 7}), 210u);
  for (const char* spec : {"A5", "B4", "D5", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)", "I2(8)"}) {
    const auto d = parse_group_spec(spec);
    const auto counts = published_reflection_counts(d.components[0]);
    EXPECT_EQ(counts.full_support.size(), counts.classes) << spec;
    for (const auto& row : published_multiplicities(d.components[0])) {
      EXPECT_FALSE(row.alternatives.empty()) << spec << ' ' << row.label;
      for (const auto& alt : row.alternatives)
        EXPECT_EQ(ingredient_product(alt), ingredient_product(row.alternatives[0])) << spec << ' ' << row.label;
    }
  }
}

}  // namespace
}  // namespace coxvar
