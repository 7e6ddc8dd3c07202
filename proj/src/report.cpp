#include "coxvar/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace coxvar {

namespace {

std::vector<int> one_based(GenSet J) {
  std::vector<int> out = J.members();
  for (int& s : out) ++s;
  return out;
}

const char* ambient_name(FloorAmbient a) { return a == FloorAmbient::ParabolicOfSupport ? "WJ" : "W"; }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string join(const std::vector<int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

std::string cells(const Ingredients& v) {
  std::ostringstream os;
  os << v[0] << "," << v[1] << "," << v[2] << "," << v[3];
  return os.str();
}

}  // namespace

// ------------------------------------------------------------------ builders

DetDocument make_det_document(const EnumeratedGroup& g, const WeightAssignment& w, const ClosedForm& form) {
  DetDocument d;
  d.group = g.diagram().label();
  d.weight_mode = to_string(w.mode);
  const auto classes = reflection_conjugacy_classes(g);
  std::vector<std::size_t> orbit_of(g.reflection_count());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (ReflId t : classes[c]) orbit_of[t] = c + 1;
  for (ReflId t = 0; t < g.reflection_count(); ++t)
    d.reflections.push_back({t + 1, g.word_string(g.reflection_element(t)), orbit_of[t]});
  for (VarId v = 0; v < w.variable_count(); ++v) {
    VariableEntry e;
    e.id = v + 1;
    e.name = w.var_names[v];
    std::optional<std::size_t> orbit;
    bool single_orbit = true;
    for (ReflId t = 0; t < g.reflection_count(); ++t) {
      if (w.var_of[t] != v) continue;
      e.reflections.push_back(t + 1);
      if (orbit && *orbit != orbit_of[t]) single_orbit = false;
      orbit = orbit_of[t];
    }
    if (single_orbit) e.orbit = orbit;
    d.variables.push_back(std::move(e));
  }
  for (const Factor& f : form.factorization.factors()) {
    FactorEntry e;
    for (const auto& [v, exp] : f.monomial.terms()) e.monomial[w.var_names[v]] = exp;
    e.multiplicity = f.exponent;
    for (const EdgeFactor& ef : form.edge_factors)
      if (ef.monomial == f.monomial) e.edges.push_back({ef.class_label, ef.edge_size, ef.coset_id + 1});
    d.factors.push_back(std::move(e));
  }
  d.text = form.factorization.to_string(w.var_names);
  return d;
}

MatrixDocument make_matrix_document(const EnumeratedGroup& g, const WeightAssignment& w, const VarchenkoMatrix& m) {
  MatrixDocument d;
  d.group = g.diagram().label();
  d.weight_mode = to_string(w.mode);
  d.order = m.order;
  for (ElemId x = 0; x < m.order; ++x) d.labels.push_back(g.word_string(x));
  d.entries.reserve(m.entries.size());
  for (const Monomial& e : m.entries) d.entries.push_back(e.is_one() ? "1" : e.to_string(w.var_names));
  return d;
}

VerifyDocument make_verify_document(const EnumeratedGroup& g, const WeightAssignment& w, const VerifyOptions& options,
                                    const VerifyReport& report) {
  VerifyDocument d;
  d.group = g.diagram().label();
  d.weight_mode = to_string(w.mode);
  d.seed = options.seed;
  d.trials = options.trials;
  d.primes = verification_primes(options);
  d.records = report.records;
  d.pass = report.pass();
  return d;
}

MultiplicityDocument make_multiplicity_document(const EnumeratedGroup& g, const EdgeCatalog& catalog,
                                                const std::vector<MultiplicityReport>& reports,
                                                FloorAmbient ambient) {
  MultiplicityDocument d;
  d.group = g.diagram().label();
  d.floor_ambient = ambient_name(ambient);
  for (const auto& r : reports) {
    const EdgeClass& cls = catalog.classes[catalog.class_of(r.edge)];
    MultiplicityRow row;
    row.cls = cls.label;
    row.J = one_based(cls.J);
    row.edge_count = cls.edge_count;
    row.t_J = r.ingredients.t_J + 1;
    row.t_J_word = g.word_string(g.reflection_element(r.ingredients.t_J));
    row.s_J = r.ingredients.s_J + 1;
    row.v_word = g.word_string(r.ingredients.v);
    row.ingredients = r.ingredients.columns();
    row.l_formula = r.l_formula;
    row.l_oracle = r.l_oracle;
    row.match = r.matches();
    d.pass = d.pass && row.match;
    d.rows.push_back(std::move(row));
  }
  return d;
}

const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Match: return "match";
    case RowStatus::ProductMatch: return "product match, columns differ";
    case RowStatus::Mismatch: return "mismatch";
    case RowStatus::NotListed: return "not listed";
    case RowStatus::PaperUnverified: return "paper value, unverified";
  }
  return "?";
}

namespace {

RowStatus status_from_string(const std::string& s) {
  for (RowStatus r : {RowStatus::Match, RowStatus::ProductMatch, RowStatus::Mismatch, RowStatus::NotListed,
                      RowStatus::PaperUnverified})
    if (s == to_string(r)) return r;
  throw Error(ErrorKind::ParseError, "unknown row status '" + s + "'");
}

}  // namespace

RowStatus compare_with_published(const Ingredients& computed, const std::vector<Ingredients>& paper, bool product_only) {
  bool product = false;
  for (const Ingredients& p : paper) {
    if (!product_only && p == computed) return RowStatus::Match;
    if (ingredient_product(p) == ingredient_product(computed)) product = true;
  }
  if (product) return product_only ? RowStatus::Match : RowStatus::ProductMatch;
  return RowStatus::Mismatch;
}

namespace {

void append_component(TablesDocument& d, const Component& c, const TablesOptions& options) {
  const std::string label = c.label();
  const PublishedReflectionCounts published = published_reflection_counts(c);
  std::vector<PublishedRow> paper = published_multiplicities(c);
  const bool display_only = std::none_of(paper.begin(), paper.end(), [](const PublishedRow& r) { return r.computable; });

  ReflectionTableRow t1;
  t1.component = label;
  t1.published = published;
  if (display_only) {
    d.table1.push_back(std::move(t1));
    for (const PublishedRow& r : paper) {
      MultiplicityTableRow row;
      row.component = label;
      row.cls = r.label;
      row.paper_label = r.label;
      row.paper = r.alternatives;
      row.status = RowStatus::PaperUnverified;
      d.table2.push_back(std::move(row));
    }
    return;
  }

  BuildOptions build;
  build.order_limit = options.order_limit;
  const EnumeratedGroup g = build_group(parse_group_spec(label), build);

  const ReflectionSet full = full_support_reflections(g);
  std::vector<std::uint64_t> per_class;
  for (const auto& cls : reflection_conjugacy_classes(g))
    per_class.push_back(static_cast<std::uint64_t>(
        std::count_if(cls.begin(), cls.end(), [&](ReflId t) { return full.test(t); })));
  std::sort(per_class.begin(), per_class.end());
  t1.reflections = g.reflection_count();
  t1.full_support = per_class;
  std::vector<std::uint64_t> expected = published.full_support;
  std::sort(expected.begin(), expected.end());
  t1.match = *t1.reflections == published.reflections && per_class.size() == published.classes && per_class == expected;
  d.table1.push_back(std::move(t1));

  const EdgeCatalog catalog = enumerate_relevant_edges(g);
  const auto reports = multiplicity_reports(g, catalog, options.formula, options.oracle_limit);
  std::vector<bool> used(paper.size(), false);
  for (const auto& r : reports) {
    const EdgeClass& cls = catalog.classes[catalog.class_of(r.edge)];
    MultiplicityTableRow row;
    row.component = label;
    row.cls = cls.label;
    row.J = one_based(cls.J);
    row.computed = r.ingredients.columns();
    row.l_formula = r.l_formula;
    row.l_oracle = r.l_oracle;
    row.status = RowStatus::NotListed;
    const auto members = coxeter_class(g, cls.J);
    for (std::size_t i = 0; i < paper.size(); ++i) {
      if (used[i] || !paper[i].computable) continue;
      const bool in_class = std::any_of(members.begin(), members.end(),
                                        [&](const ConjugateSubset& k) { return k.K == paper[i].J; });
      if (!in_class) continue;
      used[i] = true;
      row.paper_label = paper[i].label;
      row.paper = paper[i].alternatives;
      row.product_only = paper[i].product_only;
      row.status = compare_with_published(*row.computed, row.paper, row.product_only);
      break;
    }
    d.table2.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < paper.size(); ++i) {
    if (used[i]) continue;
    // A published row whose subset lies in no computed class.
    MultiplicityTableRow row;
    row.component = label;
    row.cls = paper[i].label;
    row.J = one_based(paper[i].J);
    row.paper_label = paper[i].label;
    row.paper = paper[i].alternatives;
    row.product_only = paper[i].product_only;
    row.status = RowStatus::Mismatch;
    d.table2.push_back(std::move(row));
  }
}

}  // namespace

TablesDocument make_tables_document(const CoxeterDiagram& d, const TablesOptions& options) {
  TablesDocument doc;
  doc.group = d.label();
  doc.floor_ambient = ambient_name(options.formula.ambient);
  for (const Component& c : d.components) append_component(doc, c, options);
  return doc;
}

// ------------------------------------------------------------------ JSON

void to_json(Json& j, const CheckRecord& r) {
  j = Json{{"check", r.check}, {"group", r.group}, {"mode", r.mode},       {"prime", r.prime ? Json(r.prime) : Json(nullptr)},
           {"seed", r.seed},   {"lhs", r.lhs},     {"rhs", r.rhs},         {"verdict", r.verdict ? "PASS" : "FAIL"}};
}

void from_json(const Json& j, CheckRecord& r) {
  r.check = j.at("check").get<std::string>();
  r.group = j.at("group").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  r.prime = j.at("prime").is_null() ? 0 : j.at("prime").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.lhs = j.at("lhs").get<std::string>();
  r.rhs = j.at("rhs").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>() == "PASS";
}

void to_json(Json& j, const DetDocument& d) {
  Json vars = Json::array();
  for (const auto& v : d.variables)
    vars.push_back({{"id", v.id}, {"name", v.name}, {"orbit", optional_json(v.orbit)}, {"reflections", v.reflections}});
  Json refls = Json::array();
  for (const auto& r : d.reflections) refls.push_back({{"index", r.index}, {"word", r.word}, {"orbit", r.orbit}});
  Json factors = Json::array();
  for (const auto& f : d.factors) {
    Json mono = Json::object();
    for (const auto& [name, exp] : f.monomial) mono[name] = exp;
    Json edges = Json::array();
    for (const auto& e : f.edges) edges.push_back({{"class", e.cls}, {"size", e.size}, {"coset", e.coset}});
    factors.push_back({{"monomial", mono}, {"multiplicity", f.multiplicity}, {"edges", edges}});
  }
  j = Json{{"group", d.group},     {"weight_mode", d.weight_mode}, {"variables", vars},
           {"reflections", refls}, {"factors", factors},           {"text", d.text}};
}

void from_json(const Json& j, DetDocument& d) {
  d = DetDocument{};
  d.group = j.at("group").get<std::string>();
  d.weight_mode = j.at("weight_mode").get<std::string>();
  for (const auto& v : j.at("variables"))
    d.variables.push_back({v.at("id").get<std::uint32_t>(), v.at("name").get<std::string>(),
                           optional_from<std::size_t>(v, "orbit"),
                           v.at("reflections").get<std::vector<std::uint32_t>>()});
  for (const auto& r : j.at("reflections"))
    d.reflections.push_back(
        {r.at("index").get<std::uint32_t>(), r.at("word").get<std::string>(), r.at("orbit").get<std::size_t>()});
  for (const auto& f : j.at("factors")) {
    FactorEntry e;
    for (const auto& [name, exp] : f.at("monomial").items()) e.monomial[name] = exp.get<std::uint64_t>();
    e.multiplicity = f.at("multiplicity").get<std::uint64_t>();
    for (const auto& edge : f.at("edges"))
      e.edges.push_back(
          {edge.at("class").get<std::string>(), edge.at("size").get<std::size_t>(), edge.at("coset").get<std::size_t>()});
    d.factors.push_back(std::move(e));
  }
  d.text = j.at("text").get<std::string>();
}

void to_json(Json& j, const MatrixDocument& d) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < d.order; ++x)
    rows.push_back(std::vector<std::string>(d.entries.begin() + static_cast<std::ptrdiff_t>(x * d.order),
                                            d.entries.begin() + static_cast<std::ptrdiff_t>((x + 1) * d.order)));
  j = Json{{"group", d.group}, {"weight_mode", d.weight_mode}, {"order", d.order}, {"labels", d.labels}, {"rows", rows}};
}

void from_json(const Json& j, MatrixDocument& d) {
  d = MatrixDocument{};
  d.group = j.at("group").get<std::string>();
  d.weight_mode = j.at("weight_mode").get<std::string>();
  d.order = j.at("order").get<std::size_t>();
  d.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows"))
    for (const auto& e : row) d.entries.push_back(e.get<std::string>());
  if (d.labels.size() != d.order || d.entries.size() != d.order * d.order)
    throw Error(ErrorKind::ParseError, "matrix document has inconsistent dimensions");
}

void to_json(Json& j, const VerifyDocument& d) {
  j = Json{{"group", d.group},   {"weight_mode", d.weight_mode}, {"seed", d.seed},
           {"trials", d.trials}, {"primes", d.primes},           {"records", d.records},
           {"pass", d.pass}};
}

void from_json(const Json& j, VerifyDocument& d) {
  d.group = j.at("group").get<std::string>();
  d.weight_mode = j.at("weight_mode").get<std::string>();
  d.seed = j.at("seed").get<std::uint64_t>();
  d.trials = j.at("trials").get<std::size_t>();
  d.primes = j.at("primes").get<std::vector<std::uint64_t>>();
  d.records = j.at("records").get<std::vector<CheckRecord>>();
  d.pass = j.at("pass").get<bool>();
}

namespace {

Json ingredients_json(const Ingredients& v) {
  return Json{{"floor", v[0]}, {"class_size", v[1]}, {"x_SJ", v[2]}, {"x_J_sJ", v[3]}};
}

Ingredients ingredients_from(const Json& j) {
  return {j.at("floor").get<std::uint64_t>(), j.at("class_size").get<std::uint64_t>(), j.at("x_SJ").get<std::uint64_t>(),
          j.at("x_J_sJ").get<std::uint64_t>()};
}

}  // namespace

void to_json(Json& j, const MultiplicityDocument& d) {
  Json rows = Json::array();
  for (const auto& r : d.rows)
    rows.push_back({{"class", r.cls},
                    {"J", r.J},
                    {"edges", r.edge_count},
                    {"t_J", {{"index", r.t_J}, {"word", r.t_J_word}}},
                    {"s_J", r.s_J},
                    {"v", r.v_word},
                    {"ingredients", ingredients_json(r.ingredients)},
                    {"l_formula", r.l_formula},
                    {"l_oracle", optional_json(r.l_oracle)},
                    {"match", r.match}});
  j = Json{{"group", d.group}, {"floor_ambient", d.floor_ambient}, {"rows", rows}, {"pass", d.pass}};
}

void from_json(const Json& j, MultiplicityDocument& d) {
  d = MultiplicityDocument{};
  d.group = j.at("group").get<std::string>();
  d.floor_ambient = j.at("floor_ambient").get<std::string>();
  for (const auto& r : j.at("rows")) {
    MultiplicityRow row;
    row.cls = r.at("class").get<std::string>();
    row.J = r.at("J").get<std::vector<int>>();
    row.edge_count = r.at("edges").get<std::size_t>();
    row.t_J = r.at("t_J").at("index").get<std::uint32_t>();
    row.t_J_word = r.at("t_J").at("word").get<std::string>();
    row.s_J = r.at("s_J").get<int>();
    row.v_word = r.at("v").get<std::string>();
    row.ingredients = ingredients_from(r.at("ingredients"));
    row.l_formula = r.at("l_formula").get<std::uint64_t>();
    row.l_oracle = optional_from<std::uint64_t>(r, "l_oracle");
    row.match = r.at("match").get<bool>();
    d.rows.push_back(std::move(row));
  }
  d.pass = j.at("pass").get<bool>();
}

void to_json(Json& j, const TablesDocument& d) {
  Json t1 = Json::array();
  for (const auto& r : d.table1)
    t1.push_back({{"component", r.component},
                  {"reflections", optional_json(r.reflections)},
                  {"full_support", optional_json(r.full_support)},
                  {"published",
                   {{"reflections", r.published.reflections},
                    {"classes", r.published.classes},
                    {"full_support", r.published.full_support}}},
                  {"match", optional_json(r.match)}});
  Json t2 = Json::array();
  for (const auto& r : d.table2) {
    Json paper = Json::array();
    for (const auto& p : r.paper) paper.push_back(ingredients_json(p));
    t2.push_back({{"component", r.component},
                  {"class", r.cls},
                  {"J", r.J},
                  {"computed", r.computed ? ingredients_json(*r.computed) : Json(nullptr)},
                  {"l_formula", optional_json(r.l_formula)},
                  {"l_oracle", optional_json(r.l_oracle)},
                  {"paper_label", optional_json(r.paper_label)},
                  {"paper", paper},
                  {"product_only", r.product_only},
                  {"status", to_string(r.status)}});
  }
  j = Json{{"group", d.group}, {"floor_ambient", d.floor_ambient}, {"table1", t1}, {"table2", t2}};
}

void from_json(const Json& j, TablesDocument& d) {
  d = TablesDocument{};
  d.group = j.at("group").get<std::string>();
  d.floor_ambient = j.at("floor_ambient").get<std::string>();
  for (const auto& r : j.at("table1")) {
    ReflectionTableRow row;
    row.component = r.at("component").get<std::string>();
    row.reflections = optional_from<std::uint64_t>(r, "reflections");
    row.full_support = optional_from<std::vector<std::uint64_t>>(r, "full_support");
    const Json& p = r.at("published");
    row.published.reflections = p.at("reflections").get<std::uint64_t>();
    row.published.classes = p.at("classes").get<std::size_t>();
    row.published.full_support = p.at("full_support").get<std::vector<std::uint64_t>>();
    row.match = optional_from<bool>(r, "match");
    d.table1.push_back(std::move(row));
  }
  for (const auto& r : j.at("table2")) {
    MultiplicityTableRow row;
    row.component = r.at("component").get<std::string>();
    row.cls = r.at("class").get<std::string>();
    row.J = r.at("J").get<std::vector<int>>();
    if (!r.at("computed").is_null()) row.computed = ingredients_from(r.at("computed"));
    row.l_formula = optional_from<std::uint64_t>(r, "l_formula");
    row.l_oracle = optional_from<std::uint64_t>(r, "l_oracle");
    row.paper_label = optional_from<std::string>(r, "paper_label");
    for (const auto& p : r.at("paper")) row.paper.push_back(ingredients_from(p));
    row.product_only = r.at("product_only").get<bool>();
    row.status = status_from_string(r.at("status").get<std::string>());
    d.table2.push_back(std::move(row));
  }
}

// ------------------------------------------------------------------ text

std::string render_text(const DetDocument& d) { return d.text + "\n"; }

std::string render_text(const MatrixDocument& d) {
  std::ostringstream os;
  std::size_t width = 1;
  for (const auto& e : d.entries) width = std::max(width, e.size());
  std::size_t label_width = 1;
  for (const auto& l : d.labels) label_width = std::max(label_width, l.size());
  for (std::size_t x = 0; x < d.order; ++x) {
    os << std::left << std::setw(static_cast<int>(label_width)) << d.labels[x] << " |";
    for (std::size_t y = 0; y + 1 < d.order; ++y)
      os << ' ' << std::setw(static_cast<int>(width)) << d.entries[x * d.order + y];
    if (d.order > 0) os << ' ' << d.entries[x * d.order + d.order - 1];
    os << '\n';
  }
  return os.str();
}

std::string render_text(const VerifyDocument& d) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : d.records) {
    passed += r.verdict ? 1 : 0;
    os << (r.verdict ? "PASS " : "FAIL ") << r.check << ' ' << r.group << ' ' << r.mode;
    if (r.prime) os << " p=" << r.prime << " seed=" << r.seed;
    if (r.prime || !r.verdict) os << " lhs=" << r.lhs << " rhs=" << r.rhs;
    os << '\n';
  }
  os << (d.pass ? "PASS" : "FAIL") << ' ' << passed << '/' << d.records.size() << '\n';
  return os.str();
}

std::string render_text(const MultiplicityDocument& d) {
  std::ostringstream os;
  os << "group " << d.group << ", floor ambient " << d.floor_ambient << '\n';
  os << std::left << std::setw(10) << "class" << std::setw(14) << "J" << std::setw(8) << "edges" << std::setw(22)
     << "ingredients" << std::setw(10) << "l" << std::setw(10) << "oracle" << "match\n";
  for (const auto& r : d.rows) {
    os << std::setw(10) << r.cls << std::setw(14) << join(r.J) << std::setw(8) << r.edge_count << std::setw(22)
       << cells(r.ingredients) << std::setw(10) << r.l_formula << std::setw(10)
       << (r.l_oracle ? std::to_string(*r.l_oracle) : std::string("-")) << (r.match ? "yes" : "NO") << '\n';
  }
  return os.str();
}

std::string render_text(const TablesDocument& d) {
  std::ostringstream os;
  os << "Full-support reflections (floor ambient " << d.floor_ambient << ")\n";
  for (const auto& r : d.table1) {
    os << "  " << std::left << std::setw(8) << r.component << " |T| = "
       << (r.reflections ? std::to_string(*r.reflections) : "-") << " (paper " << r.published.reflections
       << "), per class:";
    if (r.full_support)
      for (auto v : *r.full_support) os << ' ' << v;
    else
      os << " -";
    os << " (paper";
    for (auto v : r.published.full_support) os << ' ' << v;
    os << ")  " << (r.match ? (*r.match ? "match" : "MISMATCH") : "paper value, unverified") << '\n';
  }
  os << "Multiplicities of the Coxeter classes\n";
  os << "  " << std::left << std::setw(8) << "group" << std::setw(8) << "class" << std::setw(12) << "J" << std::setw(18)
     << "ingredients" << std::setw(9) << "l" << std::setw(9) << "oracle" << std::setw(8) << "paper" << std::setw(28)
     << "paper ingredients" << "status\n";
  for (const auto& r : d.table2) {
    std::string paper_cells;
    for (std::size_t i = 0; i < r.paper.size(); ++i) paper_cells += (i ? " | " : "") + cells(r.paper[i]);
    os << "  " << std::setw(8) << r.component << std::setw(8) << r.cls << std::setw(12)
       << (r.J.empty() ? std::string("-") : join(r.J)) << std::setw(18) << (r.computed ? cells(*r.computed) : "-")
       << std::setw(9) << (r.l_formula ? std::to_string(*r.l_formula) : "-") << std::setw(9)
       << (r.l_oracle ? std::to_string(*r.l_oracle) : "-") << std::setw(8) << r.paper_label.value_or("-")
       << std::setw(28) << (paper_cells.empty() ? "-" : paper_cells) << to_string(r.status) << '\n';
  }
  return os.str();
}

}  // namespace coxvar
