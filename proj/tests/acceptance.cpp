// Acceptance checks, one verdict line per criterion:
//
//   acceptance --criterion N     run criterion N (1..7)
//   acceptance                   run all of them
//
// Detail lines are indented; the verdict line reads "criterion N: PASS|FAIL ...".
// Exit status is 0 only if every requested criterion passes.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "coxvar/report.hpp"

namespace {

using namespace coxvar;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

EnumeratedGroup group(const std::string& spec) { return build_group(parse_group_spec(spec)); }

// Tally of detail checks; every check prints one indented line.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    std::cout << (ok ? "  ok    " : "  FAIL  ") << what << '\n';
    ++(ok ? passed_ : failed_);
  }
  void note(const std::string& what) { std::cout << "  note  " << what << '\n'; }
  bool pass() const { return failed_ == 0 && passed_ > 0; }
  std::string summary() const {
    return std::to_string(passed_) + "/" + std::to_string(passed_ + failed_) + " checks";
  }

 private:
  std::size_t passed_ = 0;
  std::size_t failed_ = 0;
};

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::string cells(const Ingredients& v) {
  return std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + "," + std::to_string(v[3]);
}

// ------------------------------------------------------------------ 1: full-support reflections

bool criterion_1(Tally& t) {
  const auto start = Clock::now();
  std::vector<std::string> specs;
  for (int n = 1; n <= 6; ++n) specs.push_back("A" + std::to_string(n));
  for (int n = 2; n <= 6; ++n) specs.push_back("B" + std::to_string(n));
  for (int n = 4; n <= 6; ++n) specs.push_back("D" + std::to_string(n));
  for (const char* s : {"E6", "F4", "H3", "H4"}) specs.push_back(s);
  for (int m = 3; m <= 12; ++m) specs.push_back("I2(" + std::to_string(m) + ")");
  for (const auto& spec : specs) {
    const auto g = group(spec);
    const ReflectionSet full = full_support_reflections(g);
    std::vector<std::uint64_t> per_class;
    for (const auto& cls : reflection_conjugacy_classes(g)) {
      std::uint64_t n = 0;
      for (ReflId r : cls) n += full.test(r);
      per_class.push_back(n);
    }
    std::sort(per_class.begin(), per_class.end());
    const auto published = published_reflection_counts(g.diagram().components[0]);
    auto expected = published.full_support;
    std::sort(expected.begin(), expected.end());
    t.check(per_class == expected && g.reflection_count() == published.reflections,
            spec + ": |T| = " + std::to_string(g.reflection_count()) + ", full support per class " + join(per_class) +
                " (published " + join(expected) + ")");
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "runtime " << elapsed << " s (target < 60 s)";
  t.check(elapsed < 60.0, os.str());
  return t.pass();
}

// ------------------------------------------------------------------ 2: class multiplicities

bool criterion_2(Tally& t) {
  std::vector<std::string> specs = {"A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "F4", "H3", "H4"};
  for (int m = 3; m <= 8; ++m) specs.push_back("I2(" + std::to_string(m) + ")");
  for (const auto& spec : specs) {
    const TablesDocument doc = make_tables_document(parse_group_spec(spec));
    for (const auto& r : doc.table2) {
      const std::string where = spec + " " + r.cls + " " + (r.paper_label ? "(" + *r.paper_label + ") " : "");
      if (!r.paper_label) {
        t.note(where + "computed " + cells(*r.computed) + " -> " + std::to_string(*r.l_formula) +
               ", no published row");
        continue;
      }
      std::string paper;
      for (const auto& p : r.paper) paper += (paper.empty() ? "" : " | ") + cells(p);
      std::string line = where + "published " + paper;
      if (r.computed) {
        line += ", computed " + cells(*r.computed) + " -> l = " + std::to_string(*r.l_formula);
        if (r.l_oracle) line += " (oracle " + std::to_string(*r.l_oracle) + ")";
      } else {
        line += ", no computed class contains this subset";
      }
      line += std::string(" [") + to_string(r.status) + (r.product_only ? ", product only" : "") + "]";
      t.check(r.status == RowStatus::Match, line);
    }
  }
  return t.pass();
}

// ------------------------------------------------------------------ 3: formula vs chamber count

std::vector<std::string> product_groups() {
  const std::vector<std::pair<std::string, std::uint64_t>> parts = {
      {"A1", 2},  {"A2", 6},  {"A3", 24}, {"A4", 120}, {"B2", 8},     {"B3", 48},
      {"B4", 384}, {"D4", 192}, {"H3", 120}, {"I2(5)", 10}, {"I2(6)", 12}, {"I2(8)", 16}};
  std::vector<std::string> out;
  const std::uint64_t cap = 1152;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const std::uint64_t o2 = parts[i].second * parts[j].second;
      if (o2 > cap) continue;
      out.push_back(parts[i].first + "x" + parts[j].first);
      for (std::size_t k = 0; k <= j; ++k)
        if (o2 * parts[k].second <= cap) out.push_back(parts[i].first + "x" + parts[j].first + "x" + parts[k].first);
    }
  return out;
}

bool all_edges_agree(const EnumeratedGroup& g, std::size_t& edges) {
  const EdgeCatalog cat = enumerate_relevant_edges(g);
  const FaceSpanIndex index(g);
  std::map<std::uint32_t, std::uint64_t> formula;
  for (const auto& c : cat.classes) formula[c.J.bits()] = multiplicity_formula(g, c.J).product();
  bool ok = true;
  for (const Edge& e : cat.edges) ok = ok && multiplicity_oracle(index, e) == formula.at(e.class_J.bits());
  edges = cat.edges.size();
  return ok;
}

bool criterion_3(Tally& t) {
  std::vector<std::string> irreducible = {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "H3", "F4"};
  // Dihedral groups of order <= 1152 that fit the reflection-set capacity.
  std::size_t dihedral_edges = 0;
  bool dihedral_ok = true;
  for (int m = 3; m <= static_cast<int>(ReflectionSet::kCapacity); ++m) {
    std::size_t e = 0;
    dihedral_ok = all_edges_agree(group("I2(" + std::to_string(m) + ")"), e) && dihedral_ok;
    dihedral_edges += e;
  }
  t.check(dihedral_ok, "I2(3)..I2(128): every relevant edge (" + std::to_string(dihedral_edges) + " edges)");
  for (const auto& spec : irreducible) {
    std::size_t e = 0;
    const bool ok = all_edges_agree(group(spec), e);
    t.check(ok, spec + ": every relevant edge (" + std::to_string(e) + " edges)");
  }
  std::size_t product_edges = 0, products = 0;
  std::string bad;
  for (const auto& spec : product_groups()) {
    std::size_t e = 0;
    if (!all_edges_agree(group(spec), e)) bad += " " + spec;
    product_edges += e;
    ++products;
  }
  t.check(bad.empty(), std::to_string(products) + " product groups of order <= 1152: every relevant edge (" +
                           std::to_string(product_edges) + " edges)" + (bad.empty() ? "" : "; failing:" + bad));
  for (const char* spec : {"H4", "E6"}) {
    const auto start = Clock::now();
    const auto g = group(spec);
    const EdgeCatalog cat = enumerate_relevant_edges(g);
    const auto reports = multiplicity_reports(g, cat, {}, g.order());
    for (const auto& r : reports) {
      const auto& cls = cat.classes[cat.class_of(r.edge)];
      t.check(r.l_oracle && *r.l_oracle == r.l_formula,
              std::string(spec) + " " + cls.label + " " + cls.J.to_string() + ": formula " +
                  std::to_string(r.l_formula) + ", oracle " + (r.l_oracle ? std::to_string(*r.l_oracle) : "-"));
    }
    std::ostringstream os;
    os << spec << " per-class run " << seconds_since(start) << " s";
    t.note(os.str());
  }
  return t.pass();
}

// ------------------------------------------------------------------ 4: determinant identity

bool criterion_4(Tally& t) {
  std::vector<std::string> specs = {"A2", "A3", "A4", "B2", "B3", "D4", "B4", "H3"};
  for (int m = 3; m <= 8; ++m) specs.push_back("I2(" + std::to_string(m) + ")");
  for (const char* s : {"F4", "A1xA1", "A2xA1"}) specs.push_back(s);
  for (const auto& spec : specs) {
    const auto start = Clock::now();
    const auto g = group(spec);
    VerifyOptions o;
    o.trials = 5;
    o.prime_count = 3;
    o.seed = 2024;
    const VerifyReport r = verify_mod_p(g, WeightAssignment::per_hyperplane(g), o);
    std::ostringstream os;
    os << spec << " (|W| = " << g.order() << "): " << r.passed() << "/" << r.records.size()
       << " point-prime pairs equal, " << seconds_since(start) << " s";
    t.check(r.pass() && r.records.size() == 15, os.str());
  }
  return t.pass();
}

// ------------------------------------------------------------------ 5: formal concordance

bool criterion_5(Tally& t) {
  for (int n = 2; n <= 5; ++n) {
    const auto g = group("A" + std::to_string(n - 1));
    const auto closed_q = closed_form_factorization(g, WeightAssignment::single_q(g));
    t.check(closed_q == zagier_formula(n), "A" + std::to_string(n - 1) + " single q == Zagier n = " + std::to_string(n));
    const auto closed = closed_form_factorization(g, WeightAssignment::per_hyperplane(g));
    t.check(closed == duchamp_formula_A(n, type_A_dictionary(g)),
            "A" + std::to_string(n - 1) + " per hyperplane == Duchamp et al. n = " + std::to_string(n));
  }
  {
    // B1 is A1: one hyperplane x_1 = 0.
    const auto g = group("A1");
    const SignedDictionary dict{{{1, 0}}, {}, {}};
    t.check(closed_form_factorization(g, WeightAssignment::per_hyperplane(g)) == randriamaro_formula_B(1, dict),
            "B1 (= A1) == type B formula n = 1");
  }
  for (int n = 2; n <= 4; ++n) {
    const auto g = group("B" + std::to_string(n));
    t.check(closed_form_factorization(g, WeightAssignment::per_hyperplane(g)) ==
                randriamaro_formula_B(n, type_B_dictionary(g)),
            "B" + std::to_string(n) + " per hyperplane == type B formula n = " + std::to_string(n));
  }
  for (const char* spec : {"A2xA1", "B2xA2", "H3xI2(5)"}) {
    const auto report = concordance_checks(group(spec));
    t.check(report.pass() && report.records.size() == 1, std::string(spec) + " closed form == product rule");
  }
  return t.pass();
}

// ------------------------------------------------------------------ 6: symbolic anchor

bool criterion_6(Tally& t) {
  for (const char* spec : {"A1", "A1xA1", "I2(3)"}) {
    const auto g = group(spec);
    const auto w = WeightAssignment::per_hyperplane(g);
    const Polynomial det = symbolic_determinant(build_varchenko_matrix(g, w));
    const Factorization closed = closed_form_factorization(g, w);
    const Polynomial expanded = expand(closed);
    t.check(det == expanded && trial_divide(det, closed),
            std::string(spec) + ": cofactor determinant == expanded closed form (" +
                std::to_string(expanded.terms().size()) + " terms, degree " + std::to_string(det.degree()) + ")");
  }
  return t.pass();
}

// ------------------------------------------------------------------ 7: properties and coverage

#ifdef COXVAR_COVERAGE_OBJDIR
// Line coverage of one library source from the counters left by earlier runs.
std::optional<double> line_coverage(const std::string& source) {
  const std::string command = "cd /tmp && gcov -n " + std::string(COXVAR_COVERAGE_OBJDIR) + "/" + source + ".o 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  ::pclose(pipe);
  const std::regex block("File '[^']*/src/" + source + "'\\s*\\nLines executed:([0-9.]+)% of");
  std::smatch m;
  if (!std::regex_search(out, m, block)) return std::nullopt;
  return std::stod(m[1]);
}
#endif

bool criterion_7(Tally& t) {
  const std::vector<std::string> desk = {"A3", "A4", "B3", "B4", "D4", "H3", "F4", "I2(7)", "I2(8)", "A2xA1"};
  for (const auto& spec : desk) {
    const auto g = group(spec);
    bool inversions = true;
    for (ElemId x = 0; x < g.order(); ++x)
      inversions = inversions && g.inversion_set(x).count() == static_cast<std::size_t>(g.length(x));
    bool factorization = true, howlett = true;
    for (std::uint32_t bits = 0; bits < (1U << g.rank()); ++bits) {
      const auto d = parabolic_data(g, GenSet(bits));
      std::vector<int> hits(g.order(), 0);
      for (ElemId u : d.W_J)
        for (ElemId x : d.X_J) {
          const ElemId w = g.multiply(u, x);
          if (g.length(w) == g.length(u) + g.length(x)) ++hits[w];
        }
      factorization = factorization && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
      std::set<ElemId> product;
      for (ElemId u : d.W_J)
        for (ElemId x : d.X_SJ) product.insert(g.multiply(u, x));
      const auto brute = normalizer_brute_force(g, GenSet(bits));
      howlett = howlett && product == std::set<ElemId>(brute.begin(), brute.end()) && d.normalizer_order == brute.size();
    }
    const EdgeCatalog cat = enumerate_relevant_edges(g);
    bool complete = true;
    for (ElemId x = 0; x < g.order(); ++x)
      for (ReflId r = 0; r < g.reflection_count(); ++r) complete = complete && cat.find(face_span(g, x, r)).has_value();
    bool blocks = true;
    for (const auto& c : cat.classes) {
      const Edge& e = cat.edges[*cat.find(g.parabolic_reflections(c.J))];
      for (ReflId r = 0; r < g.reflection_count(); ++r)
        if (g.support(g.reflection_element(r)) == c.J)
          blocks = blocks && decompose_L(g, c.J, r).elements == L_set(g, e, r);
    }
    bool invariance = true;
    for (const Edge& e : cat.edges) {
      std::set<std::uint64_t> counts;
      e.reflections.for_each([&](std::size_t r) { counts.insert(count_L(g, e, static_cast<ReflId>(r))); });
      invariance = invariance && counts.size() == 1;
    }
    t.check(inversions, spec + ": |N(x)| = l(x) for every x");
    t.check(factorization, spec + ": unique factorization W = W_J X_J for every J");
    t.check(howlett, spec + ": N(W_J) = W_J X(S,J)-normalizer factorization for every J");
    t.check(complete, spec + ": every chamber face spans a relevant edge");
    t.check(blocks, spec + ": block decomposition equals L(E, t) for every class and full-support t");
    t.check(invariance, spec + ": |L(E, u)| independent of u in E for every edge");
  }
  {
    std::mt19937_64 rng(17);
    bool idempotent = true;
    for (int i = 0; i < 500; ++i) {
      Factorization f;
      const int k = 1 + static_cast<int>(rng() % 6);
      for (int j = 0; j < k; ++j) {
        std::vector<Monomial::Term> terms;
        for (VarId v = 0; v < 4; ++v)
          if (rng() % 2) terms.push_back({v, static_cast<std::uint32_t>(1 + rng() % 3)});
        if (terms.empty()) terms.push_back({0, 1});
        f.add(Monomial::from_terms(terms), 1 + rng() % 5);
      }
      const Factorization n = f.normalized();
      idempotent = idempotent && n.is_normalized() && n.normalized() == n;
    }
    t.check(idempotent, "factorization normalization is idempotent on 500 random inputs");
  }
#ifdef COXVAR_COVERAGE_OBJDIR
  for (const char* source : {"arrangement.cpp", "varchenko.cpp"}) {
    const auto cov = line_coverage(source);
    std::ostringstream os;
    if (cov) {
      os << source << " line coverage " << *cov << "% (gate 95%)";
    } else {
      os << source << " line coverage unavailable (run the test suites first)";
    }
    t.check(cov && *cov >= 95.0, os.str());
  }
#else
  t.note("line coverage gate not evaluated: configure with -DCOXVAR_COVERAGE=ON");
#endif
  return t.pass();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "criterion to run (1..7); all when omitted")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<bool(Tally&)>>> criteria = {
      {"full-support reflection counts", criterion_1},
      {"class multiplicities against the published table", criterion_2},
      {"multiplicity formula against chamber counting", criterion_3},
      {"determinant identity modulo primes", criterion_4},
      {"formal concordance with classical formulas", criterion_5},
      {"symbolic determinant anchor", criterion_6},
      {"property suites and coverage", criterion_7},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    Tally tally;
    const auto start = Clock::now();
    bool ok = false;
    std::string error;
    try {
      ok = criteria[i].second(tally);
    } catch (const std::exception& e) {
      error = std::string(", aborted: ") + e.what();
    }
    std::ostringstream os;
    os << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << " - " << criteria[i].first << " ("
       << tally.summary() << ", " << seconds_since(start) << " s" << error << ")";
    std::cout << os.str() << std::endl;
    all = all && ok;
  }
  return all ? 0 : 1;
}
