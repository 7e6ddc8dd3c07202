// coxvar: Varchenko determinants of finite Coxeter arrangements.
//
//   coxvar det GROUP            closed-form factorization
//   coxvar matrix GROUP         the Varchenko matrix itself
//   coxvar tables GROUP         full-support reflections and class multiplicities
//   coxvar verify GROUP         modular determinant check + formula concordance
//   coxvar multiplicity GROUP   formula ingredients vs. chamber counting
//
// Exit codes: 0 success, 1 a check failed, 2 bad input, 3 size limit exceeded.
// Only the requested artifact goes to stdout; diagnostics go to stderr.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "coxvar/report.hpp"

namespace {

using namespace coxvar;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitLimit = 3;

constexpr std::uint64_t kMatrixDumpCap = 200;
constexpr std::uint64_t kUnsafeDeterminantCap = 14400;

struct Config {
  std::string group;
  std::string assign = "per-hyperplane";
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t primes = 3;
  std::size_t trials = 5;
  std::string floor_ambient = "WJ";
  std::uint64_t limit = 1'000'000;
  bool unsafe_large = false;
};

FloorAmbient ambient_of(const Config& c) {
  return c.floor_ambient == "W" ? FloorAmbient::WholeGroup : FloorAmbient::ParabolicOfSupport;
}

FormulaOptions formula_options(const Config& c) {
  FormulaOptions o;
  o.ambient = ambient_of(c);
  return o;
}

EnumeratedGroup build(const Config& c) {
  BuildOptions o;
  o.order_limit = c.limit;
  return build_group(parse_group_spec(c.group), o);
}

WeightAssignment weights(const Config& c, const EnumeratedGroup& g) {
  if (c.assign == "per-hyperplane") return WeightAssignment::per_hyperplane(g);
  if (c.assign == "per-orbit") return WeightAssignment::per_orbit(g);
  if (c.assign == "q") return WeightAssignment::single_q(g);
  const std::string prefix = "explicit:";
  if (c.assign.starts_with(prefix)) {
    const std::string path = c.assign.substr(prefix.size());
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read weight file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return WeightAssignment::explicit_map(g, text.str());
  }
  throw Error(ErrorKind::ParseError, "unknown weight assignment '" + c.assign + "'");
}

template <typename Doc>
void emit(const Config& c, const Doc& doc) {
  if (c.format == "json")
    std::cout << Json(doc).dump(2) << '\n';
  else
    std::cout << render_text(doc);
}

int cmd_det(const Config& c) {
  const EnumeratedGroup g = build(c);
  const WeightAssignment w = weights(c, g);
  const ClosedForm form = closed_form(g, enumerate_relevant_edges(g), w, formula_options(c));
  emit(c, make_det_document(g, w, form));
  return kExitOk;
}

int cmd_matrix(const Config& c) {
  const EnumeratedGroup g = build(c);
  const std::uint64_t cap = c.unsafe_large ? kDefaultMatrixLimit : kMatrixDumpCap;
  if (g.order() > cap)
    throw Error(ErrorKind::OrderLimitExceeded, "matrix of order " + std::to_string(g.order()) + " exceeds the dump cap " +
                                                   std::to_string(cap) +
                                                   (c.unsafe_large ? "" : " (use --unsafe-large to raise it)"));
  const WeightAssignment w = weights(c, g);
  emit(c, make_matrix_document(g, w, build_varchenko_matrix(g, w, cap)));
  return kExitOk;
}

int cmd_tables(const Config& c) {
  TablesOptions o;
  o.formula = formula_options(c);
  o.order_limit = c.limit;
  const TablesDocument doc = make_tables_document(parse_group_spec(c.group), o);
  emit(c, doc);
  bool consistent = true;
  for (const auto& r : doc.table2)
    if (r.l_oracle && r.l_formula && *r.l_oracle != *r.l_formula) {
      std::cerr << "formula and chamber count disagree for " << r.component << " class " << r.cls << '\n';
      consistent = false;
    }
  return consistent ? kExitOk : kExitFailed;
}

int cmd_verify(const Config& c) {
  const EnumeratedGroup g = build(c);
  const WeightAssignment w = weights(c, g);
  VerifyOptions o;
  o.trials = c.trials;
  o.prime_count = c.primes;
  o.seed = c.seed;
  o.formula = formula_options(c);
  o.limit = c.unsafe_large ? kUnsafeDeterminantCap : kDefaultMatrixLimit;
  if (c.unsafe_large && g.order() > kDefaultMatrixLimit)
    std::cerr << "warning: determinant of order " << g.order() << " beyond the default budget; this may take long\n";
  VerifyReport report = verify_mod_p(g, w, o);
  for (auto& r : concordance_checks(g, o.formula).records) report.records.push_back(std::move(r));
  const VerifyDocument doc = make_verify_document(g, w, o, report);
  emit(c, doc);
  if (!doc.pass) {
    for (const auto& r : doc.records)
      if (!r.verdict) std::cerr << "FAIL " << r.check << " prime " << r.prime << ": " << r.lhs << " != " << r.rhs << '\n';
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_multiplicity(const Config& c) {
  const EnumeratedGroup g = build(c);
  const EdgeCatalog catalog = enumerate_relevant_edges(g);
  const auto reports = multiplicity_reports(g, catalog, formula_options(c), TablesOptions{}.oracle_limit);
  const MultiplicityDocument doc = make_multiplicity_document(g, catalog, reports, ambient_of(c));
  emit(c, doc);
  return doc.pass ? kExitOk : kExitFailed;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OrderLimitExceeded: return kExitLimit;
    case ErrorKind::ParseError:
    case ErrorKind::UnsupportedType:
    case ErrorKind::RankOutOfRange:
    case ErrorKind::NonFiniteDiagram:
    case ErrorKind::UnassignedVariable:
    case ErrorKind::NotAField: return kExitBadInput;
    default: return kExitFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Varchenko determinants of finite Coxeter arrangements"};
  app.require_subcommand(1);
  Config config;

  auto add_common = [&](CLI::App* sub, bool weighted, bool sized) {
    sub->add_option("group", config.group, "group spec, e.g. A3, B4, I2(5), A2xA1")->required();
    sub->add_option("--format", config.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--floor-ambient", config.floor_ambient, "conjugacy ambient for the floor class")
        ->check(CLI::IsMember({"WJ", "W"}));
    sub->add_option("--limit", config.limit, "maximum group order to enumerate");
    if (weighted)
      sub->add_option("--assign", config.assign, "per-hyperplane | per-orbit | q | explicit:FILE");
    if (sized) sub->add_flag("--unsafe-large", config.unsafe_large, "raise the size caps (slow)");
  };

  using Handler = int (*)(const Config&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto* det = app.add_subcommand("det", "closed-form Varchenko determinant");
  add_common(det, true, false);
  commands.emplace_back(det, cmd_det);
  auto* matrix = app.add_subcommand("matrix", "dump the Varchenko matrix");
  add_common(matrix, true, true);
  commands.emplace_back(matrix, cmd_matrix);
  auto* tables = app.add_subcommand("tables", "full-support reflections and class multiplicities");
  add_common(tables, false, false);
  commands.emplace_back(tables, cmd_tables);
  auto* verify = app.add_subcommand("verify", "check the closed form against the determinant mod p");
  add_common(verify, true, true);
  verify->add_option("--seed", config.seed, "seed for the random evaluation points");
  verify->add_option("--primes", config.primes, "number of primes")->check(CLI::PositiveNumber);
  verify->add_option("--trials", config.trials, "random points per prime")->check(CLI::PositiveNumber);
  commands.emplace_back(verify, cmd_verify);
  auto* multiplicity = app.add_subcommand("multiplicity", "formula ingredients vs. chamber counting");
  add_common(multiplicity, false, false);
  commands.emplace_back(multiplicity, cmd_multiplicity);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    for (const auto& [sub, handler] : commands)
      if (sub->parsed()) return handler(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitBadInput;
}
