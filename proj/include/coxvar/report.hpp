#pragma once

// Report documents produced by the command-line front end: plain value types
// built from library results, rendered as text or JSON, and parsed back.
// All indices that appear in documents are 1-based (generators s1.., variables,
// reflections a1.., classes b1..), matching the variable names.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxvar/arrangement.hpp"
#include "coxvar/published.hpp"
#include "coxvar/varchenko.hpp"

namespace coxvar {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------ det

struct VariableEntry {
  std::uint32_t id = 0;
  std::string name;
  std::optional<std::size_t> orbit;      // reflection class, when the variable lies in one
  std::vector<std::uint32_t> reflections;  // reflections weighted by this variable
  bool operator==(const VariableEntry&) const = default;
};

struct ReflectionEntry {
  std::uint32_t index = 0;
  std::string word;
  std::size_t orbit = 0;
  bool operator==(const ReflectionEntry&) const = default;
};

struct EdgeRef {
  std::string cls;  // type of W_J for the edge's class
  std::size_t size = 0;
  std::size_t coset = 0;
  bool operator==(const EdgeRef&) const = default;
};

struct FactorEntry {
  std::map<std::string, std::uint64_t> monomial;  // a(E), unsquared
  std::uint64_t multiplicity = 0;
  std::vector<EdgeRef> edges;  // every relevant edge merged into this factor
  bool operator==(const FactorEntry&) const = default;
};

struct DetDocument {
  std::string group;
  std::string weight_mode;
  std::vector<VariableEntry> variables;
  std::vector<ReflectionEntry> reflections;
  std::vector<FactorEntry> factors;
  std::string text;
  bool operator==(const DetDocument&) const = default;
};

DetDocument make_det_document(const EnumeratedGroup& g, const WeightAssignment& w, const ClosedForm& form);

// ------------------------------------------------------------------ matrix

struct MatrixDocument {
  std::string group;
  std::string weight_mode;
  std::size_t order = 0;
  std::vector<std::string> labels;   // reduced words of the chambers
  std::vector<std::string> entries;  // row-major monomials, "1" on the diagonal
  bool operator==(const MatrixDocument&) const = default;
};

MatrixDocument make_matrix_document(const EnumeratedGroup& g, const WeightAssignment& w, const VarchenkoMatrix& m);

// ------------------------------------------------------------------ verify

struct VerifyDocument {
  std::string group;
  std::string weight_mode;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::uint64_t> primes;
  std::vector<CheckRecord> records;
  bool pass = false;
  bool operator==(const VerifyDocument&) const = default;
};

VerifyDocument make_verify_document(const EnumeratedGroup& g, const WeightAssignment& w, const VerifyOptions& options,
                                    const VerifyReport& report);

// ------------------------------------------------------------------ multiplicity

struct MultiplicityRow {
  std::string cls;
  std::vector<int> J;  // 1-based generators of the class representative
  std::size_t edge_count = 0;
  std::uint32_t t_J = 0;  // 1-based reflection index
  std::string t_J_word;
  int s_J = 0;  // 1-based generator
  std::string v_word;
  Ingredients ingredients{};
  std::uint64_t l_formula = 0;
  std::optional<std::uint64_t> l_oracle;
  bool match = true;
  bool operator==(const MultiplicityRow&) const = default;
};

struct MultiplicityDocument {
  std::string group;
  std::string floor_ambient;  // "WJ" or "W"
  std::vector<MultiplicityRow> rows;
  bool pass = true;
  bool operator==(const MultiplicityDocument&) const = default;
};

MultiplicityDocument make_multiplicity_document(const EnumeratedGroup& g, const EdgeCatalog& catalog,
                                                const std::vector<MultiplicityReport>& reports,
                                                FloorAmbient ambient);

// ------------------------------------------------------------------ tables

struct ReflectionTableRow {
  std::string component;
  std::optional<std::uint64_t> reflections;  // computed; absent beyond enumeration scale
  std::optional<std::vector<std::uint64_t>> full_support;  // per class, ascending
  PublishedReflectionCounts published;
  std::optional<bool> match;
  bool operator==(const ReflectionTableRow& o) const {
    return component == o.component && reflections == o.reflections && full_support == o.full_support &&
           published.reflections == o.published.reflections && published.classes == o.published.classes &&
           published.full_support == o.published.full_support && match == o.match;
  }
};

enum class RowStatus {
  Match,            // ingredients equal one published reading
  ProductMatch,     // products equal, per-column attribution differs
  Mismatch,         // products differ
  NotListed,        // computed class with no published row
  PaperUnverified,  // published row beyond enumeration scale
};
const char* to_string(RowStatus s);

struct MultiplicityTableRow {
  std::string component;
  std::string cls;  // computed class type, or the published label for display-only rows
  std::vector<int> J;
  std::optional<Ingredients> computed;
  std::optional<std::uint64_t> l_formula;
  std::optional<std::uint64_t> l_oracle;
  std::optional<std::string> paper_label;
  std::vector<Ingredients> paper;  // alternative readings of the published cells
  bool product_only = false;
  RowStatus status = RowStatus::NotListed;
  bool operator==(const MultiplicityTableRow&) const = default;
};

struct TablesDocument {
  std::string group;
  std::string floor_ambient;
  std::vector<ReflectionTableRow> table1;
  std::vector<MultiplicityTableRow> table2;
  bool operator==(const TablesDocument&) const = default;
};

struct TablesOptions {
  FormulaOptions formula;
  std::uint64_t order_limit = 1'000'000;
  std::uint64_t oracle_limit = 51840;
};

// One block per irreducible component, each built on its own. Components
// whose published rows are display-only (E7, E8) are not enumerated.
TablesDocument make_tables_document(const CoxeterDiagram& d, const TablesOptions& options = {});

// Comparison of one computed class with its published readings.
RowStatus compare_with_published(const Ingredients& computed, const std::vector<Ingredients>& paper, bool product_only);

// ------------------------------------------------------------------ JSON

void to_json(Json& j, const CheckRecord& r);
void from_json(const Json& j, CheckRecord& r);
void to_json(Json& j, const DetDocument& d);
void from_json(const Json& j, DetDocument& d);
void to_json(Json& j, const MatrixDocument& d);
void from_json(const Json& j, MatrixDocument& d);
void to_json(Json& j, const VerifyDocument& d);
void from_json(const Json& j, VerifyDocument& d);
void to_json(Json& j, const MultiplicityDocument& d);
void from_json(const Json& j, MultiplicityDocument& d);
void to_json(Json& j, const TablesDocument& d);
void from_json(const Json& j, TablesDocument& d);

// ------------------------------------------------------------------ text

std::string render_text(const DetDocument& d);
std::string render_text(const MatrixDocument& d);
std::string render_text(const VerifyDocument& d);
std::string render_text(const MultiplicityDocument& d);
std::string render_text(const TablesDocument& d);

}  // namespace coxvar
