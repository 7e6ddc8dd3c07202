#pragma once

// Published reference data for the irreducible finite Coxeter groups: counts
// of full-support reflections per conjugacy class, and the four multiplicity
// ingredients per Coxeter class of irreducible parabolic subgroups.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxvar/coxeter.hpp"

namespace coxvar {

struct PublishedReflectionCounts {
  std::uint64_t reflections = 0;
  std::size_t classes = 0;
  std::vector<std::uint64_t> full_support;  // one entry per class, ascending
};

PublishedReflectionCounts published_reflection_counts(const Component& c);

using Ingredients = std::array<std::uint64_t, 4>;  // floor, |[J]|, |X(S,J)|, |X(J,{s_J})|

struct PublishedRow {
  std::string label;                      // "A1'", "B3''", "I2(5)", ...
  GenSet J;                               // a member of the class, this library's numbering
  std::vector<Ingredients> alternatives;  // a cell "a | b" gives two readings
  bool computable = true;                 // false for groups beyond enumeration scale
  bool product_only = false;              // per-column attribution known to be unreliable
};

// Rows for one irreducible component, J in the component's local numbering.
std::vector<PublishedRow> published_multiplicities(const Component& c);

std::uint64_t ingredient_product(const Ingredients& v);

}  // namespace coxvar
