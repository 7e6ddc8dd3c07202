#pragma once

// The geometric (reflection) representation over exact rings.

#include <compare>
#include <vector>

#include "coxvar/coxeter.hpp"
#include "coxvar/exact_scalar.hpp"

namespace coxvar {

// Cartan-type matrix of one component, row-major, A(i,j) = <alpha_j, alpha_i^vee>.
// Integer for crystallographic types, golden ring for H3/H4/I2(5), and the
// cyclo-real ring of 2cos(pi/m) for other dihedral groups.
std::vector<ExactScalar> cartan_matrix(const Component& c);

// Matrix of a group element in the simple-root basis of the full space.
struct GroupElement {
  int n = 0;
  std::vector<ExactScalar> entries;  // row-major n x n

  bool operator==(const GroupElement& o) const;
  std::strong_ordering operator<=>(const GroupElement& o) const;  // lexicographic on entries
};

// Generator s acts as the reflection in the simple root alpha_s. Blocks from
// different components are promoted to a common ring; MixedRings if none exists.
GroupElement element_matrix(const EnumeratedGroup& g, ElemId x);

// The positive root of reflection t, in simple-root coordinates of its component.
struct ReflectionRoot {
  int component;
  std::vector<ExactScalar> coords;
};
ReflectionRoot reflection_root(const EnumeratedGroup& g, ReflId t);

// Rank of a list of vectors over their (common) field; integers are treated as rationals.
std::size_t exact_rank(std::vector<std::vector<ExactScalar>> rows);

}  // namespace coxvar
