#pragma once

// Finite Coxeter groups: diagrams, exhaustive enumeration, and the parabolic
// subgroup machinery (cosets, Coxeter classes, normalizers, supports).

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coxvar/error.hpp"

namespace coxvar {

constexpr int kMaxRank = 16;

// Subset of the simple reflections S, bit i <-> s_{i+1}.
class GenSet {
 public:
  constexpr GenSet() = default;
  constexpr explicit GenSet(std::uint32_t bits) : bits_(bits) {}
  static constexpr GenSet single(int s) { return GenSet(std::uint32_t{1} << s); }
  static constexpr GenSet all(int rank) { return GenSet((std::uint32_t{1} << rank) - 1); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int s) const { return (bits_ >> s) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool subset_of(GenSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr GenSet with(int s) const { return GenSet(bits_ | (std::uint32_t{1} << s)); }
  constexpr GenSet operator|(GenSet o) const { return GenSet(bits_ | o.bits_); }
  constexpr GenSet operator&(GenSet o) const { return GenSet(bits_ & o.bits_); }
  constexpr bool operator==(const GenSet&) const = default;
  constexpr auto operator<=>(const GenSet& o) const {
    if (auto c = size() <=> o.size(); c != 0) return c;
    return bits_ <=> o.bits_;
  }

  std::vector<int> members() const;
  std::string to_string() const;  // 1-based, e.g. "{1,2}"

 private:
  std::uint32_t bits_ = 0;
};

// Set of reflection indices; capacity bounds |T| for supported groups.
class ReflectionSet {
 public:
  static constexpr std::size_t kCapacity = 128;

  ReflectionSet() = default;

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  std::size_t count() const { return std::popcount(words_[0]) + std::popcount(words_[1]); }
  bool empty() const { return (words_[0] | words_[1]) == 0; }
  bool subset_of(const ReflectionSet& o) const {
    return (words_[0] & ~o.words_[0]) == 0 && (words_[1] & ~o.words_[1]) == 0;
  }
  std::optional<std::size_t> first() const;

  ReflectionSet operator|(const ReflectionSet& o) const { return {words_[0] | o.words_[0], words_[1] | o.words_[1]}; }
  ReflectionSet operator&(const ReflectionSet& o) const { return {words_[0] & o.words_[0], words_[1] & o.words_[1]}; }
  ReflectionSet operator^(const ReflectionSet& o) const { return {words_[0] ^ o.words_[0], words_[1] ^ o.words_[1]}; }
  bool operator==(const ReflectionSet&) const = default;
  // Size first, then the index sets compared from the lowest index up.
  std::strong_ordering operator<=>(const ReflectionSet& o) const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < 2; ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }
  std::vector<std::uint32_t> members() const;
  std::size_t hash() const { return std::hash<std::uint64_t>{}(words_[0] * 0x9E3779B97F4A7C15ULL ^ words_[1]); }

 private:
  ReflectionSet(std::uint64_t lo, std::uint64_t hi) : words_{lo, hi} {}
  std::array<std::uint64_t, 2> words_{0, 0};
};

struct ReflectionSetHash {
  std::size_t operator()(const ReflectionSet& r) const { return r.hash(); }
};

enum class Family { A, B, D, E, F, H, I };

struct Component {
  Family family;
  int rank;    // number of generators
  int m = 0;   // bond label, dihedral family only
  int offset;  // index of the first generator in the full diagram

  std::string label() const;
  std::uint64_t order() const;
  std::size_t reflection_count() const;
};

struct CoxeterDiagram {
  int rank = 0;
  std::vector<int> bonds;  // rank x rank, m_ii = 1, m_ij = m_ji >= 2
  std::vector<Component> components;

  int bond(int i, int j) const { return bonds[static_cast<std::size_t>(i * rank + j)]; }
  std::string label() const;
  std::uint64_t order() const;  // from the classification
  std::size_t reflection_count() const;
  bool is_irreducible() const { return components.size() == 1; }
  int component_of(int s) const;
};

// SPEC ::= NAME ("x" NAME)* with NAME ::= (A|B|D)<n> | E6 | E7 | E8 | F4 | H3 | H4 | I2(<m>)
CoxeterDiagram parse_group_spec(std::string_view text, int max_rank = kMaxRank);

// Connected components of J in the bond graph (edges where m_ij >= 3).
std::vector<GenSet> connected_components(const CoxeterDiagram& d, GenSet J);
bool is_connected(const CoxeterDiagram& d, GenSet J);

// All nonempty connected J, ordered by size then bitmask.
std::vector<GenSet> irreducible_subsets(const CoxeterDiagram& d);

// Type of the parabolic subdiagram on J, e.g. "A2", "B3", "I2(5)", "A1xA1".
std::string subdiagram_label(const CoxeterDiagram& d, GenSet J);

using ElemId = std::uint32_t;
using ReflId = std::uint32_t;

struct BuildOptions {
  std::uint64_t order_limit = 1'000'000;
  // Closed-form rotation/flip enumeration for single dihedral components;
  // when off, I2(m) goes through the exact geometric representation.
  bool dihedral_fast_path = true;
};

class EnumeratedGroup {
 public:
  const CoxeterDiagram& diagram() const { return diagram_; }
  int rank() const { return diagram_.rank; }
  std::size_t order() const { return length_.size(); }

  ElemId identity() const { return 0; }
  ElemId simple(int s) const { return right_mul(identity(), s); }
  ElemId right_mul(ElemId x, int s) const { return right_[static_cast<std::size_t>(x) * rank() + s]; }
  ElemId left_mul(int s, ElemId x) const { return left_[static_cast<std::size_t>(x) * rank() + s]; }
  ElemId inverse(ElemId x) const { return inverse_[x]; }
  ElemId multiply(ElemId x, ElemId y) const;
  ElemId from_word(std::span<const int> word) const;
  ElemId longest() const { return longest_; }

  int length(ElemId x) const { return length_[x]; }
  GenSet support(ElemId x) const { return GenSet(support_[x]); }
  // Reduced word in BFS order (right multiplication by generators).
  std::span<const std::uint8_t> reduced_word(ElemId x) const {
    return {words_.data() + word_offset_[x], word_offset_[x + 1] - word_offset_[x]};
  }
  std::string word_string(ElemId x) const;  // "s1s2s1", identity "e"

  std::size_t reflection_count() const { return refl_elem_.size(); }
  ElemId reflection_element(ReflId t) const { return refl_elem_[t]; }
  std::optional<ReflId> as_reflection(ElemId x) const {
    return elem_refl_[x] < 0 ? std::nullopt : std::optional<ReflId>(static_cast<ReflId>(elem_refl_[x]));
  }
  ReflId simple_reflection(int s) const { return *as_reflection(simple(s)); }
  ReflId conjugate(ReflId t, int s) const { return refl_conj_[static_cast<std::size_t>(t) * rank() + s]; }
  ReflId conjugate_by(ReflId t, ElemId w) const;          // t^w = w^-1 t w
  ReflId conjugate_by_inverse(ReflId t, ElemId w) const;  // t^(w^-1) = w t w^-1
  ReflectionSet conjugate_set_by(const ReflectionSet& u, ElemId w) const;
  ReflectionSet conjugate_set_by_inverse(const ReflectionSet& u, ElemId w) const;

  // Left inversion set N(x) = {t : l(tx) < l(x)}.
  const ReflectionSet& inversion_set(ElemId x) const { return inversion_[x]; }
  // Reflections with support inside J (T_J), precomputed for every J.
  const ReflectionSet& parabolic_reflections(GenSet J) const { return parabolic_refl_[J.bits()]; }

 private:
  friend EnumeratedGroup build_group(const CoxeterDiagram&, const BuildOptions&);
  void finish();

  CoxeterDiagram diagram_;
  std::vector<ElemId> right_;
  std::vector<ElemId> left_;
  std::vector<ElemId> inverse_;
  std::vector<std::uint16_t> length_;
  std::vector<std::uint32_t> support_;
  std::vector<ElemId> parent_;
  std::vector<std::uint8_t> parent_gen_;
  std::vector<std::size_t> word_offset_;
  std::vector<std::uint8_t> words_;
  std::vector<ElemId> refl_elem_;
  std::vector<std::int32_t> elem_refl_;
  std::vector<ReflId> refl_conj_;
  std::vector<ReflectionSet> inversion_;
  std::vector<ReflectionSet> parabolic_refl_;
  ElemId longest_ = 0;
};

// Errors: OrderLimitExceeded (with the known order), RankOutOfRange when |T|
// exceeds ReflectionSet::kCapacity.
EnumeratedGroup build_group(const CoxeterDiagram& d, const BuildOptions& options = {});

// Right-multiplication table of one irreducible component in BFS order,
// computed by the requested path. Exposed so the two paths can be compared.
std::vector<ElemId> component_cayley_table(const Component& c, bool dihedral_fast_path, std::uint64_t order_limit);

// ------------------------------------------------------------ parabolic data

GenSet support(const EnumeratedGroup& g, ElemId x);
ReflectionSet inversion_set(const EnumeratedGroup& g, ElemId x);

struct ConjugateSubset {
  GenSet K;
  ElemId witness;  // K^witness = J
};

struct ParabolicData {
  GenSet J;
  std::vector<ElemId> W_J;
  ReflectionSet T_J;
  std::vector<ElemId> X_J;  // minimal length representatives of W_J \ W
  bool irreducible = false;
  std::vector<ConjugateSubset> coxeter_class;
  std::vector<ElemId> X_SJ;  // {x in X_J : J^x = J}
  std::uint64_t normalizer_order = 0;
};

std::vector<ElemId> parabolic_elements(const EnumeratedGroup& g, GenSet J);
std::vector<ElemId> minimal_coset_representatives(const EnumeratedGroup& g, GenSet J);
// Subsets K of S with J^w = K for some w, each with a witness c (K^c = J).
std::vector<ConjugateSubset> coxeter_class(const EnumeratedGroup& g, GenSet J);
// J^x as a set of reflections; nullopt when some conjugate is not simple.
std::optional<GenSet> conjugate_subset(const EnumeratedGroup& g, GenSet J, ElemId x);
ParabolicData parabolic_data(const EnumeratedGroup& g, GenSet J);

// {w in W : W_J^w = W_J}, by scanning all of W.
std::vector<ElemId> normalizer_brute_force(const EnumeratedGroup& g, GenSet J);

// |X(J,{s})| = |N_{W_J}(W_{s})| / 2. Throws GeneratorNotInJ.
std::uint64_t x_J_s(const EnumeratedGroup& g, GenSet J, int s);

// X(J,K) = {w in W_J cap X_K cap X_K^-1 : K^w = K}, straight from the definition.
std::vector<ElemId> double_coset_representatives(const EnumeratedGroup& g, GenSet J, GenSet K);

// Orbits of T under conjugation, each sorted, ordered by smallest member.
std::vector<std::vector<ReflId>> reflection_conjugacy_classes(const EnumeratedGroup& g);
ReflectionSet full_support_reflections(const EnumeratedGroup& g);

enum class FloorAmbient {
  ParabolicOfSupport,  // conjugacy inside W_{J(t)}
  WholeGroup,          // conjugacy inside W
};

// Reflections y with J(y) = J(t) that are conjugate to t in the ambient group.
ReflectionSet floor_class(const EnumeratedGroup& g, ReflId t, FloorAmbient ambient = FloorAmbient::ParabolicOfSupport);

struct PalindromicDecomposition {
  int s;                // simple generator index
  ElemId v;             // t = v^-1 s v with l(t) = 2 l(v) + 1
  bool middle_letter;   // false if the stored word needed the search fallback
};
PalindromicDecomposition palindromic_decomposition(const EnumeratedGroup& g, ReflId t);

}  // namespace coxvar
