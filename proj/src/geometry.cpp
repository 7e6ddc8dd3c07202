#include "coxvar/geometry.hpp"

#include <algorithm>

namespace coxvar {

namespace {

ExactScalar bond_entry(int m) {
  switch (m) {
    case 3: return ExactScalar::integer(-1);
    case 5: return -ExactScalar::phi();
    default: return -ExactScalar::cyclo(CycloReal::theta(static_cast<unsigned>(m)));
  }
}

// `x` re-expressed in the ring of `like`; only integers and rationals move.
ExactScalar promote(const ExactScalar& x, const ExactScalar& like) {
  if (x.ring() == like.ring()) {
    if (x.ring() != ExactScalar::Ring::CycloReal || x.as_cyclo()->m() == like.as_cyclo()->m()) return x;
    throw Error(ErrorKind::MixedRings, "cyclo-real rings for different m");
  }
  if (const mpz_class* z = x.as_integer()) {
    switch (like.ring()) {
      case ExactScalar::Ring::Rational: return ExactScalar::rational(mpq_class(*z));
      case ExactScalar::Ring::Golden: return ExactScalar::golden(mpq_class(*z), 0);
      case ExactScalar::Ring::CycloReal: {
        std::vector<mpq_class> c{mpq_class(*z)};
        return ExactScalar::cyclo(CycloReal(like.as_cyclo()->m(), std::move(c)));
      }
      case ExactScalar::Ring::Integer: break;
    }
  }
  if (const mpq_class* q = x.as_rational()) {
    switch (like.ring()) {
      case ExactScalar::Ring::Golden: return ExactScalar::golden(*q, 0);
      case ExactScalar::Ring::CycloReal: return ExactScalar::cyclo(CycloReal(like.as_cyclo()->m(), {*q}));
      default: break;
    }
  }
  throw Error(ErrorKind::MixedRings, std::string("cannot express ") + to_string(x.ring()) + " in " +
                                         to_string(like.ring()));
}

int ring_rank(const ExactScalar& x) {
  switch (x.ring()) {
    case ExactScalar::Ring::Integer: return 0;
    case ExactScalar::Ring::Rational: return 1;
    default: return 2;
  }
}

}  // namespace

std::vector<ExactScalar> cartan_matrix(const Component& c) {
  const int n = c.rank;
  CoxeterDiagram d = parse_group_spec(c.label());
  std::vector<ExactScalar> A(static_cast<std::size_t>(n * n), ExactScalar::integer(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int m = d.bond(i, j);
      if (i == j) A[static_cast<std::size_t>(i * n + j)] = ExactScalar::integer(2);
      else if (m >= 3) A[static_cast<std::size_t>(i * n + j)] = bond_entry(m);
    }
  }
  auto set = [&](int i, int j, long v) { A[static_cast<std::size_t>(i * n + j)] = ExactScalar::integer(v); };
  // Crystallographic bonds 4 and 6 use the non-symmetric integer forms.
  switch (c.family) {
    case Family::B:
      set(n - 2, n - 1, -1);
      set(n - 1, n - 2, -2);
      break;
    case Family::F:
      set(1, 2, -1);
      set(2, 1, -2);
      break;
    case Family::I:
      if (c.m == 4) {
        set(0, 1, -1);
        set(1, 0, -2);
      } else if (c.m == 6) {
        set(0, 1, -1);
        set(1, 0, -3);
      }
      break;
    default: break;
  }
  // Bring every entry into one ring.
  const ExactScalar* widest = &A[0];
  for (const auto& a : A)
    if (ring_rank(a) > ring_rank(*widest)) widest = &a;
  const ExactScalar like = *widest;
  for (auto& a : A) a = promote(a, like);
  return A;
}

bool GroupElement::operator==(const GroupElement& o) const {
  if (n != o.n) return false;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!(entries[i] == o.entries[i])) return false;
  return true;
}

std::strong_ordering GroupElement::operator<=>(const GroupElement& o) const {
  if (auto c = n <=> o.n; c != 0) return c;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (auto c = entries[i].compare(o.entries[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

// Cartan matrix of the whole diagram in one common ring.
std::vector<ExactScalar> full_cartan(const CoxeterDiagram& d) {
  const int n = d.rank;
  std::vector<std::vector<ExactScalar>> blocks;
  std::size_t widest = 0;
  for (const auto& c : d.components) {
    blocks.push_back(cartan_matrix(c));
    if (ring_rank(blocks.back().front()) > ring_rank(blocks[widest].front())) widest = blocks.size() - 1;
  }
  const ExactScalar ring = blocks[widest].front();
  std::vector<ExactScalar> A(static_cast<std::size_t>(n * n), promote(ExactScalar::integer(0), ring));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& c = d.components[b];
    for (int i = 0; i < c.rank; ++i)
      for (int j = 0; j < c.rank; ++j)
        A[static_cast<std::size_t>((c.offset + i) * n + c.offset + j)] =
            promote(blocks[b][static_cast<std::size_t>(i * c.rank + j)], ring);
  }
  return A;
}

}  // namespace

GroupElement element_matrix(const EnumeratedGroup& g, ElemId x) {
  const int n = g.rank();
  const std::vector<ExactScalar> A = full_cartan(g.diagram());
  const ExactScalar zero = promote(ExactScalar::integer(0), A[0]);
  const ExactScalar one = promote(ExactScalar::integer(1), A[0]);
  GroupElement M{n, std::vector<ExactScalar>(static_cast<std::size_t>(n * n), zero)};
  for (int i = 0; i < n; ++i) M.entries[static_cast<std::size_t>(i * n + i)] = one;
  // Right-multiplying by s_i: column j of M s_i is M(e_j - A_ij e_i).
  for (std::uint8_t s : g.reduced_word(x)) {
    for (int j = 0; j < n; ++j) {
      const ExactScalar& a = A[static_cast<std::size_t>(s * n + j)];
      if (j == s || a.is_zero()) continue;
      for (int r = 0; r < n; ++r)
        M.entries[static_cast<std::size_t>(r * n + j)] -= a * M.entries[static_cast<std::size_t>(r * n + s)];
    }
    // Column s maps to -column s.
    for (int r = 0; r < n; ++r) {
      auto& e = M.entries[static_cast<std::size_t>(r * n + s)];
      e = -e;
    }
  }
  return M;
}

ReflectionRoot reflection_root(const EnumeratedGroup& g, ReflId t) {
  const PalindromicDecomposition pd = palindromic_decomposition(g, t);
  const int ci = g.diagram().component_of(pd.s);
  const Component& c = g.diagram().components[static_cast<std::size_t>(ci)];
  const std::vector<ExactScalar> A = cartan_matrix(c);
  const int n = c.rank;
  const ExactScalar zero = promote(ExactScalar::integer(0), A[0]);
  std::vector<ExactScalar> beta(static_cast<std::size_t>(n), zero);
  beta[static_cast<std::size_t>(pd.s - c.offset)] = promote(ExactScalar::integer(1), A[0]);
  // t = v^-1 s v, so its root is v^-1(alpha_s): letters of v act first to last.
  for (std::uint8_t letter : g.reduced_word(pd.v)) {
    const int i = letter - c.offset;
    if (i < 0 || i >= n) continue;
    ExactScalar pairing = zero;
    for (int j = 0; j < n; ++j) pairing += A[static_cast<std::size_t>(i * n + j)] * beta[static_cast<std::size_t>(j)];
    beta[static_cast<std::size_t>(i)] -= pairing;
  }
  return {ci, std::move(beta)};
}

std::size_t exact_rank(std::vector<std::vector<ExactScalar>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  // Integers live in a ring without division; move everything to a field.
  ExactScalar like = ExactScalar::rational(0);
  for (const auto& r : rows)
    for (const auto& x : r)
      if (ring_rank(x) == 2) like = x;
  for (auto& r : rows)
    for (auto& x : r) {
      if (x.ring() == ExactScalar::Ring::Integer) x = promote(x, like);
      else if (x.ring() == ExactScalar::Ring::Rational && like.ring() != ExactScalar::Ring::Rational) x = promote(x, like);
    }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col].is_zero()) continue;
      const ExactScalar f = rows[r][col] / rows[rank][col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace coxvar
