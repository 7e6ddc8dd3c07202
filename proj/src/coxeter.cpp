#include "coxvar/coxeter.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "coxvar/geometry.hpp"

namespace coxvar {

// ------------------------------------------------------------------ sets

std::vector<int> GenSet::members() const {
  std::vector<int> out;
  for (int s = 0; s < 32; ++s)
    if (contains(s)) out.push_back(s);
  return out;
}

std::string GenSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int i : members()) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(i + 1);
  }
  return s + "}";
}

std::optional<std::size_t> ReflectionSet::first() const {
  if (words_[0]) return static_cast<std::size_t>(std::countr_zero(words_[0]));
  if (words_[1]) return 64 + static_cast<std::size_t>(std::countr_zero(words_[1]));
  return std::nullopt;
}

std::strong_ordering ReflectionSet::operator<=>(const ReflectionSet& o) const {
  if (auto c = count() <=> o.count(); c != 0) return c;
  // The set whose smallest differing index belongs to it sorts first.
  for (std::size_t w = 0; w < 2; ++w) {
    const std::uint64_t diff = words_[w] ^ o.words_[w];
    if (diff == 0) continue;
    const std::uint64_t low = diff & (~diff + 1);
    return (words_[w] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::vector<std::uint32_t> ReflectionSet::members() const {
  std::vector<std::uint32_t> out;
  for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
  return out;
}

// ------------------------------------------------------------------ diagrams

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Local bond list of a component: (i, j, m) with m >= 3.
std::vector<std::array<int, 3>> component_bonds(const Component& c) {
  std::vector<std::array<int, 3>> b;
  const int n = c.rank;
  switch (c.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) b.push_back({i, i + 1, 3});
      break;
    case Family::B:
      for (int i = 0; i + 2 < n; ++i) b.push_back({i, i + 1, 3});
      b.push_back({n - 2, n - 1, 4});
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) b.push_back({i, i + 1, 3});
      b.push_back({n - 3, n - 1, 3});
      break;
    case Family::E:
      b.push_back({0, 2, 3});
      b.push_back({1, 3, 3});
      for (int i = 2; i + 1 < n; ++i) b.push_back({i, i + 1, 3});
      break;
    case Family::F:
      b = {{0, 1, 3}, {1, 2, 4}, {2, 3, 3}};
      break;
    case Family::H:
      b.push_back({0, 1, 5});
      for (int i = 1; i + 1 < n; ++i) b.push_back({i, i + 1, 3});
      break;
    case Family::I:
      b.push_back({0, 1, c.m});
      break;
  }
  return b;
}

}  // namespace

std::string Component::label() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(rank);
    case Family::B: return "B" + std::to_string(rank);
    case Family::D: return "D" + std::to_string(rank);
    case Family::E: return "E" + std::to_string(rank);
    case Family::F: return "F4";
    case Family::H: return "H" + std::to_string(rank);
    case Family::I: return "I2(" + std::to_string(m) + ")";
  }
  return "?";
}

std::uint64_t Component::order() const {
  const int n = rank;
  switch (family) {
    case Family::A: return factorial(n + 1);
    case Family::B: return (std::uint64_t{1} << n) * factorial(n);
    case Family::D: return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case Family::E: return n == 6 ? 51840ULL : (n == 7 ? 2903040ULL : 696729600ULL);
    case Family::F: return 1152;
    case Family::H: return n == 3 ? 120 : 14400;
    case Family::I: return 2 * static_cast<std::uint64_t>(m);
  }
  return 0;
}

std::size_t Component::reflection_count() const {
  const auto n = static_cast<std::size_t>(rank);
  switch (family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : (n == 7 ? 63 : 120);
    case Family::F: return 24;
    case Family::H: return n == 3 ? 15 : 60;
    case Family::I: return static_cast<std::size_t>(m);
  }
  return 0;
}

std::string CoxeterDiagram::label() const {
  std::string s;
  for (const auto& c : components) {
    if (!s.empty()) s += "x";
    s += c.label();
  }
  return s;
}

std::uint64_t CoxeterDiagram::order() const {
  std::uint64_t r = 1;
  for (const auto& c : components) r = saturating_mul(r, c.order());
  return r;
}

std::size_t CoxeterDiagram::reflection_count() const {
  std::size_t r = 0;
  for (const auto& c : components) r += c.reflection_count();
  return r;
}

int CoxeterDiagram::component_of(int s) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (s >= c.offset && s < c.offset + c.rank) return static_cast<int>(i);
  }
  throw Error(ErrorKind::Internal, "generator outside every component");
}

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorKind::ParseError, "bad integer '" + std::string(text) + "' in '" + std::string(whole) + "'");
  return v;
}

Component parse_name(std::string_view name, std::string_view whole) {
  if (name.empty()) throw Error(ErrorKind::ParseError, "empty component in '" + std::string(whole) + "'");
  Component c{Family::A, 0, 0, 0};
  if (name.starts_with("I2(")) {
    if (!name.ends_with(")")) throw Error(ErrorKind::ParseError, "unterminated I2( in '" + std::string(whole) + "'");
    c.family = Family::I;
    c.rank = 2;
    c.m = parse_int(name.substr(3, name.size() - 4), whole);
    if (c.m < 3) throw Error(ErrorKind::UnsupportedType, "I2(" + std::to_string(c.m) + ") is not supported; write A1xA1 for m = 2");
    return c;
  }
  const char head = name.front();
  const std::string_view tail = name.substr(1);
  switch (head) {
    case 'A': c.family = Family::A; break;
    case 'B': c.family = Family::B; break;
    case 'D': c.family = Family::D; break;
    case 'E': c.family = Family::E; break;
    case 'F': c.family = Family::F; break;
    case 'H': c.family = Family::H; break;
    default: throw Error(ErrorKind::ParseError, "unknown type '" + std::string(name) + "'");
  }
  c.rank = parse_int(tail, whole);
  switch (c.family) {
    case Family::A:
      if (c.rank < 1) throw Error(ErrorKind::UnsupportedType, "A_n needs n >= 1");
      break;
    case Family::B:
      if (c.rank < 2) throw Error(ErrorKind::UnsupportedType, "B_n needs n >= 2 (B1 is A1)");
      break;
    case Family::D:
      if (c.rank < 4) throw Error(ErrorKind::UnsupportedType, "D_n needs n >= 4 (D2 = A1xA1, D3 = A3)");
      break;
    case Family::E:
      if (c.rank < 6 || c.rank > 8) throw Error(ErrorKind::UnsupportedType, "E_n exists for n = 6, 7, 8");
      break;
    case Family::F:
      if (c.rank != 4) throw Error(ErrorKind::UnsupportedType, "F_n exists for n = 4 only");
      break;
    case Family::H:
      if (c.rank != 3 && c.rank != 4) throw Error(ErrorKind::UnsupportedType, "H_n exists for n = 3, 4");
      break;
    case Family::I: break;
  }
  return c;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

CoxeterDiagram parse_group_spec(std::string_view text, int max_rank) {
  const std::string_view whole = trim(text);
  if (whole.empty()) throw Error(ErrorKind::ParseError, "empty group spec");
  CoxeterDiagram d;
  std::size_t pos = 0;
  while (true) {
    const std::size_t cut = whole.find('x', pos);
    const std::string_view token = trim(whole.substr(pos, cut == std::string_view::npos ? std::string_view::npos : cut - pos));
    Component c = parse_name(token, whole);
    c.offset = d.rank;
    d.rank += c.rank;
    d.components.push_back(c);
    if (d.rank > max_rank)
      throw Error(ErrorKind::RankOutOfRange, "rank " + std::to_string(d.rank) + " exceeds the limit " + std::to_string(max_rank));
    if (cut == std::string_view::npos) break;
    pos = cut + 1;
  }
  d.bonds.assign(static_cast<std::size_t>(d.rank * d.rank), 2);
  for (int i = 0; i < d.rank; ++i) d.bonds[static_cast<std::size_t>(i * d.rank + i)] = 1;
  for (const auto& c : d.components) {
    for (const auto& [i, j, m] : component_bonds(c)) {
      d.bonds[static_cast<std::size_t>((c.offset + i) * d.rank + c.offset + j)] = m;
      d.bonds[static_cast<std::size_t>((c.offset + j) * d.rank + c.offset + i)] = m;
    }
  }
  return d;
}

std::vector<GenSet> connected_components(const CoxeterDiagram& d, GenSet J) {
  std::vector<GenSet> out;
  std::uint32_t left = J.bits();
  while (left) {
    const int start = std::countr_zero(left);
    std::uint32_t comp = std::uint32_t{1} << start;
    std::uint32_t frontier = comp;
    while (frontier) {
      const int i = std::countr_zero(frontier);
      frontier &= frontier - 1;
      for (int j = 0; j < d.rank; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << j;
        if ((J.bits() & bit) && !(comp & bit) && d.bond(i, j) >= 3) {
          comp |= bit;
          frontier |= bit;
        }
      }
    }
    out.emplace_back(comp);
    left &= ~comp;
  }
  return out;
}

bool is_connected(const CoxeterDiagram& d, GenSet J) { return !J.empty() && connected_components(d, J).size() == 1; }

std::vector<GenSet> irreducible_subsets(const CoxeterDiagram& d) {
  std::vector<GenSet> out;
  for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << d.rank); ++bits)
    if (is_connected(d, GenSet(bits))) out.emplace_back(bits);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string connected_label(const CoxeterDiagram& d, GenSet J) {
  const std::vector<int> nodes = J.members();
  const int n = static_cast<int>(nodes.size());
  if (n == 1) return "A1";
  std::vector<std::array<int, 3>> edges;
  int max_bond = 3;
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const int m = d.bond(nodes[a], nodes[b]);
      if (m >= 3) {
        edges.push_back({a, b, m});
        ++degree[a];
        ++degree[b];
        max_bond = std::max(max_bond, m);
      }
    }
  if (n == 2) {
    const int m = edges.front()[2];
    if (m == 3) return "A2";
    if (m == 4) return "B2";
    return "I2(" + std::to_string(m) + ")";
  }
  const int branch = static_cast<int>(std::count_if(degree.begin(), degree.end(), [](int x) { return x >= 3; }));
  if (max_bond == 3) {
    if (branch == 0) return "A" + std::to_string(n);
    // Arm lengths around the branch node decide D versus E.
    const int center = static_cast<int>(std::find_if(degree.begin(), degree.end(), [](int x) { return x >= 3; }) - degree.begin());
    std::vector<int> arms;
    for (const auto& e : edges) {
      if (e[0] != center && e[1] != center) continue;
      int prev = center;
      int cur = e[0] == center ? e[1] : e[0];
      int len = 1;
      while (true) {
        int next = -1;
        for (const auto& f : edges) {
          const int other = f[0] == cur ? f[1] : (f[1] == cur ? f[0] : -1);
          if (other >= 0 && other != prev) next = other;
        }
        if (next < 0) break;
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    return "E" + std::to_string(n);
  }
  if (max_bond == 4) {
    // Bond 4 at an end of the path gives B_n, in the middle (n = 4) F4.
    for (const auto& e : edges)
      if (e[2] == 4 && (degree[e[0]] == 1 || degree[e[1]] == 1)) return "B" + std::to_string(n);
    return "F" + std::to_string(n);
  }
  return "H" + std::to_string(n);
}

}  // namespace

std::string subdiagram_label(const CoxeterDiagram& d, GenSet J) {
  if (J.empty()) return "1";
  std::string s;
  for (GenSet c : connected_components(d, J)) {
    if (!s.empty()) s += "x";
    s += connected_label(d, c);
  }
  return s;
}

// ------------------------------------------------------------------ enumeration

namespace {

// Breadth-first enumeration of a Cayley graph by right multiplication,
// generator order fixed. States are produced by `next`; `key` interns them.
// Only the current and next BFS layers keep their states alive.
template <typename State, typename KeyFn, typename NextFn>
std::vector<ElemId> bfs_cayley(int rank, State start, KeyFn key, NextFn next, std::uint64_t limit) {
  using Key = decltype(key(start));
  std::unordered_map<Key, ElemId> ids;
  std::vector<ElemId> table;
  std::vector<std::pair<ElemId, State>> layer;
  ids.emplace(key(start), 0);
  layer.emplace_back(0, std::move(start));
  ElemId count = 1;
  while (!layer.empty()) {
    std::vector<std::pair<ElemId, State>> upcoming;
    for (auto& [id, state] : layer) {
      if (table.size() < (static_cast<std::size_t>(id) + 1) * rank) table.resize((static_cast<std::size_t>(id) + 1) * rank);
      for (int s = 0; s < rank; ++s) {
        State nxt = next(state, s);
        auto k = key(nxt);
        auto it = ids.find(k);
        if (it == ids.end()) {
          if (count >= limit)
            throw Error(ErrorKind::OrderLimitExceeded, "enumeration passed " + std::to_string(limit) + " elements");
          it = ids.emplace(std::move(k), count++).first;
          upcoming.emplace_back(it->second, std::move(nxt));
        }
        table[static_cast<std::size_t>(id) * rank + s] = it->second;
      }
    }
    layer = std::move(upcoming);
  }
  table.resize(static_cast<std::size_t>(count) * rank);
  return table;
}

}  // namespace

std::vector<ElemId> component_cayley_table(const Component& c, bool dihedral_fast_path, std::uint64_t order_limit) {
  const std::uint64_t limit = order_limit + 1;
  if (c.family == Family::I && dihedral_fast_path) {
    // Elements r^k (flip 0) and r^k s1 (flip 1), r = s1 s2, encoded 2k + flip.
    const std::uint64_t m = static_cast<std::uint64_t>(c.m);
    auto next = [m](std::uint64_t st, int s) -> std::uint64_t {
      const std::uint64_t k = st >> 1;
      const bool flip = st & 1;
      if (s == 0) return flip ? (k << 1) : ((k << 1) | 1);
      // r^k s2 = r^(k-1) s1 ; r^k s1 s2 = r^(k+1)
      return flip ? (((k + 1) % m) << 1) : ((((k + m - 1) % m) << 1) | 1);
    };
    return bfs_cayley(2, std::uint64_t{0}, [](std::uint64_t st) { return st; }, next, limit);
  }
  // Orbit of rho = (1,...,1) in fundamental-weight coordinates; the element w
  // is keyed by w^-1 rho so that right multiplication by s acts as s on the key.
  const std::vector<ExactScalar> A = cartan_matrix(c);
  const int n = c.rank;
  using Vec = std::vector<ExactScalar>;
  Vec rho(static_cast<std::size_t>(n), ExactScalar::from_int_like(1, A[0]));
  auto next = [&A, n](const Vec& v, int s) {
    Vec r = v;
    const ExactScalar cs = v[static_cast<std::size_t>(s)];
    for (int k = 0; k < n; ++k) {
      const ExactScalar& a = A[static_cast<std::size_t>(k * n + s)];
      if (!a.is_zero()) r[static_cast<std::size_t>(k)] -= cs * a;
    }
    return r;
  };
  auto key = [](const Vec& v) {
    std::string k;
    for (const auto& x : v) {
      k += x.to_string();
      k += ';';
    }
    return k;
  };
  return bfs_cayley(n, std::move(rho), key, next, limit);
}

ElemId EnumeratedGroup::multiply(ElemId x, ElemId y) const {
  for (std::uint8_t s : reduced_word(y)) x = right_mul(x, s);
  return x;
}

ElemId EnumeratedGroup::from_word(std::span<const int> word) const {
  ElemId x = identity();
  for (int s : word) {
    if (s < 0 || s >= rank()) throw Error(ErrorKind::ParseError, "generator index out of range");
    x = right_mul(x, s);
  }
  return x;
}

std::string EnumeratedGroup::word_string(ElemId x) const {
  const auto w = reduced_word(x);
  if (w.empty()) return "e";
  std::string s;
  for (std::uint8_t g : w) s += "s" + std::to_string(static_cast<int>(g) + 1);
  return s;
}

ReflId EnumeratedGroup::conjugate_by(ReflId t, ElemId w) const {
  for (std::uint8_t s : reduced_word(w)) t = conjugate(t, s);
  return t;
}

ReflId EnumeratedGroup::conjugate_by_inverse(ReflId t, ElemId w) const {
  const auto word = reduced_word(w);
  for (std::size_t i = word.size(); i-- > 0;) t = conjugate(t, word[i]);
  return t;
}

ReflectionSet EnumeratedGroup::conjugate_set_by(const ReflectionSet& u, ElemId w) const {
  ReflectionSet out;
  u.for_each([&](std::size_t t) { out.set(conjugate_by(static_cast<ReflId>(t), w)); });
  return out;
}

ReflectionSet EnumeratedGroup::conjugate_set_by_inverse(const ReflectionSet& u, ElemId w) const {
  ReflectionSet out;
  u.for_each([&](std::size_t t) { out.set(conjugate_by_inverse(static_cast<ReflId>(t), w)); });
  return out;
}

void EnumeratedGroup::finish() {
  const std::size_t N = right_.size() / static_cast<std::size_t>(rank());
  const int n = rank();

  length_.assign(N, 0);
  support_.assign(N, 0);
  parent_.assign(N, 0);
  parent_gen_.assign(N, 0);
  std::vector<bool> seen(N, false);
  seen[0] = true;
  for (ElemId x = 0; x < N; ++x) {
    for (int s = 0; s < n; ++s) {
      const ElemId y = right_mul(x, s);
      if (seen[y]) continue;
      if (y < x) throw Error(ErrorKind::Internal, "element ids are not in BFS order");
      seen[y] = true;
      parent_[y] = x;
      parent_gen_[y] = static_cast<std::uint8_t>(s);
      length_[y] = static_cast<std::uint16_t>(length_[x] + 1);
      support_[y] = support_[x] | (std::uint32_t{1} << s);
    }
  }

  word_offset_.assign(N + 1, 0);
  for (ElemId x = 0; x < N; ++x) word_offset_[x + 1] = word_offset_[x] + length_[x];
  words_.assign(word_offset_[N], 0);
  for (ElemId x = 1; x < N; ++x) {
    const ElemId p = parent_[x];
    std::copy(words_.begin() + static_cast<std::ptrdiff_t>(word_offset_[p]),
              words_.begin() + static_cast<std::ptrdiff_t>(word_offset_[p + 1]),
              words_.begin() + static_cast<std::ptrdiff_t>(word_offset_[x]));
    words_[word_offset_[x + 1] - 1] = parent_gen_[x];
  }

  inverse_.assign(N, 0);
  for (ElemId x = 0; x < N; ++x) {
    const auto w = reduced_word(x);
    ElemId y = identity();
    for (std::size_t i = w.size(); i-- > 0;) y = right_mul(y, w[i]);
    inverse_[x] = y;
  }

  left_.assign(N * static_cast<std::size_t>(n), 0);
  for (ElemId x = 0; x < N; ++x)
    for (int s = 0; s < n; ++s) left_[static_cast<std::size_t>(x) * n + s] = inverse_[right_mul(inverse_[x], s)];

  longest_ = static_cast<ElemId>(std::max_element(length_.begin(), length_.end()) - length_.begin());

  // Reflections: closure of S under conjugation by generators.
  std::vector<bool> is_refl(N, false);
  std::deque<ElemId> queue;
  for (int s = 0; s < n; ++s) {
    const ElemId e = simple(s);
    if (!is_refl[e]) {
      is_refl[e] = true;
      queue.push_back(e);
    }
  }
  while (!queue.empty()) {
    const ElemId t = queue.front();
    queue.pop_front();
    for (int s = 0; s < n; ++s) {
      const ElemId c = left_mul(s, right_mul(t, s));
      if (!is_refl[c]) {
        is_refl[c] = true;
        queue.push_back(c);
      }
    }
  }
  elem_refl_.assign(N, -1);
  refl_elem_.clear();
  for (ElemId x = 0; x < N; ++x) {
    if (!is_refl[x]) continue;
    elem_refl_[x] = static_cast<std::int32_t>(refl_elem_.size());
    refl_elem_.push_back(x);
  }
  if (refl_elem_.size() > ReflectionSet::kCapacity)
    throw Error(ErrorKind::RankOutOfRange, std::to_string(refl_elem_.size()) + " reflections exceed the supported " +
                                               std::to_string(ReflectionSet::kCapacity));
  refl_conj_.assign(refl_elem_.size() * static_cast<std::size_t>(n), 0);
  for (ReflId t = 0; t < refl_elem_.size(); ++t)
    for (int s = 0; s < n; ++s)
      refl_conj_[static_cast<std::size_t>(t) * n + s] =
          static_cast<ReflId>(elem_refl_[left_mul(s, right_mul(refl_elem_[t], s))]);

  // N(xs) = N(x) + {x s x^-1} whenever l(xs) = l(x) + 1.
  inversion_.assign(N, ReflectionSet{});
  for (ElemId y = 1; y < N; ++y) {
    const ElemId x = parent_[y];
    inversion_[y] = inversion_[x];
    inversion_[y].set(conjugate_by_inverse(simple_reflection(parent_gen_[y]), x));
  }

  parabolic_refl_.assign(std::size_t{1} << n, ReflectionSet{});
  for (ReflId t = 0; t < refl_elem_.size(); ++t) {
    const std::uint32_t supp = support_[refl_elem_[t]];
    for (std::uint32_t J = 0; J < (std::uint32_t{1} << n); ++J)
      if ((supp & ~J) == 0) parabolic_refl_[J].set(t);
  }
}

EnumeratedGroup build_group(const CoxeterDiagram& d, const BuildOptions& options) {
  const std::uint64_t known = d.order();
  if (known > options.order_limit)
    throw Error(ErrorKind::OrderLimitExceeded, d.label() + " has order " + std::to_string(known) +
                                                   ", above the limit " + std::to_string(options.order_limit));
  if (d.reflection_count() > ReflectionSet::kCapacity)
    throw Error(ErrorKind::RankOutOfRange, d.label() + " has " + std::to_string(d.reflection_count()) +
                                               " reflections, above the supported " +
                                               std::to_string(ReflectionSet::kCapacity));
  EnumeratedGroup g;
  g.diagram_ = d;
  const bool fast = options.dihedral_fast_path;
  if (d.components.size() == 1) {
    g.right_ = component_cayley_table(d.components.front(), fast, options.order_limit);
  } else {
    std::vector<std::vector<ElemId>> tables;
    std::vector<std::uint64_t> radix;
    for (const auto& c : d.components) {
      tables.push_back(component_cayley_table(c, fast, options.order_limit));
      radix.push_back(tables.back().size() / static_cast<std::size_t>(c.rank));
    }
    std::vector<int> comp_of(static_cast<std::size_t>(d.rank));
    for (int s = 0; s < d.rank; ++s) comp_of[static_cast<std::size_t>(s)] = d.component_of(s);
    // State: mixed-radix code of the per-component element ids.
    auto next = [&](std::uint64_t code, int s) {
      const int ci = comp_of[static_cast<std::size_t>(s)];
      std::uint64_t place = 1;
      for (int i = 0; i < ci; ++i) place *= radix[static_cast<std::size_t>(i)];
      const std::uint64_t r = radix[static_cast<std::size_t>(ci)];
      const std::uint64_t digit = (code / place) % r;
      const auto& comp = d.components[static_cast<std::size_t>(ci)];
      const std::uint64_t moved = tables[static_cast<std::size_t>(ci)][digit * static_cast<std::uint64_t>(comp.rank) +
                                                                       static_cast<std::uint64_t>(s - comp.offset)];
      return code - digit * place + moved * place;
    };
    g.right_ = bfs_cayley(d.rank, std::uint64_t{0}, [](std::uint64_t c) { return c; }, next, options.order_limit + 1);
  }
  if (g.right_.size() / static_cast<std::size_t>(d.rank) != known)
    throw Error(ErrorKind::NonFiniteDiagram, "enumerated " + std::to_string(g.right_.size() / d.rank) +
                                                 " elements for " + d.label() + ", expected " + std::to_string(known));
  g.finish();
  return g;
}

// ------------------------------------------------------------------ parabolic data

GenSet support(const EnumeratedGroup& g, ElemId x) { return g.support(x); }

ReflectionSet inversion_set(const EnumeratedGroup& g, ElemId x) { return g.inversion_set(x); }

std::vector<ElemId> parabolic_elements(const EnumeratedGroup& g, GenSet J) {
  std::vector<ElemId> out;
  for (ElemId x = 0; x < g.order(); ++x)
    if (g.support(x).subset_of(J)) out.push_back(x);
  return out;
}

std::vector<ElemId> minimal_coset_representatives(const EnumeratedGroup& g, GenSet J) {
  std::vector<ElemId> out;
  for (ElemId x = 0; x < g.order(); ++x) {
    bool minimal = true;
    for (int s : J.members())
      if (g.length(g.left_mul(s, x)) < g.length(x)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(x);
  }
  return out;
}

std::optional<GenSet> conjugate_subset(const EnumeratedGroup& g, GenSet J, ElemId x) {
  GenSet K;
  for (int s : J.members()) {
    const ElemId c = g.reflection_element(g.conjugate_by(g.simple_reflection(s), x));
    if (g.length(c) != 1) return std::nullopt;
    K = K.with(g.reduced_word(c)[0]);
  }
  return K;
}

std::vector<ConjugateSubset> coxeter_class(const EnumeratedGroup& g, GenSet J) {
  // Scans W in BFS order, so each witness has minimal length.
  std::vector<ConjugateSubset> out;
  std::vector<bool> found(std::size_t{1} << g.rank(), false);
  const std::size_t target = [&] {
    std::size_t c = 0;
    for (std::uint32_t b = 0; b < (std::uint32_t{1} << g.rank()); ++b)
      if (std::popcount(b) == J.size()) ++c;
    return c;
  }();
  for (ElemId w = 0; w < g.order() && out.size() < target; ++w) {
    auto K = conjugate_subset(g, J, w);
    if (!K || found[K->bits()]) continue;
    found[K->bits()] = true;
    out.push_back({*K, g.inverse(w)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.K < b.K; });
  return out;
}

ParabolicData parabolic_data(const EnumeratedGroup& g, GenSet J) {
  ParabolicData p;
  p.J = J;
  p.W_J = parabolic_elements(g, J);
  p.T_J = g.parabolic_reflections(J);
  p.X_J = minimal_coset_representatives(g, J);
  p.irreducible = is_connected(g.diagram(), J);
  p.coxeter_class = coxeter_class(g, J);
  for (ElemId x : p.X_J) {
    auto K = conjugate_subset(g, J, x);
    if (K && *K == J) p.X_SJ.push_back(x);
  }
  p.normalizer_order = static_cast<std::uint64_t>(p.W_J.size()) * p.X_SJ.size();
  return p;
}

std::vector<ElemId> normalizer_brute_force(const EnumeratedGroup& g, GenSet J) {
  const ReflectionSet& TJ = g.parabolic_reflections(J);
  std::vector<ElemId> out;
  for (ElemId w = 0; w < g.order(); ++w)
    if (g.conjugate_set_by(TJ, w) == TJ) out.push_back(w);
  return out;
}

std::uint64_t x_J_s(const EnumeratedGroup& g, GenSet J, int s) {
  if (s < 0 || s >= g.rank() || !J.contains(s))
    throw Error(ErrorKind::GeneratorNotInJ, "s" + std::to_string(s + 1) + " is not in " + J.to_string());
  const ReflId t = g.simple_reflection(s);
  std::uint64_t centralizer = 0;
  for (ElemId x : parabolic_elements(g, J))
    if (g.conjugate_by(t, x) == t) ++centralizer;
  return centralizer / 2;
}

std::vector<ElemId> double_coset_representatives(const EnumeratedGroup& g, GenSet J, GenSet K) {
  std::vector<ElemId> out;
  for (ElemId w : parabolic_elements(g, J)) {
    bool ok = true;
    for (int s : K.members()) {
      // w in X_K and X_K^-1: no left and no right descent in K.
      if (g.length(g.left_mul(s, w)) < g.length(w) || g.length(g.right_mul(w, s)) < g.length(w)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto conj = conjugate_subset(g, K, w);
    if (conj && *conj == K) out.push_back(w);
  }
  return out;
}

namespace {

std::vector<ReflId> reflection_orbit(const EnumeratedGroup& g, ReflId t, GenSet generators) {
  std::vector<bool> seen(g.reflection_count(), false);
  std::vector<ReflId> orbit{t};
  seen[t] = true;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (int s : generators.members()) {
      const ReflId c = g.conjugate(orbit[i], s);
      if (!seen[c]) {
        seen[c] = true;
        orbit.push_back(c);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

}  // namespace

std::vector<std::vector<ReflId>> reflection_conjugacy_classes(const EnumeratedGroup& g) {
  std::vector<std::vector<ReflId>> out;
  std::vector<bool> assigned(g.reflection_count(), false);
  for (ReflId t = 0; t < g.reflection_count(); ++t) {
    if (assigned[t]) continue;
    auto orbit = reflection_orbit(g, t, GenSet::all(g.rank()));
    for (ReflId u : orbit) assigned[u] = true;
    out.push_back(std::move(orbit));
  }
  return out;
}

ReflectionSet full_support_reflections(const EnumeratedGroup& g) {
  ReflectionSet out;
  const GenSet S = GenSet::all(g.rank());
  for (ReflId t = 0; t < g.reflection_count(); ++t)
    if (g.support(g.reflection_element(t)) == S) out.set(t);
  return out;
}

ReflectionSet floor_class(const EnumeratedGroup& g, ReflId t, FloorAmbient ambient) {
  const GenSet J = g.support(g.reflection_element(t));
  const GenSet gens = ambient == FloorAmbient::ParabolicOfSupport ? J : GenSet::all(g.rank());
  ReflectionSet out;
  for (ReflId u : reflection_orbit(g, t, gens))
    if (g.support(g.reflection_element(u)) == J) out.set(u);
  return out;
}

PalindromicDecomposition palindromic_decomposition(const EnumeratedGroup& g, ReflId t) {
  const ElemId te = g.reflection_element(t);
  const auto word = g.reduced_word(te);
  const std::size_t k = word.size() / 2;
  if (word.size() % 2 != 1) throw Error(ErrorKind::Internal, "reflection of even length");
  {
    const int s = word[k];
    ElemId v = g.identity();
    for (std::size_t i = k + 1; i < word.size(); ++i) v = g.right_mul(v, word[i]);
    if (g.length(v) == static_cast<int>(k) && g.conjugate_by(g.simple_reflection(s), v) == t) return {s, v, true};
  }
  // Stored word is not palindromic: search W_{J(t)} by increasing length.
  const GenSet J = g.support(te);
  for (ElemId v : parabolic_elements(g, J)) {
    if (g.length(v) != static_cast<int>(k)) continue;
    for (int s : J.members())
      if (g.conjugate_by(g.simple_reflection(s), v) == t) return {s, v, false};
  }
  throw Error(ErrorKind::Internal, "no palindromic decomposition for reflection " + std::to_string(t));
}

}  // namespace coxvar
