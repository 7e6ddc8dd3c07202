#include "coxvar/published.hpp"

namespace coxvar {

namespace {

std::uint64_t fact(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t pow2(int k) { return std::uint64_t{1} << k; }

GenSet range(int lo, int hi) {  // {lo, ..., hi}
  GenSet J;
  for (int s = lo; s <= hi; ++s) J = J.with(s);
  return J;
}

GenSet of(std::initializer_list<int> members) {
  GenSet J;
  for (int s : members) J = J.with(s);
  return J;
}

std::string indexed(const char* family, int k) { return family + std::to_string(k); }

struct Fixed {
  const char* label;
  Ingredients values;
};

std::vector<PublishedRow> display_only(std::initializer_list<Fixed> rows) {
  std::vector<PublishedRow> out;
  for (const auto& r : rows) out.push_back({r.label, GenSet{}, {r.values}, false, false});
  return out;
}

}  // namespace

std::uint64_t ingredient_product(const Ingredients& v) { return v[0] * v[1] * v[2] * v[3]; }

PublishedReflectionCounts published_reflection_counts(const Component& c) {
  const auto n = static_cast<std::uint64_t>(c.rank);
  switch (c.family) {
    case Family::A: return {n * (n + 1) / 2, 1, {1}};
    case Family::B: return {n * n, 2, {1, n - 1}};
    case Family::D: return {n * (n - 1), 1, {n - 2}};
    case Family::E:
      if (n == 6) return {36, 1, {7}};
      if (n == 7) return {63, 1, {16}};
      return {120, 1, {44}};
    case Family::F: return {24, 2, {5, 5}};
    case Family::H: return n == 3 ? PublishedReflectionCounts{15, 1, {8}} : PublishedReflectionCounts{60, 1, {42}};
    case Family::I: {
      const auto m = static_cast<std::uint64_t>(c.m);
      if (m % 2 == 1) return {m, 1, {m - 2}};
      return {m, 2, {(m - 2) / 2, (m - 2) / 2}};
    }
  }
  return {};
}

std::vector<PublishedRow> published_multiplicities(const Component& c) {
  std::vector<PublishedRow> rows;
  switch (c.family) {
    case Family::A: {
      // Listed for A_{n-1}, so n = rank + 1.
      const int n = c.rank + 1;
      for (int i = 1; i <= n - 1; ++i)
        rows.push_back({indexed("A", i), range(0, i - 1),
                        {{1, static_cast<std::uint64_t>(n - i), fact(n - i - 1), fact(i - 1)}}});
      break;
    }
    case Family::B: {
      const int n = c.rank;
      for (int i = 1; i <= n - 1; ++i)
        rows.push_back({indexed("A", i), range(0, i - 1),
                        {{1, static_cast<std::uint64_t>(n - i), pow2(n - i) * fact(n - i - 1), fact(i - 1)}}});
      for (int j = 1; j <= n; ++j) {
        PublishedRow r{indexed("B", j), range(n - j, n - 1), {{1, 1, pow2(n - 1) * fact(n - j), fact(j - 1)}}};
        const Ingredients other{static_cast<std::uint64_t>(j - 1), 1, pow2(n - 1) * fact(n - j), fact(j - 2)};
        if (j >= 2 && other != r.alternatives.front()) r.alternatives.push_back(other);
        rows.push_back(std::move(r));
      }
      break;
    }
    case Family::D: {
      const int n = c.rank;
      for (int i = 1; i <= n - 1; ++i)
        rows.push_back({indexed("A", i), range(0, i - 1),
                        {{1, static_cast<std::uint64_t>(n - i + 1), pow2(n - i - 1) * fact(n - i - 1), fact(i - 1)}}});
      for (int j = 3; j <= n; ++j)
        rows.push_back({indexed("D", j), range(n - j, n - 1),
                        {{static_cast<std::uint64_t>(j - 2), 1, pow2(n - j) * fact(n - j), pow2(j - 2) * fact(j - 2)}}});
      break;
    }
    case Family::E:
      if (c.rank == 6) {
        rows = {
            {"A1", of({0}), {{1, 6, 720, 1}}},
            {"A2", of({0, 2}), {{1, 5, 72, 1}}},
            {"A3", of({0, 2, 3}), {{1, 5, 8, 2}}},
            {"A4", of({0, 2, 3, 4}), {{1, 4, 2, 6}}},
            {"D4", of({1, 2, 3, 4}), {{2, 1, 6, 8}}},
            {"A5", of({0, 2, 3, 4, 5}), {{1, 1, 2, 24}}},
            {"D5", range(0, 4), {{3, 2, 1, 48}}},
            {"E6", range(0, 5), {{7, 1, 1, 720}}},
        };
      } else if (c.rank == 7) {
        rows = display_only({{"A1", {1, 7, 23040, 1}},
                             {"A2", {1, 6, 1440, 1}},
                             {"A3", {1, 6, 96, 2}},
                             {"A4", {1, 5, 12, 6}},
                             {"D4", {2, 1, 48, 8}},
                             {"A5'", {1, 1, 12, 24}},
                             {"A5''", {1, 1, 4, 24}},
                             {"D5", {3, 2, 4, 48}},
                             {"A6", {1, 1, 2, 120}},
                             {"D6", {4, 1, 2, 384}},
                             {"E6", {7, 1, 2, 720}},
                             {"E7", {16, 1, 1, 23040}}});
      } else {
        rows = display_only({{"A1", {1, 8, 2903040, 1}},
                             {"A2", {1, 7, 103680, 1}},
                             {"A3", {1, 7, 3840, 2}},
                             {"A4", {1, 6, 240, 6}},
                             {"D4", {2, 1, 1154, 8}},
                             {"A5", {1, 4, 24, 24}},
                             {"D5", {3, 2, 48, 48}},
                             {"A6", {1, 3, 4, 120}},
                             {"D6", {4, 1, 8, 384}},
                             {"E6", {7, 1, 12, 720}},
                             {"A7", {1, 1, 2, 720}},
                             {"D7", {5, 1, 2, 3840}},
                             {"E7", {16, 1, 2, 23040}},
                             {"E8", {44, 1, 1, 2903040}}});
      }
      break;
    case Family::F:
      rows = {
          {"A1'", of({0}), {{1, 2, 48, 1}}},
          {"A1''", of({3}), {{1, 2, 48, 1}}},
          {"A2'", of({0, 1}), {{1, 1, 12, 1}}},
          {"A2''", of({2, 3}), {{1, 1, 12, 1}}},
          {"B2", of({1, 2}), {{2, 1, 8, 2}}},
          {"B3'", of({0, 1, 2}), {{1, 1, 2, 8}, {2, 1, 2, 4}}},
          {"B3''", of({1, 2, 3}), {{1, 1, 2, 8}, {2, 1, 2, 4}}},
          {"F4", range(0, 3), {{10, 1, 1, 48}}},
      };
      break;
    case Family::H:
      if (c.rank == 3) {
        rows = {
            {"A1", of({0}), {{1, 3, 4, 1}}},
            {"A2", of({1, 2}), {{1, 1, 2, 1}}},
            {"I2(5)", of({0, 1}), {{3, 1, 2, 1}}},
            {"H3", range(0, 2), {{8, 1, 1, 4}}},
        };
      } else {
        rows = {
            {"A1", of({0}), {{1, 4, 120, 1}}},
            {"A2", of({1, 2}), {{1, 2, 12, 1}}},
            {"I2(5)", of({0, 1}), {{3, 1, 20, 1}}},
            {"A3", of({1, 2, 3}), {{1, 1, 2, 2}}},
            {"H3", range(0, 2), {{8, 1, 2, 4}}},
            {"H4", range(0, 3), {{42, 1, 1, 120}}},
        };
      }
      break;
    case Family::I: {
      const auto m = static_cast<std::uint64_t>(c.m);
      if (m % 2 == 1) {
        rows.push_back({"A1", of({0}), {{1, 2, 1, 1}}});
      } else {
        rows.push_back({"A1", of({0}), {{2, 1, 1, 1}}, true, true});
        rows.push_back({"A1", of({1}), {{2, 1, 1, 1}}, true, true});
      }
      rows.push_back({"I2(" + std::to_string(m) + ")", of({0, 1}), {{m - 2, 1, 1, 1}}});
      break;
    }
  }
  return rows;
}

}  // namespace coxvar
