// Parallel kernels against their serial references:
//   det_mod_p  vs det_mod_p_serial  on Varchenko matrices evaluated mod p
//   count_L    vs count_L_serial    on one edge per class, every reflection on it

#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <set>

#include "coxvar/arrangement.hpp"
#include "coxvar/varchenko.hpp"

namespace {

using namespace coxvar;

const char* const kDetGroups[] = {"B3", "H3", "D4", "B4", "F4"};
const char* const kCountGroups[] = {"B4", "F4", "H4"};

const EnumeratedGroup& cached_group(const std::string& spec) {
  static std::map<std::string, EnumeratedGroup> cache;
  auto it = cache.find(spec);
  if (it == cache.end()) it = cache.emplace(spec, build_group(parse_group_spec(spec))).first;
  return it->second;
}

ModMatrix matrix_at_random_point(const std::string& spec) {
  const auto& g = cached_group(spec);
  const auto w = WeightAssignment::per_hyperplane(g);
  ModPoint point{default_prime(), {}};
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<u64> dist(2, point.p - 1);
  for (std::size_t i = 0; i < w.variable_count(); ++i) point.values.push_back(dist(rng));
  return varchenko_matrix_mod_p(g, w, point);
}

template <u64 (*Det)(ModMatrix)>
void BM_Det(benchmark::State& state) {
  const std::string spec = kDetGroups[state.range(0)];
  const ModMatrix m = matrix_at_random_point(spec);
  for (auto _ : state) benchmark::DoNotOptimize(Det(m));
  state.SetLabel(spec + " n=" + std::to_string(m.size()));
}

template <bool Parallel>
void BM_CountL(benchmark::State& state) {
  const std::string spec = kCountGroups[state.range(0)];
  const auto& g = cached_group(spec);
  const EdgeCatalog cat = enumerate_relevant_edges(g);
  std::vector<Edge> edges;
  std::set<std::size_t> seen;
  for (const Edge& e : cat.edges)
    if (seen.insert(cat.class_of(e)).second) edges.push_back(e);
  std::size_t pairs = 0;
  for (auto _ : state) {
    std::uint64_t total = 0;
    pairs = 0;
    for (const Edge& e : edges) {
      e.reflections.for_each([&](ReflId t) {
        total += Parallel ? count_L(g, e, t) : count_L_serial(g, e, t);
        ++pairs;
      });
    }
    benchmark::DoNotOptimize(total);
  }
  state.SetLabel(spec + " pairs=" + std::to_string(pairs));
}

constexpr u64 (*kSerialDet)(ModMatrix) = det_mod_p_serial;
constexpr u64 (*kParallelDet)(ModMatrix) = det_mod_p;

}  // namespace

BENCHMARK(BM_Det<kSerialDet>)->Name("det_mod_p_serial")->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Det<kParallelDet>)->Name("det_mod_p")->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountL<false>)->Name("count_L_serial")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountL<true>)->Name("count_L")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
