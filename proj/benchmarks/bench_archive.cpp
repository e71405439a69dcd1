#include <benchmark/benchmark.h>

#include "cobi/archive.hpp"
#include "cobi/rng.hpp"

using namespace cobi;

static void BM_ArchiveInsert(benchmark::State& state) {
  Rng rng(1);
  std::vector<ObjectivePair> points;
  const auto count = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
  }
  for (auto _ : state) {
    BiArchive archive;
    for (const auto& f : points) archive.insert(f);
    benchmark::DoNotOptimize(archive.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(count));
}
BENCHMARK(BM_ArchiveInsert)->Range(1 << 8, 1 << 16);

static void BM_Hypervolume(benchmark::State& state) {
  Rng rng(2);
  BiArchive archive;
  const auto count = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < count; ++i) {
    archive.insert({rng.uniform(0, 1), rng.uniform(0, 1)});
  }
  const ObjectivePair ref{2.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(archive.hypervolume(ref));
  }
}
BENCHMARK(BM_Hypervolume)->Range(1 << 6, 1 << 14);
