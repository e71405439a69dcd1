#include <benchmark/benchmark.h>

#include "cobi/generator.hpp"
#include "cobi/rng.hpp"

using namespace cobi;

static void BM_Evaluate(benchmark::State& state) {
  GeneratorConfig cfg;
  cfg.dimension = state.range(0);
  cfg.peaks1 = 2;
  cfg.peaks2 = 2;
  cfg.kappa_max = 100.0;
  cfg.seed = 5;
  cfg.constraints.push_back({ConstraintRecipe::Kind::Linear, {}});
  cfg.constraints.push_back({ConstraintRecipe::Kind::Quadratic, {}});
  const CobiProblem prob = generate(cfg);
  Rng rng(9);
  const Vector x = rng.uniform_vector(prob.dimension(), -5, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(prob.evaluate(x));
  }
}
BENCHMARK(BM_Evaluate)->Arg(2)->Arg(10)->Arg(40);

BENCHMARK_MAIN();
