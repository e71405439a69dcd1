#include <benchmark/benchmark.h>

#include "cobi/projection.hpp"
#include "cobi/rng.hpp"

using namespace cobi;

namespace {

ScalarizedProblem make_problem(Eigen::Index n, bool quadratic) {
  Rng rng(static_cast<std::uint64_t>(n) * 2 + (quadratic ? 1 : 0));
  Vector eigs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eigs[i] = std::pow(100.0, n == 1 ? 0.0
                                     : static_cast<double>(i) /
                                           static_cast<double>(n - 1));
  }
  ScalarizedProblem sp{
      0.5, SpdMatrix::from_spectrum(eigs, random_rotation(n, rng)),
      rng.uniform_vector(n, -2, 2), 0.0, {}};
  const Vector z0 = Vector::Zero(n);
  for (int k = 0; k < 3; ++k) {
    Vector a = rng.normal_vector(n).normalized();
    sp.constraints.push_back(LinearConstraint(a, -a.dot(z0) - 0.3));
  }
  if (quadratic) {
    sp.constraints.push_back(
        QuadraticConstraint(z0, SpdMatrix::identity(n), 0.5));
  }
  return sp;
}

}  // namespace

static void BM_ProjectLinear(benchmark::State& state) {
  const ScalarizedProblem sp = make_problem(state.range(0), false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(sp));
  }
}
BENCHMARK(BM_ProjectLinear)->Arg(2)->Arg(10)->Arg(40);

static void BM_ProjectQuadratic(benchmark::State& state) {
  const ScalarizedProblem sp = make_problem(state.range(0), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(sp));
  }
}
BENCHMARK(BM_ProjectQuadratic)->Arg(2)->Arg(10)->Arg(40);
