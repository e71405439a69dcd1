#ifndef COBI_BASELINE_HPP
#define COBI_BASELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cobi/generator.hpp"
#include "cobi/pareto.hpp"
#include "cobi/problem.hpp"

namespace cobi {

struct TracePoint {
  std::size_t evaluations = 0;
  std::size_t archive_size = 0;
  double hypervolume = 0.0;  // NaN when no reference point was supplied
};

struct RunResult {
  BiArchive archive;  // all-time feasible non-dominated points (raw objectives)
  std::vector<TracePoint> trace;
  std::size_t evaluations = 0;
  std::size_t feasible_evaluations = 0;
};

struct BaselineOptions {
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  std::size_t trace_points = 16;  // log-spaced checkpoints, budget included
  /// Hypervolume reference for the trace; without it hv is recorded as NaN.
  std::optional<ObjectivePair> ref;
};

/// Uniform sampling in the problem's bounding box.
RunResult run_random_search(const CobiProblem& prob,
                            const BaselineOptions& options);

/// Small generational NSGA-II: population 100, constraint domination,
/// binary tournament on (rank, crowding), SBX (eta 15, pc 0.9), polynomial
/// mutation (eta 20, pm 1/n).  Deterministic given (prob, options).
RunResult run_nsga2_lite(const CobiProblem& prob,
                         const BaselineOptions& options);

struct ScalingConfig {
  std::vector<Eigen::Index> dimensions = {2, 10, 40};
  int repetitions = 15;
  std::size_t budget = 10000;
  std::uint64_t seed = 2;
  std::size_t archive_target = 2000;  // reference archive size, +-5%
  std::string output_dir = "scaling_out";
};

/// Per dimension: generates an instance (resampling draws whose front
/// collapses below the archive target), calibrates epsilon so the reference
/// archive hits the target size, runs both baselines `repetitions` times
/// (run seed = instance seed xor run index), and reports mean normalized
/// hypervolume-gap traces.  Median-run archives are written as
/// x1-x2-projection CSVs into output_dir; returns the report (also written
/// as report.json).
Json dimension_scaling_experiment(const ScalingConfig& config);

}  // namespace cobi

#endif  // COBI_BASELINE_HPP
