#ifndef COBI_PARETO_HPP
#define COBI_PARETO_HPP

#include <cstddef>
#include <vector>

#include "cobi/problem.hpp"
#include "cobi/projection.hpp"

namespace cobi {

/// Ordered weights 0 = theta_1 < ... < theta_N = 1 whose unconstrained
/// points are at most epsilon apart (Euclidean, search space).
struct WeightSchedule {
  std::vector<double> weights;
  double epsilon = 0.0;
  std::size_t stitch_count = 0;  // extra points needed to close the middle gap
};

/// Identifies one convex subproblem: a pair of peaks and a convex selection.
struct SubproblemKey {
  std::size_t peak_index_1 = 0;
  std::size_t peak_index_2 = 0;
  std::size_t selection_index = 0;
};

/// c_theta for the pair (theta = 1 selects peak1's center).
Vector unconstrained_point(const QuadraticPeak& peak1,
                           const QuadraticPeak& peak2, double theta);

/// Bidirectional march from both endpoints toward theta = 1/2 with bisection
/// (acceptance band [0.9 eps, eps], 60 bisection steps), stitched in the
/// middle until the gap closes.
WeightSchedule epsilon_weights(const QuadraticPeak& peak1,
                               const QuadraticPeak& peak2, double epsilon);

struct SweepPoint {
  Vector x;
  ObjectivePair pair_raw;  // raw objectives of the generating peak pair
  double theta = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // weight order preserved
  std::size_t skipped_weights = 0;
};

/// Runs one scheduled sweep: feasible unconstrained points kept verbatim,
/// infeasible ones replaced by their projection; failed projections skipped.
SweepResult approx_ps_singlepeak(const QuadraticPeak& peak1,
                                 const QuadraticPeak& peak2,
                                 const ConvexSubproblemConstraints& selection,
                                 const WeightSchedule& schedule,
                                 const Vector* anchor_hint = nullptr);
SweepResult approx_ps_singlepeak(const QuadraticPeak& peak1,
                                 const QuadraticPeak& peak2,
                                 const ConvexSubproblemConstraints& selection,
                                 double epsilon,
                                 const Vector* anchor_hint = nullptr);

struct PerKeyCount {
  SubproblemKey key;
  std::size_t points = 0;
};

struct ApproxPsReport {
  ParetoApproximation approximation;
  std::vector<PerKeyCount> per_key;
  std::size_t skipped_weights = 0;
  std::size_t excluded_ideal_keys = 0;
};

struct IdealNadir {
  ObjectivePair ideal{};
  ObjectivePair nadir{};
  std::size_t excluded_keys = 0;
};

/// Endpoint-projection construction: per subproblem key, the theta=1 and
/// theta=0 projections give per-key extreme points; the global ideal is the
/// componentwise minimum over keys and the nadir follows from the
/// cross-evaluated extreme points.  Throws NumericalError if every key's
/// endpoint projections fail.
IdealNadir ideal_nadir(const CobiProblem& prob);

/// Full reference approximation: all peak pairs x convex selections, merged
/// into a single non-dominated archive keyed by the problem's raw multipeak
/// objectives.  Deterministic given (prob, epsilon); subproblems may run
/// concurrently (COBI_THREADS), results are merged in lexicographic key
/// order.
ApproxPsReport approx_ps_report(const CobiProblem& prob, double epsilon);
ParetoApproximation approx_ps(const CobiProblem& prob, double epsilon);

}  // namespace cobi

#endif  // COBI_PARETO_HPP
