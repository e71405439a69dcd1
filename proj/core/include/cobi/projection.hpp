#ifndef COBI_PROJECTION_HPP
#define COBI_PROJECTION_HPP

#include <optional>
#include <vector>

#include "cobi/constraints.hpp"
#include "cobi/objectives.hpp"

namespace cobi {

/// Weighted-sum scalarization of a pair of quadratic peaks:
///   F_theta(x) = 1/2 (x - c_theta)^T H_theta (x - c_theta) + offset
/// with H_theta = theta H1 + (1-theta) H2 and
/// H_theta c_theta = theta H1 c1 + (1-theta) H2 c2.
struct ScalarizedProblem {
  double weight = 0.5;
  SpdMatrix combined_hessian;
  Vector combined_center;
  double combined_offset = 0.0;
  ConvexSubproblemConstraints constraints;

  Eigen::Index dimension() const { return combined_center.size(); }
  double value(const Vector& x) const {
    return 0.5 * combined_hessian.quad(x - combined_center) + combined_offset;
  }
};

ScalarizedProblem build_scalarized(const QuadraticPeak& peak1,
                                   const QuadraticPeak& peak2, double theta,
                                   ConvexSubproblemConstraints constraints = {});

enum class ProjectionStatus {
  Optimal,
  InfeasibleWithinTolerance,
  SolverFailure,
};

struct ProjectionResult {
  Vector x_star;
  ProjectionStatus status = ProjectionStatus::SolverFailure;
  double kkt_residual = 0.0;
  double violation = 0.0;
  /// Indices with |g_k(x*)| <= 1e-7, and their recovered multipliers.
  std::vector<std::size_t> active_set;
  std::vector<double> multipliers;
};

/// Minimizes F_theta over the selection's feasible set: the projection of
/// c_theta onto it w.r.t. the H_theta norm.  Linear-only selections use a
/// dual active-set method; selections with quadratic constraints use a
/// log-barrier interior-point method (barrier parameter 1 down to 1e-10,
/// Newton tolerance 1e-12).  `start_hint` seeds the feasibility phase.
ProjectionResult project(const ScalarizedProblem& sp,
                         std::optional<Vector> start_hint = std::nullopt);

}  // namespace cobi

#endif  // COBI_PROJECTION_HPP
