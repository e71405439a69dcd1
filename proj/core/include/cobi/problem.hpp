#ifndef COBI_PROBLEM_HPP
#define COBI_PROBLEM_HPP

#include <string>
#include <utility>

#include "cobi/archive.hpp"
#include "cobi/constraints.hpp"
#include "cobi/objectives.hpp"

namespace cobi {

/// Spacing-parameterized Pareto set/front approximation.
struct ParetoApproximation {
  BiArchive archive;  // stores decision vectors
  double epsilon = 0.0;
  ObjectivePair ideal{};
  ObjectivePair nadir{};
  bool degenerate = false;  // anchor fallback was needed
};

struct Evaluation {
  ObjectivePair f;            // with transforms
  ObjectivePair f_raw;        // untransformed path
  std::vector<double> g;      // transformed constraint values
  std::vector<double> g_raw;  // raw constraint values
  double total_violation = 0.0;
  bool feasible = true;
};

enum class ProblemType { I, II, III, IV };
std::string to_string(ProblemType t);

/// An assembled constrained bi-objective problem.
class CobiProblem {
 public:
  CobiProblem(MultipeakObjective f1, MultipeakObjective f2,
              ConstraintSet constraints, Vector anchor,
              std::uint64_t seed = 0, std::string instance_id = "",
              std::string name = "");

  Eigen::Index dimension() const { return f1_.dimension(); }
  const MultipeakObjective& objective1() const { return f1_; }
  const MultipeakObjective& objective2() const { return f2_; }
  const MultipeakObjective& objective(int i) const { return i == 0 ? f1_ : f2_; }
  const ConstraintSet& constraints() const { return constraints_; }
  const Vector& anchor() const { return anchor_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& instance_id() const { return instance_id_; }
  const std::string& name() const { return name_; }

  Evaluation evaluate(const Vector& x) const;
  ObjectivePair raw_objectives(const Vector& x) const;

  /// Axis-aligned box covering all peak centers and the full extent of every
  /// quadratic constraint region, padded by 20% (at least 1.0) per side.
  std::pair<Vector, Vector> bounding_box() const;

 private:
  MultipeakObjective f1_;
  MultipeakObjective f2_;
  ConstraintSet constraints_;
  Vector anchor_;
  std::uint64_t seed_;
  std::string instance_id_;
  std::string name_;
};

/// Classifies how the constraints alter the unconstrained front:
///   I   every unconstrained PS point feasible,
///   IV  none feasible,
///   II  otherwise, if every constrained-front point is within front-space
///       distance tol of the unconstrained front polyline,
///   III otherwise.
ProblemType classify_type(const CobiProblem& prob,
                          const ParetoApproximation& unconstrained_ps,
                          const ParetoApproximation& constrained_ps,
                          double tol);

}  // namespace cobi

#endif  // COBI_PROBLEM_HPP
