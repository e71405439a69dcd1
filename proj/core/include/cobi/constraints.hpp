#ifndef COBI_CONSTRAINTS_HPP
#define COBI_CONSTRAINTS_HPP

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "cobi/spd_matrix.hpp"
#include "cobi/transforms.hpp"
#include "cobi/types.hpp"

namespace cobi {

/// a^T x + b <= 0.
struct LinearConstraint {
  Vector normal;
  double intercept = 0.0;

  LinearConstraint(Vector a, double b);
  double value(const Vector& x) const;
  Vector gradient(const Vector&) const { return normal; }
};

/// 1/2 (x-c)^T H (x-c) - d <= 0, d >= 0 so the set contains the center.
struct QuadraticConstraint {
  Vector center;
  SpdMatrix hessian;
  double level = 0.0;

  QuadraticConstraint(Vector c, SpdMatrix h, double d);
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
};

/// A constraint usable inside a convex subproblem.
using ConvexConstraint = std::variant<LinearConstraint, QuadraticConstraint>;

double convex_value(const ConvexConstraint& c, const Vector& x);
Vector convex_gradient(const ConvexConstraint& c, const Vector& x);
Eigen::Index convex_dimension(const ConvexConstraint& c);

/// min over transformed convex parts; its feasible set is the union of the
/// parts' feasible sets.  Inner transforms are sign-preserving and therefore
/// irrelevant on the raw path.
struct MultipeakConstraint {
  std::vector<std::pair<ConvexConstraint, SignPreservingTransform>> parts;

  explicit MultipeakConstraint(
      std::vector<std::pair<ConvexConstraint, SignPreservingTransform>> p);
  /// min over raw part values (inner transforms ignored).
  double raw_value(const Vector& x) const;
  /// min over inner-transformed part values.
  double transformed_value(const Vector& x) const;
};

using ConstraintBody = std::variant<ConvexConstraint, MultipeakConstraint>;

/// A convex selection: one convex subconstraint chosen per multipeak
/// constraint, plus all plain convex constraints.
using ConvexSubproblemConstraints = std::vector<ConvexConstraint>;

struct FeasibilityResult {
  bool feasible = true;
  double total_violation = 0.0;
};

/// The p inequality constraints of a problem, each with an outer
/// sign-preserving transform tau_k.  Immutable after construction.
class ConstraintSet {
 public:
  struct Entry {
    ConstraintBody body;
    SignPreservingTransform outer = SignPreservingTransform::identity();
  };

  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<Entry> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& entry(std::size_t k) const;

  /// Raw value of constraint k (min over parts for multipeak, no transforms).
  double raw_value(std::size_t k, const Vector& x) const;
  /// Outer transform applied; multipeak parts use their inner transforms.
  double transformed_value(std::size_t k, const Vector& x) const;
  double value(std::size_t k, const Vector& x, bool apply_transforms) const {
    return apply_transforms ? transformed_value(k, x) : raw_value(k, x);
  }

  /// total_violation = sum_k max(0, raw g_k(x)); feasible iff <= tol.
  FeasibilityResult is_feasible(const Vector& x, double tol = 1e-8) const;

  /// Cartesian product over multipeak constraints of their parts.
  /// Singleton list (the convex constraints themselves) if no multipeak
  /// constraint is present.
  std::vector<ConvexSubproblemConstraints> convex_selections() const;
  std::size_t selection_count() const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace cobi

#endif  // COBI_CONSTRAINTS_HPP
