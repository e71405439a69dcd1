#include "cobi/constraints.hpp"

#include <limits>

namespace cobi {

LinearConstraint::LinearConstraint(Vector a, double b)
    : normal(std::move(a)), intercept(b) {
  if (normal.norm() <= 1e-12) {
    throw ValidationError("LinearConstraint: normal is (near) zero");
  }
}

double LinearConstraint::value(const Vector& x) const {
  check_dimension(x.size(), normal.size(), "LinearConstraint::value");
  return normal.dot(x) + intercept;
}

QuadraticConstraint::QuadraticConstraint(Vector c, SpdMatrix h, double d)
    : center(std::move(c)), hessian(std::move(h)), level(d) {
  check_dimension(hessian.dimension(), center.size(), "QuadraticConstraint");
  if (!(d >= 0.0)) {
    throw ValidationError("QuadraticConstraint: level d must be >= 0");
  }
}

double QuadraticConstraint::value(const Vector& x) const {
  check_dimension(x.size(), center.size(), "QuadraticConstraint::value");
  return 0.5 * hessian.quad(x - center) - level;
}

Vector QuadraticConstraint::gradient(const Vector& x) const {
  return hessian * (x - center);
}

double convex_value(const ConvexConstraint& c, const Vector& x) {
  return std::visit([&](const auto& g) { return g.value(x); }, c);
}

Vector convex_gradient(const ConvexConstraint& c, const Vector& x) {
  return std::visit([&](const auto& g) { return g.gradient(x); }, c);
}

Eigen::Index convex_dimension(const ConvexConstraint& c) {
  return std::visit(
      [](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>,
                                     LinearConstraint>) {
          return g.normal.size();
        } else {
          return g.center.size();
        }
      },
      c);
}

MultipeakConstraint::MultipeakConstraint(
    std::vector<std::pair<ConvexConstraint, SignPreservingTransform>> p)
    : parts(std::move(p)) {
  if (parts.empty()) {
    throw ValidationError("MultipeakConstraint: needs at least one part");
  }
}

double MultipeakConstraint::raw_value(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [c, tau] : parts) {
    best = std::min(best, convex_value(c, x));
  }
  return best;
}

double MultipeakConstraint::transformed_value(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [c, tau] : parts) {
    best = std::min(best, tau(convex_value(c, x)));
  }
  return best;
}

ConstraintSet::ConstraintSet(std::vector<Entry> entries)
    : entries_(std::move(entries)) {}

const ConstraintSet::Entry& ConstraintSet::entry(std::size_t k) const {
  if (k >= entries_.size()) {
    throw ValidationError("ConstraintSet: index " + std::to_string(k) +
                          " out of range (p = " +
                          std::to_string(entries_.size()) + ")");
  }
  return entries_[k];
}

double ConstraintSet::raw_value(std::size_t k, const Vector& x) const {
  const Entry& e = entry(k);
  if (const auto* mp = std::get_if<MultipeakConstraint>(&e.body)) {
    return mp->raw_value(x);
  }
  return convex_value(std::get<ConvexConstraint>(e.body), x);
}

double ConstraintSet::transformed_value(std::size_t k, const Vector& x) const {
  const Entry& e = entry(k);
  if (const auto* mp = std::get_if<MultipeakConstraint>(&e.body)) {
    return e.outer(mp->transformed_value(x));
  }
  return e.outer(convex_value(std::get<ConvexConstraint>(e.body), x));
}

FeasibilityResult ConstraintSet::is_feasible(const Vector& x,
                                             double tol) const {
  FeasibilityResult r;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const double g = raw_value(k, x);
    if (g > 0.0) r.total_violation += g;
  }
  r.feasible = r.total_violation <= tol;
  return r;
}

std::vector<ConvexSubproblemConstraints> ConstraintSet::convex_selections()
    const {
  std::vector<ConvexSubproblemConstraints> result;
  result.emplace_back();
  for (const auto& e : entries_) {
    if (const auto* mp = std::get_if<MultipeakConstraint>(&e.body)) {
      std::vector<ConvexSubproblemConstraints> next;
      next.reserve(result.size() * mp->parts.size());
      for (const auto& sel : result) {
        for (const auto& [part, tau] : mp->parts) {
          auto copy = sel;
          copy.push_back(part);
          next.push_back(std::move(copy));
        }
      }
      result = std::move(next);
    } else {
      const auto& c = std::get<ConvexConstraint>(e.body);
      for (auto& sel : result) sel.push_back(c);
    }
  }
  return result;
}

std::size_t ConstraintSet::selection_count() const {
  std::size_t count = 1;
  for (const auto& e : entries_) {
    if (const auto* mp = std::get_if<MultipeakConstraint>(&e.body)) {
      count *= mp->parts.size();
    }
  }
  return count;
}

}  // namespace cobi
