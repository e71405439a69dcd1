#include "cobi/problem.hpp"

#include <algorithm>
#include <cmath>

namespace cobi {

std::string to_string(ProblemType t) {
  switch (t) {
    case ProblemType::I:
      return "I";
    case ProblemType::II:
      return "II";
    case ProblemType::III:
      return "III";
    case ProblemType::IV:
      return "IV";
  }
  return "?";
}

CobiProblem::CobiProblem(MultipeakObjective f1, MultipeakObjective f2,
                         ConstraintSet constraints, Vector anchor,
                         std::uint64_t seed, std::string instance_id,
                         std::string name)
    : f1_(std::move(f1)),
      f2_(std::move(f2)),
      constraints_(std::move(constraints)),
      anchor_(std::move(anchor)),
      seed_(seed),
      instance_id_(std::move(instance_id)),
      name_(std::move(name)) {
  check_dimension(f2_.dimension(), f1_.dimension(), "CobiProblem objectives");
  check_dimension(anchor_.size(), f1_.dimension(), "CobiProblem anchor");
  const auto feas = constraints_.is_feasible(anchor_, 1e-8);
  if (!feas.feasible) {
    throw ValidationError(
        "CobiProblem: anchor point violates the constraints (violation " +
        std::to_string(feas.total_violation) + ")");
  }
}

Evaluation CobiProblem::evaluate(const Vector& x) const {
  check_dimension(x.size(), dimension(), "CobiProblem::evaluate");
  Evaluation ev;
  ev.f_raw = {f1_.raw_value(x), f2_.raw_value(x)};
  ev.f = {f1_.transformed_value(x), f2_.transformed_value(x)};
  ev.g_raw.resize(constraints_.size());
  ev.g.resize(constraints_.size());
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    ev.g_raw[k] = constraints_.raw_value(k, x);
    ev.g[k] = constraints_.transformed_value(k, x);
  }
  const auto feas = constraints_.is_feasible(x, 1e-8);
  ev.total_violation = feas.total_violation;
  ev.feasible = feas.feasible;
  return ev;
}

ObjectivePair CobiProblem::raw_objectives(const Vector& x) const {
  return {f1_.raw_value(x), f2_.raw_value(x)};
}

std::pair<Vector, Vector> CobiProblem::bounding_box() const {
  const Eigen::Index n = dimension();
  Vector lo = anchor_;
  Vector hi = anchor_;
  auto absorb = [&](const Vector& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  for (const auto* obj : {&f1_, &f2_}) {
    for (const auto& peak : obj->peaks()) absorb(peak.center);
  }
  auto absorb_convex = [&](const ConvexConstraint& c) {
    if (const auto* q = std::get_if<QuadraticConstraint>(&c)) {
      // Extent of {1/2 (x-c)^T H (x-c) <= d} along each axis.
      const Matrix inv = q->hessian.entries().inverse();
      for (Eigen::Index i = 0; i < n; ++i) {
        const double r = std::sqrt(std::max(0.0, 2.0 * q->level * inv(i, i)));
        Vector p = q->center;
        p[i] += r;
        absorb(p);
        p[i] -= 2.0 * r;
        absorb(p);
      }
    }
  };
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    const auto& e = constraints_.entry(k);
    if (const auto* mp = std::get_if<MultipeakConstraint>(&e.body)) {
      for (const auto& [part, tau] : mp->parts) absorb_convex(part);
    } else {
      absorb_convex(std::get<ConvexConstraint>(e.body));
    }
  }
  const Vector span = hi - lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pad = std::max(1.0, 0.2 * span[i]);
    lo[i] -= pad;
    hi[i] += pad;
  }
  return {lo, hi};
}

namespace {

double point_segment_distance(const ObjectivePair& p, const ObjectivePair& a,
                              const ObjectivePair& b) {
  const double vx = b.f1 - a.f1;
  const double vy = b.f2 - a.f2;
  const double wx = p.f1 - a.f1;
  const double wy = p.f2 - a.f2;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = wx - t * vx;
  const double dy = wy - t * vy;
  return std::hypot(dx, dy);
}

double distance_to_front(const ObjectivePair& p, const BiArchive& front) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (i + 1 < front.size()) {
      best = std::min(best,
                      point_segment_distance(p, front[i].f, front[i + 1].f));
    } else {
      best = std::min(best, std::hypot(p.f1 - front[i].f.f1,
                                       p.f2 - front[i].f.f2));
    }
  }
  return best;
}

}  // namespace

ProblemType classify_type(const CobiProblem& prob,
                          const ParetoApproximation& unconstrained_ps,
                          const ParetoApproximation& constrained_ps,
                          double tol) {
  if (unconstrained_ps.archive.empty() || constrained_ps.archive.empty()) {
    throw ValidationError("classify_type: empty Pareto approximation");
  }
  std::size_t feasible_count = 0;
  for (const auto& e : unconstrained_ps.archive.entries()) {
    if (!e.x) {
      throw ValidationError("classify_type: approximation lacks decision vectors");
    }
    if (prob.constraints().is_feasible(*e.x, tol).feasible) ++feasible_count;
  }
  if (feasible_count == unconstrained_ps.archive.size()) return ProblemType::I;
  if (feasible_count == 0) return ProblemType::IV;
  for (const auto& e : constrained_ps.archive.entries()) {
    if (distance_to_front(e.f, unconstrained_ps.archive) > tol) {
      return ProblemType::III;
    }
  }
  return ProblemType::II;
}

}  // namespace cobi
