#include "cobi/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <Eigen/QR>

namespace cobi {

namespace {

constexpr double kViolationTol = 1e-8;
constexpr double kKktTol = 1e-7;
constexpr double kActiveTol = 1e-7;
constexpr long kMaxIterations = 1000000;

double total_violation(const ConvexSubproblemConstraints& cs,
                       const Vector& x) {
  double v = 0.0;
  for (const auto& c : cs) v += std::max(0.0, convex_value(c, x));
  return v;
}

/// Least-squares multiplier recovery on the active set; returns the residual
/// of H(x-c) + sum mu_k grad g_k.
double least_squares_kkt(const ScalarizedProblem& sp, const Vector& x,
                         const std::vector<std::size_t>& active,
                         std::vector<double>& multipliers) {
  const Vector grad_f = sp.combined_hessian * (x - sp.combined_center);
  multipliers.assign(active.size(), 0.0);
  if (active.empty()) return grad_f.cwiseAbs().maxCoeff();
  Matrix a(x.size(), static_cast<Eigen::Index>(active.size()));
  for (std::size_t j = 0; j < active.size(); ++j) {
    a.col(static_cast<Eigen::Index>(j)) =
        convex_gradient(sp.constraints[active[j]], x);
  }
  const Vector mu = a.colPivHouseholderQr().solve(-grad_f);
  for (std::size_t j = 0; j < active.size(); ++j) {
    multipliers[j] = mu[static_cast<Eigen::Index>(j)];
  }
  return (grad_f + a * mu).cwiseAbs().maxCoeff();
}

ProjectionResult finish(const ScalarizedProblem& sp, Vector x,
                        ProjectionStatus tentative,
                        const std::vector<double>* solver_multipliers) {
  ProjectionResult r;
  r.violation = total_violation(sp.constraints, x);
  for (std::size_t k = 0; k < sp.constraints.size(); ++k) {
    if (std::abs(convex_value(sp.constraints[k], x)) <= kActiveTol) {
      r.active_set.push_back(k);
    }
  }
  double res = least_squares_kkt(sp, x, r.active_set, r.multipliers);
  if (solver_multipliers) {
    // Stationarity certificate from the solver's own duals covers weakly
    // active constraints that fall outside the 1e-7 activity window.
    Vector g = sp.combined_hessian * (x - sp.combined_center);
    for (std::size_t k = 0; k < sp.constraints.size(); ++k) {
      if ((*solver_multipliers)[k] != 0.0) {
        g += (*solver_multipliers)[k] * convex_gradient(sp.constraints[k], x);
      }
    }
    const double solver_res = g.cwiseAbs().maxCoeff();
    if (solver_res < res) {
      res = solver_res;
      r.multipliers.clear();
      for (std::size_t k : r.active_set) {
        r.multipliers.push_back((*solver_multipliers)[k]);
      }
    }
  }
  r.kkt_residual = res;
  r.x_star = std::move(x);
  if (tentative == ProjectionStatus::InfeasibleWithinTolerance) {
    r.status = tentative;
  } else if (r.violation <= kViolationTol && r.kkt_residual <= kKktTol) {
    r.status = ProjectionStatus::Optimal;
  } else {
    r.status = ProjectionStatus::SolverFailure;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dual active-set method for linear-only selections (Goldfarb-Idnani style,
// re-solving the reduced systems each iteration; fine for dense small p).
// ---------------------------------------------------------------------------

ProjectionResult solve_linear_only(const ScalarizedProblem& sp) {
  const auto& cs = sp.constraints;
  const std::size_t p = cs.size();
  const Eigen::Index n = sp.dimension();
  const SpdMatrix& h = sp.combined_hessian;

  Vector x = sp.combined_center;
  std::vector<std::size_t> working;   // active set
  std::vector<double> u;              // multipliers of the working set

  auto gval = [&](std::size_t k) { return convex_value(cs[k], x); };

  const double act_eps = 1e-13 * (1.0 + sp.combined_center.norm());

  for (long iter = 0; iter < kMaxIterations; ++iter) {
    // Most violated constraint outside the working set.
    std::size_t pidx = p;
    double worst = act_eps;
    for (std::size_t k = 0; k < p; ++k) {
      if (std::find(working.begin(), working.end(), k) != working.end())
        continue;
      const double g = gval(k);
      if (g > worst) {
        worst = g;
        pidx = k;
      }
    }
    if (pidx == p) {
      std::vector<double> mult(p, 0.0);
      for (std::size_t j = 0; j < working.size(); ++j) mult[working[j]] = u[j];
      return finish(sp, x, ProjectionStatus::Optimal, &mult);
    }

    const Vector np = std::get<LinearConstraint>(cs[pidx]).normal;
    double u_cand = 0.0;

    // Inner loop: drive constraint pidx to zero, dropping blockers.
    for (long inner = 0; inner < kMaxIterations; ++inner) {
      const std::size_t m = working.size();
      const Vector hinv_np = h.solve(np);
      Vector xdir;       // d x / d t
      Vector udir(m);    // d u_j / d t
      if (m == 0) {
        xdir = -hinv_np;
      } else {
        Matrix nmat(n, static_cast<Eigen::Index>(m));
        for (std::size_t j = 0; j < m; ++j) {
          nmat.col(static_cast<Eigen::Index>(j)) =
              std::get<LinearConstraint>(cs[working[j]]).normal;
        }
        Matrix hinv_n(n, static_cast<Eigen::Index>(m));
        for (std::size_t j = 0; j < m; ++j) {
          hinv_n.col(static_cast<Eigen::Index>(j)) =
              h.solve(nmat.col(static_cast<Eigen::Index>(j)));
        }
        const Matrix s = nmat.transpose() * hinv_n;  // N^T H^-1 N
        udir = -s.ldlt().solve(nmat.transpose() * hinv_np);
        xdir = -hinv_np - hinv_n * udir;
      }
      const double slope = np.dot(xdir);  // d g_p / d t, <= 0
      const double xdir_norm = xdir.norm();

      // Dual blocking step.
      double t1 = std::numeric_limits<double>::infinity();
      std::size_t blocker = m;
      for (std::size_t j = 0; j < m; ++j) {
        if (udir[static_cast<Eigen::Index>(j)] < -1e-14) {
          const double t = -u[j] / udir[static_cast<Eigen::Index>(j)];
          if (t < t1) {
            t1 = t;
            blocker = j;
          }
        }
      }

      if (xdir_norm <= 1e-13 || slope >= -1e-15) {
        if (!std::isfinite(t1)) {
          // No primal progress possible and no droppable constraint:
          // the selection is infeasible.
          return finish(sp, x, ProjectionStatus::InfeasibleWithinTolerance,
                        nullptr);
        }
        // Pure dual step.
        for (std::size_t j = 0; j < m; ++j) {
          u[j] += t1 * udir[static_cast<Eigen::Index>(j)];
        }
        u_cand += t1;
        working.erase(working.begin() + static_cast<long>(blocker));
        u.erase(u.begin() + static_cast<long>(blocker));
        continue;
      }

      const double t2 = -gval(pidx) / slope;  // full step
      const double t = std::min(t1, t2);
      x += t * xdir;
      for (std::size_t j = 0; j < m; ++j) {
        u[j] += t * udir[static_cast<Eigen::Index>(j)];
      }
      u_cand += t;
      if (t2 <= t1) {
        working.push_back(pidx);
        u.push_back(u_cand);
        break;
      }
      working.erase(working.begin() + static_cast<long>(blocker));
      u.erase(u.begin() + static_cast<long>(blocker));
    }
  }
  return finish(sp, x, ProjectionStatus::SolverFailure, nullptr);
}

// ---------------------------------------------------------------------------
// Log-barrier interior-point method for selections containing quadratic
// constraints.
// ---------------------------------------------------------------------------

struct InteriorSearch {
  Vector x;
  bool strictly_interior = false;
  double best_violation = std::numeric_limits<double>::infinity();
};

/// Damped Gauss-Newton on sum max(0, g_k(x) + margin)^2.
bool penalty_descent(const ConvexSubproblemConstraints& cs, Vector& x,
                     double margin, long budget) {
  const Eigen::Index n = x.size();
  auto penalty = [&](const Vector& y) {
    double s = 0.0;
    for (const auto& c : cs) {
      const double v = std::max(0.0, convex_value(c, y) + margin);
      s += v * v;
    }
    return s;
  };
  double fx = penalty(x);
  for (long it = 0; it < budget && fx > 0.0; ++it) {
    Vector grad = Vector::Zero(n);
    Matrix hess = Matrix::Zero(n, n);
    for (const auto& c : cs) {
      const double v = convex_value(c, x) + margin;
      if (v <= 0.0) continue;
      const Vector g = convex_gradient(c, x);
      grad += 2.0 * v * g;
      hess += 2.0 * (g * g.transpose());
      if (const auto* q = std::get_if<QuadraticConstraint>(&c)) {
        hess += 2.0 * v * q->hessian.entries();
      }
    }
    hess += 1e-10 * Matrix::Identity(n, n);
    const Vector d = -hess.ldlt().solve(grad);
    double step = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Vector y = x + step * d;
      const double fy = penalty(y);
      if (fy < fx) {
        x = y;
        fx = fy;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return fx == 0.0;
}

InteriorSearch find_interior(const ScalarizedProblem& sp,
                             const std::optional<Vector>& hint) {
  InteriorSearch best;
  std::vector<Vector> starts;
  starts.push_back(sp.combined_center);
  if (hint) starts.push_back(*hint);
  for (const auto& c : sp.constraints) {
    if (const auto* q = std::get_if<QuadraticConstraint>(&c)) {
      starts.push_back(q->center);
    }
  }
  best.x = sp.combined_center;
  for (double margin : {1e-2, 1e-4, 1e-6}) {
    for (const auto& s : starts) {
      Vector x = s;
      penalty_descent(sp.constraints, x, margin, 200);
      double maxg = -std::numeric_limits<double>::infinity();
      for (const auto& c : sp.constraints) {
        maxg = std::max(maxg, convex_value(c, x));
      }
      const double viol = total_violation(sp.constraints, x);
      if (viol < best.best_violation) {
        best.best_violation = viol;
        best.x = x;
      }
      if (maxg <= -0.5 * margin) {
        best.x = x;
        best.strictly_interior = true;
        best.best_violation = 0.0;
        return best;
      }
    }
  }
  return best;
}

ProjectionResult solve_interior_point(const ScalarizedProblem& sp,
                                      const std::optional<Vector>& hint) {
  const auto& cs = sp.constraints;
  const Eigen::Index n = sp.dimension();
  const SpdMatrix& h = sp.combined_hessian;
  const Vector& c0 = sp.combined_center;

  // Interior shortcut: the unconstrained optimum is feasible.
  {
    bool ok = true;
    for (const auto& c : cs) {
      if (convex_value(c, c0) > 0.0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<double> zeros(cs.size(), 0.0);
      return finish(sp, c0, ProjectionStatus::Optimal, &zeros);
    }
  }

  InteriorSearch interior = find_interior(sp, hint);
  if (!interior.strictly_interior) {
    if (interior.best_violation > kViolationTol) {
      return finish(sp, interior.x,
                    ProjectionStatus::InfeasibleWithinTolerance, nullptr);
    }
    // Feasible up to tolerance but no strict interior; report the best point.
    return finish(sp, interior.x, ProjectionStatus::Optimal, nullptr);
  }

  Vector x = interior.x;
  long iterations = 0;
  double mu = 1.0;
  auto barrier = [&](const Vector& y, double m) {
    double b = sp.value(y);
    for (const auto& c : cs) {
      const double g = convex_value(c, y);
      if (g >= 0.0) return std::numeric_limits<double>::infinity();
      b -= m * std::log(-g);
    }
    return b;
  };

  while (mu >= 1e-10) {
    for (;;) {
      if (++iterations > kMaxIterations) {
        return finish(sp, x, ProjectionStatus::SolverFailure, nullptr);
      }
      Vector grad = h * (x - c0);
      Matrix hess = h.entries();
      for (const auto& c : cs) {
        const double g = convex_value(c, x);
        const Vector dg = convex_gradient(c, x);
        grad += (mu / -g) * dg;
        hess += (mu / (g * g)) * (dg * dg.transpose());
        if (const auto* q = std::get_if<QuadraticConstraint>(&c)) {
          hess += (mu / -g) * q->hessian.entries();
        }
      }
      Eigen::LLT<Matrix> llt(hess);
      Vector d;
      if (llt.info() == Eigen::Success) {
        d = -llt.solve(grad);
      } else {
        d = -(hess + 1e-10 * Matrix::Identity(n, n)).ldlt().solve(grad);
      }
      const double decrement = -0.5 * grad.dot(d);
      if (decrement <= 1e-12) break;

      // Backtrack into the domain, then Armijo on the barrier.
      const double b0 = barrier(x, mu);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 80; ++ls) {
        const Vector y = x + step * d;
        const double by = barrier(y, mu);
        if (by <= b0 + 0.25 * step * grad.dot(d)) {
          x = y;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    mu *= 0.1;
  }

  std::vector<double> mult(cs.size(), 0.0);
  const double mu_final = 1e-10;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const double g = convex_value(cs[k], x);
    if (g < 0.0) mult[k] = mu_final / -g;
  }

  // Newton polish on the near-active set: solve the equality-constrained
  // KKT system to squeeze out the residual left by the final barrier term.
  {
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (convex_value(cs[k], x) >= -1e-5) act.push_back(k);
    }
    if (!act.empty() && act.size() <= static_cast<std::size_t>(n)) {
      Vector xp = x;
      Vector lam(static_cast<Eigen::Index>(act.size()));
      for (std::size_t j = 0; j < act.size(); ++j) {
        lam[static_cast<Eigen::Index>(j)] = mult[act[j]];
      }
      const Eigen::Index m = static_cast<Eigen::Index>(act.size());
      bool ok = true;
      for (int it = 0; it < 50 && ok; ++it) {
        Vector res_x = h * (xp - c0);
        Matrix hess = h.entries();
        Matrix jac(n, m);
        Vector res_g(m);
        for (Eigen::Index j = 0; j < m; ++j) {
          const auto& c = cs[act[static_cast<std::size_t>(j)]];
          jac.col(j) = convex_gradient(c, xp);
          res_g[j] = convex_value(c, xp);
          res_x += lam[j] * jac.col(j);
          if (const auto* q = std::get_if<QuadraticConstraint>(&c)) {
            hess += lam[j] * q->hessian.entries();
          }
        }
        if (std::max(res_x.cwiseAbs().maxCoeff(),
                     res_g.cwiseAbs().maxCoeff()) <= 1e-14) {
          break;
        }
        Matrix kkt = Matrix::Zero(n + m, n + m);
        kkt.topLeftCorner(n, n) = hess;
        kkt.topRightCorner(n, m) = jac;
        kkt.bottomLeftCorner(m, n) = jac.transpose();
        Vector rhs(n + m);
        rhs.head(n) = -res_x;
        rhs.tail(m) = -res_g;
        const Eigen::FullPivLU<Matrix> lu(kkt);
        if (!lu.isInvertible()) {
          ok = false;
          break;
        }
        const Vector step = lu.solve(rhs);
        xp += step.head(n);
        lam += step.tail(m);
      }
      // Accept the polished point only if it is a valid KKT candidate.
      if (ok && lam.minCoeff() >= -1e-12 &&
          total_violation(cs, xp) <= kViolationTol &&
          (xp - x).norm() <= 1e-3 * (1.0 + x.norm())) {
        x = xp;
        for (std::size_t k = 0; k < cs.size(); ++k) mult[k] = 0.0;
        for (std::size_t j = 0; j < act.size(); ++j) {
          mult[act[j]] = std::max(0.0, lam[static_cast<Eigen::Index>(j)]);
        }
      }
    }
  }
  return finish(sp, x, ProjectionStatus::Optimal, &mult);
}

}  // namespace

ScalarizedProblem build_scalarized(const QuadraticPeak& peak1,
                                   const QuadraticPeak& peak2, double theta,
                                   ConvexSubproblemConstraints constraints) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw ValidationError("build_scalarized: theta must lie in [0, 1]");
  }
  check_dimension(peak2.dimension(), peak1.dimension(), "build_scalarized");
  const Matrix h = theta * peak1.hessian.entries() +
                   (1.0 - theta) * peak2.hessian.entries();
  SpdMatrix h_theta{h};
  const Vector rhs = theta * (peak1.hessian * peak1.center) +
                     (1.0 - theta) * (peak2.hessian * peak2.center);
  Vector c_theta;
  if (theta == 1.0) {
    c_theta = peak1.center;
  } else if (theta == 0.0) {
    c_theta = peak2.center;
  } else {
    c_theta = h_theta.solve(rhs);
  }
  ScalarizedProblem sp{theta, std::move(h_theta), std::move(c_theta),
                       theta * peak1.offset + (1.0 - theta) * peak2.offset,
                       std::move(constraints)};
  return sp;
}

ProjectionResult project(const ScalarizedProblem& sp,
                         std::optional<Vector> start_hint) {
  for (const auto& c : sp.constraints) {
    check_dimension(convex_dimension(c), sp.dimension(), "project");
  }
  if (sp.constraints.empty()) {
    std::vector<double> none;
    return finish(sp, sp.combined_center, ProjectionStatus::Optimal, &none);
  }
  const bool linear_only =
      std::all_of(sp.constraints.begin(), sp.constraints.end(),
                  [](const ConvexConstraint& c) {
                    return std::holds_alternative<LinearConstraint>(c);
                  });
  if (linear_only) return solve_linear_only(sp);
  return solve_interior_point(sp, start_hint);
}

}  // namespace cobi
