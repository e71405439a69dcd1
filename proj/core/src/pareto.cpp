#include "cobi/pareto.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>
#include <thread>
#include <utility>

namespace cobi {

namespace {

constexpr double kDupTol = 1e-12;
constexpr std::size_t kMaxScheduleSize = 1000000;

unsigned worker_count() {
  if (const char* env = std::getenv("COBI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

bool selection_feasible(const ConvexSubproblemConstraints& sel,
                        const Vector& x) {
  for (const auto& c : sel) {
    if (convex_value(c, x) > 0.0) return false;
  }
  return true;
}

}  // namespace

Vector unconstrained_point(const QuadraticPeak& peak1,
                           const QuadraticPeak& peak2, double theta) {
  return build_scalarized(peak1, peak2, theta).combined_center;
}

WeightSchedule epsilon_weights(const QuadraticPeak& peak1,
                               const QuadraticPeak& peak2, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ValidationError("epsilon_weights: epsilon must be > 0");
  }
  auto h = [&](double theta) {
    return unconstrained_point(peak1, peak2, theta);
  };
  WeightSchedule sched;
  sched.epsilon = epsilon;

  const Vector h0 = h(0.0);
  const Vector h1 = h(1.0);
  if ((h0 - h1).norm() <= epsilon) {
    sched.weights = {0.0, 1.0};
    return sched;
  }

  // Finds theta in (from, to] whose point is within [0.9 eps, eps] of
  // h(from); `to` itself if it is already close enough.
  auto next_weight = [&](double from, double to) {
    const Vector base = h(from);
    if ((h(to) - base).norm() <= epsilon) return to;
    double a = from;
    double b = to;
    for (int it = 0; it < 60; ++it) {
      const double m = 0.5 * (a + b);
      const double d = (h(m) - base).norm();
      if (d <= epsilon) {
        if (d >= 0.9 * epsilon) return m;
        a = m;
      } else {
        b = m;
      }
    }
    return a > from ? a : b;
  };

  std::vector<double> forward{0.0};
  const Vector hmid = h(0.5);
  while ((h(forward.back()) - hmid).norm() > epsilon) {
    const double t = next_weight(forward.back(), 0.5);
    if (!(t > forward.back()) || forward.size() > kMaxScheduleSize) break;
    forward.push_back(t);
  }
  std::vector<double> backward{1.0};
  while ((h(backward.back()) - hmid).norm() > epsilon) {
    const double t = next_weight(backward.back(), 0.5);
    if (!(t < backward.back()) || backward.size() > kMaxScheduleSize) break;
    backward.push_back(t);
  }

  // Close the middle gap; adversarial curvature may need several stitches.
  while ((h(forward.back()) - h(backward.back())).norm() > epsilon) {
    const double t = next_weight(forward.back(), backward.back());
    if (!(t > forward.back()) || t >= backward.back() ||
        forward.size() + backward.size() > kMaxScheduleSize) {
      break;
    }
    forward.push_back(t);
    ++sched.stitch_count;
  }

  sched.weights = std::move(forward);
  for (auto it = backward.rbegin(); it != backward.rend(); ++it) {
    if (*it > sched.weights.back()) sched.weights.push_back(*it);
  }
  return sched;
}

SweepResult approx_ps_singlepeak(const QuadraticPeak& peak1,
                                 const QuadraticPeak& peak2,
                                 const ConvexSubproblemConstraints& selection,
                                 const WeightSchedule& schedule,
                                 const Vector* anchor_hint) {
  SweepResult result;
  result.points.reserve(schedule.weights.size());
  for (double theta : schedule.weights) {
    ScalarizedProblem sp = build_scalarized(peak1, peak2, theta, selection);
    Vector x;
    if (selection_feasible(selection, sp.combined_center)) {
      x = sp.combined_center;
    } else {
      std::optional<Vector> hint;
      if (anchor_hint) hint = *anchor_hint;
      ProjectionResult pr = project(sp, hint);
      if (pr.status != ProjectionStatus::Optimal) {
        ++result.skipped_weights;
        continue;
      }
      x = std::move(pr.x_star);
    }
    const ObjectivePair f{peak1.raw_value(x), peak2.raw_value(x)};
    result.points.push_back({std::move(x), f, theta});
  }
  return result;
}

SweepResult approx_ps_singlepeak(const QuadraticPeak& peak1,
                                 const QuadraticPeak& peak2,
                                 const ConvexSubproblemConstraints& selection,
                                 double epsilon, const Vector* anchor_hint) {
  return approx_ps_singlepeak(peak1, peak2, selection,
                              epsilon_weights(peak1, peak2, epsilon),
                              anchor_hint);
}

IdealNadir ideal_nadir(const CobiProblem& prob) {
  const auto selections = prob.constraints().convex_selections();
  IdealNadir result;
  bool have_any = false;
  double best_f1 = 0.0, best_f1_other = 0.0;
  double best_f2 = 0.0, best_f2_other = 0.0;
  for (std::size_t i = 0; i < prob.objective1().peak_count(); ++i) {
    for (std::size_t j = 0; j < prob.objective2().peak_count(); ++j) {
      const auto& p1 = prob.objective1().peak(i);
      const auto& p2 = prob.objective2().peak(j);
      for (const auto& sel : selections) {
        const ProjectionResult r1 =
            project(build_scalarized(p1, p2, 1.0, sel), prob.anchor());
        const ProjectionResult r2 =
            project(build_scalarized(p1, p2, 0.0, sel), prob.anchor());
        if (r1.status != ProjectionStatus::Optimal ||
            r2.status != ProjectionStatus::Optimal) {
          ++result.excluded_keys;
          continue;
        }
        const ObjectivePair f_at_p1 = prob.raw_objectives(r1.x_star);
        const ObjectivePair f_at_p2 = prob.raw_objectives(r2.x_star);
        if (!have_any || f_at_p1.f1 < best_f1 ||
            (f_at_p1.f1 == best_f1 && f_at_p1.f2 < best_f1_other)) {
          best_f1 = f_at_p1.f1;
          best_f1_other = f_at_p1.f2;
        }
        if (!have_any || f_at_p2.f2 < best_f2 ||
            (f_at_p2.f2 == best_f2 && f_at_p2.f1 < best_f2_other)) {
          best_f2 = f_at_p2.f2;
          best_f2_other = f_at_p2.f1;
        }
        have_any = true;
      }
    }
  }
  if (!have_any) {
    throw NumericalError(
        "ideal_nadir: endpoint projections failed for every subproblem key");
  }
  result.ideal = {best_f1, best_f2};
  // Nadir from the objective-wise minimizers: the f1-minimizer pins the f2
  // supremum and vice versa.
  result.nadir = {best_f2_other, best_f1_other};
  return result;
}

ApproxPsReport approx_ps_report(const CobiProblem& prob, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ValidationError("approx_ps: epsilon must be > 0");
  }
  const auto selections = prob.constraints().convex_selections();
  const std::size_t s1 = prob.objective1().peak_count();
  const std::size_t s2 = prob.objective2().peak_count();

  struct Task {
    SubproblemKey key;
    const QuadraticPeak* p1;
    const QuadraticPeak* p2;
    const ConvexSubproblemConstraints* sel;
  };
  std::vector<Task> tasks;
  tasks.reserve(s1 * s2 * selections.size());
  for (std::size_t i = 0; i < s1; ++i) {
    for (std::size_t j = 0; j < s2; ++j) {
      for (std::size_t s = 0; s < selections.size(); ++s) {
        tasks.push_back({{i, j, s}, &prob.objective1().peak(i),
                         &prob.objective2().peak(j), &selections[s]});
      }
    }
  }

  // Schedules depend only on the peak pair; compute them once per pair.
  std::vector<WeightSchedule> schedules(s1 * s2);
  for (std::size_t i = 0; i < s1; ++i) {
    for (std::size_t j = 0; j < s2; ++j) {
      schedules[i * s2 + j] = epsilon_weights(prob.objective1().peak(i),
                                              prob.objective2().peak(j),
                                              epsilon);
    }
  }

  std::vector<SweepResult> results(tasks.size());
  const unsigned workers = std::min<unsigned>(
      worker_count(), static_cast<unsigned>(tasks.size()) == 0
                          ? 1u
                          : static_cast<unsigned>(tasks.size()));
  auto run_task = [&](std::size_t t) {
    const Task& task = tasks[t];
    const WeightSchedule& sched =
        schedules[task.key.peak_index_1 * s2 + task.key.peak_index_2];
    results[t] = approx_ps_singlepeak(*task.p1, *task.p2, *task.sel, sched,
                                      &prob.anchor());
  };
  if (workers <= 1 || tasks.size() <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> cursor{0};
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t t = cursor.fetch_add(1);
          if (t >= tasks.size()) return;
          run_task(t);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  ApproxPsReport report;
  report.approximation.epsilon = epsilon;
  BiArchive& archive = report.approximation.archive;
  // Deterministic merge in lexicographic key order (tasks are built sorted).
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const SweepResult& sw = results[t];
    report.skipped_weights += sw.skipped_weights;
    report.per_key.push_back({tasks[t].key, sw.points.size()});
    for (const auto& pt : sw.points) {
      // Re-evaluate under the full multipeak objectives: a point optimal for
      // its generating pair may be dominated once other peaks cut in.
      archive.insert(prob.raw_objectives(pt.x), pt.x, kDupTol);
    }
  }

  // Cross-key refinement.  Every swept point is Pareto-optimal for its own
  // subproblem, but with several keys a merged point can be dominated by a
  // *different* key's front between two of that key's samples, where the
  // epsilon filter cannot see it.  Such a hidden point lies inside the axis
  // rectangle spanned by two adjacent samples, so we subdivide any sample
  // interval whose dominated-region corner strictly beats a merged point by
  // more than the refinement margin, until the interval is too thin in one
  // objective to hide anything of consequence.
  if (tasks.size() > 1 && !archive.empty()) {
    constexpr double kRefineMargin = 2.5e-4;
    struct Sample {
      double theta;
      Vector x;
      ObjectivePair f;  // full multipeak raw objectives
    };
    std::vector<std::vector<Sample>> samples(tasks.size());
    std::size_t initial_points = 0;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      samples[t].reserve(results[t].points.size());
      for (const auto& pt : results[t].points) {
        samples[t].push_back({pt.theta, pt.x, prob.raw_objectives(pt.x)});
      }
      initial_points += samples[t].size();
    }
    // True iff some archived point is strictly below-right of (f1, f2); the
    // archive is sorted f1-ascending / f2-descending, so the suffix head
    // carries the suffix maximum of f2.
    auto dominated_entry_beyond = [&](double f1, double f2) {
      std::size_t lo = 0, hi = archive.size();
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (archive[mid].f.f1 > f1) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      return lo < archive.size() && archive[lo].f.f2 > f2;
    };
    std::set<std::pair<std::size_t, double>> failed_midpoints;
    const std::size_t budget = 4 * initial_points + 1024;
    std::size_t added = 0;
    for (int round = 0; round < 60 && added < budget; ++round) {
      bool any = false;
      for (std::size_t t = 0; t < tasks.size() && added < budget; ++t) {
        auto& sv = samples[t];
        for (std::size_t i = 0; i + 1 < sv.size() && added < budget; ++i) {
          const Sample& a = sv[i];
          const Sample& b = sv[i + 1];
          if (b.theta - a.theta <= 1e-9) continue;
          const double df1 = std::abs(a.f.f1 - b.f.f1);
          const double df2 = std::abs(a.f.f2 - b.f.f2);
          if (std::min(df1, df2) <= kRefineMargin) continue;
          const double c1 = std::min(a.f.f1, b.f.f1) + kRefineMargin;
          const double c2 = std::min(a.f.f2, b.f.f2) + kRefineMargin;
          if (!dominated_entry_beyond(c1, c2)) continue;
          const double tm = 0.5 * (a.theta + b.theta);
          if (failed_midpoints.count({t, tm})) continue;
          ScalarizedProblem sp =
              build_scalarized(*tasks[t].p1, *tasks[t].p2, tm, *tasks[t].sel);
          Vector x;
          if (selection_feasible(*tasks[t].sel, sp.combined_center)) {
            x = sp.combined_center;
          } else {
            ProjectionResult pr = project(sp, prob.anchor());
            if (pr.status != ProjectionStatus::Optimal) {
              failed_midpoints.insert({t, tm});
              continue;
            }
            x = std::move(pr.x_star);
          }
          const ObjectivePair f = prob.raw_objectives(x);
          archive.insert(f, x, kDupTol);
          sv.insert(sv.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                    {tm, std::move(x), f});
          ++i;  // the second half of the split is revisited next round
          ++added;
          any = true;
        }
      }
      if (!any) break;
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      report.per_key[t].points = samples[t].size();
    }
  }

  if (archive.empty()) {
    archive.insert(prob.raw_objectives(prob.anchor()), prob.anchor());
    report.approximation.degenerate = true;
  }

  const IdealNadir in = ideal_nadir(prob);
  report.approximation.ideal = in.ideal;
  report.approximation.nadir = in.nadir;
  report.excluded_ideal_keys = in.excluded_keys;
  return report;
}

ParetoApproximation approx_ps(const CobiProblem& prob, double epsilon) {
  return approx_ps_report(prob, epsilon).approximation;
}

}  // namespace cobi
