#include "cobi/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>

#include "cobi/rng.hpp"

namespace cobi {

namespace {

constexpr std::size_t kPopulation = 100;
constexpr double kSbxEta = 15.0;
constexpr double kSbxProb = 0.9;
constexpr double kMutEta = 20.0;

std::vector<std::size_t> checkpoints(std::size_t budget,
                                     std::size_t trace_points) {
  std::vector<std::size_t> cps;
  if (budget == 0) return cps;
  const std::size_t t = std::max<std::size_t>(trace_points, 2);
  for (std::size_t i = 0; i < t; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(t - 1);
    const double v = std::pow(static_cast<double>(budget), frac);
    const auto cp = static_cast<std::size_t>(std::llround(v));
    if (cps.empty() || cp > cps.back()) cps.push_back(std::max<std::size_t>(cp, 1));
  }
  if (cps.back() != budget) cps.push_back(budget);
  return cps;
}

class TraceRecorder {
 public:
  TraceRecorder(RunResult& result, const BaselineOptions& options)
      : result_(result),
        checkpoints_(checkpoints(options.budget, options.trace_points)),
        ref_(options.ref) {}

  void record_evaluation(const CobiProblem& prob, const Vector& x) {
    ++result_.evaluations;
    if (prob.constraints().is_feasible(x).feasible) {
      ++result_.feasible_evaluations;
      result_.archive.insert(prob.raw_objectives(x), x);
    }
    if (next_ < checkpoints_.size() &&
        result_.evaluations == checkpoints_[next_]) {
      ++next_;
      TracePoint tp;
      tp.evaluations = result_.evaluations;
      tp.archive_size = result_.archive.size();
      tp.hypervolume = ref_ ? result_.archive.hypervolume(*ref_)
                            : std::numeric_limits<double>::quiet_NaN();
      result_.trace.push_back(tp);
    }
  }

 private:
  RunResult& result_;
  std::vector<std::size_t> checkpoints_;
  std::optional<ObjectivePair> ref_;
  std::size_t next_ = 0;
};

}  // namespace

RunResult run_random_search(const CobiProblem& prob,
                            const BaselineOptions& options) {
  RunResult result;
  TraceRecorder rec(result, options);
  Rng rng(options.seed);
  const auto [lo, hi] = prob.bounding_box();
  const Eigen::Index n = prob.dimension();
  for (std::size_t e = 0; e < options.budget; ++e) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    rec.record_evaluation(prob, x);
  }
  return result;
}

namespace {

struct Individual {
  Vector x;
  ObjectivePair f{};
  double violation = 0.0;
  bool feasible = true;
  std::size_t rank = 0;
  double crowding = 0.0;
};

/// Constraint domination: feasible beats infeasible, infeasible compare by
/// violation, feasible compare by Pareto dominance.
bool constraint_dominates(const Individual& a, const Individual& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible) return a.violation < b.violation;
  return dominates(a.f, b.f) == Dominance::Dominates;
}

void nondominated_sort(std::vector<Individual>& pop) {
  const std::size_t n = pop.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (constraint_dominates(pop[i], pop[j])) {
        dominated[i].push_back(j);
      } else if (constraint_dominates(pop[j], pop[i])) {
        ++count[i];
      }
    }
    if (count[i] == 0) {
      pop[i].rank = 0;
      front.push_back(i);
    }
  }
  std::size_t rank = 0;
  while (!front.empty()) {
    std::vector<std::size_t> next;
    for (const std::size_t i : front) {
      for (const std::size_t j : dominated[i]) {
        if (--count[j] == 0) {
          pop[j].rank = rank + 1;
          next.push_back(j);
        }
      }
    }
    front = std::move(next);
    ++rank;
  }
}

void assign_crowding(std::vector<Individual>& pop) {
  const double inf = std::numeric_limits<double>::infinity();
  for (auto& ind : pop) ind.crowding = 0.0;
  std::size_t max_rank = 0;
  for (const auto& ind : pop) max_rank = std::max(max_rank, ind.rank);
  std::vector<std::size_t> idx;
  for (std::size_t r = 0; r <= max_rank; ++r) {
    idx.clear();
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (pop[i].rank == r) idx.push_back(i);
    }
    if (idx.empty()) continue;
    for (int obj = 0; obj < 2; ++obj) {
      auto key = [&](std::size_t i) {
        return obj == 0 ? pop[i].f.f1 : pop[i].f.f2;
      };
      std::sort(idx.begin(), idx.end(),
                [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
      pop[idx.front()].crowding = inf;
      pop[idx.back()].crowding = inf;
      const double span = key(idx.back()) - key(idx.front());
      if (span <= 0.0) continue;
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
        pop[idx[k]].crowding += (key(idx[k + 1]) - key(idx[k - 1])) / span;
      }
    }
  }
}

bool tournament_better(const Individual& a, const Individual& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible && a.violation != b.violation) {
    return a.violation < b.violation;
  }
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

double clamped(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

void sbx_crossover(const Vector& p1, const Vector& p2, const Vector& lo,
                   const Vector& hi, Rng& rng, Vector& c1, Vector& c2) {
  c1 = p1;
  c2 = p2;
  if (rng.uniform01() >= kSbxProb) return;
  for (Eigen::Index i = 0; i < p1.size(); ++i) {
    if (rng.uniform01() >= 0.5) continue;
    const double u = rng.uniform01();
    const double beta =
        u <= 0.5 ? std::pow(2.0 * u, 1.0 / (kSbxEta + 1.0))
                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (kSbxEta + 1.0));
    const double a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
    const double b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
    c1[i] = clamped(a, lo[i], hi[i]);
    c2[i] = clamped(b, lo[i], hi[i]);
  }
}

void polynomial_mutation(Vector& x, const Vector& lo, const Vector& hi,
                         double pm, Rng& rng) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (rng.uniform01() >= pm) continue;
    const double span = hi[i] - lo[i];
    if (span <= 0.0) continue;
    const double u = rng.uniform01();
    double delta;
    if (u < 0.5) {
      const double d = (x[i] - lo[i]) / span;
      delta = std::pow(2.0 * u + (1.0 - 2.0 * u) *
                                     std::pow(1.0 - d, kMutEta + 1.0),
                       1.0 / (kMutEta + 1.0)) -
              1.0;
    } else {
      const double d = (hi[i] - x[i]) / span;
      delta = 1.0 - std::pow(2.0 * (1.0 - u) + 2.0 * (u - 0.5) *
                                                   std::pow(1.0 - d,
                                                            kMutEta + 1.0),
                             1.0 / (kMutEta + 1.0));
    }
    x[i] = clamped(x[i] + delta * span, lo[i], hi[i]);
  }
}

}  // namespace

RunResult run_nsga2_lite(const CobiProblem& prob,
                         const BaselineOptions& options) {
  RunResult result;
  TraceRecorder rec(result, options);
  Rng rng(options.seed);
  const auto [lo, hi] = prob.bounding_box();
  const Eigen::Index n = prob.dimension();
  const double pm = 1.0 / static_cast<double>(n);
  const std::size_t pop_size = std::min(kPopulation, std::max<std::size_t>(
                                                         options.budget, 2));

  auto make_individual = [&](Vector x) {
    Individual ind;
    rec.record_evaluation(prob, x);
    const auto fr = prob.constraints().is_feasible(x);
    ind.f = prob.raw_objectives(x);
    ind.violation = fr.total_violation;
    ind.feasible = fr.feasible;
    ind.x = std::move(x);
    return ind;
  };

  std::vector<Individual> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size && result.evaluations < options.budget;
       ++i) {
    Vector x(n);
    for (Eigen::Index d = 0; d < n; ++d) x[d] = rng.uniform(lo[d], hi[d]);
    pop.push_back(make_individual(std::move(x)));
  }
  nondominated_sort(pop);
  assign_crowding(pop);

  auto tournament = [&]() -> const Individual& {
    const auto& a = pop[rng.uniform_index(pop.size())];
    const auto& b = pop[rng.uniform_index(pop.size())];
    return tournament_better(a, b) ? a : b;
  };

  while (result.evaluations < options.budget) {
    std::vector<Individual> offspring;
    offspring.reserve(pop.size());
    while (offspring.size() < pop.size() &&
           result.evaluations < options.budget) {
      Vector c1, c2;
      sbx_crossover(tournament().x, tournament().x, lo, hi, rng, c1, c2);
      polynomial_mutation(c1, lo, hi, pm, rng);
      polynomial_mutation(c2, lo, hi, pm, rng);
      offspring.push_back(make_individual(std::move(c1)));
      if (offspring.size() < pop.size() &&
          result.evaluations < options.budget) {
        offspring.push_back(make_individual(std::move(c2)));
      }
    }
    for (auto& ind : offspring) pop.push_back(std::move(ind));
    nondominated_sort(pop);
    assign_crowding(pop);
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       if (pop[a].feasible != pop[b].feasible) {
                         return pop[a].feasible;
                       }
                       if (!pop[a].feasible) {
                         return pop[a].violation < pop[b].violation;
                       }
                       if (pop[a].rank != pop[b].rank) {
                         return pop[a].rank < pop[b].rank;
                       }
                       return pop[a].crowding > pop[b].crowding;
                     });
    std::vector<Individual> survivors;
    survivors.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size && i < order.size(); ++i) {
      survivors.push_back(std::move(pop[order[i]]));
    }
    pop = std::move(survivors);
    nondominated_sort(pop);
    assign_crowding(pop);
  }
  return result;
}

namespace {

void write_projection_csv(const BiArchive& archive, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "x1,x2,f1,f2\n";
  char buf[512];
  for (const auto& e : archive.entries()) {
    const double x1 = e.x && e.x->size() > 0 ? (*e.x)[0] : 0.0;
    const double x2 = e.x && e.x->size() > 1 ? (*e.x)[1] : 0.0;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", x1, x2,
                  e.f.f1, e.f.f2);
    out << buf;
  }
}

/// One multiplicative-secant pass on the archive-size-vs-epsilon curve
/// (size is roughly proportional to 1/epsilon).  Steps are capped at x8 per
/// iteration, and a size that fails to respond to a shrinking epsilon means
/// the feasible front has (nearly) collapsed and the target is unreachable:
/// such instances are reported as failures instead of grinding through
/// ever-denser schedules.
std::optional<double> calibrate_epsilon(const CobiProblem& prob,
                                        std::size_t target, double tolerance,
                                        ParetoApproximation* out_ps) {
  const Vector& c1 = prob.objective1().peak(0).center;
  const Vector& c2 = prob.objective2().peak(0).center;
  double eps = std::max((c1 - c2).norm(), 1e-6) /
               static_cast<double>(std::max<std::size_t>(target, 2));
  ParetoApproximation ps;
  const double t = static_cast<double>(target);
  double prev_size = -1.0;
  bool prev_shrank = false;
  for (int it = 0; it < 25; ++it) {
    ps = approx_ps(prob, eps);
    const double size = static_cast<double>(ps.archive.size());
    if (std::abs(size - t) <= tolerance * t) {
      if (out_ps) *out_ps = std::move(ps);
      return eps;
    }
    if (prev_shrank && size <= prev_size) return std::nullopt;
    prev_size = size;
    prev_shrank = size < t;
    const double factor = std::min(std::max(size / t, 0.125), 8.0);
    eps = std::min(std::max(eps * factor, 1e-12), 1e9);
  }
  return std::nullopt;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0
                   : std::accumulate(v.begin(), v.end(), 0.0) /
                         static_cast<double>(v.size());
}

double stdev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (const double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

Json dimension_scaling_experiment(const ScalingConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);

  Json report = Json::object();
  report["budget"] = config.budget;
  report["repetitions"] = config.repetitions;
  report["archive_target"] = config.archive_target;
  Json dims = Json::array();

  for (const Eigen::Index n : config.dimensions) {
    // One instance per dimension, `repetitions` independent algorithm runs
    // on it.  A draw whose feasible front collapses to a handful of points
    // can never reach the archive target, so uncalibratable draws are
    // resampled with a shifted seed.
    std::optional<CobiProblem> prob;
    ParetoApproximation ps;
    double eps = 0.0;
    std::uint64_t used_seed = 0;
    for (std::uint64_t attempt = 0; attempt < 20 && !prob; ++attempt) {
      GeneratorConfig gc;
      gc.dimension = n;
      gc.peaks1 = 1;
      gc.peaks2 = 1;
      gc.constraints = {{ConstraintRecipe::Kind::Linear, {}},
                        {ConstraintRecipe::Kind::Quadratic, {}}};
      gc.kappa_min = 1.0;
      gc.kappa_max = 100.0;
      gc.seed = config.seed + static_cast<std::uint64_t>(n) + 100000 * attempt;
      CobiProblem candidate = generate(gc);
      const std::optional<double> cal =
          calibrate_epsilon(candidate, config.archive_target, 0.05, &ps);
      if (!cal) continue;
      eps = *cal;
      used_seed = gc.seed;
      prob.emplace(std::move(candidate));
    }
    if (!prob) {
      throw NumericalError(
          "dimension_scaling_experiment: no calibratable instance for n=" +
          std::to_string(n));
    }
    const ObjectivePair ref = ps.nadir;
    const double hv_ref = ps.archive.hypervolume(ref);

    const std::string ref_csv = (fs::path(config.output_dir) /
                                 ("reference_n" + std::to_string(n) + ".csv"))
                                    .string();
    write_projection_csv(ps.archive, ref_csv);

    Json dim_entry = Json::object();
    dim_entry["dimension"] = n;
    dim_entry["instance_id"] = prob->instance_id();
    dim_entry["seed"] = used_seed;
    dim_entry["epsilon"] = eps;
    dim_entry["reference_archive_size"] = ps.archive.size();
    dim_entry["reference_hypervolume"] = hv_ref;
    dim_entry["ideal"] = {ps.ideal.f1, ps.ideal.f2};
    dim_entry["nadir"] = {ps.nadir.f1, ps.nadir.f2};
    dim_entry["reference_csv"] = ref_csv;

    Json algos = Json::object();
    const char* names[2] = {"random", "nsga2lite"};
    for (int algo = 0; algo < 2; ++algo) {
      std::vector<RunResult> runs;
      runs.reserve(static_cast<std::size_t>(config.repetitions));
      for (int rep = 0; rep < config.repetitions; ++rep) {
        BaselineOptions opt;
        opt.budget = config.budget;
        opt.seed = prob->seed() ^
                   static_cast<std::uint64_t>(1000 * (algo + 1) + rep + 1);
        opt.ref = ref;
        runs.push_back(algo == 0 ? run_random_search(*prob, opt)
                                 : run_nsga2_lite(*prob, opt));
      }

      const std::size_t trace_len = runs[0].trace.size();
      Json evals = Json::array();
      Json mean_gap = Json::array();
      Json std_gap = Json::array();
      auto gap_of = [&](double hv) {
        return hv_ref > 0.0 ? (hv_ref - hv) / hv_ref : hv_ref - hv;
      };
      for (std::size_t t = 0; t < trace_len; ++t) {
        std::vector<double> gaps;
        for (const auto& run : runs) {
          gaps.push_back(gap_of(run.trace[t].hypervolume));
        }
        evals.push_back(runs[0].trace[t].evaluations);
        mean_gap.push_back(mean(gaps));
        std_gap.push_back(stdev(gaps));
      }

      std::vector<double> final_gaps;
      for (const auto& run : runs) {
        final_gaps.push_back(gap_of(run.archive.hypervolume(ref)));
      }
      // Median run by final hypervolume gap.
      std::vector<std::size_t> order(runs.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return final_gaps[a] < final_gaps[b];
      });
      const std::size_t median_idx = order[order.size() / 2];
      const std::string run_csv =
          (fs::path(config.output_dir) /
           (std::string(names[algo]) + "_n" + std::to_string(n) + "_median.csv"))
              .string();
      write_projection_csv(runs[median_idx].archive, run_csv);

      Json aj = Json::object();
      aj["evaluations"] = std::move(evals);
      aj["mean_gap"] = std::move(mean_gap);
      aj["std_gap"] = std::move(std_gap);
      aj["final_mean_gap"] = mean(final_gaps);
      aj["final_std_gap"] = stdev(final_gaps);
      aj["median_run_csv"] = run_csv;
      algos[names[algo]] = std::move(aj);
    }
    dim_entry["algorithms"] = std::move(algos);
    dims.push_back(std::move(dim_entry));
  }
  report["dimensions"] = std::move(dims);

  const std::string report_path =
      (std::filesystem::path(config.output_dir) / "report.json").string();
  std::ofstream out(report_path);
  if (!out) throw Error("cannot open " + report_path + " for writing");
  out << report.dump(2) << "\n";
  return report;
}

}  // namespace cobi
