// Acceptance gate: ten end-to-end criteria, one pass/fail line each.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cobi/baseline.hpp"
#include "cobi/generator.hpp"
#include "cobi/pareto.hpp"
#include "cobi/rng.hpp"

using namespace cobi;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kCli = COBI_CLI_PATH;
const std::string kData = COBI_DATA_DIR;

struct Checker {
  bool ok = true;
  std::string first_failure;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
    ok = ok && cond;
  }
};

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

SpdMatrix draw_spd(Eigen::Index n, double kappa_max, Rng& rng) {
  const double kappa = std::exp(rng.uniform(0.0, std::log(kappa_max)));
  Vector eigs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eigs[i] = n == 1 ? 1.0
                     : std::pow(kappa, static_cast<double>(i) /
                                           static_cast<double>(n - 1));
  }
  return SpdMatrix::from_spectrum(eigs, random_rotation(n, rng));
}

// ---- criterion 1 --------------------------------------------------------

void criterion_stationarity(Checker& c) {
  Rng rng(1001);
  const Eigen::Index dims[] = {2, 5, 10, 40};
  for (int inst = 0; inst < 200; ++inst) {
    const Eigen::Index n = dims[inst % 4];
    const QuadraticPeak p1(rng.uniform_vector(n, -5, 5), draw_spd(n, 1e4, rng));
    const QuadraticPeak p2(rng.uniform_vector(n, -5, 5), draw_spd(n, 1e4, rng));
    for (int t = 0; t < 20; ++t) {
      const double theta = rng.uniform01();
      const Vector ct = unconstrained_point(p1, p2, theta);
      const Vector grad =
          theta * (p1.hessian.entries() * (ct - p1.center)) +
          (1 - theta) * (p2.hessian.entries() * (ct - p2.center));
      c.require(grad.cwiseAbs().maxCoeff() <= 1e-8 * (1 + ct.norm()),
                "gradient at c_theta too large");
    }
  }
}

// ---- criterion 2 --------------------------------------------------------

struct EnumOracle {
  bool found = false;
  Vector x;
};

EnumOracle linear_enumeration(const ScalarizedProblem& sp) {
  const Eigen::Index n = sp.dimension();
  const std::size_t p = sp.constraints.size();
  EnumOracle best;
  double best_val = 0.0;
  for (std::size_t mask = 0; mask < (1u << p); ++mask) {
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < p; ++k) {
      if (mask & (1u << k)) active.push_back(k);
    }
    if (active.size() > static_cast<std::size_t>(n)) continue;
    const Eigen::Index m = static_cast<Eigen::Index>(active.size());
    Matrix kkt = Matrix::Zero(n + m, n + m);
    kkt.topLeftCorner(n, n) = sp.combined_hessian.entries();
    Vector rhs(n + m);
    rhs.head(n) = sp.combined_hessian.entries() * sp.combined_center;
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& lc = std::get<LinearConstraint>(sp.constraints[active[i]]);
      kkt.block(0, n + i, n, 1) = lc.normal;
      kkt.block(n + i, 0, 1, n) = lc.normal.transpose();
      rhs[n + i] = -lc.intercept;
    }
    const Eigen::FullPivLU<Matrix> lu(kkt);
    if (!lu.isInvertible()) continue;
    const Vector sol = lu.solve(rhs);
    const Vector x = sol.head(n);
    bool ok = true;
    for (std::size_t k = 0; k < p; ++k) {
      if (convex_value(sp.constraints[k], x) > 1e-9) ok = false;
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      if (sol[n + i] < -1e-9) ok = false;
    }
    if (!ok) continue;
    const double val = sp.value(x);
    if (!best.found || val < best_val) {
      best.found = true;
      best.x = x;
      best_val = val;
    }
  }
  return best;
}

void criterion_projection(Checker& c) {
  Rng rng(1002);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform_index(4));
    const std::size_t n_lin = rng.uniform_index(4);       // 0..3
    std::size_t n_quad = rng.uniform_index(3);            // 0..2
    if (n_lin + n_quad == 0) n_quad = 1;
    const bool linear_only = n_quad == 0;

    ScalarizedProblem sp{0.5, draw_spd(n, 100.0, rng),
                         rng.uniform_vector(n, -3, 3), 0.0, {}};
    const Vector z0 = rng.uniform_vector(n, -2, 2);
    for (std::size_t k = 0; k < n_lin; ++k) {
      Vector a = rng.normal_vector(n);
      while (a.norm() < 1e-6) a = rng.normal_vector(n);
      a.normalize();
      sp.constraints.push_back(
          LinearConstraint(a, -a.dot(z0) - rng.uniform(0.1, 1.0)));
    }
    for (std::size_t k = 0; k < n_quad; ++k) {
      const SpdMatrix h = draw_spd(n, 10.0, rng);
      const Vector center = z0 + rng.uniform_vector(n, -0.3, 0.3);
      const double q = 0.5 * h.quad(z0 - center);
      sp.constraints.push_back(
          QuadraticConstraint(center, h, q + rng.uniform(0.2, 1.0)));
    }

    const ProjectionResult r = project(sp, z0);
    c.require(r.status == ProjectionStatus::Optimal, "projection failed");
    if (r.status != ProjectionStatus::Optimal) continue;
    c.require(r.violation <= 1e-8, "violation above 1e-8");
    c.require(r.kkt_residual <= 1e-7, "KKT residual above 1e-7");

    // Variational inequality on sampled feasible z.
    const double vi_tol = 1e-6 * (1 + sp.combined_center.norm());
    const Vector d = sp.combined_hessian.entries() *
                     (sp.combined_center - r.x_star);
    for (int s = 0; s < 1000; ++s) {
      Vector z = z0 + rng.uniform_vector(n, -2, 2);
      // Shrink toward the strictly feasible z0 until feasible.
      for (int half = 0; half < 60; ++half) {
        bool feas = true;
        for (const auto& con : sp.constraints) {
          if (convex_value(con, z) > 0.0) feas = false;
        }
        if (feas) break;
        z = z0 + 0.5 * (z - z0);
      }
      c.require(d.dot(z - r.x_star) <= vi_tol,
                "variational inequality violated");
    }

    if (linear_only) {
      const EnumOracle oracle = linear_enumeration(sp);
      c.require(oracle.found, "enumeration oracle found no point");
      if (oracle.found) {
        c.require((r.x_star - oracle.x).cwiseAbs().maxCoeff() <= 1e-7,
                  "linear-only projection disagrees with enumeration");
      }
    }
  }
}

// ---- criterion 3 --------------------------------------------------------

GeneratorConfig grid_config(int which, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.dimension = 2;
  cfg.seed = seed;
  cfg.kappa_min = 1.0;
  cfg.kappa_max = 50.0;
  switch (which % 5) {
    case 0:
      cfg.constraints.push_back({ConstraintRecipe::Kind::Linear, {}});
      break;
    case 1:
      cfg.constraints.push_back({ConstraintRecipe::Kind::Quadratic, {}});
      break;
    case 2:
      cfg.constraints.push_back(
          {ConstraintRecipe::Kind::Multipeak,
           {ConstraintRecipe::Kind::Quadratic,
            ConstraintRecipe::Kind::Quadratic}});
      break;
    case 3:
      cfg.peaks1 = 2;
      cfg.constraints.push_back({ConstraintRecipe::Kind::Linear, {}});
      break;
    default:
      cfg.peaks1 = 2;
      cfg.peaks2 = 2;
      cfg.constraints.push_back(
          {ConstraintRecipe::Kind::Multipeak,
           {ConstraintRecipe::Kind::Linear,
            ConstraintRecipe::Kind::Quadratic}});
      break;
  }
  return cfg;
}

void criterion_grid_dominance(Checker& c) {
  for (int inst = 0; inst < 20; ++inst) {
    const CobiProblem prob =
        generate(grid_config(inst, 9000 + static_cast<std::uint64_t>(inst)));
    const ParetoApproximation ps = approx_ps(prob, 0.01);
    c.require(ps.archive.size() >= 1, "empty approximation");
    if (ps.archive.size() == 0) continue;
    const auto [lo, hi] = prob.bounding_box();
    const int m = 401;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Vector x = vec2(lo[0] + (hi[0] - lo[0]) * i / (m - 1),
                              lo[1] + (hi[1] - lo[1]) * j / (m - 1));
        if (!prob.constraints().is_feasible(x).feasible) continue;
        const ObjectivePair f = prob.raw_objectives(x);
        // Does any archive point lose in both objectives by > 1e-3?
        // The archive is sorted by f1 ascending / f2 descending, so the
        // suffix with f1 > f.f1 + 1e-3 has its largest f2 at its first index.
        std::size_t lo_idx = 0, hi_idx = ps.archive.size();
        while (lo_idx < hi_idx) {
          const std::size_t mid = (lo_idx + hi_idx) / 2;
          if (ps.archive[mid].f.f1 > f.f1 + 1e-3) {
            hi_idx = mid;
          } else {
            lo_idx = mid + 1;
          }
        }
        const bool improved = lo_idx < ps.archive.size() &&
                              ps.archive[lo_idx].f.f2 > f.f2 + 1e-3;
        c.require(!improved, "grid point dominates an archived point");
      }
    }
  }
}

// ---- criterion 4 --------------------------------------------------------

void criterion_spacing(Checker& c) {
  Rng rng(1004);
  const Eigen::Index dims[] = {2, 5, 10};
  for (int trial = 0; trial < 15; ++trial) {
    const Eigen::Index n = dims[trial % 3];
    const QuadraticPeak p1(rng.uniform_vector(n, -3, 3), draw_spd(n, 30, rng));
    const QuadraticPeak p2(rng.uniform_vector(n, -3, 3), draw_spd(n, 30, rng));
    const double eps = 0.05;
    const WeightSchedule ws = epsilon_weights(p1, p2, eps);
    for (std::size_t i = 0; i + 1 < ws.weights.size(); ++i) {
      const Vector a = unconstrained_point(p1, p2, ws.weights[i]);
      const Vector b = unconstrained_point(p1, p2, ws.weights[i + 1]);
      c.require((a - b).norm() <= eps * (1 + 1e-12),
                "schedule spacing exceeds epsilon");
    }
  }
  // Refinement on proportional-Hessian segments.
  for (int trial = 0; trial < 10; ++trial) {
    const SpdMatrix h = draw_spd(2, 10, rng);
    const Vector c1 = rng.uniform_vector(2, -2, 2);
    Vector c2 = rng.uniform_vector(2, -2, 2);
    while ((c1 - c2).norm() < 0.5) c2 = rng.uniform_vector(2, -2, 2);
    const QuadraticPeak p1(c1, h);
    const QuadraticPeak p2(c2, h);
    const std::size_t n1 = epsilon_weights(p1, p2, 0.05).weights.size();
    const std::size_t n2 = epsilon_weights(p1, p2, 0.025).weights.size();
    c.require(n2 >= 2 * n1 - 3 && n2 <= 2 * n1 + 3,
              "halving epsilon does not double the schedule");
  }
}

// ---- criterion 5 --------------------------------------------------------

CobiProblem transformed_twin(const CobiProblem& prob) {
  std::vector<QuadraticPeak> peaks1, peaks2;
  for (std::size_t p = 0; p < prob.objective1().peak_count(); ++p) {
    peaks1.push_back(prob.objective1().peak(p));
  }
  for (std::size_t p = 0; p < prob.objective2().peak_count(); ++p) {
    peaks2.push_back(prob.objective2().peak(p));
  }
  std::vector<ConstraintSet::Entry> entries;
  for (std::size_t k = 0; k < prob.constraints().size(); ++k) {
    const auto& e = prob.constraints().entry(k);
    entries.push_back({e.body,
                       k % 2 == 0
                           ? SignPreservingTransform::binary_step()
                           : SignPreservingTransform::positive_scale(4.0)});
  }
  return CobiProblem(
      MultipeakObjective(std::move(peaks1), MonotoneTransform::power(0.5)),
      MultipeakObjective(std::move(peaks2), MonotoneTransform::power(2.0)),
      ConstraintSet(std::move(entries)), prob.anchor(), prob.seed(),
      prob.instance_id() + "-transformed", prob.name());
}

void criterion_transform_invariance(Checker& c) {
  Rng rng(1005);
  for (int inst = 0; inst < 10; ++inst) {
    GeneratorConfig cfg;
    cfg.dimension = 2;
    cfg.seed = 500 + static_cast<std::uint64_t>(inst);
    cfg.kappa_max = 50.0;
    cfg.constraints.push_back({ConstraintRecipe::Kind::Linear, {}});
    cfg.constraints.push_back({ConstraintRecipe::Kind::Quadratic, {}});
    const CobiProblem raw = generate(cfg);
    const CobiProblem twin = transformed_twin(raw);

    const ParetoApproximation ps_raw = approx_ps(raw, 0.05);
    const ParetoApproximation ps_twin = approx_ps(twin, 0.05);
    c.require(ps_raw.archive.size() == ps_twin.archive.size(),
              "transformed archive size differs");
    if (ps_raw.archive.size() == ps_twin.archive.size()) {
      for (std::size_t i = 0; i < ps_raw.archive.size(); ++i) {
        c.require((*ps_raw.archive[i].x - *ps_twin.archive[i].x)
                          .cwiseAbs()
                          .maxCoeff() == 0.0,
                  "transformed decision vectors not bit-identical");
      }
    }

    // Dominance of random feasible pairs is unchanged by the transforms.
    const auto [lo, hi] = raw.bounding_box();
    auto feasible_sample = [&]() {
      for (int tries = 0; tries < 100000; ++tries) {
        Vector x(2);
        x << rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1]);
        if (raw.constraints().is_feasible(x).feasible) return x;
      }
      return raw.anchor();
    };
    for (int pair = 0; pair < 1000; ++pair) {
      const Vector x = feasible_sample();
      const Vector y = feasible_sample();
      const Dominance raw_rel =
          dominates(raw.evaluate(x).f_raw, raw.evaluate(y).f_raw);
      const Dominance twin_rel =
          dominates(twin.evaluate(x).f, twin.evaluate(y).f);
      c.require(raw_rel == twin_rel, "dominance changed under transforms");
    }
  }
}

// ---- criterion 6 --------------------------------------------------------

void criterion_ideal_nadir(Checker& c) {
  for (int inst = 0; inst < 12; ++inst) {
    GeneratorConfig cfg;
    cfg.dimension = 2;
    cfg.seed = 700 + static_cast<std::uint64_t>(inst);
    cfg.kappa_max = 30.0;
    if (inst % 3 == 1) {
      cfg.peaks1 = 2;
    } else if (inst % 3 == 2) {
      cfg.peaks1 = 2;
      cfg.peaks2 = 2;
    }
    if (inst % 2 == 0) {
      cfg.constraints.push_back({ConstraintRecipe::Kind::Linear, {}});
    }
    const CobiProblem prob = generate(cfg);
    const ParetoApproximation ps = approx_ps(prob, 0.02);
    c.require(ps.archive.size() >= 2, "approximation too small");
    if (ps.archive.size() < 2) continue;
    double min1 = ps.archive[0].f.f1, max1 = min1;
    double min2 = ps.archive[0].f.f2, max2 = min2;
    double spacing = 0.0;
    for (std::size_t i = 0; i < ps.archive.size(); ++i) {
      min1 = std::min(min1, ps.archive[i].f.f1);
      max1 = std::max(max1, ps.archive[i].f.f1);
      min2 = std::min(min2, ps.archive[i].f.f2);
      max2 = std::max(max2, ps.archive[i].f.f2);
      if (i + 1 < ps.archive.size()) {
        spacing = std::max(
            spacing, std::hypot(ps.archive[i + 1].f.f1 - ps.archive[i].f.f1,
                                ps.archive[i].f.f2 - ps.archive[i + 1].f.f2));
      }
    }
    const double tol = std::max(1e-6, spacing);
    const IdealNadir in = ideal_nadir(prob);
    c.require(std::abs(in.ideal.f1 - min1) <= tol, "ideal f1 mismatch");
    c.require(std::abs(in.ideal.f2 - min2) <= tol, "ideal f2 mismatch");
    c.require(std::abs(in.nadir.f1 - max1) <= tol, "nadir f1 mismatch");
    c.require(std::abs(in.nadir.f2 - max2) <= tol, "nadir f2 mismatch");
  }
}

// ---- criterion 7 --------------------------------------------------------

double hv_oracle(const std::vector<ObjectivePair>& points,
                 const ObjectivePair& ref) {
  std::vector<double> xs;
  for (const auto& p : points) {
    if (p.f1 < ref.f1 && p.f2 < ref.f2) xs.push_back(p.f1);
  }
  xs.push_back(ref.f1);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double best = ref.f2;
    for (const auto& p : points) {
      if (p.f1 <= xs[i] && p.f2 < best && p.f2 < ref.f2) best = p.f2;
    }
    area += (xs[i + 1] - xs[i]) * (ref.f2 - best);
  }
  return area;
}

void criterion_hypervolume(Checker& c) {
  Rng rng(1007);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t count = 1 + rng.uniform_index(8);
    BiArchive archive;
    std::vector<ObjectivePair> points;
    for (std::size_t i = 0; i < count; ++i) {
      ObjectivePair f{rng.uniform(0, 5), rng.uniform(0, 5)};
      points.push_back(f);
      archive.insert(f);
    }
    const ObjectivePair ref{rng.uniform(2, 8), rng.uniform(2, 8)};
    const double expected = hv_oracle(points, ref);
    const double got = archive.hypervolume(ref);
    const double scale = std::max(1.0, std::abs(expected));
    c.require(std::abs(got - expected) <= 1e-12 * scale,
              "hypervolume deviates from the oracle");
  }
}

// ---- criterion 8 --------------------------------------------------------

void criterion_showcase(Checker& c) {
  const char* files[8] = {
      "showcase-type1-a.json", "showcase-type1-b.json",
      "showcase-type2-a.json", "showcase-type2-b.json",
      "showcase-type3-a.json", "showcase-type3-b.json",
      "showcase-type4-a.json", "showcase-type4-b.json"};
  const ProblemType expected[8] = {
      ProblemType::I,  ProblemType::I,  ProblemType::II, ProblemType::II,
      ProblemType::III, ProblemType::III, ProblemType::IV, ProblemType::IV};
  const double eps = 0.01;
  const double tol = std::max(1e-6, eps);
  for (int i = 0; i < 8; ++i) {
    const CobiProblem prob =
        load_instance_file(kData + "/showcase/" + files[i]);
    const CobiProblem unconstrained(
        prob.objective1(), prob.objective2(), ConstraintSet{},
        prob.objective1().peak(0).center, prob.seed(),
        prob.instance_id() + "-unconstrained", prob.name());
    const ParetoApproximation ups = approx_ps(unconstrained, eps);
    const ParetoApproximation cps = approx_ps(prob, eps);
    const ProblemType got = classify_type(prob, ups, cps, tol);
    c.require(got == expected[i],
              std::string(files[i]) + " classified as " + to_string(got));
  }
}

// ---- criterion 9 --------------------------------------------------------

void criterion_scaling(Checker& c) {
  ScalingConfig cfg;
  cfg.output_dir = "/tmp/cobi_acceptance_scaling";
  const Json report = dimension_scaling_experiment(cfg);
  const auto& dims = report.at("dimensions");
  c.require(dims.size() == 3, "expected three dimensions");
  double prev_gap = -1.0;
  for (const auto& entry : dims) {
    const std::size_t ref_size =
        entry.at("reference_archive_size").get<std::size_t>();
    c.require(ref_size >= 1900 && ref_size <= 2100,
              "reference archive size outside 2000 +- 5%");
    const double gap =
        entry.at("algorithms").at("nsga2lite").at("final_mean_gap")
            .get<double>();
    c.require(gap > prev_gap, "mean final gap not strictly increasing");
    prev_gap = gap;
  }
}

// ---- criterion 10 -------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_determinism(Checker& c) {
  const std::string base = "/tmp/cobi_acceptance";
  const std::string gen = "generate -n 5 --seed 123 --constraint linear "
                          "--constraint quadratic --out ";
  c.require(run_cli(gen + base + "_g1.json") == 0, "generate failed");
  c.require(run_cli(gen + base + "_g2.json") == 0, "generate failed");
  c.require(slurp(base + "_g1.json") == slurp(base + "_g2.json"),
            "generate output differs between runs");
  c.require(!slurp(base + "_g1.json").empty(), "generate wrote nothing");

  const std::string aps = "approx-ps --instance " + base +
                          "_g1.json --epsilon 0.2 --out ";
  c.require(run_cli(aps + base + "_ps1.csv") == 0, "approx-ps failed");
  c.require(run_cli(aps + base + "_ps2.csv") == 0, "approx-ps failed");
  c.require(slurp(base + "_ps1.csv") == slurp(base + "_ps2.csv"),
            "approx-ps output differs between runs");

  const std::string rb = "run-baseline --instance " + base +
                         "_g1.json --algo nsga2lite --budget 2000 --seed 7 "
                         "--trace ";
  c.require(run_cli(rb + base + "_t1.csv --out " + base + "_a1.csv") == 0,
            "run-baseline failed");
  c.require(run_cli(rb + base + "_t2.csv --out " + base + "_a2.csv") == 0,
            "run-baseline failed");
  c.require(slurp(base + "_a1.csv") == slurp(base + "_a2.csv"),
            "run-baseline archive differs between runs");
  c.require(slurp(base + "_t1.csv") == slurp(base + "_t2.csv"),
            "run-baseline trace differs between runs");
}

struct Criterion {
  const char* name;
  std::function<void(Checker&)> run;
  double time_limit;  // seconds; 0 = no limit
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"scalarization stationarity", criterion_stationarity, 10.0},
      {"projection optimality", criterion_projection, 60.0},
      {"grid dominance", criterion_grid_dominance, 120.0},
      {"epsilon spacing and refinement", criterion_spacing, 0.0},
      {"transform invariance", criterion_transform_invariance, 0.0},
      {"ideal/nadir endpoints", criterion_ideal_nadir, 0.0},
      {"hypervolume exactness", criterion_hypervolume, 0.0},
      {"showcase type taxonomy", criterion_showcase, 60.0},
      {"dimension scaling", criterion_scaling, 600.0},
      {"CLI determinism", criterion_determinism, 0.0},
  };

  int failures = 0;
  int index = 0;
  for (const auto& crit : criteria) {
    ++index;
    Checker checker;
    const auto start = Clock::now();
    try {
      crit.run(checker);
    } catch (const std::exception& e) {
      checker.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (crit.time_limit > 0.0 && secs > crit.time_limit) {
      checker.require(false, "time limit exceeded");
    }
    const bool pass = checker.ok;
    failures += pass ? 0 : 1;
    std::printf("[%2d/10] %s  %-32s (%.1f s)%s%s\n", index,
                pass ? "PASS" : "FAIL", crit.name, secs,
                pass ? "" : " -- ", pass ? "" : checker.first_failure.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of 10 acceptance criteria failed\n", failures);
    return 1;
  }
  std::printf("all 10 acceptance criteria passed\n");
  return 0;
}
