// cobi: generate, evaluate, and solve constrained bi-objective benchmark
// instances.  JSON results go to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 other error.

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cobi/baseline.hpp"
#include "cobi/generator.hpp"
#include "cobi/pareto.hpp"

namespace {

using cobi::Json;

cobi::Vector parse_vector(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      while (used < token.size() && std::isspace(
                 static_cast<unsigned char>(token[used]))) {
        ++used;
      }
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw cobi::ValidationError("cannot parse \"" + token +
                                  "\" as a number");
    }
  }
  if (values.empty()) {
    throw cobi::ValidationError("expected a comma-separated list of numbers");
  }
  cobi::Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = values[i];
  }
  return v;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw cobi::Error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

void write_archive_csv(const cobi::BiArchive& archive,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw cobi::Error("cannot open " + path + " for writing");
  archive.write_csv(out);
  if (!out) throw cobi::Error("failed writing " + path);
}

Json pair_json(const cobi::ObjectivePair& f) { return Json{f.f1, f.f2}; }

struct CommonArgs {
  std::string instance_path;
};

cobi::CobiProblem load_problem(const CommonArgs& args) {
  return cobi::load_instance_file(args.instance_path);
}

void add_instance_option(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--instance", args.instance_path, "Instance JSON file")
      ->required();
}

int run(int argc, char** argv) {
  CLI::App app{"Constrained bi-objective benchmark toolkit"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* gen = app.add_subcommand(
      "generate", "Draw a random instance and write its JSON document");
  std::string gen_config_path, gen_out;
  cobi::GeneratorConfig gcfg;
  std::vector<std::string> gen_constraints;
  std::string gen_anchor_mode;
  bool have_seed = false;
  std::uint64_t gen_seed = 0;
  gen->add_option("--config", gen_config_path,
                  "Generator config JSON (flags override its fields)");
  gen->add_option("--dimension,-n", gcfg.dimension, "Search-space dimension");
  gen->add_option("--peaks1", gcfg.peaks1, "Peaks of the first objective");
  gen->add_option("--peaks2", gcfg.peaks2, "Peaks of the second objective");
  gen->add_option("--kappa-min", gcfg.kappa_min, "Condition number lower end");
  gen->add_option("--kappa-max", gcfg.kappa_max, "Condition number upper end");
  gen->add_option("--constraint", gen_constraints,
                  "Constraint recipe entry: linear, quadratic, box, or "
                  "multipeak:linear,quadratic,... (repeatable)");
  gen->add_option("--anchor-mode", gen_anchor_mode, "anchor (default) or none");
  gen->add_option("--seed", gen_seed, "Random seed")
      ->each([&](const std::string&) { have_seed = true; });
  gen->add_option("--out", gen_out, "Output file (default: stdout)");

  // ---- evaluate ----
  auto* eval = app.add_subcommand("evaluate",
                                  "Evaluate objectives and constraints");
  CommonArgs eval_args;
  add_instance_option(eval, eval_args);
  std::string eval_x;
  eval->add_option("--x", eval_x, "Decision vector, comma separated")
      ->required();

  // ---- approx-ps ----
  auto* aps = app.add_subcommand(
      "approx-ps", "Compute the epsilon-spaced Pareto-set approximation");
  CommonArgs aps_args;
  add_instance_option(aps, aps_args);
  double aps_epsilon = 0.0;
  std::string aps_out, aps_summary;
  aps->add_option("--epsilon", aps_epsilon, "Target search-space spacing")
      ->required();
  aps->add_option("--out", aps_out, "Archive CSV output path")->required();
  aps->add_option("--summary", aps_summary,
                  "Summary JSON path (default: stdout)");

  // ---- ideal-nadir ----
  auto* in_cmd = app.add_subcommand("ideal-nadir",
                                    "Ideal and nadir objective vectors");
  CommonArgs in_args;
  add_instance_option(in_cmd, in_args);

  // ---- hv ----
  auto* hv = app.add_subcommand("hv",
                                "Hypervolume of an archive CSV w.r.t. a "
                                "reference point");
  std::string hv_points, hv_refpoint, hv_ref;
  hv->add_option("--points", hv_points, "Archive CSV (as written by approx-ps)")
      ->required();
  hv->add_option("--refpoint", hv_refpoint, "Reference point \"f1,f2\"")
      ->required();
  hv->add_option("--ref", hv_ref,
                 "Reference front CSV; adds its hypervolume and the gap");

  // ---- classify ----
  auto* cls = app.add_subcommand("classify",
                                 "Classify how the constraints reshape the "
                                 "front (types I-IV)");
  CommonArgs cls_args;
  add_instance_option(cls, cls_args);
  double cls_epsilon = 0.0;
  cls->add_option("--epsilon", cls_epsilon, "Approximation spacing")
      ->required();

  // ---- run-baseline ----
  auto* rb = app.add_subcommand("run-baseline",
                                "Run a baseline optimizer on an instance");
  CommonArgs rb_args;
  add_instance_option(rb, rb_args);
  std::string rb_algo = "random";
  std::size_t rb_budget = 10000;
  std::uint64_t rb_seed = 0;
  std::string rb_out, rb_trace, rb_ref;
  rb->add_option("--algo", rb_algo, "random or nsga2lite")
      ->check(CLI::IsMember({"random", "nsga2lite"}));
  rb->add_option("--budget", rb_budget, "Evaluation budget");
  rb->add_option("--seed", rb_seed, "Run seed");
  rb->add_option("--out", rb_out, "Final archive CSV path");
  rb->add_option("--trace", rb_trace, "Hypervolume trace CSV path");
  rb->add_option("--ref", rb_ref,
                 "Reference front CSV; enables the gap column in the trace");

  // ---- plot-data ----
  auto* pd = app.add_subcommand("plot-data",
                                "Dense evaluation grid for 2-d instances");
  CommonArgs pd_args;
  add_instance_option(pd, pd_args);
  int pd_grid = 401;
  std::string pd_out;
  pd->add_option("--grid", pd_grid, "Points per axis");
  pd->add_option("--out", pd_out, "Grid CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed()) {
    if (!gen_config_path.empty()) {
      std::ifstream in(gen_config_path);
      if (!in) {
        throw cobi::ValidationError("cannot open config file " +
                                    gen_config_path);
      }
      Json cj;
      try {
        cj = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw cobi::ValidationError(std::string("config: ") + e.what());
      }
      cobi::GeneratorConfig from_file = cobi::config_from_json(cj);
      // Flags given on the command line override config-file fields.
      if (!gen->count("--dimension")) gcfg.dimension = from_file.dimension;
      if (!gen->count("--peaks1")) gcfg.peaks1 = from_file.peaks1;
      if (!gen->count("--peaks2")) gcfg.peaks2 = from_file.peaks2;
      if (!gen->count("--kappa-min")) gcfg.kappa_min = from_file.kappa_min;
      if (!gen->count("--kappa-max")) gcfg.kappa_max = from_file.kappa_max;
      gcfg.center_lo = from_file.center_lo;
      gcfg.center_hi = from_file.center_hi;
      gcfg.offset_min = from_file.offset_min;
      gcfg.offset_max = from_file.offset_max;
      gcfg.outer1 = from_file.outer1;
      gcfg.outer2 = from_file.outer2;
      gcfg.inner1 = from_file.inner1;
      gcfg.inner2 = from_file.inner2;
      gcfg.constraint_transform = from_file.constraint_transform;
      gcfg.subproblem_budget = from_file.subproblem_budget;
      if (gen_constraints.empty()) gcfg.constraints = from_file.constraints;
      if (gen_anchor_mode.empty()) gcfg.anchor_mode = from_file.anchor_mode;
      if (!have_seed) gcfg.seed = from_file.seed;
    }
    for (const auto& spec : gen_constraints) {
      cobi::ConstraintRecipe r;
      const auto colon = spec.find(':');
      const std::string head = spec.substr(0, colon);
      if (head == "linear") {
        r.kind = cobi::ConstraintRecipe::Kind::Linear;
      } else if (head == "quadratic") {
        r.kind = cobi::ConstraintRecipe::Kind::Quadratic;
      } else if (head == "box") {
        r.kind = cobi::ConstraintRecipe::Kind::Box;
      } else if (head == "multipeak") {
        r.kind = cobi::ConstraintRecipe::Kind::Multipeak;
        if (colon == std::string::npos) {
          throw cobi::ValidationError(
              "multipeak constraint needs parts, e.g. "
              "multipeak:linear,quadratic");
        }
        std::stringstream ss(spec.substr(colon + 1));
        std::string part;
        while (std::getline(ss, part, ',')) {
          if (part == "linear") {
            r.parts.push_back(cobi::ConstraintRecipe::Kind::Linear);
          } else if (part == "quadratic") {
            r.parts.push_back(cobi::ConstraintRecipe::Kind::Quadratic);
          } else {
            throw cobi::ValidationError("unknown multipeak part \"" + part +
                                        "\"");
          }
        }
      } else {
        throw cobi::ValidationError("unknown constraint recipe \"" + spec +
                                    "\"");
      }
      gcfg.constraints.push_back(std::move(r));
    }
    if (!gen_anchor_mode.empty()) {
      if (gen_anchor_mode == "anchor") {
        gcfg.anchor_mode = true;
      } else if (gen_anchor_mode == "none") {
        gcfg.anchor_mode = false;
      } else {
        throw cobi::ValidationError("--anchor-mode must be anchor or none");
      }
    }
    if (have_seed) gcfg.seed = gen_seed;
    const cobi::CobiProblem prob = cobi::generate(gcfg);
    Json doc = cobi::save_instance(prob);
    doc["generator_config"] = cobi::config_to_json(gcfg);
    emit(doc, gen_out);
    std::cerr << "generated " << prob.instance_id() << "\n";
    return 0;
  }

  if (eval->parsed()) {
    const cobi::CobiProblem prob = load_problem(eval_args);
    const cobi::Vector x = parse_vector(eval_x);
    if (x.size() != prob.dimension()) {
      throw cobi::ValidationError(
          "--x has " + std::to_string(x.size()) + " components, instance has "
          "dimension " + std::to_string(prob.dimension()));
    }
    const cobi::Evaluation ev = prob.evaluate(x);
    Json j = Json::object();
    j["instance_id"] = prob.instance_id();
    j["f"] = pair_json(ev.f);
    j["f_raw"] = pair_json(ev.f_raw);
    j["g"] = ev.g;
    j["g_raw"] = ev.g_raw;
    j["total_violation"] = ev.total_violation;
    j["feasible"] = ev.feasible;
    emit(j, "");
    return 0;
  }

  if (aps->parsed()) {
    const cobi::CobiProblem prob = load_problem(aps_args);
    const cobi::ApproxPsReport report =
        cobi::approx_ps_report(prob, aps_epsilon);
    write_archive_csv(report.approximation.archive, aps_out);
    Json j = Json::object();
    j["instance_id"] = prob.instance_id();
    j["epsilon"] = report.approximation.epsilon;
    j["archive_size"] = report.approximation.archive.size();
    j["ideal"] = pair_json(report.approximation.ideal);
    j["nadir"] = pair_json(report.approximation.nadir);
    j["degenerate"] = report.approximation.degenerate;
    j["skipped_weights"] = report.skipped_weights;
    Json per_key = Json::array();
    for (const auto& pk : report.per_key) {
      per_key.push_back(Json{{"peak1", pk.key.peak_index_1},
                             {"peak2", pk.key.peak_index_2},
                             {"selection", pk.key.selection_index},
                             {"points", pk.points}});
    }
    j["per_key_points"] = std::move(per_key);
    emit(j, aps_summary);
    std::cerr << "archive written to " << aps_out << "\n";
    if (report.approximation.degenerate) {
      std::cerr << "warning: degenerate archive (anchor fallback)\n";
      return 2;
    }
    return 0;
  }

  if (in_cmd->parsed()) {
    const cobi::CobiProblem prob = load_problem(in_args);
    const cobi::IdealNadir result = cobi::ideal_nadir(prob);
    Json j = Json::object();
    j["instance_id"] = prob.instance_id();
    j["ideal"] = pair_json(result.ideal);
    j["nadir"] = pair_json(result.nadir);
    j["excluded_keys"] = result.excluded_keys;
    emit(j, "");
    return 0;
  }

  if (hv->parsed()) {
    std::ifstream in(hv_points);
    if (!in) throw cobi::ValidationError("cannot open " + hv_points);
    const cobi::BiArchive archive = cobi::read_archive_csv(in);
    const cobi::Vector rp = parse_vector(hv_refpoint);
    if (rp.size() != 2) {
      throw cobi::ValidationError("--refpoint needs exactly two components");
    }
    Json j = Json::object();
    j["points"] = archive.size();
    j["refpoint"] = Json{rp[0], rp[1]};
    const double hv_value = archive.hypervolume({rp[0], rp[1]});
    j["hypervolume"] = hv_value;
    if (!hv_ref.empty()) {
      std::ifstream rin(hv_ref);
      if (!rin) throw cobi::ValidationError("cannot open " + hv_ref);
      const cobi::BiArchive ref_archive = cobi::read_archive_csv(rin);
      const double ref_hv = ref_archive.hypervolume({rp[0], rp[1]});
      j["reference_hypervolume"] = ref_hv;
      j["gap"] = ref_hv - hv_value;
    }
    emit(j, "");
    return 0;
  }

  if (cls->parsed()) {
    const cobi::CobiProblem prob = load_problem(cls_args);
    cobi::CobiProblem unconstrained(
        prob.objective1(), prob.objective2(), cobi::ConstraintSet{},
        prob.objective1().peak(0).center, prob.seed(),
        prob.instance_id() + "-unconstrained", prob.name());
    const cobi::ParetoApproximation ups =
        cobi::approx_ps(unconstrained, cls_epsilon);
    const cobi::ParetoApproximation cps = cobi::approx_ps(prob, cls_epsilon);
    const double tol = std::max(1e-6, cls_epsilon);
    const cobi::ProblemType type = cobi::classify_type(prob, ups, cps, tol);
    Json j = Json::object();
    j["instance_id"] = prob.instance_id();
    j["epsilon"] = cls_epsilon;
    j["tolerance"] = tol;
    j["type"] = cobi::to_string(type);
    j["unconstrained_archive_size"] = ups.archive.size();
    j["constrained_archive_size"] = cps.archive.size();
    emit(j, "");
    return 0;
  }

  if (rb->parsed()) {
    const cobi::CobiProblem prob = load_problem(rb_args);
    cobi::BaselineOptions opt;
    opt.budget = rb_budget;
    opt.seed = rb_seed;
    const cobi::IdealNadir in = cobi::ideal_nadir(prob);
    opt.ref = in.nadir;
    const cobi::RunResult result = rb_algo == "random"
                                       ? cobi::run_random_search(prob, opt)
                                       : cobi::run_nsga2_lite(prob, opt);
    if (!rb_out.empty()) write_archive_csv(result.archive, rb_out);
    double ref_hv = std::numeric_limits<double>::quiet_NaN();
    if (!rb_ref.empty()) {
      std::ifstream rin(rb_ref);
      if (!rin) throw cobi::ValidationError("cannot open " + rb_ref);
      ref_hv = cobi::read_archive_csv(rin).hypervolume(in.nadir);
    }
    if (!rb_trace.empty()) {
      std::ofstream out(rb_trace);
      if (!out) throw cobi::Error("cannot open " + rb_trace + " for writing");
      out << "evals,hv,gap\n";
      char buf[160];
      for (const auto& tp : result.trace) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", tp.evaluations,
                      tp.hypervolume, ref_hv - tp.hypervolume);
        out << buf;
      }
    }
    Json j = Json::object();
    j["instance_id"] = prob.instance_id();
    j["algo"] = rb_algo;
    j["budget"] = rb_budget;
    j["seed"] = rb_seed;
    j["evaluations"] = result.evaluations;
    j["feasible_evaluations"] = result.feasible_evaluations;
    j["archive_size"] = result.archive.size();
    j["refpoint"] = pair_json(in.nadir);
    const double run_hv = result.archive.hypervolume(in.nadir);
    j["hypervolume"] = run_hv;
    if (!rb_ref.empty()) {
      j["reference_hypervolume"] = ref_hv;
      j["gap"] = ref_hv - run_hv;
    }
    emit(j, "");
    return 0;
  }

  if (pd->parsed()) {
    const cobi::CobiProblem prob = load_problem(pd_args);
    if (prob.dimension() != 2) {
      throw cobi::ValidationError("plot-data requires a 2-d instance");
    }
    if (pd_grid < 2) {
      throw cobi::ValidationError("--grid must be at least 2");
    }
    const auto [lo, hi] = prob.bounding_box();
    std::ofstream out(pd_out);
    if (!out) throw cobi::Error("cannot open " + pd_out + " for writing");
    out << "x1,x2,f1,f2";
    for (std::size_t k = 0; k < prob.constraints().size(); ++k) {
      out << ",g" << (k + 1);
    }
    out << ",total_violation,feasible\n";
    char buf[64];
    for (int i = 0; i < pd_grid; ++i) {
      for (int k = 0; k < pd_grid; ++k) {
        cobi::Vector x(2);
        x[0] = lo[0] + (hi[0] - lo[0]) * i / (pd_grid - 1);
        x[1] = lo[1] + (hi[1] - lo[1]) * k / (pd_grid - 1);
        const cobi::Evaluation ev = prob.evaluate(x);
        auto put = [&](double v, char sep) {
          std::snprintf(buf, sizeof(buf), "%.17g%c", v, sep);
          out << buf;
        };
        put(x[0], ',');
        put(x[1], ',');
        put(ev.f.f1, ',');
        put(ev.f.f2, ',');
        for (const double g : ev.g_raw) put(g, ',');
        put(ev.total_violation, ',');
        out << (ev.feasible ? 1 : 0) << "\n";
      }
    }
    std::cerr << "grid written to " << pd_out << "\n";
    return 0;
  }

  return 3;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cobi::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cobi::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
