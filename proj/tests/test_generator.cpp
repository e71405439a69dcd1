#include <cmath>
#include <functional>
#include <string>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "cobi/generator.hpp"
#include "cobi/pareto.hpp"

using namespace cobi;

namespace {

GeneratorConfig basic_config(std::uint64_t seed, Eigen::Index n = 2) {
  GeneratorConfig cfg;
  cfg.dimension = n;
  cfg.seed = seed;
  cfg.kappa_min = 1.0;
  cfg.kappa_max = 100.0;
  cfg.constraints.push_back({ConstraintRecipe::Kind::Linear, {}});
  cfg.constraints.push_back({ConstraintRecipe::Kind::Quadratic, {}});
  return cfg;
}

}  // namespace

TEST_CASE("generation is deterministic, byte for byte") {
  const GeneratorConfig cfg = basic_config(7, 5);
  const CobiProblem a = generate(cfg);
  const CobiProblem b = generate(cfg);
  CHECK(save_instance(a).dump(2) == save_instance(b).dump(2));
  // Different seeds give different instances.
  GeneratorConfig other = cfg;
  other.seed = 8;
  CHECK(save_instance(generate(other)).dump(2) != save_instance(a).dump(2));
}

TEST_CASE("unconstrained draws are Type I by construction") {
  GeneratorConfig cfg;
  cfg.dimension = 2;
  cfg.seed = 11;
  const CobiProblem prob = generate(cfg);
  CHECK(prob.constraints().size() == 0);
  const ParetoApproximation ps = approx_ps(prob, 0.05);
  CHECK(classify_type(prob, ps, ps, 0.05) == ProblemType::I);
}

TEST_CASE("anchor feasibility margin holds across seeds and recipes") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorConfig cfg = basic_config(seed, 3);
    cfg.constraints.push_back(
        {ConstraintRecipe::Kind::Multipeak,
         {ConstraintRecipe::Kind::Quadratic, ConstraintRecipe::Kind::Linear}});
    const CobiProblem prob = generate(cfg);
    const Evaluation ev = prob.evaluate(prob.anchor());
    CHECK(ev.feasible);
    for (std::size_t k = 0; k < prob.constraints().size(); ++k) {
      CHECK(prob.constraints().raw_value(k, prob.anchor()) <= -0.09);
    }
  }
}

TEST_CASE("hessian condition numbers respect the requested range") {
  GeneratorConfig cfg = basic_config(3, 4);
  cfg.kappa_min = 10.0;
  cfg.kappa_max = 1000.0;
  cfg.peaks1 = 2;
  const CobiProblem prob = generate(cfg);
  for (int oi = 0; oi < 2; ++oi) {
    const MultipeakObjective& obj = prob.objective(oi);
    for (std::size_t p = 0; p < obj.peak_count(); ++p) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(obj.peak(p).hessian.entries());
      const double kappa =
          es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
      CHECK(kappa >= cfg.kappa_min * (1 - 1e-6));
      CHECK(kappa <= cfg.kappa_max * (1 + 1e-6));
    }
  }
}

TEST_CASE("config validation rejects malformed requests") {
  GeneratorConfig bad_dim;
  bad_dim.dimension = 1;
  CHECK_THROWS_AS(bad_dim.validate(), ValidationError);

  GeneratorConfig bad_kappa;
  bad_kappa.kappa_min = 10.0;
  bad_kappa.kappa_max = 1.0;
  CHECK_THROWS_AS(bad_kappa.validate(), ValidationError);

  GeneratorConfig bad_peaks;
  bad_peaks.peaks1 = 0;
  CHECK_THROWS_AS(bad_peaks.validate(), ValidationError);

  GeneratorConfig bad_budget = basic_config(1);
  bad_budget.peaks1 = 50;
  bad_budget.peaks2 = 50;
  bad_budget.subproblem_budget = 100;
  CHECK_THROWS_AS(bad_budget.validate(), ValidationError);
}

TEST_CASE("config json round trip") {
  GeneratorConfig cfg = basic_config(5, 3);
  cfg.outer1 = MonotoneTransform::power(0.5);
  cfg.inner2 = MonotoneTransform::affine(2.0, 0.5);
  cfg.constraint_transform = SignPreservingTransform::positive_scale(3.0);
  cfg.peaks2 = 2;
  cfg.offset_max = 0.2;
  const Json j = config_to_json(cfg);
  const GeneratorConfig back = config_from_json(j);
  CHECK(config_to_json(back).dump(2) == j.dump(2));
  CHECK(back.dimension == cfg.dimension);
  CHECK(back.seed == cfg.seed);
  CHECK(back.constraints.size() == cfg.constraints.size());
}

TEST_CASE("instance documents survive save/load/save unchanged") {
  GeneratorConfig cfg = basic_config(13, 3);
  cfg.outer1 = MonotoneTransform::log1p_scale(2.0);
  cfg.peaks1 = 2;
  cfg.offset_max = 0.3;
  const CobiProblem prob = generate(cfg);
  const Json doc = save_instance(prob);
  const CobiProblem loaded = load_instance(doc);
  CHECK(save_instance(loaded).dump(2) == doc.dump(2));
  CHECK(loaded.instance_id() == prob.instance_id());
  CHECK(loaded.dimension() == prob.dimension());
  // Loaded problems evaluate identically.
  const Vector x = prob.anchor();
  CHECK(loaded.evaluate(x).f_raw.f1 == prob.evaluate(x).f_raw.f1);
  CHECK(loaded.evaluate(x).f_raw.f2 == prob.evaluate(x).f_raw.f2);
}

TEST_CASE("loading re-validates the document") {
  const CobiProblem prob = generate(basic_config(17));
  Json doc = save_instance(prob);

  Json negative_eig = doc;
  auto& h =
      negative_eig["objective1"]["peaks"][0]["hessian"];
  h[0][0] = -1.0;
  // Hex fields win on load, so both representations must be corrupted.
  negative_eig["objective1"]["peaks"][0]["hessian_hex"][0][0] = "-0x1p+0";
  CHECK_THROWS_AS(load_instance(negative_eig), ValidationError);

  Json bad_anchor = doc;
  bad_anchor["anchor"][0] = 1e6;
  bad_anchor["anchor_hex"][0] = "0x1.e848p+19";
  CHECK_THROWS_AS(load_instance(bad_anchor), ValidationError);

  Json bad_schema = doc;
  bad_schema["schema_version"] = 99;
  CHECK_THROWS_AS(load_instance(bad_schema), ValidationError);

  // Error messages name the offending field.
  try {
    load_instance(negative_eig);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("objective1") != std::string::npos);
  }
}

TEST_CASE("decimal-only documents load (hand-authored files)") {
  const CobiProblem prob = generate(basic_config(19));
  Json doc = save_instance(prob);
  // Strip every *_hex field recursively.
  std::function<void(Json&)> strip = [&](Json& node) {
    if (node.is_object()) {
      for (auto it = node.begin(); it != node.end();) {
        if (it.key().size() > 4 &&
            it.key().compare(it.key().size() - 4, 4, "_hex") == 0) {
          it = node.erase(it);
        } else {
          strip(it.value());
          ++it;
        }
      }
    } else if (node.is_array()) {
      for (auto& child : node) strip(child);
    }
  };
  strip(doc);
  const CobiProblem loaded = load_instance(doc);
  CHECK(loaded.dimension() == prob.dimension());
  CHECK(loaded.evaluate(prob.anchor()).feasible);
}

TEST_CASE("generated instances yield non-degenerate approximations") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorConfig cfg = basic_config(seed);
    const CobiProblem prob = generate(cfg);
    const ParetoApproximation ps = approx_ps(prob, 0.05);
    CHECK_FALSE(ps.degenerate);
    // A constraint can legitimately collapse the whole front onto a single
    // projected point, but the sweep must never come back empty.
    CHECK(ps.archive.size() >= 1);
  }
}

TEST_CASE("box recipes produce 2n half-spaces around the centers") {
  GeneratorConfig cfg;
  cfg.dimension = 3;
  cfg.seed = 23;
  cfg.constraints.push_back({ConstraintRecipe::Kind::Box, {}});
  const CobiProblem prob = generate(cfg);
  CHECK(prob.constraints().size() == 2 * 3);
  CHECK(prob.evaluate(prob.anchor()).feasible);
}
