#ifndef COBI_GENERATOR_HPP
#define COBI_GENERATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cobi/problem.hpp"

namespace cobi {

using Json = nlohmann::ordered_json;

/// Recipe for one constraint slot.
struct ConstraintRecipe {
  enum class Kind { Linear, Quadratic, Multipeak, Box };
  Kind kind = Kind::Linear;
  /// For Multipeak: the part kinds (Linear/Quadratic only).
  std::vector<Kind> parts;
};

struct GeneratorConfig {
  Eigen::Index dimension = 2;
  std::size_t peaks1 = 1;
  std::size_t peaks2 = 1;
  std::vector<ConstraintRecipe> constraints;
  double kappa_min = 1.0;
  double kappa_max = 1.0;
  double center_lo = -5.0;
  double center_hi = 5.0;
  double offset_min = 0.0;
  double offset_max = 0.0;
  MonotoneTransform outer1 = MonotoneTransform::identity();
  MonotoneTransform outer2 = MonotoneTransform::identity();
  MonotoneTransform inner1 = MonotoneTransform::identity();
  MonotoneTransform inner2 = MonotoneTransform::identity();
  SignPreservingTransform constraint_transform =
      SignPreservingTransform::identity();
  bool anchor_mode = true;
  std::uint64_t seed = 0;
  std::size_t subproblem_budget = 10000;

  void validate() const;  // throws ValidationError
};

/// Deterministic in (config, seed).  Draw order: f1 centers, f2 centers,
/// spectra, rotations, offsets, constraints (recipe order), anchor.
CobiProblem generate(const GeneratorConfig& config);

Json config_to_json(const GeneratorConfig& config);
GeneratorConfig config_from_json(const Json& j);

/// Instance documents: schema-versioned JSON with every float carried both
/// as shortest-round-trip decimal and as a parallel hexadecimal-float field
/// (bit-exact).  Loading re-validates all invariants.
Json save_instance(const CobiProblem& prob);
CobiProblem load_instance(const Json& doc);

void save_instance_file(const CobiProblem& prob, const std::string& path);
CobiProblem load_instance_file(const std::string& path);

}  // namespace cobi

#endif  // COBI_GENERATOR_HPP
