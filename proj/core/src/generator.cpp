#include "cobi/generator.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cobi/rng.hpp"

namespace cobi {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kAnchorMargin = 0.1;
constexpr int kMaxCenterRedraws = 10000;

// ---------------------------------------------------------------------------
// Lossless scalar encoding: decimal field plus parallel "<key>_hex" field.

std::string hex_of(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double parse_hex(const std::string& s, const std::string& where) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ValidationError("instance document: bad hex float in " + where +
                          ": \"" + s + "\"");
  }
  return v;
}

void put_scalar(Json& j, const std::string& key, double v) {
  j[key] = v;
  j[key + "_hex"] = hex_of(v);
}

const Json& require(const Json& j, const std::string& key,
                    const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError("instance document: missing field " + where + "." +
                          key);
  }
  return *it;
}

double get_scalar(const Json& j, const std::string& key,
                  const std::string& where) {
  double v;
  auto hex = j.find(key + "_hex");
  if (hex != j.end()) {
    if (!hex->is_string()) {
      throw ValidationError("instance document: " + where + "." + key +
                            "_hex must be a string");
    }
    v = parse_hex(hex->get<std::string>(), where + "." + key + "_hex");
  } else {
    const Json& d = require(j, key, where);
    if (!d.is_number()) {
      throw ValidationError("instance document: " + where + "." + key +
                            " must be a number");
    }
    v = d.get<double>();
  }
  if (!std::isfinite(v)) {
    throw ValidationError("instance document: " + where + "." + key +
                          " is not finite");
  }
  return v;
}

void put_vector(Json& j, const std::string& key, const Vector& v) {
  Json dec = Json::array();
  Json hex = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    dec.push_back(v[i]);
    hex.push_back(hex_of(v[i]));
  }
  j[key] = std::move(dec);
  j[key + "_hex"] = std::move(hex);
}

Vector get_vector(const Json& j, const std::string& key,
                  const std::string& where) {
  auto hex = j.find(key + "_hex");
  const bool use_hex = hex != j.end();
  const Json& arr = use_hex ? *hex : require(j, key, where);
  if (!arr.is_array() || arr.empty()) {
    throw ValidationError("instance document: " + where + "." + key +
                          " must be a non-empty array");
  }
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "." + key + "[" + std::to_string(i) + "]";
    if (use_hex) {
      if (!arr[i].is_string()) {
        throw ValidationError("instance document: " + at + " must be a string");
      }
      v[static_cast<Eigen::Index>(i)] = parse_hex(arr[i].get<std::string>(), at);
    } else {
      if (!arr[i].is_number()) {
        throw ValidationError("instance document: " + at + " must be a number");
      }
      v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    if (!std::isfinite(v[static_cast<Eigen::Index>(i)])) {
      throw ValidationError("instance document: " + at + " is not finite");
    }
  }
  return v;
}

void put_matrix(Json& j, const std::string& key, const Matrix& m) {
  Json dec = Json::array();
  Json hex = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json drow = Json::array();
    Json hrow = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      drow.push_back(m(r, c));
      hrow.push_back(hex_of(m(r, c)));
    }
    dec.push_back(std::move(drow));
    hex.push_back(std::move(hrow));
  }
  j[key] = std::move(dec);
  j[key + "_hex"] = std::move(hex);
}

Matrix get_matrix(const Json& j, const std::string& key,
                  const std::string& where) {
  auto hex = j.find(key + "_hex");
  const bool use_hex = hex != j.end();
  const Json& arr = use_hex ? *hex : require(j, key, where);
  if (!arr.is_array() || arr.empty()) {
    throw ValidationError("instance document: " + where + "." + key +
                          " must be a non-empty array of rows");
  }
  const std::size_t n = arr.size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!arr[r].is_array() || arr[r].size() != n) {
      throw ValidationError("instance document: " + where + "." + key +
                            " must be square");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const std::string at = where + "." + key + "[" + std::to_string(r) +
                             "][" + std::to_string(c) + "]";
      double v;
      if (use_hex) {
        if (!arr[r][c].is_string()) {
          throw ValidationError("instance document: " + at +
                                " must be a string");
        }
        v = parse_hex(arr[r][c].get<std::string>(), at);
      } else {
        if (!arr[r][c].is_number()) {
          throw ValidationError("instance document: " + at +
                                " must be a number");
        }
        v = arr[r][c].get<double>();
      }
      if (!std::isfinite(v)) {
        throw ValidationError("instance document: " + at + " is not finite");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return m;
}

std::string get_string(const Json& j, const std::string& key,
                       const std::string& where) {
  const Json& s = require(j, key, where);
  if (!s.is_string()) {
    throw ValidationError("instance document: " + where + "." + key +
                          " must be a string");
  }
  return s.get<std::string>();
}

// ---------------------------------------------------------------------------
// Transforms.

Json monotone_to_json(const MonotoneTransform& t) {
  Json j = Json::object();
  switch (t.kind()) {
    case MonotoneTransform::Kind::Identity:
      j["kind"] = "identity";
      break;
    case MonotoneTransform::Kind::Power:
      j["kind"] = "power";
      put_scalar(j, "alpha", t.param_a());
      break;
    case MonotoneTransform::Kind::Log1pScale:
      j["kind"] = "log1p_scale";
      put_scalar(j, "scale", t.param_a());
      break;
    case MonotoneTransform::Kind::Affine:
      j["kind"] = "affine";
      put_scalar(j, "slope", t.param_a());
      put_scalar(j, "intercept", t.param_b());
      break;
  }
  return j;
}

MonotoneTransform monotone_from_json(const Json& j, const std::string& where) {
  const std::string kind = get_string(j, "kind", where);
  if (kind == "identity") return MonotoneTransform::identity();
  if (kind == "power") {
    return MonotoneTransform::power(get_scalar(j, "alpha", where));
  }
  if (kind == "log1p_scale") {
    return MonotoneTransform::log1p_scale(get_scalar(j, "scale", where));
  }
  if (kind == "affine") {
    return MonotoneTransform::affine(get_scalar(j, "slope", where),
                                     get_scalar(j, "intercept", where));
  }
  throw ValidationError("instance document: unknown transform kind \"" + kind +
                        "\" in " + where);
}

Json sign_to_json(const SignPreservingTransform& t) {
  Json j = Json::object();
  switch (t.kind()) {
    case SignPreservingTransform::Kind::Identity:
      j["kind"] = "identity";
      break;
    case SignPreservingTransform::Kind::PositiveScale:
      j["kind"] = "positive_scale";
      put_scalar(j, "gamma", t.param());
      break;
    case SignPreservingTransform::Kind::BinaryStep:
      j["kind"] = "binary_step";
      break;
    case SignPreservingTransform::Kind::SignedPower:
      j["kind"] = "signed_power";
      put_scalar(j, "beta", t.param());
      break;
  }
  return j;
}

SignPreservingTransform sign_from_json(const Json& j,
                                       const std::string& where) {
  const std::string kind = get_string(j, "kind", where);
  if (kind == "identity") return SignPreservingTransform::identity();
  if (kind == "positive_scale") {
    return SignPreservingTransform::positive_scale(
        get_scalar(j, "gamma", where));
  }
  if (kind == "binary_step") return SignPreservingTransform::binary_step();
  if (kind == "signed_power") {
    return SignPreservingTransform::signed_power(get_scalar(j, "beta", where));
  }
  throw ValidationError("instance document: unknown transform kind \"" + kind +
                        "\" in " + where);
}

// ---------------------------------------------------------------------------
// Objectives / constraints <-> JSON.

Json peak_to_json(const QuadraticPeak& p) {
  Json j = Json::object();
  put_vector(j, "center", p.center);
  put_matrix(j, "hessian", p.hessian.entries());
  put_scalar(j, "offset", p.offset);
  j["inner"] = monotone_to_json(p.inner_transform);
  return j;
}

QuadraticPeak peak_from_json(const Json& j, const std::string& where) {
  const Vector c = get_vector(j, "center", where);
  const Matrix h = get_matrix(j, "hessian", where);
  const double v = get_scalar(j, "offset", where);
  MonotoneTransform inner = MonotoneTransform::identity();
  if (auto it = j.find("inner"); it != j.end()) {
    inner = monotone_from_json(*it, where + ".inner");
  }
  try {
    return QuadraticPeak(c, SpdMatrix(h), v, inner);
  } catch (const Error& e) {
    throw ValidationError("instance document: " + where + ": " + e.what());
  }
}

Json objective_to_json(const MultipeakObjective& f) {
  Json j = Json::object();
  j["outer"] = monotone_to_json(f.outer_transform());
  Json peaks = Json::array();
  for (const auto& p : f.peaks()) peaks.push_back(peak_to_json(p));
  j["peaks"] = std::move(peaks);
  return j;
}

MultipeakObjective objective_from_json(const Json& j,
                                       const std::string& where) {
  MonotoneTransform outer = MonotoneTransform::identity();
  if (auto it = j.find("outer"); it != j.end()) {
    outer = monotone_from_json(*it, where + ".outer");
  }
  const Json& arr = require(j, "peaks", where);
  if (!arr.is_array() || arr.empty()) {
    throw ValidationError("instance document: " + where +
                          ".peaks must be a non-empty array");
  }
  std::vector<QuadraticPeak> peaks;
  peaks.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    peaks.push_back(peak_from_json(
        arr[i], where + ".peaks[" + std::to_string(i) + "]"));
  }
  try {
    return MultipeakObjective(std::move(peaks), outer);
  } catch (const Error& e) {
    throw ValidationError("instance document: " + where + ": " + e.what());
  }
}

Json convex_to_json(const ConvexConstraint& c) {
  Json j = Json::object();
  if (const auto* lin = std::get_if<LinearConstraint>(&c)) {
    j["type"] = "linear";
    put_vector(j, "normal", lin->normal);
    put_scalar(j, "intercept", lin->intercept);
  } else {
    const auto& q = std::get<QuadraticConstraint>(c);
    j["type"] = "quadratic";
    put_vector(j, "center", q.center);
    put_matrix(j, "hessian", q.hessian.entries());
    put_scalar(j, "level", q.level);
  }
  return j;
}

ConvexConstraint convex_from_json(const Json& j, const std::string& where) {
  const std::string type = get_string(j, "type", where);
  try {
    if (type == "linear") {
      return LinearConstraint(get_vector(j, "normal", where),
                              get_scalar(j, "intercept", where));
    }
    if (type == "quadratic") {
      return QuadraticConstraint(get_vector(j, "center", where),
                                 SpdMatrix(get_matrix(j, "hessian", where)),
                                 get_scalar(j, "level", where));
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError("instance document: " + where + ": " + e.what());
  }
  throw ValidationError("instance document: unknown constraint type \"" + type +
                        "\" in " + where);
}

Json constraint_entry_to_json(const ConstraintSet::Entry& e) {
  Json j;
  if (const auto* mp = std::get_if<MultipeakConstraint>(&e.body)) {
    j = Json::object();
    j["type"] = "multipeak";
    Json parts = Json::array();
    for (const auto& [part, inner] : mp->parts) {
      Json pj = convex_to_json(part);
      pj["inner"] = sign_to_json(inner);
      parts.push_back(std::move(pj));
    }
    j["parts"] = std::move(parts);
  } else {
    j = convex_to_json(std::get<ConvexConstraint>(e.body));
  }
  j["outer"] = sign_to_json(e.outer);
  return j;
}

ConstraintSet::Entry constraint_entry_from_json(const Json& j,
                                                const std::string& where) {
  const std::string type = get_string(j, "type", where);
  SignPreservingTransform outer = SignPreservingTransform::identity();
  if (auto it = j.find("outer"); it != j.end()) {
    outer = sign_from_json(*it, where + ".outer");
  }
  if (type == "multipeak") {
    const Json& arr = require(j, "parts", where);
    if (!arr.is_array() || arr.empty()) {
      throw ValidationError("instance document: " + where +
                            ".parts must be a non-empty array");
    }
    std::vector<std::pair<ConvexConstraint, SignPreservingTransform>> parts;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string pw = where + ".parts[" + std::to_string(i) + "]";
      SignPreservingTransform inner = SignPreservingTransform::identity();
      if (auto it = arr[i].find("inner"); it != arr[i].end()) {
        inner = sign_from_json(*it, pw + ".inner");
      }
      parts.emplace_back(convex_from_json(arr[i], pw), inner);
    }
    return ConstraintSet::Entry{MultipeakConstraint(std::move(parts)), outer};
  }
  return ConstraintSet::Entry{convex_from_json(j, where), outer};
}

// ---------------------------------------------------------------------------
// Generation draws.

SpdMatrix draw_spd(Eigen::Index n, double kappa_min, double kappa_max,
                   Rng& rng) {
  double kappa = kappa_min;
  if (kappa_max > kappa_min) {
    kappa = std::exp(rng.uniform(std::log(kappa_min), std::log(kappa_max)));
  }
  Vector eigs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eigs[i] = n > 1 ? std::pow(kappa, static_cast<double>(i) /
                                          static_cast<double>(n - 1))
                    : 1.0;
  }
  const Matrix rot = random_rotation(n, rng);
  return SpdMatrix::from_spectrum(eigs, rot);
}

std::vector<Vector> draw_centers(const GeneratorConfig& cfg, std::size_t count,
                                 Rng& rng) {
  const double diameter = (cfg.center_hi - cfg.center_lo) *
                          std::sqrt(static_cast<double>(cfg.dimension));
  const double min_sep = 1e-6 * diameter;
  std::vector<Vector> centers;
  centers.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kMaxCenterRedraws) {
        throw NumericalError(
            "generate: could not draw pairwise-distinct peak centers");
      }
      Vector c = rng.uniform_vector(cfg.dimension, cfg.center_lo,
                                    cfg.center_hi);
      bool ok = true;
      for (const auto& prev : centers) {
        if ((c - prev).norm() < min_sep) {
          ok = false;
          break;
        }
      }
      if (ok) {
        centers.push_back(std::move(c));
        break;
      }
    }
  }
  return centers;
}

ConvexConstraint draw_convex(const GeneratorConfig& cfg,
                             ConstraintRecipe::Kind kind, Rng& rng) {
  const double diameter = (cfg.center_hi - cfg.center_lo) *
                          std::sqrt(static_cast<double>(cfg.dimension));
  if (kind == ConstraintRecipe::Kind::Linear) {
    // Unit normal from an isotropic Gaussian; the hyperplane passes through
    // a uniform point of the center box so it tends to cut the action.
    Vector a = rng.normal_vector(cfg.dimension);
    while (a.norm() < 1e-8) a = rng.normal_vector(cfg.dimension);
    a.normalize();
    const Vector p =
        rng.uniform_vector(cfg.dimension, cfg.center_lo, cfg.center_hi);
    return LinearConstraint(a, -a.dot(p));
  }
  // Quadratic: unit-determinant-free spectrum with the configured condition
  // range; radius between 10% and 50% of the box diameter.
  const Vector c =
      rng.uniform_vector(cfg.dimension, cfg.center_lo, cfg.center_hi);
  SpdMatrix h = draw_spd(cfg.dimension, cfg.kappa_min, cfg.kappa_max, rng);
  const double r = rng.uniform(0.1 * diameter, 0.5 * diameter);
  return QuadraticConstraint(c, std::move(h), 0.5 * r * r);
}

void make_anchor_feasible(ConvexConstraint& c, const Vector& anchor) {
  if (auto* lin = std::get_if<LinearConstraint>(&c)) {
    lin->intercept =
        std::min(lin->intercept, -kAnchorMargin - lin->normal.dot(anchor));
  } else {
    auto& q = std::get<QuadraticConstraint>(c);
    const Vector d = anchor - q.center;
    q.level = std::max(q.level, 0.5 * q.hessian.quad(d) + kAnchorMargin);
  }
}

// Raw gradient of constraint k at x (active part's gradient for multipeak).
Vector raw_constraint_gradient(const ConstraintSet::Entry& e, const Vector& x) {
  if (const auto* mp = std::get_if<MultipeakConstraint>(&e.body)) {
    std::size_t best = 0;
    double best_v = convex_value(mp->parts[0].first, x);
    for (std::size_t i = 1; i < mp->parts.size(); ++i) {
      const double v = convex_value(mp->parts[i].first, x);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    return convex_gradient(mp->parts[best].first, x);
  }
  return convex_gradient(std::get<ConvexConstraint>(e.body), x);
}

// Best-effort feasible point when no anchor is enforced by construction:
// multistart descent on the total raw violation.
Vector find_feasible_point(const GeneratorConfig& cfg,
                           const ConstraintSet& cons, Rng& rng) {
  std::vector<Vector> starts;
  starts.push_back(Vector::Constant(cfg.dimension,
                                    0.5 * (cfg.center_lo + cfg.center_hi)));
  for (std::size_t k = 0; k < cons.size(); ++k) {
    if (const auto* cc = std::get_if<ConvexConstraint>(&cons.entry(k).body)) {
      if (const auto* q = std::get_if<QuadraticConstraint>(cc)) {
        starts.push_back(q->center);
      }
    } else {
      const auto& mp = std::get<MultipeakConstraint>(cons.entry(k).body);
      for (const auto& [part, inner] : mp.parts) {
        if (const auto* q = std::get_if<QuadraticConstraint>(&part)) {
          starts.push_back(q->center);
        }
      }
    }
  }
  for (int i = 0; i < 256; ++i) {
    starts.push_back(
        rng.uniform_vector(cfg.dimension, cfg.center_lo, cfg.center_hi));
  }

  auto violation = [&](const Vector& x) {
    return cons.is_feasible(x).total_violation;
  };
  Vector best = starts[0];
  double best_v = violation(best);
  for (const auto& s : starts) {
    const double v = violation(s);
    if (v < best_v) {
      best_v = v;
      best = s;
    }
  }
  // Subgradient descent with backtracking on the sum of positive parts.
  Vector x = best;
  double fx = best_v;
  for (int it = 0; it < 500 && fx > 1e-10; ++it) {
    Vector grad = Vector::Zero(cfg.dimension);
    for (std::size_t k = 0; k < cons.size(); ++k) {
      if (cons.raw_value(k, x) > 0.0) {
        grad += raw_constraint_gradient(cons.entry(k), x);
      }
    }
    const double gn = grad.norm();
    if (gn < 1e-14) break;
    double step = fx / (gn * gn);  // Polyak step toward zero violation
    bool moved = false;
    for (int half = 0; half < 40; ++half) {
      const Vector trial = x - step * grad;
      const double ft = violation(trial);
      if (ft < fx) {
        x = trial;
        fx = ft;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  if (fx < best_v) {
    best = x;
    best_v = fx;
  }
  if (best_v > 1e-8) {
    throw NumericalError(
        "generate: no feasible point found for the drawn constraints; "
        "enable anchor mode or change the recipe");
  }
  return best;
}

std::size_t recipe_selection_count(const std::vector<ConstraintRecipe>& cs) {
  std::size_t n = 1;
  for (const auto& r : cs) {
    if (r.kind == ConstraintRecipe::Kind::Multipeak) n *= r.parts.size();
  }
  return n;
}

const char* recipe_kind_name(ConstraintRecipe::Kind k) {
  switch (k) {
    case ConstraintRecipe::Kind::Linear: return "linear";
    case ConstraintRecipe::Kind::Quadratic: return "quadratic";
    case ConstraintRecipe::Kind::Multipeak: return "multipeak";
    case ConstraintRecipe::Kind::Box: return "box";
  }
  return "?";
}

ConstraintRecipe::Kind recipe_kind_from_name(const std::string& s,
                                             const std::string& where) {
  if (s == "linear") return ConstraintRecipe::Kind::Linear;
  if (s == "quadratic") return ConstraintRecipe::Kind::Quadratic;
  if (s == "multipeak") return ConstraintRecipe::Kind::Multipeak;
  if (s == "box") return ConstraintRecipe::Kind::Box;
  throw ValidationError("config: unknown constraint kind \"" + s + "\" in " +
                        where);
}

}  // namespace

void GeneratorConfig::validate() const {
  if (dimension < 2) {
    throw ValidationError("config: dimension must be >= 2");
  }
  if (peaks1 < 1 || peaks2 < 1) {
    throw ValidationError("config: each objective needs at least one peak");
  }
  if (!(kappa_min >= 1.0) || !(kappa_max >= kappa_min) ||
      !(kappa_max <= 1e6)) {
    throw ValidationError(
        "config: condition range must satisfy 1 <= kappa_min <= kappa_max <= "
        "1e6");
  }
  if (!(center_lo < center_hi)) {
    throw ValidationError("config: center box must have center_lo < center_hi");
  }
  if (!(offset_min >= 0.0) || !(offset_max >= offset_min)) {
    throw ValidationError(
        "config: offsets must satisfy 0 <= offset_min <= offset_max");
  }
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& r = constraints[k];
    if (r.kind == ConstraintRecipe::Kind::Multipeak) {
      if (r.parts.empty()) {
        throw ValidationError("config: constraints[" + std::to_string(k) +
                              "]: multipeak needs at least one part");
      }
      for (const auto p : r.parts) {
        if (p != ConstraintRecipe::Kind::Linear &&
            p != ConstraintRecipe::Kind::Quadratic) {
          throw ValidationError("config: constraints[" + std::to_string(k) +
                                "]: multipeak parts must be linear or "
                                "quadratic");
        }
      }
    } else if (!r.parts.empty()) {
      throw ValidationError("config: constraints[" + std::to_string(k) +
                            "]: only multipeak constraints take parts");
    }
  }
  const std::size_t subproblems =
      peaks1 * peaks2 * recipe_selection_count(constraints);
  if (subproblems > subproblem_budget) {
    throw ValidationError(
        "config: " + std::to_string(subproblems) +
        " convex subproblems exceed the budget of " +
        std::to_string(subproblem_budget));
  }
}

CobiProblem generate(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  // 1-2. Peak centers, f1 then f2 (pairwise distinct within an objective).
  const std::vector<Vector> centers1 = draw_centers(cfg, cfg.peaks1, rng);
  const std::vector<Vector> centers2 = draw_centers(cfg, cfg.peaks2, rng);

  // 3-4. Spectra and rotations (interleaved per peak), f1 then f2.
  std::vector<SpdMatrix> hess1, hess2;
  for (std::size_t i = 0; i < cfg.peaks1; ++i) {
    hess1.push_back(draw_spd(cfg.dimension, cfg.kappa_min, cfg.kappa_max, rng));
  }
  for (std::size_t i = 0; i < cfg.peaks2; ++i) {
    hess2.push_back(draw_spd(cfg.dimension, cfg.kappa_min, cfg.kappa_max, rng));
  }

  // 5. Offsets, f1 then f2.
  auto draw_offset = [&] {
    return cfg.offset_max > cfg.offset_min
               ? rng.uniform(cfg.offset_min, cfg.offset_max)
               : cfg.offset_min;
  };
  std::vector<QuadraticPeak> peaks1, peaks2;
  for (std::size_t i = 0; i < cfg.peaks1; ++i) {
    peaks1.emplace_back(centers1[i], hess1[i], draw_offset(), cfg.inner1);
  }
  for (std::size_t i = 0; i < cfg.peaks2; ++i) {
    peaks2.emplace_back(centers2[i], hess2[i], draw_offset(), cfg.inner2);
  }

  // 6. Constraints in recipe order.
  struct DrawnEntry {
    ConstraintRecipe::Kind kind;
    std::vector<ConvexConstraint> parts;  // singleton except for multipeak/box
  };
  std::vector<DrawnEntry> drawn;
  for (const auto& r : cfg.constraints) {
    DrawnEntry e{r.kind, {}};
    switch (r.kind) {
      case ConstraintRecipe::Kind::Linear:
      case ConstraintRecipe::Kind::Quadratic:
        e.parts.push_back(draw_convex(cfg, r.kind, rng));
        break;
      case ConstraintRecipe::Kind::Multipeak:
        for (const auto p : r.parts) {
          e.parts.push_back(draw_convex(cfg, p, rng));
        }
        break;
      case ConstraintRecipe::Kind::Box: {
        // Shorthand: the center box itself, as 2n half-spaces.
        for (Eigen::Index i = 0; i < cfg.dimension; ++i) {
          Vector up = Vector::Zero(cfg.dimension);
          up[i] = 1.0;
          e.parts.push_back(LinearConstraint(up, -cfg.center_hi));
          e.parts.push_back(LinearConstraint(-up, cfg.center_lo));
        }
        break;
      }
    }
    drawn.push_back(std::move(e));
  }

  // 7. Anchor: drawn uniformly, then the constraints are shifted so it is
  // strictly feasible with margin (multipeak: the first part is shifted).
  Vector anchor;
  if (cfg.anchor_mode) {
    anchor = rng.uniform_vector(cfg.dimension, cfg.center_lo, cfg.center_hi);
    for (auto& e : drawn) {
      if (e.kind == ConstraintRecipe::Kind::Multipeak) {
        make_anchor_feasible(e.parts[0], anchor);
      } else {
        for (auto& part : e.parts) make_anchor_feasible(part, anchor);
      }
    }
  }

  std::vector<ConstraintSet::Entry> entries;
  for (auto& e : drawn) {
    if (e.kind == ConstraintRecipe::Kind::Multipeak) {
      std::vector<std::pair<ConvexConstraint, SignPreservingTransform>> parts;
      for (auto& p : e.parts) {
        parts.emplace_back(std::move(p), SignPreservingTransform::identity());
      }
      entries.push_back({MultipeakConstraint(std::move(parts)),
                         cfg.constraint_transform});
    } else {
      // Box expands into independent single half-spaces.
      for (auto& p : e.parts) {
        entries.push_back({std::move(p), cfg.constraint_transform});
      }
    }
  }
  ConstraintSet cons(std::move(entries));

  if (!cfg.anchor_mode) {
    anchor = cons.empty()
                 ? Vector::Constant(cfg.dimension,
                                    0.5 * (cfg.center_lo + cfg.center_hi))
                 : find_feasible_point(cfg, cons, rng);
  }

  std::ostringstream id;
  id << "cobi-n" << cfg.dimension << "-p" << cfg.peaks1 << "x" << cfg.peaks2
     << "-c" << cons.size() << "-s" << cfg.seed;
  return CobiProblem(MultipeakObjective(std::move(peaks1), cfg.outer1),
                     MultipeakObjective(std::move(peaks2), cfg.outer2),
                     std::move(cons), std::move(anchor), cfg.seed, id.str(),
                     id.str());
}

Json config_to_json(const GeneratorConfig& cfg) {
  Json j = Json::object();
  j["dimension"] = cfg.dimension;
  j["peaks1"] = cfg.peaks1;
  j["peaks2"] = cfg.peaks2;
  Json cs = Json::array();
  for (const auto& r : cfg.constraints) {
    Json rj = Json::object();
    rj["kind"] = recipe_kind_name(r.kind);
    if (r.kind == ConstraintRecipe::Kind::Multipeak) {
      Json parts = Json::array();
      for (const auto p : r.parts) parts.push_back(recipe_kind_name(p));
      rj["parts"] = std::move(parts);
    }
    cs.push_back(std::move(rj));
  }
  j["constraints"] = std::move(cs);
  put_scalar(j, "kappa_min", cfg.kappa_min);
  put_scalar(j, "kappa_max", cfg.kappa_max);
  put_scalar(j, "center_lo", cfg.center_lo);
  put_scalar(j, "center_hi", cfg.center_hi);
  put_scalar(j, "offset_min", cfg.offset_min);
  put_scalar(j, "offset_max", cfg.offset_max);
  j["outer1"] = monotone_to_json(cfg.outer1);
  j["outer2"] = monotone_to_json(cfg.outer2);
  j["inner1"] = monotone_to_json(cfg.inner1);
  j["inner2"] = monotone_to_json(cfg.inner2);
  j["constraint_transform"] = sign_to_json(cfg.constraint_transform);
  j["anchor_mode"] = cfg.anchor_mode ? "anchor" : "none";
  j["seed"] = cfg.seed;
  j["subproblem_budget"] = cfg.subproblem_budget;
  return j;
}

GeneratorConfig config_from_json(const Json& j) {
  GeneratorConfig cfg;
  auto get_int = [&](const char* key, auto fallback) ->
      decltype(fallback) {
        auto it = j.find(key);
        if (it == j.end()) return fallback;
        if (!it->is_number_integer() && !it->is_number_unsigned()) {
          throw ValidationError(std::string("config: ") + key +
                                " must be an integer");
        }
        return it->get<decltype(fallback)>();
      };
  cfg.dimension = get_int("dimension", cfg.dimension);
  cfg.peaks1 = get_int("peaks1", cfg.peaks1);
  cfg.peaks2 = get_int("peaks2", cfg.peaks2);
  if (auto it = j.find("constraints"); it != j.end()) {
    if (!it->is_array()) {
      throw ValidationError("config: constraints must be an array");
    }
    for (std::size_t k = 0; k < it->size(); ++k) {
      const Json& rj = (*it)[k];
      const std::string where = "constraints[" + std::to_string(k) + "]";
      ConstraintRecipe r;
      r.kind = recipe_kind_from_name(get_string(rj, "kind", where), where);
      if (auto pit = rj.find("parts"); pit != rj.end()) {
        if (!pit->is_array()) {
          throw ValidationError("config: " + where + ".parts must be an array");
        }
        for (const auto& p : *pit) {
          if (!p.is_string()) {
            throw ValidationError("config: " + where +
                                  ".parts entries must be strings");
          }
          r.parts.push_back(
              recipe_kind_from_name(p.get<std::string>(), where + ".parts"));
        }
      }
      cfg.constraints.push_back(std::move(r));
    }
  }
  auto get_opt = [&](const char* key, double fallback) {
    return j.contains(key) || j.contains(std::string(key) + "_hex")
               ? get_scalar(j, key, "config")
               : fallback;
  };
  cfg.kappa_min = get_opt("kappa_min", cfg.kappa_min);
  cfg.kappa_max = get_opt("kappa_max", cfg.kappa_max);
  cfg.center_lo = get_opt("center_lo", cfg.center_lo);
  cfg.center_hi = get_opt("center_hi", cfg.center_hi);
  cfg.offset_min = get_opt("offset_min", cfg.offset_min);
  cfg.offset_max = get_opt("offset_max", cfg.offset_max);
  if (auto it = j.find("outer1"); it != j.end())
    cfg.outer1 = monotone_from_json(*it, "config.outer1");
  if (auto it = j.find("outer2"); it != j.end())
    cfg.outer2 = monotone_from_json(*it, "config.outer2");
  if (auto it = j.find("inner1"); it != j.end())
    cfg.inner1 = monotone_from_json(*it, "config.inner1");
  if (auto it = j.find("inner2"); it != j.end())
    cfg.inner2 = monotone_from_json(*it, "config.inner2");
  if (auto it = j.find("constraint_transform"); it != j.end())
    cfg.constraint_transform = sign_from_json(*it, "config.constraint_transform");
  if (auto it = j.find("anchor_mode"); it != j.end()) {
    if (it->is_boolean()) {
      cfg.anchor_mode = it->get<bool>();
    } else if (it->is_string()) {
      const std::string m = it->get<std::string>();
      if (m == "anchor") {
        cfg.anchor_mode = true;
      } else if (m == "none") {
        cfg.anchor_mode = false;
      } else {
        throw ValidationError("config: anchor_mode must be \"anchor\" or "
                              "\"none\"");
      }
    } else {
      throw ValidationError("config: anchor_mode must be a string or bool");
    }
  }
  cfg.seed = get_int("seed", cfg.seed);
  cfg.subproblem_budget = get_int("subproblem_budget", cfg.subproblem_budget);
  cfg.validate();
  return cfg;
}

Json save_instance(const CobiProblem& prob) {
  Json doc = Json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["instance_id"] = prob.instance_id();
  doc["name"] = prob.name();
  doc["seed"] = prob.seed();
  doc["dimension"] = prob.dimension();
  doc["objective1"] = objective_to_json(prob.objective1());
  doc["objective2"] = objective_to_json(prob.objective2());
  Json cs = Json::array();
  for (std::size_t k = 0; k < prob.constraints().size(); ++k) {
    cs.push_back(constraint_entry_to_json(prob.constraints().entry(k)));
  }
  doc["constraints"] = std::move(cs);
  put_vector(doc, "anchor", prob.anchor());
  return doc;
}

CobiProblem load_instance(const Json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("instance document: root must be an object");
  }
  const Json& sv = require(doc, "schema_version", "$");
  if (!sv.is_number_integer() || sv.get<int>() != kSchemaVersion) {
    throw ValidationError(
        "instance document: unsupported schema_version (expected " +
        std::to_string(kSchemaVersion) + ")");
  }
  const std::string id =
      doc.contains("instance_id") ? get_string(doc, "instance_id", "$") : "";
  const std::string name =
      doc.contains("name") ? get_string(doc, "name", "$") : id;
  std::uint64_t seed = 0;
  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      throw ValidationError("instance document: seed must be an integer");
    }
    seed = it->get<std::uint64_t>();
  }
  MultipeakObjective f1 =
      objective_from_json(require(doc, "objective1", "$"), "objective1");
  MultipeakObjective f2 =
      objective_from_json(require(doc, "objective2", "$"), "objective2");
  std::vector<ConstraintSet::Entry> entries;
  if (auto it = doc.find("constraints"); it != doc.end()) {
    if (!it->is_array()) {
      throw ValidationError("instance document: constraints must be an array");
    }
    for (std::size_t k = 0; k < it->size(); ++k) {
      entries.push_back(constraint_entry_from_json(
          (*it)[k], "constraints[" + std::to_string(k) + "]"));
    }
  }
  const Vector anchor = get_vector(doc, "anchor", "$");
  if (const Eigen::Index n = f1.dimension();
      f2.dimension() != n || anchor.size() != n) {
    throw ValidationError(
        "instance document: objective and anchor dimensions disagree");
  }
  try {
    return CobiProblem(std::move(f1), std::move(f2),
                       ConstraintSet(std::move(entries)), anchor, seed, id,
                       name);
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(std::string("instance document: ") + e.what());
  }
}

void save_instance_file(const CobiProblem& prob, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << save_instance(prob).dump(2) << "\n";
  if (!out) throw Error("failed writing " + path);
}

CobiProblem load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("instance document " + path + ": " + e.what());
  }
  return load_instance(doc);
}

}  // namespace cobi
