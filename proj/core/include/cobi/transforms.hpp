#ifndef COBI_TRANSFORMS_HPP
#define COBI_TRANSFORMS_HPP

#include <string>

#include "cobi/types.hpp"

namespace cobi {

/// Strictly increasing transformation applied to objective values.
class MonotoneTransform {
 public:
  enum class Kind { Identity, Power, Log1pScale, Affine };

  static MonotoneTransform identity();
  /// u -> u^alpha, alpha > 0; domain u >= 0.
  static MonotoneTransform power(double alpha);
  /// u -> a * log(1 + u), a > 0; domain u > -1.
  static MonotoneTransform log1p_scale(double a);
  /// u -> slope * u + intercept, slope > 0.
  static MonotoneTransform affine(double slope, double intercept);

  double operator()(double u) const;

  Kind kind() const { return kind_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  bool is_identity() const { return kind_ == Kind::Identity; }
  /// Smallest admissible input (-inf when unrestricted).
  double domain_min() const;
  bool in_domain(double u) const;
  std::string describe() const;

 private:
  MonotoneTransform(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
};

/// Transformation with tau(x) > 0 iff x > 0, applied to constraint values.
class SignPreservingTransform {
 public:
  enum class Kind { Identity, PositiveScale, BinaryStep, SignedPower };

  static SignPreservingTransform identity();
  /// x -> gamma * x, gamma > 0.
  static SignPreservingTransform positive_scale(double gamma);
  /// x -> 1 if x > 0 else 0.
  static SignPreservingTransform binary_step();
  /// x -> sign(x) * |x|^beta, beta > 0.
  static SignPreservingTransform signed_power(double beta);

  double operator()(double x) const;

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  bool is_identity() const { return kind_ == Kind::Identity; }
  std::string describe() const;

 private:
  SignPreservingTransform(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

}  // namespace cobi

#endif  // COBI_TRANSFORMS_HPP
