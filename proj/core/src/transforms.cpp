#include "cobi/transforms.hpp"

#include <cmath>
#include <limits>

namespace cobi {

MonotoneTransform MonotoneTransform::identity() {
  return {Kind::Identity, 0.0, 0.0};
}

MonotoneTransform MonotoneTransform::power(double alpha) {
  if (!(alpha > 0.0)) {
    throw ValidationError("MonotoneTransform::power: alpha must be > 0");
  }
  return {Kind::Power, alpha, 0.0};
}

MonotoneTransform MonotoneTransform::log1p_scale(double a) {
  if (!(a > 0.0)) {
    throw ValidationError("MonotoneTransform::log1p_scale: scale must be > 0");
  }
  return {Kind::Log1pScale, a, 0.0};
}

MonotoneTransform MonotoneTransform::affine(double slope, double intercept) {
  if (!(slope > 0.0)) {
    throw ValidationError("MonotoneTransform::affine: slope must be > 0");
  }
  return {Kind::Affine, slope, intercept};
}

double MonotoneTransform::domain_min() const {
  switch (kind_) {
    case Kind::Power:
      return 0.0;
    case Kind::Log1pScale:
      return std::nextafter(-1.0, 0.0);
    default:
      return -std::numeric_limits<double>::infinity();
  }
}

bool MonotoneTransform::in_domain(double u) const {
  return u >= domain_min();
}

double MonotoneTransform::operator()(double u) const {
  switch (kind_) {
    case Kind::Identity:
      return u;
    case Kind::Power:
      if (u < 0.0) {
        throw ValidationError(
            "MonotoneTransform: power transform received negative input " +
            std::to_string(u));
      }
      return std::pow(u, a_);
    case Kind::Log1pScale:
      if (!(u > -1.0)) {
        throw ValidationError(
            "MonotoneTransform: log1p transform received input <= -1");
      }
      return a_ * std::log1p(u);
    case Kind::Affine:
      return a_ * u + b_;
  }
  return u;  // unreachable
}

std::string MonotoneTransform::describe() const {
  switch (kind_) {
    case Kind::Identity:
      return "identity";
    case Kind::Power:
      return "power(" + std::to_string(a_) + ")";
    case Kind::Log1pScale:
      return "log1p_scale(" + std::to_string(a_) + ")";
    case Kind::Affine:
      return "affine(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
  }
  return "?";
}

SignPreservingTransform SignPreservingTransform::identity() {
  return {Kind::Identity, 0.0};
}

SignPreservingTransform SignPreservingTransform::positive_scale(double gamma) {
  if (!(gamma > 0.0)) {
    throw ValidationError(
        "SignPreservingTransform::positive_scale: gamma must be > 0");
  }
  return {Kind::PositiveScale, gamma};
}

SignPreservingTransform SignPreservingTransform::binary_step() {
  return {Kind::BinaryStep, 0.0};
}

SignPreservingTransform SignPreservingTransform::signed_power(double beta) {
  if (!(beta > 0.0)) {
    throw ValidationError(
        "SignPreservingTransform::signed_power: beta must be > 0");
  }
  return {Kind::SignedPower, beta};
}

double SignPreservingTransform::operator()(double x) const {
  switch (kind_) {
    case Kind::Identity:
      return x;
    case Kind::PositiveScale:
      return param_ * x;
    case Kind::BinaryStep:
      return x > 0.0 ? 1.0 : 0.0;
    case Kind::SignedPower: {
      const double m = std::pow(std::abs(x), param_);
      return x < 0.0 ? -m : (x > 0.0 ? m : 0.0);
    }
  }
  return x;  // unreachable
}

std::string SignPreservingTransform::describe() const {
  switch (kind_) {
    case Kind::Identity:
      return "identity";
    case Kind::PositiveScale:
      return "positive_scale(" + std::to_string(param_) + ")";
    case Kind::BinaryStep:
      return "binary_step";
    case Kind::SignedPower:
      return "signed_power(" + std::to_string(param_) + ")";
  }
  return "?";
}

}  // namespace cobi
