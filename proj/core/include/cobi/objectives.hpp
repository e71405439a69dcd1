#ifndef COBI_OBJECTIVES_HPP
#define COBI_OBJECTIVES_HPP

#include <cstddef>
#include <vector>

#include "cobi/spd_matrix.hpp"
#include "cobi/transforms.hpp"
#include "cobi/types.hpp"

namespace cobi {

/// One strictly convex-quadratic component of a multipeak objective.
///
/// Raw value:          1/2 (x-c)^T H (x-c) + v
/// Transformed value:  inner(1/2 (x-c)^T H (x-c)) + v
///
/// The inner transform wraps only the quadratic form; the offset is added
/// afterwards so peak minima stay at v and power transforms always receive
/// nonnegative input.
struct QuadraticPeak {
  Vector center;
  SpdMatrix hessian;
  double offset = 0.0;
  MonotoneTransform inner_transform = MonotoneTransform::identity();

  QuadraticPeak(Vector c, SpdMatrix h, double v = 0.0,
                MonotoneTransform inner = MonotoneTransform::identity());

  Eigen::Index dimension() const { return center.size(); }

  /// Quadratic form only, no offset, no transform.
  double quad_form(const Vector& x) const;
  /// 1/2 (x-c)^T H (x-c) + v, ignoring the inner transform.
  double raw_value(const Vector& x) const;
  /// inner(quad form) + v.
  double transformed_value(const Vector& x) const;
};

/// min over peaks, optionally wrapped in a strictly increasing transform.
class MultipeakObjective {
 public:
  MultipeakObjective(std::vector<QuadraticPeak> peaks,
                     MonotoneTransform outer = MonotoneTransform::identity());

  Eigen::Index dimension() const { return peaks_[0].dimension(); }
  std::size_t peak_count() const { return peaks_.size(); }
  const QuadraticPeak& peak(std::size_t i) const { return peaks_[i]; }
  const std::vector<QuadraticPeak>& peaks() const { return peaks_; }
  const MonotoneTransform& outer_transform() const { return outer_; }

  /// min over raw peak values; the path used by all Pareto-set machinery.
  double raw_value(const Vector& x) const;
  /// outer(min over transformed peak values).
  double transformed_value(const Vector& x) const;
  double value(const Vector& x, bool apply_transforms) const {
    return apply_transforms ? transformed_value(x) : raw_value(x);
  }

  /// Index of a peak attaining the minimum raw value; ties -> lowest index.
  std::size_t active_peak(const Vector& x) const;

 private:
  std::vector<QuadraticPeak> peaks_;
  MonotoneTransform outer_;
};

}  // namespace cobi

#endif  // COBI_OBJECTIVES_HPP
