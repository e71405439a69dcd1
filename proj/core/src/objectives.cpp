#include "cobi/objectives.hpp"

#include <limits>

namespace cobi {

QuadraticPeak::QuadraticPeak(Vector c, SpdMatrix h, double v,
                             MonotoneTransform inner)
    : center(std::move(c)),
      hessian(std::move(h)),
      offset(v),
      inner_transform(inner) {
  check_dimension(hessian.dimension(), center.size(), "QuadraticPeak");
  for (Eigen::Index i = 0; i < center.size(); ++i) {
    if (!std::isfinite(center[i])) {
      throw ValidationError("QuadraticPeak: center has non-finite entry");
    }
  }
}

double QuadraticPeak::quad_form(const Vector& x) const {
  check_dimension(x.size(), dimension(), "QuadraticPeak::quad_form");
  return 0.5 * hessian.quad(x - center);
}

double QuadraticPeak::raw_value(const Vector& x) const {
  return quad_form(x) + offset;
}

double QuadraticPeak::transformed_value(const Vector& x) const {
  return inner_transform(quad_form(x)) + offset;
}

MultipeakObjective::MultipeakObjective(std::vector<QuadraticPeak> peaks,
                                       MonotoneTransform outer)
    : peaks_(std::move(peaks)), outer_(outer) {
  if (peaks_.empty()) {
    throw ValidationError("MultipeakObjective: needs at least one peak");
  }
  const Eigen::Index n = peaks_[0].dimension();
  for (const auto& p : peaks_) {
    check_dimension(p.dimension(), n, "MultipeakObjective");
  }
  for (std::size_t i = 0; i < peaks_.size(); ++i) {
    for (std::size_t j = i + 1; j < peaks_.size(); ++j) {
      if ((peaks_[i].center - peaks_[j].center).norm() <= 1e-9) {
        throw ValidationError(
            "MultipeakObjective: peak centers " + std::to_string(i) + " and " +
            std::to_string(j) + " coincide");
      }
    }
  }
}

double MultipeakObjective::raw_value(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : peaks_) best = std::min(best, p.raw_value(x));
  return best;
}

double MultipeakObjective::transformed_value(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < peaks_.size(); ++i) {
    double v;
    try {
      v = peaks_[i].transformed_value(x);
    } catch (const ValidationError& e) {
      throw ValidationError("objective peak " + std::to_string(i) + ": " +
                            e.what());
    }
    best = std::min(best, v);
  }
  return outer_(best);
}

std::size_t MultipeakObjective::active_peak(const Vector& x) const {
  std::size_t best_i = 0;
  double best = peaks_[0].raw_value(x);
  for (std::size_t i = 1; i < peaks_.size(); ++i) {
    const double v = peaks_[i].raw_value(x);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  return best_i;
}

}  // namespace cobi
