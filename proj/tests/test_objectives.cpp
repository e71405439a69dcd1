#include <cmath>

#include <doctest.h>

#include "cobi/objectives.hpp"
#include "cobi/rng.hpp"

using namespace cobi;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

QuadraticPeak sphere_peak(double cx, double cy, double v = 0.0,
                          MonotoneTransform inner = MonotoneTransform::identity()) {
  return QuadraticPeak(vec2(cx, cy), SpdMatrix::identity(2), v, inner);
}

}  // namespace

TEST_CASE("quadratic peak raw values") {
  const QuadraticPeak origin = sphere_peak(0, 0);
  CHECK(origin.raw_value(vec2(0, 0)) == 0.0);
  CHECK(origin.raw_value(vec2(3, 4)) == doctest::Approx(12.5).epsilon(1e-14));

  Matrix d(2, 2);
  d << 4, 0, 0, 1;
  const QuadraticPeak aniso(vec2(1, 1), SpdMatrix{d}, 0.1);
  CHECK(aniso.raw_value(vec2(0, 0)) == doctest::Approx(2.6).epsilon(1e-14));
}

TEST_CASE("multipeak objective values with and without transforms") {
  MultipeakObjective two({sphere_peak(0, 0), sphere_peak(2, 0, 0.1)});
  CHECK(two.raw_value(vec2(2, 0)) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(two.value(vec2(2, 0), false) == doctest::Approx(0.1).epsilon(1e-14));

  MultipeakObjective sqrt_obj({sphere_peak(0, 0)},
                              MonotoneTransform::power(0.5));
  CHECK(sqrt_obj.transformed_value(vec2(3, 4)) ==
        doctest::Approx(std::sqrt(12.5)).epsilon(1e-14));
  CHECK(sqrt_obj.transformed_value(vec2(0, 0)) == 0.0);
}

TEST_CASE("active peak selection and tie-breaking") {
  MultipeakObjective two({sphere_peak(0, 0), sphere_peak(2, 0)});
  CHECK(two.active_peak(vec2(2, 0)) == 1);
  CHECK(two.active_peak(vec2(0, 0)) == 0);
  CHECK(two.active_peak(vec2(1, 0)) == 0);  // exact tie -> lowest index
}

TEST_CASE("multipeak construction invariants") {
  CHECK_THROWS_AS(MultipeakObjective({}), ValidationError);
  CHECK_THROWS_AS(MultipeakObjective({sphere_peak(1, 1), sphere_peak(1, 1)}),
                  ValidationError);
}

TEST_CASE("raw value equals the exact minimum over peaks") {
  MultipeakObjective obj({sphere_peak(0, 0, 0.3), sphere_peak(1.5, -1, 0.0),
                          sphere_peak(-2, 2, 1.0)});
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = rng.uniform_vector(2, -4, 4);
    double expected = obj.peak(0).raw_value(x);
    for (std::size_t p = 1; p < obj.peak_count(); ++p) {
      expected = std::min(expected, obj.peak(p).raw_value(x));
    }
    CHECK(obj.raw_value(x) == expected);
  }
}

TEST_CASE("transforms preserve the pairwise order of objective values") {
  const MonotoneTransform outers[] = {
      MonotoneTransform::power(0.5), MonotoneTransform::power(2.0),
      MonotoneTransform::log1p_scale(2.0), MonotoneTransform::affine(3.0, 1.0)};
  Rng rng(10);
  for (const auto& outer : outers) {
    MultipeakObjective raw({sphere_peak(0, 0, 0.2), sphere_peak(2, 1, 0.0)});
    MultipeakObjective transformed(
        {sphere_peak(0, 0, 0.2), sphere_peak(2, 1, 0.0)}, outer);
    for (int i = 0; i < 1000; ++i) {
      const Vector x = rng.uniform_vector(2, -3, 3);
      const Vector y = rng.uniform_vector(2, -3, 3);
      const double raw_diff = raw.raw_value(x) - raw.raw_value(y);
      const double t_diff =
          transformed.transformed_value(x) - transformed.transformed_value(y);
      if (raw_diff == 0.0) {
        CHECK(t_diff == 0.0);
      } else {
        CHECK(std::signbit(raw_diff) == std::signbit(t_diff));
      }
    }
  }
}

TEST_CASE("coercivity: far-away values exceed every peak-center value") {
  MultipeakObjective obj({sphere_peak(0, 0, 0.5), sphere_peak(3, 1, 0.0)});
  double worst_center = 0.0;
  for (std::size_t p = 0; p < obj.peak_count(); ++p) {
    worst_center = std::max(worst_center, obj.raw_value(obj.peak(p).center));
  }
  const double r = 100.0;
  for (int k = 0; k < 32; ++k) {
    const double a = 2.0 * M_PI * k / 32.0;
    CHECK(obj.raw_value(vec2(r * std::cos(a), r * std::sin(a))) >
          worst_center);
  }
}

TEST_CASE("transform domain violations surface as validation errors") {
  // An affine inner transform can push values below zero before an outer
  // power transform sees them.
  MultipeakObjective obj({sphere_peak(0, 0, 0.0,
                                      MonotoneTransform::affine(1.0, -5.0))},
                         MonotoneTransform::power(0.5));
  CHECK_THROWS_AS(obj.transformed_value(vec2(0, 0)), ValidationError);
  CHECK(obj.raw_value(vec2(0, 0)) == 0.0);  // raw path unaffected
}
