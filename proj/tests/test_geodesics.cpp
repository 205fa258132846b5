#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "shapeflow/benchmarks.hpp"
#include "shapeflow/error.hpp"
#include "shapeflow/shape_geodesics.hpp"
#include "shapeflow/spectral.hpp"

using namespace shapeflow;

namespace {

double closed_form_radius(double r0, double rdot0, double t) {
  return std::pow(std::pow(r0, 1.5) + 1.5 * std::sqrt(r0) * rdot0 * t, 2.0 / 3.0);
}

double mean_radius(const DiscreteCurve& f) { return curve_frame(f).volume / (2 * std::numbers::pi); }

GeodesicState normal_start(const DiscreteCurve& f, const Eigen::VectorXd& a) {
  const Eigen::MatrixXd n = left_normal(curve_frame(f));
  return {f, FieldAlongCurve(n.array().colwise() * a.array()), 0.0};
}

}  // namespace

TEST_CASE("circle geodesics follow the closed form in both orientations and modes") {
  for (bool clockwise : {false, true}) {
    for (GeodesicMode mode : {GeodesicMode::Horizontal, GeodesicMode::Full}) {
      const DiscreteCurve c = circle(64, 1.0, 0.0, 0.0, clockwise);
      // Expanding with radial speed 0.2: the left normal is inward for CCW.
      const double a = clockwise ? 0.2 : -0.2;
      const GeodesicState s0 = normal_start(c, Eigen::VectorXd::Constant(64, a));
      const auto traj = integrate_geodesic(s0, 1.0, 200, mode);
      CHECK_FALSE(traj.stopped_early);
      for (const auto& s : traj.states) {
        CHECK(std::abs(mean_radius(s.f) - closed_form_radius(1.0, 0.2, s.t)) < 1e-5);
      }
    }
  }
}

TEST_CASE("signed curvature uses the left normal") {
  CHECK(signed_curvature(circle(32)).mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(signed_curvature(circle(32, 1.0, 0, 0, true)).mean() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(signed_curvature(circle(32, 2.0)).mean() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("kinetic energy is conserved and horizontality persists") {
  const DiscreteCurve e = testing_support::ellipse(64, 1.3, 0.8);
  const Eigen::VectorXd th = periodic_grid(64);
  const Eigen::VectorXd a = 0.1 * (2 * th.array()).cos() + 0.05;
  const GeodesicState s0 = normal_start(e, a);
  const double e0 = kinetic_energy(s0);
  const auto full = integrate_geodesic(s0, 0.5, 200, GeodesicMode::Full);
  const auto hor = integrate_geodesic(s0, 0.5, 200, GeodesicMode::Horizontal);
  REQUIRE_FALSE(full.stopped_early);
  for (const auto& s : full.states) {
    CHECK(std::abs(kinetic_energy(s) - e0) / e0 < 1e-6);
    const CurveFrame fr = curve_frame(s.f);
    const Eigen::VectorXd tang = pointwise_dot(s.v.vectors(), fr.derivative);
    const Eigen::VectorXd den = s.v.vectors().rowwise().norm().cwiseProduct(fr.speed);
    CHECK((tang.cwiseAbs().array() / den.array()).maxCoeff() < 1e-5);
  }
  for (const auto& s : hor.states) CHECK(std::abs(kinetic_energy(s) - e0) / e0 < 1e-6);
  // Both formulations describe the same shapes: compare enclosed volumes.
  CHECK(curve_frame(full.states.back().f).volume ==
        doctest::Approx(curve_frame(hor.states.back().f).volume).epsilon(1e-6));
}

TEST_CASE("geodesic preconditions and early stops") {
  const DiscreteCurve c = circle(32);
  CHECK_THROWS_AS(integrate_geodesic(normal_start(c, Eigen::VectorXd::Constant(32, 0.1)), 1.0, 8,
                                     GeodesicMode::Full),
                  Error);
  // Tangential initial velocity is rejected by the horizontal reduction.
  GeodesicState tangential{c, FieldAlongCurve(curve_frame(c).tangent), 0.0};
  CHECK_THROWS_AS(integrate_geodesic(tangential, 1.0, 32, GeodesicMode::Horizontal), Error);
  const DiscreteCurve space = DiscreteCurve::sample(32, 3, [](double t) {
    return testing_support::vec(std::cos(t), std::sin(t), 0.0);
  });
  CHECK_THROWS_AS(horizontal_geodesic_rhs(space, Eigen::VectorXd::Zero(32)), Error);
  // A shrinking circle collapses in finite time: r^{3/2} = 1 - 1.5 t reaches 0 at t = 2/3.
  const auto collapse = integrate_geodesic(normal_start(c, Eigen::VectorXd::Constant(32, 1.0)), 1.0,
                                           400, GeodesicMode::Horizontal);
  CHECK(collapse.stopped_early);
  CHECK_FALSE(collapse.diagnostic.empty());
  CHECK(collapse.states.back().t < 2.0 / 3.0 + 1e-9);
}
