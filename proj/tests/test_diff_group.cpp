#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shapeflow/benchmarks.hpp"
#include "shapeflow/diff_group.hpp"
#include "shapeflow/error.hpp"
#include "shapeflow/spectral.hpp"

using namespace shapeflow;

namespace {

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd dense_d2(std::size_t K) {
  const double h = 2.0 * std::numbers::pi / static_cast<double>(K);
  Eigen::MatrixXd D(K, K);
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      if (i == j) {
        D(i, j) = -std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0;
      } else {
        const double d = static_cast<double>(i) - static_cast<double>(j);
        D(i, j) = -std::pow(-1.0, d) / (2.0 * std::pow(std::sin(d * h / 2.0), 2));
      }
    }
  }
  return D;
}

PeriodicField f1d(std::size_t K, double (*fn)(double)) { return PeriodicField::sample_1d(K, fn); }

}  // namespace

TEST_CASE("periodic fields validate their layout") {
  CHECK_THROWS_AS(PeriodicField({15}, {Eigen::VectorXd::Zero(15)}), Error);
  CHECK_THROWS_AS(PeriodicField({16}, {Eigen::VectorXd::Zero(8)}), Error);
  CHECK_THROWS_AS(PeriodicField({16, 16, 16}, {}), Error);
  const PeriodicField u = PeriodicField::sample_2d(16, 32, [](double x, double y) {
    return Eigen::Vector2d(std::sin(x) * std::cos(2 * y), 0.0);
  });
  const Eigen::VectorXd dx = u.partial(0, 0);
  const Eigen::VectorXd dy = u.partial(0, 1);
  const Eigen::VectorXd xs = periodic_grid(16), ys = periodic_grid(32);
  for (Eigen::Index i = 0; i < 16; ++i) {
    for (Eigen::Index j = 0; j < 32; ++j) {
      CHECK(dx[i * 32 + j] == doctest::Approx(std::cos(xs[i]) * std::cos(2 * ys[j])).epsilon(1e-12));
      CHECK(dy[i * 32 + j] == doctest::Approx(-2 * std::sin(xs[i]) * std::sin(2 * ys[j])).epsilon(1e-12));
    }
  }
}

TEST_CASE("EPDiff right-hand side examples") {
  const std::size_t K = 32;
  const Eigen::VectorXd x = periodic_grid(K);
  const PeriodicField s = f1d(K, [](double t) { return std::sin(t); });
  CHECK(max_abs(epdiff_rhs(s).component(0) + 1.5 * (2 * x.array()).sin().matrix()) < 1e-12);
  const PeriodicField c = PeriodicField::sample_1d(K, [](double) { return 0.7; });
  CHECK(max_abs(epdiff_rhs(c).component(0)) < 1e-14);
  const PeriodicField u = PeriodicField::sample_2d(K, K, [](double, double y) { return Eigen::Vector2d(std::sin(y), 0.0); });
  const PeriodicField r = epdiff_rhs(u);
  CHECK(max_abs(r.component(0)) < 1e-12);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(K); ++i) {
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(K); ++j) {
      CHECK(r.component(1)[i * K + j] == doctest::Approx(-std::sin(x[j]) * std::cos(x[j])).epsilon(1e-12));
    }
  }
}

TEST_CASE("EPDiff equals -beta(u) u") {
  Rng rng(17);
  for (int i = 0; i < 10; ++i) {
    const PeriodicField u1 = random_field_1d(rng, 64, 6);
    CHECK(max_abs(epdiff_rhs(u1).component(0) + beta_operator(u1, u1).component(0)) < 1e-12);
    const PeriodicField u2 = random_field_2d(rng, 32, 32, 3, 0.3);
    const PeriodicField e = epdiff_rhs(u2), b = beta_operator(u2, u2);
    for (int k = 0; k < 2; ++k) CHECK(max_abs(e.component(k) + b.component(k)) < 1e-12);
  }
}

TEST_CASE("beta operator") {
  const std::size_t K = 32;
  const Eigen::VectorXd x = periodic_grid(K);
  const PeriodicField Y = f1d(K, [](double t) { return std::sin(t); });
  const PeriodicField one = PeriodicField::sample_1d(K, [](double) { return 1.0; });
  CHECK(max_abs(beta_operator(Y, one).component(0) - 3 * x.array().cos().matrix()) < 1e-12);
  CHECK(max_abs(beta_operator(one, Y).component(0)) < 1e-14);
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    const PeriodicField A = random_field_2d(rng, 32, 32, 3);
    const PeriodicField Z = random_field_2d(rng, 32, 32, 3);
    const PeriodicField W = random_field_2d(rng, 32, 32, 3);
    const double lhs = h0_inner(beta_operator(A, Z), W);
    const double rhs = h0_inner(Z, beta_operator(A, W));
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("Camassa-Holm right-hand side") {
  const std::size_t K = 32;
  const Eigen::VectorXd x = periodic_grid(K);
  const PeriodicField s = f1d(K, [](double t) { return std::sin(t); });
  CHECK(max_abs(camassa_holm_rhs(s, 1.0).component(0) + 0.6 * (2 * x.array()).sin().matrix()) < 1e-10);
  CHECK(max_abs(camassa_holm_rhs(PeriodicField::sample_1d(K, [](double) { return 2.0; }), 1.0).component(0)) < 1e-14);
  CHECK_THROWS_AS(camassa_holm_rhs(s, 0.0), Error);
  // Dense-matrix oracle: (I - A D2) u_t = A u_xxx u + 2A u_xx u_x - 3 u_x u.
  for (double A : {1.0, 0.3}) {
    const PeriodicField c = PeriodicField::sample_1d(K, [](double t) { return std::cos(t) + 0.2 * std::sin(3 * t); });
    const Eigen::VectorXd& u = c.component(0);
    const Eigen::VectorXd ux = differentiate_periodic(u, 1), uxx = differentiate_periodic(u, 2),
                          uxxx = differentiate_periodic(u, 3);
    const Eigen::VectorXd rhs = (A * uxxx.array() * u.array() + 2 * A * uxx.array() * ux.array() -
                                 3 * ux.array() * u.array()).matrix();
    const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(K, K) - A * dense_d2(K);
    const Eigen::VectorXd dense = M.lu().solve(rhs);
    const Eigen::VectorXd ut = camassa_holm_rhs(c, A).component(0);
    CHECK(max_abs(ut - dense) < 1e-10);
    CHECK(max_abs(M * ut - rhs) < 1e-10);
  }
}

TEST_CASE("geodesic PDE invariants") {
  const PeriodicField u0 = f1d(128, [](double t) { return 0.1 * std::sin(t); });
  const auto burgers = integrate_diff_geodesic(u0, {DiffEquation::Burgers, 0.0}, 0.5, 500);
  CHECK_FALSE(burgers.stopped_early);
  CHECK(burgers.relative_drift(&InvariantRow::l2) < 1e-8);
  const double l1 = u0.integrate(u0.component(0).cwiseAbs());
  CHECK(burgers.relative_drift(&InvariantRow::momentum, l1) < 1e-8);
  const auto ch = integrate_diff_geodesic(u0, {DiffEquation::CamassaHolm, 1.0}, 0.5, 500);
  CHECK(ch.relative_drift(&InvariantRow::ga) < 1e-8);
  const auto zero = integrate_diff_geodesic(PeriodicField::sample_1d(32, [](double) { return 0.0; }),
                                            {DiffEquation::Epdiff, 0.0}, 1.0, 64);
  for (const auto& s : zero.states) CHECK(max_abs(s.component(0)) == 0.0);
  Rng rng(4);
  const auto e2 = integrate_diff_geodesic(random_field_2d(rng, 64, 64, 2, 0.02), {DiffEquation::Epdiff, 0.0}, 0.25, 100);
  CHECK(e2.relative_drift(&InvariantRow::l2) < 1e-8);
}

TEST_CASE("wave breaking stops the integration") {
  // Burgers u_t = -3 u u_x with u0 = sin x breaks at t = 1/3.
  const PeriodicField u0 = f1d(64, [](double t) { return std::sin(t); });
  const auto traj = integrate_diff_geodesic(u0, {DiffEquation::Burgers, 0.0}, 1.0, 2000);
  CHECK(traj.stopped_early);
  CHECK(traj.diagnostic.find("wave breaking") != std::string::npos);
  CHECK(traj.log.back().t < 1.0);
  CHECK_THROWS_AS(integrate_diff_geodesic(u0, {DiffEquation::Burgers, 0.0}, 1.0, 63), Error);
}

TEST_CASE("Diff curvature") {
  const std::size_t K = 64;
  const PeriodicField s = f1d(K, [](double t) { return std::sin(t); });
  const PeriodicField c = f1d(K, [](double t) { return std::cos(t); });
  CHECK(diff_curvature(s, c) == doctest::Approx(-2 * std::numbers::pi).epsilon(1e-10));
  CHECK(std::abs(diff_curvature(s, s)) < 1e-12);
  Rng rng(6);
  for (int i = 0; i < 10; ++i) {
    const PeriodicField X = random_field_1d(rng, K, 4), Y = random_field_1d(rng, K, 4);
    const PeriodicField br = lie_bracket(X, Y);
    CHECK(std::abs(diff_curvature(X, Y) + h0_inner(br, br)) < 1e-8);
    CHECK(std::abs(diff_curvature(X, 2.5 * X)) < 1e-9);
    const PeriodicField X2 = random_field_2d(rng, 16, 16, 2);
    CHECK(std::abs(diff_curvature(X2, -1.5 * X2)) < 1e-9);
  }
}

TEST_CASE("G^A inner product on vector fields") {
  const PeriodicField s = f1d(32, [](double t) { return std::sin(t); });
  CHECK(ga_diff_inner(s, s, 1.0) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
  // Divergence-free field u = (-psi_y, psi_x) with psi = sin x cos y.
  const PeriodicField u = PeriodicField::sample_2d(32, 32, [](double x, double y) {
    return Eigen::Vector2d(std::sin(x) * std::sin(y), std::cos(x) * std::cos(y));
  });
  CHECK(std::abs(ga_diff_inner(u, u, 0.0) - ga_diff_inner(u, u, 5.0)) < 1e-10);
  Rng rng(7);
  const PeriodicField a = random_field_2d(rng, 16, 16, 2), b = random_field_2d(rng, 16, 16, 2);
  CHECK(ga_diff_inner(a, b, 0.0) == h0_inner(a, b));
  CHECK(ga_diff_inner(a, b, 2.0) == doctest::Approx(ga_diff_inner(b, a, 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(ga_diff_inner(a, b, -1.0), Error);
}
