#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shapeflow/error.hpp"
#include "shapeflow/spectral.hpp"

using namespace shapeflow;

namespace {

// Dense second-derivative matrix of the band-limited interpolant on an even grid.
Eigen::MatrixXd dense_d2(std::size_t K) {
  const double h = 2.0 * std::numbers::pi / static_cast<double>(K);
  Eigen::MatrixXd D(K, K);
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      if (i == j) {
        D(i, j) = -std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0;
      } else {
        const double d = static_cast<double>(i) - static_cast<double>(j);
        const double s = std::sin(d * h / 2.0);
        D(i, j) = -std::pow(-1.0, d) / (2.0 * s * s);
      }
    }
  }
  return D;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(check_grid_size(15), Error);
  CHECK_THROWS_AS(check_grid_size(14), Error);
  CHECK_NOTHROW(check_grid_size(16));
  try {
    check_grid_size(17);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidGrid);
  }
}

TEST_CASE("spectral derivatives of trigonometric polynomials") {
  const std::size_t K = 32;
  const Eigen::VectorXd th = periodic_grid(K);
  const Eigen::VectorXd f = (3 * th.array()).sin() + 0.5 * (7 * th.array()).cos();
  const Eigen::VectorXd df = 3 * (3 * th.array()).cos() - 3.5 * (7 * th.array()).sin();
  const Eigen::VectorXd d2f = -9 * (3 * th.array()).sin() - 24.5 * (7 * th.array()).cos();
  CHECK((differentiate_periodic(f, 1) - df).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((differentiate_periodic(f, 2) - d2f).cwiseAbs().maxCoeff() < 1e-11);
  // The Nyquist mode cos(K theta / 2) has zero first derivative on the grid.
  const Eigen::VectorXd nyq = (16 * th.array()).cos();
  CHECK(differentiate_periodic(nyq, 1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Helmholtz inversion agrees with a dense linear solve") {
  const std::size_t K = 32;
  const Eigen::VectorXd th = periodic_grid(K);
  Eigen::VectorXd rhs = (2 * th.array()).sin() + 0.3 * (5 * th.array()).cos() + 0.1 +
                        0.05 * (16 * th.array()).cos();
  for (double A : {0.5, 1.0, 3.0}) {
    const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(K, K) - A * dense_d2(K);
    const Eigen::VectorXd dense = M.lu().solve(rhs);
    CHECK((solve_helmholtz_periodic(rhs, A) - dense).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("resampling preserves band-limited data") {
  const Eigen::VectorXd th = periodic_grid(32);
  const Eigen::VectorXd f = (3 * th.array()).sin() + (5 * th.array()).cos();
  const Eigen::VectorXd up = resample_periodic(f, 64);
  const Eigen::VectorXd th64 = periodic_grid(64);
  const Eigen::VectorXd expect = (3 * th64.array()).sin() + (5 * th64.array()).cos();
  CHECK((up - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((resample_periodic(up, 32) - f).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trigonometric interpolant evaluates off-grid") {
  const std::size_t K = 32;
  const Eigen::VectorXd th = periodic_grid(K);
  Eigen::MatrixXd s(K, 1);
  s.col(0) = (3 * th.array()).sin() + 0.2 * (16 * th.array()).cos();
  const TrigInterpolant p(s);
  for (double x : {0.0, 0.1234, 1.0, 3.3, 6.0}) {
    Eigen::VectorXd v(1), d(1);
    p.evaluate(x, v, d);
    CHECK(v[0] == doctest::Approx(std::sin(3 * x) + 0.2 * std::cos(16 * x)).epsilon(1e-10));
    CHECK(d[0] == doctest::Approx(3 * std::cos(3 * x) - 0.2 * 16 * std::sin(16 * x)).epsilon(1e-10));
  }
  // Nodes reproduce the samples exactly.
  CHECK(p.value(th[5])[0] == doctest::Approx(s(5, 0)).epsilon(1e-12));
}
