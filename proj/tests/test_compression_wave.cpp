#include <cmath>

#include "doctest.h"
#include "shapeflow/compression_wave.hpp"
#include "shapeflow/error.hpp"

using namespace shapeflow;

namespace {

ScalarFn bump(double c, double w, double h) {
  return [=](double x) { return bump_profile(x, c, w, h); };
}

}  // namespace

TEST_CASE("basic wave shape") {
  const WaveWindow win;
  const DiffPath1D p = basic_wave(0.9, 0.1, win);
  CHECK(p.min_slope() > 0.0);
  const Eigen::Index last = p.x_grid.size() - 1;
  for (Eigen::Index i = 0; i < p.t_grid.size(); ++i) {
    CHECK(p.phi(i, last) == p.x_grid[last]);
    CHECK(std::abs(p.phi(i, 0) - (p.x_grid[0] + 1.0)) < 1e-12);
  }
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("basic wave preconditions") {
  const WaveWindow win;
  CHECK_THROWS_AS(basic_wave(1.0, 0.1, win), Error);
  CHECK_THROWS_AS(basic_wave(1.0 / basic_wave_max_slope(0.1), 0.1, win), Error);
  CHECK_THROWS_AS(basic_wave(0.5, 0.0, win), Error);
  WaveWindow coarse;
  coarse.nx = 16;
  CHECK_THROWS_AS(basic_wave(0.9, 0.1, coarse), Error);
  CHECK(basic_wave_max_slope(0.1) == doctest::Approx(1.0));
}

TEST_CASE("basic wave energy bound") {
  const WaveWindow win;
  double prev = 0.0;
  for (double eps : {0.2, 0.1, 0.05}) {
    const DiffPath1D p = basic_wave(1.0 - eps, eps, win);
    const WaveEnergyReport r = wave_energy(p, 0.0, 1.0);
    CHECK(r.bound == doctest::Approx(3 * eps / (1 - eps)).epsilon(1e-9));
    CHECK(r.satisfied);
    CHECK(r.energy <= r.bound * (1 + 1e-6));
    if (prev > 0.0) {
      CHECK(r.energy / prev >= 0.3);
      CHECK(r.energy / prev <= 0.7);
    }
    prev = r.energy;
  }
  const DiffPath1D p = basic_wave(0.9, 0.1, win);
  const WaveEnergyReport half = wave_energy(p, 0.25, 0.75);
  CHECK(half.bound == doctest::Approx(0.5 * 3 * 0.1 / 0.9).epsilon(1e-9));
  CHECK(wave_energy(identity_path(p)).energy < 1e-25);
}

TEST_CASE("short path to zero displacement is the identity") {
  const DiffPath1D p = short_path_to([](double) { return 0.0; }, 0.1);
  CHECK(wave_energy(p).energy < 1e-10);
  for (Eigen::Index i = 0; i < p.phi.rows(); ++i) {
    CHECK((p.phi.row(i).transpose() - p.x_grid).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("short path final map converges") {
  const ScalarFn g = bump(0.0, 1.5, 0.5);
  ShortPathOptions opt;
  opt.support_min = -1.5;
  opt.support_max = 1.5;
  const DiffPath1D p = short_path_to(g, 0.05, opt);
  CHECK(p.min_slope() > 0.0);
  const double e1 = final_map_error(p, g);
  CHECK(e1 < 5e-3);
  opt.resolution = 16.0;
  const double e2 = final_map_error(short_path_to(g, 0.05, opt), g);
  CHECK(e2 <= 0.5 * e1);
}

TEST_CASE("short path energies decrease with epsilon") {
  const ScalarFn g = bump(0.0, 1.5, 0.5);
  ShortPathOptions opt;
  opt.support_min = -1.5;
  opt.support_max = 1.5;
  double prev = 1e300;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    const WaveEnergyReport r = wave_energy(short_path_to(g, eps, opt));
    CHECK(r.energy < prev);
    CHECK(r.satisfied);
    prev = r.energy;
  }
}

TEST_CASE("short path displacement checks") {
  ShortPathOptions opt;
  CHECK_THROWS_AS(short_path_to(bump(0.0, 0.2, 1.0), 0.05, opt), Error);  // g' < -1
  CHECK_THROWS_AS(short_path_to(bump(0.0, 0.5, -0.2), 0.05, opt), Error);
  CHECK_THROWS_AS(short_path_to(bump(0.0, 2.0, 0.2), 0.05, opt), Error);  // leaves support
  try {
    short_path_to(bump(0.0, 0.2, 1.0), 0.05, opt);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDisplacement);
  }
}

TEST_CASE("lower bound on the G^A length") {
  const ScalarFn g = bump(0.0, 1.5, 0.5);
  const ScalarFn rho = bump(0.3, 0.8, 1.0);
  const ScalarFn f = bump(0.0, 1.2, 1.0);
  ShortPathOptions opt;
  opt.support_min = -1.5;
  opt.support_max = 1.5;
  double lhs0 = 0.0;
  for (double eps : {0.2, 0.1, 0.05}) {
    const DiffPath1D p = short_path_to(g, eps, opt);
    const LowerBoundReport r = path_lower_bound(p, rho, f, 1.0);
    CHECK(r.bound.satisfied);
    CHECK(r.bound.lhs > 0.0);
    if (lhs0 == 0.0) lhs0 = r.bound.lhs;
    CHECK(r.bound.lhs >= 0.5 * lhs0);
    CHECK(r.ga_length >= r.ga_length_lower * (1 - 1e-8));
  }
  const DiffPath1D p = short_path_to(g, 0.1, opt);
  const LowerBoundReport id = path_lower_bound(identity_path(p), rho, f, 1.0);
  CHECK(id.bound.lhs < 1e-14);
  CHECK(id.bound.satisfied);
  const LowerBoundReport zero = path_lower_bound(p, [](double) { return 0.0; }, f, 1.0);
  CHECK(zero.bound.lhs == 0.0);
  CHECK(zero.bound.satisfied);
  CHECK_THROWS_AS(path_lower_bound(p, bump(0.0, 100.0, 1.0), f, 1.0), Error);
}

TEST_CASE("bump profile") {
  CHECK(bump_profile(0.0, 0.0, 1.0, 0.5) == doctest::Approx(0.5));
  CHECK(bump_profile(1.0, 0.0, 1.0, 0.5) == 0.0);
  CHECK(bump_profile(-3.0, 0.0, 1.0, 0.5) == 0.0);
}
