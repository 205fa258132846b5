#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shapeflow/benchmarks.hpp"
#include "shapeflow/error.hpp"
#include "shapeflow/vanishing.hpp"

using namespace shapeflow;

TEST_CASE("unmollified zig-zag values") {
  for (int n : {1, 2, 5}) {
    ZigzagConfig cfg;
    cfg.n = n;
    cfg.smoothing = 0.0;
    for (double a = 0.0; a <= 1.0; a += 0.01) CHECK(zigzag_phi(1.0, a, cfg) == doctest::Approx(1.0));
    for (double a = 0.0; a <= 1.0; a += 0.01) CHECK(zigzag_phi(0.0, a, cfg) == doctest::Approx(0.0));
    for (int k = 0; k < n; ++k) {
      CHECK(zigzag_phi(0.5, (2.0 * k + 1) / (2.0 * n), cfg) == doctest::Approx(1.0));
      for (double t : {0.1, 0.5, 0.7, 0.95}) {
        CHECK(zigzag_phi(t, 2.0 * k / (2.0 * n), cfg) == doctest::Approx(std::max(0.0, 2 * t - 1)));
      }
    }
    // The four-case table evaluated directly.
    const double t = 0.3, a = 0.25 / n;
    CHECK(zigzag_phi(t, a, cfg) == doctest::Approx(2 * t * (2 * n * a)));
    const double t2 = 0.8, a2 = 0.75 / n;
    CHECK(zigzag_phi(t2, a2, cfg) == doctest::Approx(2 * t2 - 1 + 2 * (1 - t2) * (2 - 2 * n * a2)));
  }
}

TEST_CASE("mollified zig-zag is monotone in t with exact endpoints") {
  ZigzagConfig cfg;
  cfg.n = 4;
  const ZigzagConfig r = cfg.resolved();
  CHECK(r.smoothing == doctest::Approx(1.0 / 64));
  for (double a = 0.0; a <= 1.0; a += 0.013) {
    CHECK(zigzag_phi(0.0, a, cfg) == 0.0);
    CHECK(zigzag_phi(1.0, a, cfg) == 1.0);
    double prev = -1.0;
    for (double t = 0.0; t <= 1.0; t += 0.01) {
      const ZigzagValue v = zigzag_phi_full(t, a, cfg);
      CHECK(v.phi >= prev - 1e-15);
      CHECK(v.phi_t >= -1e-12);
      CHECK(v.phi >= -1e-15);
      CHECK(v.phi <= 1.0 + 1e-15);
      prev = v.phi;
    }
  }
}

TEST_CASE("zig-zag configuration and argument checks") {
  ZigzagConfig bad;
  bad.n = 0;
  CHECK_THROWS_AS(bad.resolved(), Error);
  bad.n = 2;
  bad.smoothing = 1.0 / 16;
  CHECK_THROWS_AS(bad.resolved(), Error);
  ZigzagConfig ok;
  CHECK_THROWS_AS(zigzag_phi(1.5, 0.5, ok), Error);
  CHECK_THROWS_AS(zigzag_phi(0.5, -0.1, ok), Error);
}

TEST_CASE("Morse function has critical values 0 and 1") {
  CHECK(morse_alpha(0.0) == 0.0);
  CHECK(morse_alpha(std::numbers::pi) == doctest::Approx(1.0));
  CHECK(morse_alpha_derivative(0.0) == 0.0);
  CHECK(std::abs(morse_alpha_derivative(std::numbers::pi)) < 1e-15);
}

TEST_CASE("zig-zag paths keep the endpoints of the base path") {
  const ImmersionPath base = make_horizontal(translation_path(64, 64, 0.5));
  ZigzagConfig cfg;
  cfg.n = 3;
  const ImmersionPath z = zigzag_path(base, cfg);
  CHECK(z.curve(0).points() == base.curve(0).points());
  CHECK(z.curves().back().points() == base.curves().back().points());
  CHECK_THROWS_AS(zigzag_path(translation_path(64, 64, 0.5), cfg), Error);
}

TEST_CASE("constant base path has zero length") {
  const DiscreteCurve c = circle(64);
  for (const auto& row : vanishing_sweep(c, c, {1, 2, 4})) CHECK(row.length < 1e-8);
}

TEST_CASE("linear interpolation through a singular curve is rejected") {
  const DiscreteCurve a = circle(32);
  const DiscreteCurve b(-a.points());
  CHECK_THROWS_AS(linear_path(a, b, 16), Error);
}

TEST_CASE("zig-zag lengths converge under grid refinement") {
  SweepOptions coarse, fine;
  coarse.min_grid = coarse.min_steps = 256;
  fine.min_grid = fine.min_steps = 512;
  const DiscreteCurve f0 = circle(128);
  const DiscreteCurve f1 = circle(128, 1.0, 0.5, 0.0);
  const auto a = vanishing_sweep(f0, f1, {1, 4, 16}, coarse);
  const auto b = vanishing_sweep(f0, f1, {1, 4, 16}, fine);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i].length - b[i].length) / b[i].length < 0.02);
  }
}
