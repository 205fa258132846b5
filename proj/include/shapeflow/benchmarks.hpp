#pragma once

// Standard and randomized test configurations shared by the experiments,
// the unit tests and the acceptance suite. All random draws go through a
// caller-owned std::mt19937_64.

#include <cstddef>
#include <random>

#include "shapeflow/curve_geometry.hpp"
#include "shapeflow/periodic_field.hpp"
#include "shapeflow/shape_metric.hpp"

namespace shapeflow {

using Rng = std::mt19937_64;

DiscreteCurve circle(std::size_t K, double radius = 1.0, double cx = 0.0, double cy = 0.0,
                     bool clockwise = false);

/// r(theta) (cos theta, sin theta) with r = 1 + sum_{k=2}^{modes+1} (a_k cos k theta
/// + b_k sin k theta), |a_k|, |b_k| <= amplitude / k^2.
DiscreteCurve random_star_curve(Rng& rng, std::size_t K, int modes = 4, double amplitude = 0.15);

/// Band-limited scalar a(theta) with modes 0..modes and coefficients in
/// [-amplitude, amplitude].
Eigen::VectorXd random_trig_polynomial(Rng& rng, std::size_t K, int modes, double amplitude = 1.0);

/// a(theta) n(theta) for a random band-limited a (d = 2).
FieldAlongCurve random_normal_field(Rng& rng, const DiscreteCurve& f, int modes = 4);

/// Random band-limited field in every ambient component.
FieldAlongCurve random_field(Rng& rng, const DiscreteCurve& f, int modes = 4);

/// Translation of the unit circle by (D, 0) over t in [0, 1], explicit velocity.
ImmersionPath translation_path(std::size_t K, std::size_t T, double D);

/// Smooth random path of star-shaped curves with explicit velocities:
/// R(t, theta) = r0 + t (r1 - r0) + sin(pi t) r2 around a centre moving by t c.
ImmersionPath random_perturbation_path(Rng& rng, std::size_t K, std::size_t T, int modes = 3,
                                       double amplitude = 0.2);

PeriodicField random_field_1d(Rng& rng, std::size_t K, int modes, double amplitude = 1.0);
PeriodicField random_field_2d(Rng& rng, std::size_t K1, std::size_t K2, int modes,
                              double amplitude = 1.0);

}  // namespace shapeflow
