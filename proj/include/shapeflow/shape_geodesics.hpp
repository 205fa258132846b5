#pragma once

// Geodesics of the G^0 metric on immersions of S^1 into flat R^d, and their
// horizontal reduction on the shape space of plane curves.

#include <string>
#include <vector>

#include "shapeflow/curve_geometry.hpp"

namespace shapeflow {

struct GeodesicState {
  DiscreteCurve f;
  FieldAlongCurve v;  // f_t
  double t = 0.0;
};

enum class GeodesicMode { Full, Horizontal };

struct GeodesicTrajectory {
  std::vector<GeodesicState> states;
  bool stopped_early = false;
  std::string diagnostic;  // reason for an early stop, empty otherwise
};

/// f_tt from the full G^0 geodesic equation on Imm:
///   f_tt = -div(f_t^T) f_t + g(f_t^perp, Tr S) f_t
///          - 1/2 Df.grad(|f_t|^2) - 1/2 |f_t|^2 Tr S.
FieldAlongCurve imm_geodesic_rhs(const GeodesicState& s);

/// a_t = 1/2 kappa a^2 for plane curves moving with f_t = a n, where n is the
/// left normal and Tr S = kappa n.
Eigen::VectorXd horizontal_geodesic_rhs(const DiscreteCurve& f, const Eigen::VectorXd& a);

/// Signed curvature with respect to the left normal (d = 2).
Eigen::VectorXd signed_curvature(const DiscreteCurve& f);

/// G^0_f(f_t, f_t).
double kinetic_energy(const GeodesicState& s);

/// RK4 integration over [s0.t, s0.t + t_end] in the given number of steps.
/// Stops early (with a diagnostic) once the curve approaches a singular
/// immersion: min speed < 1e-6 * initial min speed, |Tr S| > 1e6, f_theta
/// reversed within one step, or more than 1% (in norm) of f_theta carried by
/// the top quarter of the Fourier modes.
GeodesicTrajectory integrate_geodesic(const GeodesicState& s0, double t_end, int steps,
                                      GeodesicMode mode);

}  // namespace shapeflow
