#pragma once

// Right-invariant metrics on the diffeomorphism group of the flat torus:
// their geodesic equations (EPDiff, Burgers, Camassa-Holm), the operator
// beta, sectional curvature and the G^A inner product.

#include <cstddef>
#include <string>
#include <vector>

#include "shapeflow/periodic_field.hpp"

namespace shapeflow {

/// u_t^k = -sum_i ((d_k u^i) u^i + (d_i u^i) u^k + u^i d_i u^k).
PeriodicField epdiff_rhs(const PeriodicField& u);

/// u_t from (1 - A d^2) u_t = A u_xxx u + 2 A u_xx u_x - 3 u_x u.
PeriodicField camassa_holm_rhs(const PeriodicField& u, double A);

/// (beta(Y) Z)^k = sum_i (d_i Y^k + d_k Y^i) Z^i + (div Y) Z^k.
PeriodicField beta_operator(const PeriodicField& Y, const PeriodicField& Z);

/// [X, Y]^k = sum_i (X^i d_i Y^k - Y^i d_i X^k).
PeriodicField lie_bracket(const PeriodicField& X, const PeriodicField& Y);

Eigen::VectorXd divergence(const PeriodicField& X);

double h0_inner(const PeriodicField& X, const PeriodicField& Y);

/// int (g(X, Y) + A div X div Y).
double ga_diff_inner(const PeriodicField& X, const PeriodicField& Y, double A);

/// G^0(R(X, Y) X, Y).
double diff_curvature(const PeriodicField& X, const PeriodicField& Y);

enum class DiffEquation { Burgers, Epdiff, CamassaHolm };

struct DiffEquationSpec {
  DiffEquation kind = DiffEquation::Burgers;
  double A = 0.0;
};

struct InvariantRow {
  double t = 0.0;
  double momentum = 0.0;  ///< sum over components of int u^k
  double l2 = 0.0;        ///< int |u|^2
  double ga = 0.0;        ///< int (|u|^2 + A (div u)^2)
  double max_gradient = 0.0;
};

struct DiffTrajectory {
  std::vector<PeriodicField> states;  ///< every snapshot_every steps, plus the last
  std::vector<double> state_times;
  std::vector<InvariantRow> log;      ///< one row per step, starting at t = 0
  bool stopped_early = false;
  std::string diagnostic;

  /// max_i |q_i - q_0| / max(|q_0|, floor) for the selected invariant.
  double relative_drift(double InvariantRow::*field, double floor = 1e-300) const;
};

InvariantRow diff_invariants(const PeriodicField& u, double t, double A);

PeriodicField diff_geodesic_rhs(const PeriodicField& u, const DiffEquationSpec& eq);

DiffTrajectory integrate_diff_geodesic(const PeriodicField& u0, const DiffEquationSpec& eq,
                                       double t_end, std::size_t steps,
                                       std::size_t snapshot_every = 0);

inline constexpr std::size_t kMinDiffSteps = 64;
inline constexpr double kWaveBreakingGradient = 1e4;

}  // namespace shapeflow
