#include "shapeflow/diff_group.hpp"

#include <cmath>

#include "shapeflow/error.hpp"
#include "shapeflow/spectral.hpp"

namespace shapeflow {
namespace {

void check_same(const PeriodicField& a, const PeriodicField& b) {
  if (!a.same_grid(b)) throw Error(ErrorKind::Precondition, "fields live on different grids");
}

// d[i][k] = d_i X^k.
std::vector<std::vector<Eigen::VectorXd>> jacobian(const PeriodicField& X) {
  const int n = X.dim();
  std::vector<std::vector<Eigen::VectorXd>> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) d[static_cast<std::size_t>(i)].push_back(X.partial(k, i));
  }
  return d;
}

}  // namespace

Eigen::VectorXd divergence(const PeriodicField& X) {
  Eigen::VectorXd div = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(X.points()));
  for (int i = 0; i < X.dim(); ++i) div += X.partial(i, i);
  return div;
}

PeriodicField epdiff_rhs(const PeriodicField& u) {
  const int n = u.dim();
  const auto d = jacobian(u);
  PeriodicField out = PeriodicField::zeros_like(u);
  for (int k = 0; k < n; ++k) {
    auto& r = out.component(k);
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uk = static_cast<std::size_t>(k);
      r.array() -= d[uk][ui].array() * u.component(i).array() +
                   d[ui][ui].array() * u.component(k).array() +
                   u.component(i).array() * d[ui][uk].array();
    }
  }
  return out;
}

PeriodicField camassa_holm_rhs(const PeriodicField& u, double A) {
  if (u.dim() != 1) throw Error(ErrorKind::Unsupported, "Camassa-Holm is one-dimensional");
  if (!(A > 0.0)) throw Error(ErrorKind::Parameter, "Camassa-Holm needs A > 0; use epdiff for A = 0");
  const Eigen::VectorXd& v = u.component(0);
  const Eigen::VectorXd ux = u.partial(v, 0, 1);
  const Eigen::VectorXd uxx = u.partial(v, 0, 2);
  const Eigen::VectorXd uxxx = u.partial(v, 0, 3);
  const Eigen::VectorXd rhs = (A * uxxx.array() * v.array() + 2.0 * A * uxx.array() * ux.array() -
                               3.0 * ux.array() * v.array())
                                  .matrix();
  return PeriodicField(u.grid(), {solve_helmholtz_periodic(rhs, A)});
}

PeriodicField beta_operator(const PeriodicField& Y, const PeriodicField& Z) {
  check_same(Y, Z);
  const int n = Y.dim();
  const auto d = jacobian(Y);
  const Eigen::VectorXd div = divergence(Y);
  PeriodicField out = PeriodicField::zeros_like(Y);
  for (int k = 0; k < n; ++k) {
    auto& r = out.component(k);
    const auto uk = static_cast<std::size_t>(k);
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      r.array() += (d[ui][uk].array() + d[uk][ui].array()) * Z.component(i).array();
    }
    r.array() += div.array() * Z.component(k).array();
  }
  return out;
}

PeriodicField lie_bracket(const PeriodicField& X, const PeriodicField& Y) {
  check_same(X, Y);
  const int n = X.dim();
  const auto dX = jacobian(X);
  const auto dY = jacobian(Y);
  PeriodicField out = PeriodicField::zeros_like(X);
  for (int k = 0; k < n; ++k) {
    auto& r = out.component(k);
    const auto uk = static_cast<std::size_t>(k);
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      r.array() += X.component(i).array() * dY[ui][uk].array() -
                   Y.component(i).array() * dX[ui][uk].array();
    }
  }
  return out;
}

double h0_inner(const PeriodicField& X, const PeriodicField& Y) {
  check_same(X, Y);
  double s = 0.0;
  for (int k = 0; k < X.dim(); ++k) s += X.component(k).dot(Y.component(k));
  return s * X.cell_volume();
}

double ga_diff_inner(const PeriodicField& X, const PeriodicField& Y, double A) {
  if (A < 0.0) throw Error(ErrorKind::Parameter, "A must be non-negative");
  const double base = h0_inner(X, Y);
  if (A == 0.0) return base;
  return base + A * X.integrate((divergence(X).array() * divergence(Y).array()).matrix());
}

double diff_curvature(const PeriodicField& X, const PeriodicField& Y) {
  check_same(X, Y);
  const PeriodicField bXY = beta_operator(X, Y);
  const PeriodicField bYX = beta_operator(Y, X);
  const PeriodicField br = lie_bracket(X, Y);
  PeriodicField first = bXY;
  first += -1.0 * bYX;
  first += br;
  // [beta(X), beta(Y)] X = beta(X) beta(Y) X - beta(Y) beta(X) X.
  PeriodicField comm = beta_operator(X, beta_operator(Y, X));
  comm += -1.0 * beta_operator(Y, beta_operator(X, X));
  return 0.25 * (-h0_inner(first, first) - 4.0 * h0_inner(comm, Y));
}

InvariantRow diff_invariants(const PeriodicField& u, double t, double A) {
  InvariantRow row;
  row.t = t;
  for (int k = 0; k < u.dim(); ++k) row.momentum += u.integrate(u.component(k));
  row.l2 = h0_inner(u, u);
  row.ga = A > 0.0 ? ga_diff_inner(u, u, A) : row.l2;
  for (int k = 0; k < u.dim(); ++k) {
    for (int i = 0; i < u.dim(); ++i) {
      row.max_gradient = std::max(row.max_gradient, u.partial(k, i).cwiseAbs().maxCoeff());
    }
  }
  return row;
}

PeriodicField diff_geodesic_rhs(const PeriodicField& u, const DiffEquationSpec& eq) {
  switch (eq.kind) {
    case DiffEquation::Burgers:
      if (u.dim() != 1) throw Error(ErrorKind::Unsupported, "Burgers is one-dimensional");
      return epdiff_rhs(u);
    case DiffEquation::Epdiff:
      return epdiff_rhs(u);
    case DiffEquation::CamassaHolm:
      return camassa_holm_rhs(u, eq.A);
  }
  throw Error(ErrorKind::Parameter, "unknown equation");
}

double DiffTrajectory::relative_drift(double InvariantRow::*field, double floor) const {
  if (log.empty()) return 0.0;
  const double q0 = log.front().*field;
  double drift = 0.0;
  for (const auto& row : log) drift = std::max(drift, std::abs(row.*field - q0));
  return drift / std::max(std::abs(q0), floor);
}

DiffTrajectory integrate_diff_geodesic(const PeriodicField& u0, const DiffEquationSpec& eq,
                                       double t_end, std::size_t steps,
                                       std::size_t snapshot_every) {
  if (steps < kMinDiffSteps) throw Error(ErrorKind::Parameter, "at least 64 steps are required");
  if (!(t_end > 0.0)) throw Error(ErrorKind::Parameter, "T_end must be positive");
  const double A = eq.kind == DiffEquation::CamassaHolm ? eq.A : 0.0;
  diff_geodesic_rhs(u0, eq);

  DiffTrajectory traj;
  const double h = t_end / static_cast<double>(steps);
  PeriodicField u = u0;
  traj.states.push_back(u);
  traj.state_times.push_back(0.0);
  traj.log.push_back(diff_invariants(u, 0.0, A));
  for (std::size_t s = 1; s <= steps; ++s) {
    const PeriodicField k1 = diff_geodesic_rhs(u, eq);
    const PeriodicField k2 = diff_geodesic_rhs(u + (0.5 * h) * k1, eq);
    const PeriodicField k3 = diff_geodesic_rhs(u + (0.5 * h) * k2, eq);
    const PeriodicField k4 = diff_geodesic_rhs(u + h * k3, eq);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = h * static_cast<double>(s);
    const InvariantRow row = diff_invariants(u, t, A);
    const bool finite = std::isfinite(row.l2) && std::isfinite(row.max_gradient);
    if (finite) traj.log.push_back(row);
    if (!finite || row.max_gradient > kWaveBreakingGradient) {
      traj.stopped_early = true;
      traj.diagnostic = "wave breaking: max|grad u| exceeded 1e4 at t = " + std::to_string(t);
      if (finite) {
        traj.states.push_back(u);
        traj.state_times.push_back(t);
      }
      return traj;
    }
    if (s == steps || (snapshot_every > 0 && s % snapshot_every == 0)) {
      traj.states.push_back(u);
      traj.state_times.push_back(t);
    }
  }
  return traj;
}

}  // namespace shapeflow
