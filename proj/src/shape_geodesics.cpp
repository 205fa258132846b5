#include "shapeflow/shape_geodesics.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "shapeflow/error.hpp"
#include "shapeflow/spectral.hpp"

namespace shapeflow {
namespace {

constexpr double kSpeedCollapse = 1e-6;
constexpr double kCurvatureBlowup = 1e6;
constexpr double kSpectralTail = 1e-2;

// Returns a description of the singularity if f is (close to) degenerate.
// A step that reverses f_theta somewhere has crossed a singular immersion.
std::optional<std::string> degeneracy(const DiscreteCurve& f,
                                      const Eigen::MatrixXd& previous_derivative,
                                      double initial_min_speed) {
  const Eigen::MatrixXd d = differentiate_periodic(f.points(), 1);
  if ((pointwise_dot(d, previous_derivative).array() <= 0.0).any()) {
    return std::string("immersion degenerates: f_theta reversed within one step");
  }
  const Eigen::VectorXd speed = d.rowwise().norm();
  if (!(speed.minCoeff() >= kSpeedCollapse * initial_min_speed)) {
    std::ostringstream os;
    os << "immersion degenerates: min speed " << speed.minCoeff();
    return os.str();
  }
  const Eigen::MatrixXcd c = rfft_columns(d);
  const Eigen::Index cut = static_cast<Eigen::Index>(f.size() / 4);
  const double tail = c.bottomRows(c.rows() - cut).squaredNorm() / c.squaredNorm();
  if (!(std::sqrt(tail) <= kSpectralTail)) {
    std::ostringstream os;
    os << "immersion no longer resolved on the grid: spectral tail " << std::sqrt(tail);
    return os.str();
  }
  const double h = mean_curvature(f).vectors().rowwise().norm().maxCoeff();
  if (!(h <= kCurvatureBlowup)) {
    std::ostringstream os;
    os << "curvature blow-up: max |Tr S| = " << h;
    return os.str();
  }
  return std::nullopt;
}

struct Rates {
  Eigen::MatrixXd df;
  Eigen::MatrixXd dv;  // full mode: v_t; horizontal mode: column 0 holds a_t
};

}  // namespace

FieldAlongCurve imm_geodesic_rhs(const GeodesicState& s) {
  check_compatible(s.f, s.v);
  const CurveFrame frame = curve_frame(s.f);
  const Eigen::MatrixXd H = mean_curvature(s.f, frame).vectors();
  const Eigen::MatrixXd& v = s.v.vectors();
  const auto split = split_tangential_normal(frame, s.v);

  // div(c d_theta) = d_theta(c |f_theta|) / |f_theta|
  const Eigen::VectorXd c_speed = split.tangential.array() * frame.speed.array();
  const Eigen::VectorXd div_top =
      differentiate_periodic(c_speed, 1).array() / frame.speed.array();
  const Eigen::VectorXd normal_dot_h = pointwise_dot(split.normal.vectors(), H);
  const Eigen::VectorXd v_sq = v.rowwise().squaredNorm();
  // Df.grad(psi) = f_theta * psi_theta / |f_theta|^2
  const Eigen::VectorXd grad_coeff =
      differentiate_periodic(v_sq, 1).array() / frame.speed.array().square();

  Eigen::MatrixXd acc = (v.array().colwise() * (normal_dot_h - div_top).array()).matrix();
  acc -= 0.5 * (frame.derivative.array().colwise() * grad_coeff.array()).matrix();
  acc -= 0.5 * (H.array().colwise() * v_sq.array()).matrix();
  return FieldAlongCurve(std::move(acc));
}

Eigen::VectorXd signed_curvature(const DiscreteCurve& f) {
  if (f.dim() != 2) throw Error(ErrorKind::Unsupported, "signed curvature needs d = 2");
  const CurveFrame frame = curve_frame(f);
  return pointwise_dot(mean_curvature(f, frame).vectors(), left_normal(frame));
}

Eigen::VectorXd horizontal_geodesic_rhs(const DiscreteCurve& f, const Eigen::VectorXd& a) {
  if (f.dim() != 2) {
    throw Error(ErrorKind::Unsupported,
                "horizontal reduction is for plane curves; use imm_geodesic_rhs");
  }
  if (static_cast<std::size_t>(a.size()) != f.size()) {
    throw Error(ErrorKind::Precondition, "normal speed must live on the curve's grid");
  }
  return 0.5 * signed_curvature(f).array() * a.array().square();
}

double kinetic_energy(const GeodesicState& s) {
  const CurveFrame frame = curve_frame(s.f);
  return integrate_against_volume(frame, s.v.vectors().rowwise().squaredNorm());
}

GeodesicTrajectory integrate_geodesic(const GeodesicState& s0, double t_end, int steps,
                                      GeodesicMode mode) {
  if (steps < 16) throw Error(ErrorKind::Parameter, "geodesic integration needs >= 16 steps");
  if (!(t_end > 0.0)) throw Error(ErrorKind::Parameter, "integration span must be positive");
  check_compatible(s0.f, s0.v);
  const CurveFrame frame0 = curve_frame(s0.f);
  const double min_speed0 = frame0.speed.minCoeff();

  Eigen::VectorXd a;  // horizontal mode state
  if (mode == GeodesicMode::Horizontal) {
    if (s0.f.dim() != 2) {
      throw Error(ErrorKind::Unsupported, "horizontal mode is implemented for plane curves");
    }
    const auto split = split_tangential_normal(frame0, s0.v);
    const Eigen::VectorXd vnorm = s0.v.vectors().rowwise().norm();
    const Eigen::VectorXd tang = (split.tangential.array() * frame0.speed.array()).abs();
    if ((tang.array() > 1e-10 * std::max(1.0, vnorm.maxCoeff())).any()) {
      throw Error(ErrorKind::Precondition, "horizontal mode needs g(v, f_theta) = 0");
    }
    a = pointwise_dot(s0.v.vectors(), left_normal(frame0));
  }

  auto rates = [&](const Eigen::MatrixXd& pts, const Eigen::MatrixXd& second) -> Rates {
    DiscreteCurve f(pts);
    if (mode == GeodesicMode::Full) {
      GeodesicState s{f, FieldAlongCurve(second), 0.0};
      return {second, imm_geodesic_rhs(s).vectors()};
    }
    const CurveFrame fr = curve_frame(f);
    const Eigen::MatrixXd n = left_normal(fr);
    const Eigen::VectorXd av = second.col(0);
    return {(n.array().colwise() * av.array()).matrix(), horizontal_geodesic_rhs(f, av)};
  };

  auto velocity_of = [&](const Eigen::MatrixXd& pts, const Eigen::MatrixXd& second) {
    if (mode == GeodesicMode::Full) return FieldAlongCurve(second);
    const Eigen::MatrixXd n = left_normal(curve_frame(DiscreteCurve(pts)));
    return FieldAlongCurve((n.array().colwise() * second.col(0).array()).matrix());
  };

  GeodesicTrajectory traj;
  Eigen::MatrixXd x = s0.f.points();
  Eigen::MatrixXd y = mode == GeodesicMode::Full ? s0.v.vectors() : Eigen::MatrixXd(a);
  const double dt = t_end / steps;
  double t = s0.t;
  traj.states.push_back({s0.f, velocity_of(x, y), t});

  for (int step = 0; step < steps; ++step) {
    try {
      const Rates k1 = rates(x, y);
      const Rates k2 = rates(x + 0.5 * dt * k1.df, y + 0.5 * dt * k1.dv);
      const Rates k3 = rates(x + 0.5 * dt * k2.df, y + 0.5 * dt * k2.dv);
      const Rates k4 = rates(x + dt * k3.df, y + dt * k3.dv);
      x += (dt / 6.0) * (k1.df + 2.0 * k2.df + 2.0 * k3.df + k4.df);
      y += (dt / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateImmersion) throw;
      traj.stopped_early = true;
      traj.diagnostic = e.what();
      return traj;
    }
    t = s0.t + dt * (step + 1);
    DiscreteCurve f(x);
    const Eigen::MatrixXd previous = differentiate_periodic(traj.states.back().f.points(), 1);
    if (auto why = degeneracy(f, previous, min_speed0)) {
      traj.stopped_early = true;
      traj.diagnostic = *why;
      return traj;
    }
    traj.states.push_back({f, velocity_of(x, y), t});
  }
  return traj;
}

}  // namespace shapeflow
