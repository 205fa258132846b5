#include "shapeflow/shape_metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shapeflow/error.hpp"
#include "shapeflow/spectral.hpp"

namespace shapeflow {
namespace {

void check_path_shape(const std::vector<DiscreteCurve>& curves) {
  if (curves.size() < ImmersionPath::kMinSteps + 1) {
    throw Error(ErrorKind::Precondition, "an immersion path needs at least " +
                                             std::to_string(ImmersionPath::kMinSteps) +
                                             " time steps");
  }
  for (const auto& c : curves) {
    if (c.size() != curves.front().size() || c.dim() != curves.front().dim()) {
      throw Error(ErrorKind::Precondition, "all curves of a path must share K and d");
    }
  }
}

// Per-slice G^A(v, v) with v (or its normal part) at time index i.
double slice_ga_norm_sq(const DiscreteCurve& f, const FieldAlongCurve& v, double A,
                        bool horizontal_only) {
  const CurveFrame frame = curve_frame(f);
  const Eigen::MatrixXd w =
      horizontal_only ? split_tangential_normal(frame, v).normal.vectors() : v.vectors();
  Eigen::VectorXd weight = Eigen::VectorXd::Ones(w.rows());
  if (A != 0.0) {
    const Eigen::MatrixXd H = mean_curvature(f, frame).vectors();
    weight.array() += A * H.rowwise().squaredNorm().array();
  }
  const Eigen::VectorXd integrand = weight.array() * w.rowwise().squaredNorm().array();
  return integrate_against_volume(frame, integrand);
}

void check_metric_parameter(double A) {
  if (!(A >= 0.0)) throw Error(ErrorKind::Parameter, "metric parameter A must be >= 0");
}

// Cubic Hermite blend of per-time Fourier coefficient blocks.
class PathInterpolant {
 public:
  explicit PathInterpolant(const ImmersionPath& path) : path_(path) {
    const std::size_t n = path.steps() + 1;
    pos_.reserve(n);
    vel_.reserve(n);
    const double K = static_cast<double>(path.grid_size());
    for (std::size_t i = 0; i < n; ++i) {
      pos_.push_back(rfft_columns(path.curve(i).points()) / K);
      vel_.push_back(rfft_columns(path.velocity(i).vectors()) / K);
    }
  }

  // Interpolants of f(t, .) and f_t(t, .) at an arbitrary time.
  std::pair<TrigInterpolant, TrigInterpolant> at(double t) const {
    const double dt = path_.dt();
    double s = (t - path_.t_start()) / dt;
    auto i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0,
                                                 static_cast<double>(path_.steps() - 1)));
    s -= static_cast<double>(i);
    const std::size_t K = path_.grid_size();
    if (s == 0.0) return {TrigInterpolant(pos_[i], K), TrigInterpolant(vel_[i], K)};
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1;
    const double d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
    Eigen::MatrixXcd p = h00 * pos_[i] + (h10 * dt) * vel_[i] + h01 * pos_[i + 1] +
                         (h11 * dt) * vel_[i + 1];
    Eigen::MatrixXcd v = (d00 / dt) * pos_[i] + d10 * vel_[i] + (d01 / dt) * pos_[i + 1] +
                         d11 * vel_[i + 1];
    return {TrigInterpolant(std::move(p), K), TrigInterpolant(std::move(v), K)};
  }

 private:
  const ImmersionPath& path_;
  std::vector<Eigen::MatrixXcd> pos_;
  std::vector<Eigen::MatrixXcd> vel_;
};

// xi(t, psi_j) = -g(f_t, f_theta) / |f_theta|^2 at the flowed parameters.
Eigen::VectorXd reparam_field(const std::pair<TrigInterpolant, TrigInterpolant>& interp,
                              const Eigen::VectorXd& psi) {
  const auto& [pos, vel] = interp;
  const Eigen::Index d = static_cast<Eigen::Index>(pos.dim());
  Eigen::VectorXd x(d), fx(d), v(d), dv(d);
  Eigen::VectorXd xi(psi.size());
  for (Eigen::Index j = 0; j < psi.size(); ++j) {
    pos.evaluate(psi[j], x, fx);
    vel.evaluate(psi[j], v, dv);
    const double sq = fx.squaredNorm();
    if (!(sq > 0.0)) {
      throw Error(ErrorKind::DegenerateImmersion, "path leaves the space of immersions");
    }
    xi[j] = -v.dot(fx) / sq;
  }
  return xi;
}

}  // namespace

ImmersionPath::ImmersionPath(std::vector<DiscreteCurve> curves, double t_start, double t_end)
    : curves_(std::move(curves)), t_start_(t_start), t_end_(t_end) {
  check_path_shape(curves_);
  if (!(t_end_ > t_start_)) throw Error(ErrorKind::Parameter, "path time span must be positive");
}

ImmersionPath::ImmersionPath(std::vector<DiscreteCurve> curves,
                             std::vector<FieldAlongCurve> velocities, double t_start,
                             double t_end)
    : ImmersionPath(std::move(curves), t_start, t_end) {
  if (velocities.size() != curves_.size()) {
    throw Error(ErrorKind::Precondition, "one velocity field per curve is required");
  }
  for (std::size_t i = 0; i < curves_.size(); ++i) check_compatible(curves_[i], velocities[i]);
  velocities_ = std::move(velocities);
}

ImmersionPath ImmersionPath::sample(std::size_t T, std::size_t K, int dim, const PointFn& point,
                                    const PointFn& velocity) {
  std::vector<DiscreteCurve> curves;
  std::vector<FieldAlongCurve> velocities;
  const Eigen::VectorXd theta = periodic_grid(K);
  for (std::size_t i = 0; i <= T; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(T);
    curves.push_back(DiscreteCurve::sample(K, dim, [&](double th) { return point(t, th); }));
    if (velocity) {
      Eigen::MatrixXd v(static_cast<Eigen::Index>(K), dim);
      for (Eigen::Index j = 0; j < v.rows(); ++j) v.row(j) = velocity(t, theta[j]).transpose();
      velocities.emplace_back(std::move(v));
    }
  }
  if (velocity) return ImmersionPath(std::move(curves), std::move(velocities));
  return ImmersionPath(std::move(curves));
}

FieldAlongCurve ImmersionPath::finite_difference_velocity(std::size_t i) const {
  const std::size_t T = steps();
  if (i > T) throw Error(ErrorKind::Precondition, "time index out of range");
  const auto& P = [&](std::size_t k) -> const Eigen::MatrixXd& { return curves_[k].points(); };
  const double h12 = 12.0 * dt();
  Eigen::MatrixXd v;
  if (i >= 2 && i + 2 <= T) {
    v = (-P(i + 2) + 8.0 * P(i + 1) - 8.0 * P(i - 1) + P(i - 2)) / h12;
  } else if (i == 0) {
    v = (-25.0 * P(0) + 48.0 * P(1) - 36.0 * P(2) + 16.0 * P(3) - 3.0 * P(4)) / h12;
  } else if (i == 1) {
    v = (-3.0 * P(0) - 10.0 * P(1) + 18.0 * P(2) - 6.0 * P(3) + P(4)) / h12;
  } else if (i == T) {
    v = (25.0 * P(T) - 48.0 * P(T - 1) + 36.0 * P(T - 2) - 16.0 * P(T - 3) + 3.0 * P(T - 4)) / h12;
  } else {
    v = (3.0 * P(T) + 10.0 * P(T - 1) - 18.0 * P(T - 2) + 6.0 * P(T - 3) - P(T - 4)) / h12;
  }
  return FieldAlongCurve(std::move(v));
}

FieldAlongCurve ImmersionPath::velocity(std::size_t i) const {
  if (velocities_) return velocities_->at(i);
  return finite_difference_velocity(i);
}

BoundReport BoundReport::make(double lhs, double rhs) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  r.satisfied = r.gap >= -1e-8 * std::max(1.0, std::abs(rhs));
  return r;
}

double trapezoid(const std::vector<double>& values, double h) {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
  return s * h;
}

double ga_inner(const DiscreteCurve& f, const FieldAlongCurve& h, const FieldAlongCurve& k,
                double A) {
  check_metric_parameter(A);
  check_compatible(f, h);
  check_compatible(f, k);
  const CurveFrame frame = curve_frame(f);
  Eigen::VectorXd weight = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(f.size()));
  if (A != 0.0) {
    weight.array() += A * mean_curvature(f, frame).vectors().rowwise().squaredNorm().array();
  }
  const Eigen::VectorXd integrand =
      weight.array() * pointwise_dot(h.vectors(), k.vectors()).array();
  return integrate_against_volume(frame, integrand);
}

ImmersionPath make_horizontal(const ImmersionPath& path) {
  const PathInterpolant interp(path);
  const std::size_t K = path.grid_size();
  const std::size_t T = path.steps();
  const double dt = path.dt();
  const auto d = static_cast<Eigen::Index>(path.dim());

  std::vector<DiscreteCurve> curves;
  std::vector<FieldAlongCurve> velocities;
  curves.reserve(T + 1);
  velocities.reserve(T + 1);

  Eigen::VectorXd psi = periodic_grid(K);
  for (std::size_t i = 0; i <= T; ++i) {
    const double t = path.time(i);
    const auto here = interp.at(t);
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(K), d), vel(static_cast<Eigen::Index>(K), d);
    Eigen::VectorXd x(d), fx(d), v(d), dv(d);
    for (Eigen::Index j = 0; j < psi.size(); ++j) {
      here.first.evaluate(psi[j], x, fx);
      here.second.evaluate(psi[j], v, dv);
      const double sq = fx.squaredNorm();
      if (!(sq > 0.0)) {
        throw Error(ErrorKind::DegenerateImmersion, "path leaves the space of immersions");
      }
      pts.row(j) = x.transpose();
      vel.row(j) = (v - (v.dot(fx) / sq) * fx).transpose();
    }
    if (i == 0) pts = path.curve(0).points();
    curves.emplace_back(std::move(pts));
    curve_frame(curves.back());
    velocities.emplace_back(std::move(vel));

    if (i == T) break;
    const Eigen::VectorXd k1 = reparam_field(here, psi);
    const auto mid = interp.at(t + 0.5 * dt);
    const Eigen::VectorXd k2 = reparam_field(mid, psi + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = reparam_field(mid, psi + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = reparam_field(interp.at(t + dt), psi + dt * k3);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return ImmersionPath(std::move(curves), std::move(velocities), path.t_start(), path.t_end());
}

double horizontality_residual(const ImmersionPath& path, bool use_explicit_velocities,
                              double tol) {
  double worst = 0.0;
  for (std::size_t i = 0; i <= path.steps(); ++i) {
    const FieldAlongCurve v = use_explicit_velocities ? path.velocity(i)
                                                      : path.finite_difference_velocity(i);
    const CurveFrame frame = curve_frame(path.curve(i));
    const Eigen::VectorXd num = pointwise_dot(v.vectors(), frame.derivative).cwiseAbs();
    const Eigen::VectorXd den =
        (v.vectors().rowwise().norm().array() * frame.speed.array()) + tol;
    worst = std::max(worst, (num.array() / den.array()).maxCoeff());
  }
  return worst;
}

LengthEnergy path_length_energy(const ImmersionPath& path, double A, bool horizontal_only) {
  check_metric_parameter(A);
  std::vector<double> speed, speed_sq;
  for (std::size_t i = 0; i <= path.steps(); ++i) {
    const double s = slice_ga_norm_sq(path.curve(i), path.velocity(i), A, horizontal_only);
    speed_sq.push_back(s);
    speed.push_back(std::sqrt(std::max(0.0, s)));
  }
  return {trapezoid(speed, path.dt()), 0.5 * trapezoid(speed_sq, path.dt())};
}

std::vector<double> path_volumes(const ImmersionPath& path) {
  std::vector<double> vols;
  for (const auto& c : path.curves()) vols.push_back(curve_frame(c).volume);
  return vols;
}

BoundReport lipschitz_gap(const ImmersionPath& path, double A) {
  if (!(A > 0.0)) throw Error(ErrorKind::Parameter, "the Lipschitz bound needs A > 0");
  const double lhs = std::sqrt(curve_frame(path.curves().back()).volume) -
                     std::sqrt(curve_frame(path.curves().front()).volume);
  const double rhs = path_length_energy(path, A, true).length / (2.0 * std::sqrt(A));
  return BoundReport::make(lhs, rhs);
}

BoundReport swept_volume(const ImmersionPath& path, double A) {
  check_metric_parameter(A);
  std::vector<double> sweep;
  double max_vol = 0.0;
  for (std::size_t i = 0; i <= path.steps(); ++i) {
    const CurveFrame frame = curve_frame(path.curve(i));
    const auto split = split_tangential_normal(frame, path.velocity(i));
    sweep.push_back(integrate_against_volume(frame, split.normal.vectors().rowwise().norm()));
    max_vol = std::max(max_vol, frame.volume);
  }
  const double lhs = trapezoid(sweep, path.dt());
  const double rhs = std::sqrt(max_vol) * path_length_energy(path, A, true).length;
  return BoundReport::make(lhs, rhs);
}

double graph_energy(const ImmersionPath& path, double A) {
  check_metric_parameter(A);
  std::vector<double> slices;
  for (std::size_t i = 0; i <= path.steps(); ++i) {
    const DiscreteCurve& f = path.curve(i);
    const CurveFrame frame = curve_frame(f);
    const FieldAlongCurve v = path.velocity(i);
    const Eigen::MatrixXd vn = split_tangential_normal(frame, v).normal.vectors();
    const Eigen::ArrayXd vn_sq = vn.rowwise().squaredNorm().array();
    Eigen::ArrayXd weight = Eigen::ArrayXd::Ones(vn_sq.size());
    if (A != 0.0) weight += A * mean_curvature(f, frame).vectors().rowwise().squaredNorm().array();
    // Volume element of the graph (t, f(t, x)) under dt^2 + g.
    const Eigen::ArrayXd v_sq = v.vectors().rowwise().squaredNorm().array();
    const Eigen::ArrayXd cross = pointwise_dot(v.vectors(), frame.derivative).array();
    const Eigen::ArrayXd speed_sq = frame.speed.array().square();
    const Eigen::ArrayXd graph_vol = ((1.0 + v_sq) * speed_sq - cross.square()).sqrt();
    const Eigen::ArrayXd integrand = weight * vn_sq / (1.0 + vn_sq).sqrt() * graph_vol;
    slices.push_back(integrand.sum() * quadrature_weight(f.size()));
  }
  return 0.5 * trapezoid(slices, path.dt());
}

}  // namespace shapeflow
