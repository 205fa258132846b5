#include "shapeflow/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "shapeflow/error.hpp"
#include "shapeflow/spectral.hpp"

namespace shapeflow {

DiscreteCurve::DiscreteCurve(Eigen::MatrixXd points) : points_(std::move(points)) {
  check_grid_size(static_cast<std::size_t>(points_.rows()));
  if (points_.cols() != 2 && points_.cols() != 3) {
    throw Error(ErrorKind::Unsupported,
                "ambient dimension must be 2 or 3, got " + std::to_string(points_.cols()));
  }
}

DiscreteCurve DiscreteCurve::sample(std::size_t K, int dim,
                                    const std::function<Eigen::VectorXd(double)>& point) {
  check_grid_size(K);
  const Eigen::VectorXd theta = periodic_grid(K);
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(K), dim);
  for (Eigen::Index j = 0; j < pts.rows(); ++j) pts.row(j) = point(theta[j]).transpose();
  return DiscreteCurve(std::move(pts));
}

double quadrature_weight(std::size_t K) {
  return 2.0 * std::numbers::pi / static_cast<double>(K);
}

Eigen::VectorXd pointwise_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).rowwise().sum().matrix();
}

void check_compatible(const DiscreteCurve& f, const FieldAlongCurve& h) {
  if (h.size() != f.size() || h.dim() != f.dim()) {
    throw Error(ErrorKind::Precondition, "field does not match the grid of its base curve");
  }
}

CurveFrame curve_frame(const DiscreteCurve& f) {
  CurveFrame frame;
  frame.derivative = differentiate_periodic(f.points(), 1);
  frame.speed = frame.derivative.rowwise().norm();
  const double max_speed = frame.speed.maxCoeff();
  const double min_speed = frame.speed.minCoeff();
  if (!(min_speed > 1e-12 * std::max(1.0, max_speed))) {
    throw Error(ErrorKind::DegenerateImmersion,
                "curve is not an immersion: min |f_theta| = " + std::to_string(min_speed));
  }
  frame.tangent = frame.derivative.array().colwise() / frame.speed.array();
  frame.density = frame.speed;
  frame.volume = frame.speed.sum() * quadrature_weight(f.size());
  return frame;
}

TangentNormalSplit split_tangential_normal(const CurveFrame& frame, const FieldAlongCurve& h) {
  const Eigen::VectorXd speed_sq = frame.speed.array().square();
  Eigen::VectorXd coeff = pointwise_dot(h.vectors(), frame.derivative).array() / speed_sq.array();
  Eigen::MatrixXd normal = h.vectors() - (frame.derivative.array().colwise() * coeff.array()).matrix();
  return {std::move(coeff), FieldAlongCurve(std::move(normal))};
}

TangentNormalSplit split_tangential_normal(const DiscreteCurve& f, const FieldAlongCurve& h) {
  check_compatible(f, h);
  return split_tangential_normal(curve_frame(f), h);
}

FieldAlongCurve mean_curvature(const DiscreteCurve& f, const CurveFrame& frame) {
  const Eigen::MatrixXd second = differentiate_periodic(f.points(), 2);
  const Eigen::VectorXd along = pointwise_dot(second, frame.tangent);
  Eigen::MatrixXd normal = second - (frame.tangent.array().colwise() * along.array()).matrix();
  normal.array().colwise() /= frame.speed.array().square();
  return FieldAlongCurve(std::move(normal));
}

FieldAlongCurve mean_curvature(const DiscreteCurve& f) { return mean_curvature(f, curve_frame(f)); }

double integrate_against_volume(const CurveFrame& frame, const Eigen::VectorXd& density) {
  return density.dot(frame.density) * quadrature_weight(static_cast<std::size_t>(density.size()));
}

double volume_first_variation(const DiscreteCurve& f, const FieldAlongCurve& h) {
  check_compatible(f, h);
  const CurveFrame frame = curve_frame(f);
  const FieldAlongCurve H = mean_curvature(f, frame);
  const TangentNormalSplit split = split_tangential_normal(frame, h);
  // The divergence of the tangential part integrates to zero on closed M.
  return -integrate_against_volume(frame, pointwise_dot(H.vectors(), split.normal.vectors()));
}

VariationOrder first_variation_order(const DiscreteCurve& f, const FieldAlongCurve& h,
                                     const std::vector<double>& eps) {
  if (eps.size() < 2) throw Error(ErrorKind::Parameter, "order estimate needs two or more eps");
  const double exact = volume_first_variation(f, h);
  VariationOrder out;
  std::vector<double> lx, ly;
  for (double e : eps) {
    if (!(e > 0.0)) throw Error(ErrorKind::Parameter, "eps must be positive");
    const double plus = curve_frame(DiscreteCurve(f.points() + e * h.vectors())).volume;
    const double minus = curve_frame(DiscreteCurve(f.points() - e * h.vectors())).volume;
    out.errors.push_back(std::abs((plus - minus) / (2.0 * e) - exact));
    lx.push_back(std::log(e));
    ly.push_back(std::log(out.errors.back()));
  }
  const double n = static_cast<double>(eps.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  out.fitted = sxy / sxx;
  out.min_pairwise = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    out.min_pairwise = std::min(out.min_pairwise, (ly[i] - ly[i + 1]) / (lx[i] - lx[i + 1]));
  }
  return out;
}

Eigen::MatrixXd left_normal(const CurveFrame& frame) {
  if (frame.tangent.cols() != 2) {
    throw Error(ErrorKind::Unsupported, "left normal is only defined for plane curves");
  }
  Eigen::MatrixXd n(frame.tangent.rows(), 2);
  n.col(0) = -frame.tangent.col(1);
  n.col(1) = frame.tangent.col(0);
  return n;
}

}  // namespace shapeflow
