#include "shapeflow/shape_curvature.hpp"

#include <cmath>

#include "shapeflow/error.hpp"
#include "shapeflow/spectral.hpp"

namespace shapeflow {
namespace {

void check_normal(const CurveFrame& frame, const FieldAlongCurve& a, const char* name) {
  const Eigen::VectorXd along = pointwise_dot(a.vectors(), frame.tangent).cwiseAbs();
  const double scale = std::max(1.0, a.vectors().rowwise().norm().maxCoeff());
  if (along.maxCoeff() > 1e-8 * scale) {
    throw Error(ErrorKind::Precondition, std::string(name) + " must be a normal field");
  }
}

// Wedge products a ^ b represented in the ambient exterior square: one
// component for d = 2, three (the cross product) for d = 3.
Eigen::MatrixXd wedge(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() == 2) {
    Eigen::MatrixXd w(a.rows(), 1);
    w.col(0) = a.col(0).cwiseProduct(b.col(1)) - a.col(1).cwiseProduct(b.col(0));
    return w;
  }
  Eigen::MatrixXd w(a.rows(), 3);
  w.col(0) = a.col(1).cwiseProduct(b.col(2)) - a.col(2).cwiseProduct(b.col(1));
  w.col(1) = a.col(2).cwiseProduct(b.col(0)) - a.col(0).cwiseProduct(b.col(2));
  w.col(2) = a.col(0).cwiseProduct(b.col(1)) - a.col(1).cwiseProduct(b.col(0));
  return w;
}

Eigen::MatrixXd normal_derivative(const CurveFrame& frame, const Eigen::MatrixXd& xi) {
  const Eigen::MatrixXd d = differentiate_periodic(xi, 1);
  const Eigen::VectorXd along = pointwise_dot(d, frame.tangent);
  return d - (frame.tangent.array().colwise() * along.array()).matrix();
}

// Q~(x ^ y) for the form Q(a, b) = Tr(L_a o L_b) = (a.H)(b.H), by polarization.
Eigen::ArrayXd wedge_quadratic(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                               const Eigen::MatrixXd& H) {
  const Eigen::ArrayXd xh = pointwise_dot(x, H).array();
  const Eigen::ArrayXd yh = pointwise_dot(y, H).array();
  const Eigen::ArrayXd xx = x.rowwise().squaredNorm().array();
  const Eigen::ArrayXd yy = y.rowwise().squaredNorm().array();
  const Eigen::ArrayXd xy = pointwise_dot(x, y).array();
  return xx * yh * yh - 2.0 * xy * xh * yh + yy * xh * xh;
}

}  // namespace

Eigen::VectorXd wedge_norm_sq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return wedge(a, b).rowwise().squaredNorm();
}

FieldAlongCurve christoffel0(const DiscreteCurve& f, const FieldAlongCurve& a,
                             const FieldAlongCurve& b) {
  check_compatible(f, a);
  check_compatible(f, b);
  const CurveFrame frame = curve_frame(f);
  check_normal(frame, a, "a");
  check_normal(frame, b, "b");
  const Eigen::MatrixXd H = mean_curvature(f, frame).vectors();
  const Eigen::ArrayXd ab = pointwise_dot(a.vectors(), b.vectors()).array();
  const Eigen::ArrayXd la = pointwise_dot(a.vectors(), H).array();
  const Eigen::ArrayXd lb = pointwise_dot(b.vectors(), H).array();
  Eigen::MatrixXd out = -0.5 * (H.array().colwise() * ab).matrix();
  out += 0.5 * (b.vectors().array().colwise() * la).matrix();
  out += 0.5 * (a.vectors().array().colwise() * lb).matrix();
  return FieldAlongCurve(std::move(out));
}

CurvatureBreakdown curvature_terms(const DiscreteCurve& f, const FieldAlongCurve& x,
                                   const FieldAlongCurve& y) {
  check_compatible(f, x);
  check_compatible(f, y);
  const CurveFrame frame = curve_frame(f);
  check_normal(frame, x, "x");
  check_normal(frame, y, "y");
  const Eigen::MatrixXd H = mean_curvature(f, frame).vectors();
  const Eigen::MatrixXd& X = x.vectors();
  const Eigen::MatrixXd& Y = y.vectors();
  const Eigen::ArrayXd inv_metric = frame.speed.array().square().inverse();

  const Eigen::ArrayXd xh = pointwise_dot(X, H).array();
  const Eigen::ArrayXd yh = pointwise_dot(Y, H).array();
  const Eigen::MatrixXd mixed =
      (Y.array().colwise() * xh).matrix() - (X.array().colwise() * yh).matrix();

  const Eigen::MatrixXd dX = normal_derivative(frame, X);
  const Eigen::MatrixXd dY = normal_derivative(frame, Y);
  const Eigen::ArrayXd skew = pointwise_dot(X, dY).array() - pointwise_dot(Y, dX).array();
  const Eigen::MatrixXd twist = wedge(X, dY) - wedge(Y, dX);

  CurvatureBreakdown out;
  out.term1 = integrate_against_volume(frame, (-0.5 * wedge_quadratic(X, Y, H)).matrix());
  out.term2 = integrate_against_volume(frame, (-0.25 * mixed.rowwise().squaredNorm()));
  out.term3 = integrate_against_volume(
      frame, (0.25 * wedge_norm_sq(X, Y).array() * H.rowwise().squaredNorm().array()).matrix());
  out.term4 = 0.0;  // flat ambient space
  out.term5 = 0.0;
  out.term6 = integrate_against_volume(frame, (-0.5 * skew.square() * inv_metric).matrix());
  out.term7 = integrate_against_volume(
      frame, (0.5 * twist.rowwise().squaredNorm().array() * inv_metric).matrix());
  out.total = out.term1 + out.term2 + out.term3 + out.term4 + out.term5 + out.term6 + out.term7;
  return out;
}

CurvatureBreakdown sectional_curvature_breakdown(const DiscreteCurve& f, const FieldAlongCurve& x,
                                                 const FieldAlongCurve& y) {
  CurvatureBreakdown out = curvature_terms(f, x, y);
  const CurveFrame frame = curve_frame(f);
  const double xx = integrate_against_volume(frame, x.vectors().rowwise().squaredNorm());
  const double yy = integrate_against_volume(frame, y.vectors().rowwise().squaredNorm());
  const double xy = integrate_against_volume(frame, pointwise_dot(x.vectors(), y.vectors()));
  const double denom = xx * yy - xy * xy;
  if (!(denom > 1e-10)) {
    throw Error(ErrorKind::DegeneratePlane, "x and y do not span a plane in G^0");
  }
  out.sectional = -out.total / denom;
  return out;
}

double sectional_curvature(const DiscreteCurve& f, const FieldAlongCurve& x,
                           const FieldAlongCurve& y) {
  return sectional_curvature_breakdown(f, x, y).sectional;
}

}  // namespace shapeflow
