#pragma once

// Discrete differential geometry of closed curves f: S^1 -> R^d, d in {2, 3},
// sampled on the uniform periodic grid. All integrals over S^1 are trapezoid
// sums with weight 2*pi/K, which is spectrally accurate for smooth data.

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace shapeflow {

/// Closed curve sampled at theta_j = 2*pi*j/K; stored as a K x d matrix.
class DiscreteCurve {
 public:
  explicit DiscreteCurve(Eigen::MatrixXd points);

  /// Samples point(theta) on a grid of size K.
  static DiscreteCurve sample(std::size_t K, int dim,
                              const std::function<Eigen::VectorXd(double)>& point);

  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  int dim() const noexcept { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const noexcept { return points_; }

 private:
  Eigen::MatrixXd points_;
};

/// Vector field along a curve (tangent vector to the space of immersions).
class FieldAlongCurve {
 public:
  explicit FieldAlongCurve(Eigen::MatrixXd vectors) : vectors_(std::move(vectors)) {}

  static FieldAlongCurve zeros(const DiscreteCurve& base) {
    return FieldAlongCurve(Eigen::MatrixXd::Zero(base.points().rows(), base.points().cols()));
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(vectors_.rows()); }
  int dim() const noexcept { return static_cast<int>(vectors_.cols()); }
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }

 private:
  Eigen::MatrixXd vectors_;
};

/// First-order data of an immersion: f_theta, |f_theta| (the pullback metric
/// is its square since dim M = 1), unit tangent and total length.
struct CurveFrame {
  Eigen::MatrixXd derivative;
  Eigen::VectorXd speed;
  Eigen::MatrixXd tangent;
  Eigen::VectorXd density;  // vol(f*g) per unit dtheta, equal to speed
  double volume = 0.0;
};

struct TangentNormalSplit {
  Eigen::VectorXd tangential;  // coefficient c with h^T = c * f_theta
  FieldAlongCurve normal;
};

/// Quadrature weight of the periodic trapezoid rule on K nodes.
double quadrature_weight(std::size_t K);

/// Pointwise Euclidean inner product of two K x d blocks.
Eigen::VectorXd pointwise_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Throws ErrorKind::Precondition when the field does not live on the curve's grid.
void check_compatible(const DiscreteCurve& f, const FieldAlongCurve& h);

/// Throws ErrorKind::DegenerateImmersion when f_theta vanishes somewhere.
CurveFrame curve_frame(const DiscreteCurve& f);

TangentNormalSplit split_tangential_normal(const DiscreteCurve& f, const FieldAlongCurve& h);
TangentNormalSplit split_tangential_normal(const CurveFrame& frame, const FieldAlongCurve& h);

/// Mean curvature Tr(S) = (f_thetatheta)^perp / |f_theta|^2, a normal field.
FieldAlongCurve mean_curvature(const DiscreteCurve& f);
FieldAlongCurve mean_curvature(const DiscreteCurve& f, const CurveFrame& frame);

/// d/d(eps) Vol(f + eps*h) at eps = 0, i.e. -int g(Tr S, h^perp) vol(f*g).
double volume_first_variation(const DiscreteCurve& f, const FieldAlongCurve& h);

struct VariationOrder {
  std::vector<double> errors;  // |central difference - exact| per eps
  double fitted = 0.0;         // least-squares slope of log error against log eps
  double min_pairwise = 0.0;   // smallest order between consecutive eps
};

/// Observed convergence order of central differences of Vol(f + eps h)
/// against volume_first_variation. Needs at least two distinct eps.
VariationOrder first_variation_order(const DiscreteCurve& f, const FieldAlongCurve& h,
                                     const std::vector<double>& eps);

/// Integral of a scalar density against vol(f*g).
double integrate_against_volume(const CurveFrame& frame, const Eigen::VectorXd& density);

/// Planar left normal: the unit tangent rotated by +90 degrees. Requires d = 2.
Eigen::MatrixXd left_normal(const CurveFrame& frame);

}  // namespace shapeflow
