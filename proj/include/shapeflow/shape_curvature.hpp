#pragma once

// Christoffel symbol and sectional curvature of the shape space of curves
// with the G^0 metric, at a base curve f in flat R^2 or R^3.
//
// For one-dimensional M the Weingarten map is a scalar: Tr(L_a) = g(a, Tr S)
// and Tr(L_a o L_b) = g(a, Tr S) g(b, Tr S). The normal connection is
// nabla^perp_theta xi = (d_theta xi)^perp and one-forms on M are measured with
// (f*g)^{-1} = 1/|f_theta|^2.

#include "shapeflow/curve_geometry.hpp"

namespace shapeflow {

/// The seven integrated terms of G^0(R(x, y)x, y). Terms 4 and 5 carry the
/// ambient curvature and vanish identically for flat R^d.
struct CurvatureBreakdown {
  double term1 = 0.0;  // -1/2 Tr~(L o L)(x ^ y)                  <= 0
  double term2 = 0.0;  // -1/4 |Tr(L_x) y - Tr(L_y) x|^2           <= 0
  double term3 = 0.0;  // +1/4 |x ^ y|^2 |Tr S|^2                  >= 0
  double term4 = 0.0;  // g(R(x, y)x, y)
  double term5 = 0.0;  // |x ^ y|^2 Ric(TM, span(x, y))
  double term6 = 0.0;  // -1/2 |g(x, nabla y) - g(y, nabla x)|^2   <= 0
  double term7 = 0.0;  // +1/2 |x ^ nabla y - y ^ nabla x|^2       >= 0
  double total = 0.0;
  double sectional = 0.0;  // filled by sectional_curvature
};

/// Gamma_0(a, b) = -1/2 g(a, b) Tr S + 1/2 Tr(L_a) b + 1/2 Tr(L_b) a.
/// Throws ErrorKind::Precondition if a or b is not normal to f.
FieldAlongCurve christoffel0(const DiscreteCurve& f, const FieldAlongCurve& a,
                             const FieldAlongCurve& b);

CurvatureBreakdown curvature_terms(const DiscreteCurve& f, const FieldAlongCurve& x,
                                   const FieldAlongCurve& y);

/// k = -G^0(R(x, y)x, y) / (|x|^2 |y|^2 - G^0(x, y)^2). Throws
/// ErrorKind::DegeneratePlane when the denominator is below 1e-10.
double sectional_curvature(const DiscreteCurve& f, const FieldAlongCurve& x,
                           const FieldAlongCurve& y);

/// Same as sectional_curvature, returning the full breakdown.
CurvatureBreakdown sectional_curvature_breakdown(const DiscreteCurve& f, const FieldAlongCurve& x,
                                                 const FieldAlongCurve& y);

/// Squared norm of a ^ b per node (d = 2: scalar cross product; d = 3: cross product).
Eigen::VectorXd wedge_norm_sq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace shapeflow
