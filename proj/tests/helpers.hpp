#pragma once

#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "shapeflow/curve_geometry.hpp"

namespace testing_support {

inline Eigen::VectorXd vec(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

inline Eigen::VectorXd vec(double x, double y, double z) {
  Eigen::VectorXd v(3);
  v << x, y, z;
  return v;
}

inline shapeflow::DiscreteCurve ellipse(std::size_t K, double a, double b) {
  return shapeflow::DiscreteCurve::sample(K, 2, [=](double t) { return vec(a * std::cos(t), b * std::sin(t)); });
}

/// Adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 40) {
  const double c = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fc = f(c);
  const double whole = (b - a) / 6.0 * (fa + 4 * fc + fb);
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double a0, double b0, double fa0, double fb0, double fc0, double s, double eps, int d) {
        const double c0 = 0.5 * (a0 + b0);
        const double l = 0.5 * (a0 + c0), r = 0.5 * (c0 + b0);
        const double fl = f(l), fr = f(r);
        const double left = (c0 - a0) / 6.0 * (fa0 + 4 * fl + fc0);
        const double right = (b0 - c0) / 6.0 * (fc0 + 4 * fr + fb0);
        if (d <= 0 || std::abs(left + right - s) <= 15 * eps) return left + right + (left + right - s) / 15;
        return rec(a0, c0, fa0, fc0, fl, left, eps / 2, d - 1) + rec(c0, b0, fc0, fb0, fr, right, eps / 2, d - 1);
      };
  return rec(a, b, fa, fb, fc, whole, tol, depth);
}

}  // namespace testing_support
