#include "shapeflow/compression_wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shapeflow/error.hpp"
#include "shapeflow/smoothing.hpp"

namespace shapeflow {
namespace {

Eigen::VectorXd linspace(double a, double b, std::size_t n) {
  return Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), a, b);
}

std::size_t points_for(double length, double step) {
  return static_cast<std::size_t>(std::ceil(length / step - 1e-9)) + 1;
}

// Second-order derivative along rows (axis 0) or columns (axis 1), one-sided
// at the boundary.
Eigen::MatrixXd difference(const Eigen::MatrixXd& m, int axis, double h) {
  const Eigen::MatrixXd a = axis == 0 ? m : Eigen::MatrixXd(m.transpose());
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd d(a.rows(), a.cols());
  if (n < 3) throw Error(ErrorKind::Parameter, "grid too small for differencing");
  for (Eigen::Index i = 1; i + 1 < n; ++i) d.row(i) = (a.row(i + 1) - a.row(i - 1)) / (2.0 * h);
  d.row(0) = (-3.0 * a.row(0) + 4.0 * a.row(1) - a.row(2)) / (2.0 * h);
  d.row(n - 1) = (3.0 * a.row(n - 1) - 4.0 * a.row(n - 2) + a.row(n - 3)) / (2.0 * h);
  return axis == 0 ? d : Eigen::MatrixXd(d.transpose());
}

double trapezoid_row(const Eigen::VectorXd& v, double h) {
  if (v.size() < 2) return 0.0;
  return h * (v.sum() - 0.5 * (v[0] + v[v.size() - 1]));
}

// int_{t0}^{t1} of the piecewise linear interpolant of samples e on grid t.
double integrate_piecewise_linear(const Eigen::VectorXd& t, const Eigen::VectorXd& e, double t0,
                                  double t1) {
  double total = 0.0;
  for (Eigen::Index i = 0; i + 1 < t.size(); ++i) {
    const double a = std::max(t[i], t0);
    const double b = std::min(t[i + 1], t1);
    if (b <= a) continue;
    const double h = t[i + 1] - t[i];
    auto value = [&](double s) { return e[i] + (e[i + 1] - e[i]) * (s - t[i]) / h; };
    total += 0.5 * (b - a) * (value(a) + value(b));
  }
  return total;
}

double derivative(const ScalarFn& fn, double x) {
  const double h = 1e-5;
  return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

}  // namespace

double DiffPath1D::dx() const { return x_grid.size() > 1 ? x_grid[1] - x_grid[0] : 0.0; }
double DiffPath1D::dt() const { return t_grid.size() > 1 ? t_grid[1] - t_grid[0] : 0.0; }

double DiffPath1D::min_slope() const {
  double s = std::numeric_limits<double>::infinity();
  const double h = dx();
  for (Eigen::Index j = 0; j + 1 < phi.cols(); ++j) {
    s = std::min(s, ((phi.col(j + 1) - phi.col(j)) / h).minCoeff());
  }
  return s;
}

void DiffPath1D::validate() const {
  if (!(min_slope() > 0.0)) {
    throw Error(ErrorKind::InvalidWave, "sampled maps are not strictly increasing");
  }
}

double basic_wave_max_slope(double epsilon) {
  const BumpKernel kernel(epsilon);
  return kernel.cdf(0.5) - kernel.cdf(-0.5);
}

DiffPath1D basic_wave(double lambda, double epsilon, const WaveWindow& window) {
  if (!(epsilon > 0.0) || epsilon >= 0.5) {
    throw Error(ErrorKind::Parameter, "epsilon must lie in (0, 1/2)");
  }
  const double max_slope = basic_wave_max_slope(epsilon);
  if (!(lambda > 0.0) || lambda * max_slope >= 1.0) {
    throw Error(ErrorKind::InvalidWave, "lambda must lie in (0, 1/max f')");
  }
  if (!(window.x_max > window.x_min) || !(window.t_max > window.t_min)) {
    throw Error(ErrorKind::Parameter, "empty wave window");
  }
  const double max_dx = epsilon / 8.0;
  const std::size_t nx = window.nx ? window.nx : points_for(window.x_max - window.x_min, max_dx);
  if (nx < 3 || (window.x_max - window.x_min) / static_cast<double>(nx - 1) > max_dx * (1 + 1e-12)) {
    throw Error(ErrorKind::Parameter, "x grid does not resolve epsilon (dx <= epsilon/8)");
  }
  const double dx = (window.x_max - window.x_min) / static_cast<double>(nx - 1);
  const std::size_t nt = window.nt ? window.nt : points_for(window.t_max - window.t_min, dx);
  if (nt < 3) throw Error(ErrorKind::Parameter, "t grid too small");

  DiffPath1D path;
  path.kind = WaveKind::Basic;
  path.lambda = lambda;
  path.epsilon = epsilon;
  path.x_grid = linspace(window.x_min, window.x_max, nx);
  path.t_grid = linspace(window.t_min, window.t_max, nt);
  path.phi.resize(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(nx));
  const BumpKernel kernel(epsilon);
  for (Eigen::Index i = 0; i < path.phi.rows(); ++i) {
    for (Eigen::Index j = 0; j < path.phi.cols(); ++j) {
      const double x = path.x_grid[j];
      path.phi(i, j) = x + smoothed_unit_clamp(kernel, path.t_grid[i] - lambda * x);
    }
  }
  path.displacement = path.phi.row(path.phi.rows() - 1).transpose() - path.x_grid;
  path.energy_bound_rate = max_slope * max_slope * (1.0 + 2.0 * epsilon - lambda) / lambda;
  path.validate();
  return path;
}

DiffPath1D identity_path(const DiffPath1D& like) {
  DiffPath1D path;
  path.t_grid = like.t_grid;
  path.x_grid = like.x_grid;
  path.phi = like.x_grid.transpose().replicate(like.t_grid.size(), 1);
  path.displacement = Eigen::VectorXd::Zero(like.x_grid.size());
  return path;
}

WaveEnergyReport wave_energy(const DiffPath1D& path, double t0, double t1) {
  const double ta = path.t_grid[0];
  const double tb = path.t_grid[path.t_grid.size() - 1];
  const double slack = 1e-9 * std::max(1.0, tb - ta);
  if (!(t1 > t0) || t0 < ta - slack || t1 > tb + slack) {
    throw Error(ErrorKind::Parameter, "[t0, t1] must lie inside the path's time range");
  }
  const Eigen::MatrixXd phi_t = difference(path.phi, 0, path.dt());
  const Eigen::MatrixXd phi_y = difference(path.phi, 1, path.dx());
  Eigen::VectorXd rate(path.t_grid.size());
  for (Eigen::Index i = 0; i < rate.size(); ++i) {
    const Eigen::VectorXd row = (phi_t.row(i).array().square() * phi_y.row(i).array()).transpose();
    rate[i] = trapezoid_row(row, path.dx());
  }
  WaveEnergyReport report;
  report.energy = integrate_piecewise_linear(path.t_grid, rate, t0, t1);
  switch (path.kind) {
    case WaveKind::Identity: report.bound = 0.0; break;
    case WaveKind::Basic: report.bound = (t1 - t0) * path.energy_bound_rate; break;
    case WaveKind::ShortPath: report.bound = path.energy_bound_total; break;
  }
  report.satisfied = report.energy <= report.bound * (1.0 + 1e-6);
  return report;
}

WaveEnergyReport wave_energy(const DiffPath1D& path) {
  return wave_energy(path, path.t_grid[0], path.t_grid[path.t_grid.size() - 1]);
}

DiffPath1D short_path_to(const ScalarFn& g, double epsilon, const ShortPathOptions& options) {
  if (!(epsilon > 0.0) || epsilon >= 0.5) {
    throw Error(ErrorKind::Parameter, "epsilon must lie in (0, 1/2)");
  }
  if (!(options.support_max > options.support_min) || !(options.resolution >= 1.0) ||
      options.margin < 0.0) {
    throw Error(ErrorKind::Parameter, "invalid short path options");
  }
  const double lambda = 1.0 - epsilon;
  const BumpKernel kernel(epsilon);
  const double step = epsilon / options.resolution;

  double b = 0.0;
  for (double x = options.support_min; x <= options.support_max; x += 0.25 * step) {
    b = std::max(b, g(x));
  }
  const double x_min = options.support_min - 4.0 * epsilon - options.margin;
  const double x_max = options.support_max + b + 4.0 * epsilon + options.margin;
  const std::size_t nx = points_for(x_max - x_min, step);

  DiffPath1D path;
  path.kind = WaveKind::ShortPath;
  path.lambda = lambda;
  path.epsilon = epsilon;
  path.x_grid = linspace(x_min, x_max, nx);
  const double dx = path.dx();
  const Eigen::Index n = path.x_grid.size();
  path.displacement.resize(n);
  Eigen::VectorXd slope(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = path.x_grid[j];
    const double v = g(x);
    const bool inside = x >= options.support_min && x <= options.support_max;
    if (!inside && std::abs(v) > 1e-14) {
      throw Error(ErrorKind::Domain, "g does not vanish outside the declared support");
    }
    if (v < 0.0) throw Error(ErrorKind::InvalidDisplacement, "g must be non-negative");
    path.displacement[j] = inside ? v : 0.0;
    slope[j] = inside ? derivative(g, x) : 0.0;
    if (slope[j] <= -1.0) {
      throw Error(ErrorKind::InvalidDisplacement, "g' <= -1: x + g(x) is not a diffeomorphism");
    }
  }
  Eigen::Index peak = 0;
  b = path.displacement.maxCoeff(&peak);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = peak + 1; j < n; ++j) shift[j] = (1.0 - lambda) * (b - path.displacement[j]);

  double t_lo = std::numeric_limits<double>::infinity();
  double t_hi = -t_lo;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (path.displacement[j] <= 0.0) continue;
    const double start = lambda * path.x_grid[j] + shift[j];
    t_lo = std::min(t_lo, start - epsilon);
    t_hi = std::max(t_hi, start + path.displacement[j] + epsilon);
  }
  if (!std::isfinite(t_lo)) {
    t_lo = 0.0;
    t_hi = 1.0;
  }
  t_lo -= 2.0 * dx;
  t_hi += 2.0 * dx;
  path.t_grid = linspace(t_lo, t_hi, points_for(t_hi - t_lo, dx));

  path.phi.resize(path.t_grid.size(), n);
  for (Eigen::Index i = 0; i < path.phi.rows(); ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = path.displacement[j];
      const double z = path.t_grid[i] - lambda * path.x_grid[j] - shift[j];
      path.phi(i, j) = path.x_grid[j] + (a > 0.0 ? kernel.ramp(z) - kernel.ramp(z - a) : 0.0);
    }
  }
  path.validate();

  double integral = 0.0, measure = 0.0, rising = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = path.displacement[j];
    if (a <= 0.0) continue;
    integral += a * dx;
    measure += dx;
    const double up = std::max(slope[j], 0.0);
    rising += (j <= peak ? 2.0 * epsilon : 2.0 * epsilon + epsilon * (a + 2.0 * epsilon)) * up * dx;
  }
  path.energy_bound_total = epsilon * (integral + measure + dx) + rising;
  return path;
}

double final_map_error(const DiffPath1D& path, const ScalarFn& g) {
  const Eigen::VectorXd end = path.phi.row(path.phi.rows() - 1).transpose();
  double err = 0.0;
  for (Eigen::Index j = 0; j < end.size(); ++j) {
    const double x = path.x_grid[j];
    err = std::max(err, std::abs(end[j] - x - g(x)));
    if (j + 1 < end.size()) {
      const double m = 0.5 * (x + path.x_grid[j + 1]);
      err = std::max(err, std::abs(0.5 * (end[j] + end[j + 1]) - m - g(m)));
    }
  }
  return err;
}

LowerBoundReport path_lower_bound(const DiffPath1D& path, const ScalarFn& rho,
                                  const ScalarFn& f_test, double A) {
  if (A < 0.0) throw Error(ErrorKind::Parameter, "A must be non-negative");
  const Eigen::Index n = path.x_grid.size();
  const double x0 = path.x_grid[0];
  const double x1 = path.x_grid[n - 1];
  for (const ScalarFn* fn : {&rho, &f_test}) {
    if (std::abs((*fn)(x0)) > 1e-14 || std::abs((*fn)(x1)) > 1e-14) {
      throw Error(ErrorKind::Domain, "test function support escapes the path window");
    }
  }
  const double dx = path.dx();
  LowerBoundReport report;
  double sup_rho2 = 0.0, sup_drho2 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = path.x_grid[j];
    const double r = rho(x);
    const double f = f_test(x);
    sup_rho2 = std::max(sup_rho2, r * r);
    sup_drho2 = std::max(sup_drho2, std::pow(derivative(rho, x), 2));
    report.sup_f = std::max(report.sup_f, std::abs(f));
    if (r != 0.0) report.support_measure += dx;
  }
  if (report.support_measure > 0.0) report.support_measure += dx;
  report.c_rho = 2.0 * report.support_measure * sup_drho2;
  report.c_rho_prime = 2.0 * report.support_measure * sup_rho2;

  // int rho(phi_1(x)) f(x) phi_1'(x) dx over the piecewise linear final map.
  const Eigen::VectorXd end = path.phi.row(path.phi.rows() - 1).transpose();
  // Same midpoint rule for both integrals, so the identity path gives 0 exactly.
  double moved = 0.0, fixed = 0.0;
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double xm = 0.5 * (path.x_grid[j] + path.x_grid[j + 1]);
    const double ym = 0.5 * (end[j] + end[j + 1]);
    moved += rho(ym) * f_test(xm) * (end[j + 1] - end[j]);
    fixed += rho(xm) * f_test(xm) * (path.x_grid[j + 1] - path.x_grid[j]);
  }
  const double lhs = std::abs(moved - fixed);

  const Eigen::MatrixXd phi_t = difference(path.phi, 0, path.dt());
  const Eigen::MatrixXd phi_y = difference(path.phi, 1, path.dx());
  const Eigen::MatrixXd phi_ty = difference(phi_t, 1, path.dx());
  Eigen::VectorXd weighted(path.t_grid.size()), ga(path.t_grid.size());
  for (Eigen::Index i = 0; i < weighted.size(); ++i) {
    const Eigen::VectorXd u2 = (phi_t.row(i).array().square() * phi_y.row(i).array()).transpose();
    const Eigen::VectorXd ux2 = (phi_ty.row(i).array().square() / phi_y.row(i).array()).transpose();
    const double a = trapezoid_row(u2, dx);
    const double b = trapezoid_row(ux2, dx);
    weighted[i] = std::sqrt(report.c_rho * a + report.c_rho_prime * b);
    ga[i] = std::sqrt(a + A * b);
  }
  const double t0 = path.t_grid[0];
  const double t1 = path.t_grid[path.t_grid.size() - 1];
  const double rhs = report.sup_f * integrate_piecewise_linear(path.t_grid, weighted, t0, t1);
  report.ga_length = integrate_piecewise_linear(path.t_grid, ga, t0, t1);
  if (A > 0.0 && report.sup_f > 0.0) {
    const double c = std::max(report.c_rho, report.c_rho_prime / A);
    if (c > 0.0) report.ga_length_lower = lhs / (report.sup_f * std::sqrt(c));
  }
  report.bound = BoundReport::make(lhs, rhs);
  return report;
}

double bump_profile(double x, double center, double width, double height) {
  const double r = (x - center) / width;
  if (std::abs(r) >= 1.0) return 0.0;
  return height * std::exp(1.0 - 1.0 / (1.0 - r * r));
}

}  // namespace shapeflow
