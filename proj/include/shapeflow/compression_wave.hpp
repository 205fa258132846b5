#pragma once

// One-dimensional compression waves phi(t, x) = x + f(t - lambda x) and the
// short paths built from them, sampled on a truncated window of the line.

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "shapeflow/shape_metric.hpp"

namespace shapeflow {

using ScalarFn = std::function<double(double)>;

enum class WaveKind { Identity, Basic, ShortPath };

struct DiffPath1D {
  Eigen::VectorXd t_grid;
  Eigen::VectorXd x_grid;
  Eigen::MatrixXd phi;            ///< phi(t_i, x_j): rows are times
  double lambda = 0.0;
  double epsilon = 0.0;
  Eigen::VectorXd displacement;   ///< g(x_j); the target map is x + g(x)
  WaveKind kind = WaveKind::Identity;
  double energy_bound_rate = 0.0; ///< Basic: bound per unit time
  double energy_bound_total = 0.0;///< ShortPath: bound for any time window

  double dx() const;
  double dt() const;
  /// Smallest forward difference quotient of phi in x over all samples.
  double min_slope() const;
  /// Throws InvalidWave unless the sampled maps are strictly increasing.
  void validate() const;
};

struct WaveWindow {
  double t_min = 0.0, t_max = 1.0;
  std::size_t nt = 0;  ///< 0: choose dt = dx
  double x_min = -2.0, x_max = 2.0;
  std::size_t nx = 0;  ///< 0: choose dx = epsilon / 8
};

/// sup_z f'(z) for the mollified unit clamp.
double basic_wave_max_slope(double epsilon);

DiffPath1D basic_wave(double lambda, double epsilon, const WaveWindow& window);

/// Identity path on the same grids as `like`.
DiffPath1D identity_path(const DiffPath1D& like);

struct WaveEnergyReport {
  double energy = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

/// int_{t0}^{t1} int phi_t^2 phi_y dy dt.
WaveEnergyReport wave_energy(const DiffPath1D& path, double t0, double t1);
WaveEnergyReport wave_energy(const DiffPath1D& path);

struct ShortPathOptions {
  double support_min = -1.0;  ///< g vanishes outside [support_min, support_max]
  double support_max = 1.0;
  double resolution = 8.0;    ///< dx = epsilon / resolution; dt = dx
  double margin = 0.25;       ///< identity margin beyond 4 epsilon on each side
};

DiffPath1D short_path_to(const ScalarFn& g, double epsilon, const ShortPathOptions& options = {});

/// sup_j |phi_end(m_j) - (m_j + g(m_j))| over cell midpoints m_j, with
/// phi_end linearly interpolated from the nodal final map.
double final_map_error(const DiffPath1D& path, const ScalarFn& g);

struct LowerBoundReport {
  BoundReport bound;
  double c_rho = 0.0;
  double c_rho_prime = 0.0;
  double support_measure = 0.0;
  double sup_f = 0.0;
  double ga_length = 0.0;        ///< int sqrt(int u^2 + A u_x^2) dt
  double ga_length_lower = 0.0;  ///< lhs / (sup|f| sqrt(max(C, C'/A))), A > 0
};

LowerBoundReport path_lower_bound(const DiffPath1D& path, const ScalarFn& rho,
                                  const ScalarFn& f_test, double A);

/// c exp(1 - 1/(1 - ((x - center)/width)^2)) for |x - center| < width.
double bump_profile(double x, double center, double width, double height);

}  // namespace shapeflow
