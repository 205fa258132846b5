#pragma once

// The G^A metric on discrete immersions and the quantities measured along
// paths of immersions: horizontal length and energy, horizontal projection,
// and the volume, swept-area and anisotropic-volume bounds.

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "shapeflow/curve_geometry.hpp"

namespace shapeflow {

/// Path t -> f(t, .) on a uniform time grid. Velocities are either carried
/// explicitly or recovered by fourth-order finite differences in t.
class ImmersionPath {
 public:
  static constexpr std::size_t kMinSteps = 8;

  ImmersionPath(std::vector<DiscreteCurve> curves, double t_start = 0.0, double t_end = 1.0);
  ImmersionPath(std::vector<DiscreteCurve> curves, std::vector<FieldAlongCurve> velocities,
                double t_start = 0.0, double t_end = 1.0);

  /// Samples f(t, theta) (and optionally f_t) on (T+1) x K nodes.
  using PointFn = std::function<Eigen::VectorXd(double t, double theta)>;
  static ImmersionPath sample(std::size_t T, std::size_t K, int dim, const PointFn& point,
                              const PointFn& velocity = nullptr);

  std::size_t steps() const noexcept { return curves_.size() - 1; }
  std::size_t grid_size() const noexcept { return curves_.front().size(); }
  int dim() const noexcept { return curves_.front().dim(); }
  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_end_; }
  double dt() const noexcept { return (t_end_ - t_start_) / static_cast<double>(steps()); }
  double time(std::size_t i) const noexcept { return t_start_ + dt() * static_cast<double>(i); }

  const std::vector<DiscreteCurve>& curves() const noexcept { return curves_; }
  const DiscreteCurve& curve(std::size_t i) const { return curves_.at(i); }
  bool has_explicit_velocities() const noexcept { return velocities_.has_value(); }

  /// f_t at time index i (explicit if carried, finite differences otherwise).
  FieldAlongCurve velocity(std::size_t i) const;
  /// f_t at time index i from fourth-order finite differences, ignoring explicit data.
  FieldAlongCurve finite_difference_velocity(std::size_t i) const;

 private:
  std::vector<DiscreteCurve> curves_;
  std::optional<std::vector<FieldAlongCurve>> velocities_;
  double t_start_;
  double t_end_;
};

/// Inequality check lhs <= rhs with tolerance 1e-8 * max(1, |rhs|).
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool satisfied = false;

  static BoundReport make(double lhs, double rhs);
};

struct LengthEnergy {
  double length = 0.0;
  double energy = 0.0;
};

/// G^A_f(h, k) = int (1 + A |Tr S|^2) g(h, k) vol(f*g).
double ga_inner(const DiscreteCurve& f, const FieldAlongCurve& h, const FieldAlongCurve& k,
                double A);

/// Reparametrizes the path so that g(h_t, h_theta) = 0. The reparametrization
/// flow phi_t = xi(t, phi), xi = -g(f_t, f_theta)/|f_theta|^2, is integrated
/// with RK4 and f is evaluated off-grid by trigonometric interpolation in
/// theta and cubic Hermite interpolation in t. The result carries its
/// (normal) velocities explicitly.
ImmersionPath make_horizontal(const ImmersionPath& path);

/// max over nodes of |g(f_t, f_theta)| / (|f_t| |f_theta| + tol).
double horizontality_residual(const ImmersionPath& path, bool use_explicit_velocities = false,
                              double tol = 1e-9);

/// Arc length int sqrt(G^A(v, v)) dt and energy 1/2 int G^A(v, v) dt, with v
/// the velocity or (horizontal_only) its normal part.
LengthEnergy path_length_energy(const ImmersionPath& path, double A, bool horizontal_only);

/// sqrt(Vol(f_1)) - sqrt(Vol(f_0)) <= L^hor_{G^A}(f) / (2 sqrt(A)), A > 0.
BoundReport lipschitz_gap(const ImmersionPath& path, double A);

/// int int |f_t^perp| vol(f*g) dt <= max_t sqrt(Vol(f(t))) * L^hor_{G^A}(f).
BoundReport swept_volume(const ImmersionPath& path, double A = 0.0);

/// Horizontal energy written as an anisotropic volume of the graph (t, f(t, x)).
double graph_energy(const ImmersionPath& path, double A);

/// Time-slice volumes Vol(f(t_i)).
std::vector<double> path_volumes(const ImmersionPath& path);

/// Composite trapezoid rule on uniformly spaced samples.
double trapezoid(const std::vector<double>& values, double h);

}  // namespace shapeflow
