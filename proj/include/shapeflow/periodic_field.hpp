#pragma once

// Vector fields on the flat torus [0, 2*pi)^n, n in {1, 2}, sampled on a
// uniform periodic grid. Two-dimensional samples are stored row-major:
// index i * K2 + j holds the value at (x_i, y_j).

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace shapeflow {

class PeriodicField {
 public:
  PeriodicField(std::vector<std::size_t> grid, std::vector<Eigen::VectorXd> components);

  static PeriodicField sample_1d(std::size_t K, const std::function<double(double)>& u);
  static PeriodicField sample_2d(std::size_t K1, std::size_t K2,
                                 const std::function<Eigen::Vector2d(double, double)>& u);
  static PeriodicField zeros_like(const PeriodicField& other);

  int dim() const noexcept { return static_cast<int>(grid_.size()); }
  const std::vector<std::size_t>& grid() const noexcept { return grid_; }
  std::size_t points() const noexcept;
  double cell_volume() const noexcept;

  const Eigen::VectorXd& component(int k) const { return components_.at(static_cast<std::size_t>(k)); }
  Eigen::VectorXd& component(int k) { return components_.at(static_cast<std::size_t>(k)); }
  const std::vector<Eigen::VectorXd>& components() const noexcept { return components_; }

  /// Spectral partial derivative of a scalar sampled on this grid.
  Eigen::VectorXd partial(const Eigen::VectorXd& scalar, int axis, int order = 1) const;
  /// d_axis of component k.
  Eigen::VectorXd partial(int k, int axis) const { return partial(component(k), axis); }

  /// Sum over grid points times the cell volume.
  double integrate(const Eigen::VectorXd& scalar) const;

  bool same_grid(const PeriodicField& other) const noexcept { return grid_ == other.grid_; }

  PeriodicField& operator+=(const PeriodicField& other);
  PeriodicField& operator*=(double s);
  friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
  friend PeriodicField operator*(double s, PeriodicField a) { return a *= s; }

 private:
  std::vector<std::size_t> grid_;
  std::vector<Eigen::VectorXd> components_;
};

}  // namespace shapeflow
