#include "shapeflow/periodic_field.hpp"

#include <numbers>
#include <string>

#include "shapeflow/error.hpp"
#include "shapeflow/spectral.hpp"

namespace shapeflow {

PeriodicField::PeriodicField(std::vector<std::size_t> grid, std::vector<Eigen::VectorXd> components)
    : grid_(std::move(grid)), components_(std::move(components)) {
  if (grid_.empty() || grid_.size() > 2) {
    throw Error(ErrorKind::Unsupported, "periodic fields are 1- or 2-dimensional");
  }
  for (std::size_t K : grid_) check_grid_size(K);
  if (components_.size() != grid_.size()) {
    throw Error(ErrorKind::Precondition, "a vector field has one component per dimension");
  }
  for (const auto& c : components_) {
    if (static_cast<std::size_t>(c.size()) != points()) {
      throw Error(ErrorKind::Precondition, "component size does not match the grid");
    }
  }
}

PeriodicField PeriodicField::sample_1d(std::size_t K, const std::function<double(double)>& u) {
  check_grid_size(K);
  const Eigen::VectorXd x = periodic_grid(K);
  Eigen::VectorXd v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v[i] = u(x[i]);
  return PeriodicField({K}, {std::move(v)});
}

PeriodicField PeriodicField::sample_2d(std::size_t K1, std::size_t K2,
                                       const std::function<Eigen::Vector2d(double, double)>& u) {
  check_grid_size(K1);
  check_grid_size(K2);
  const Eigen::VectorXd x = periodic_grid(K1);
  const Eigen::VectorXd y = periodic_grid(K2);
  const auto n = static_cast<Eigen::Index>(K1 * K2);
  Eigen::VectorXd a(n), b(n);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      const Eigen::Vector2d v = u(x[i], y[j]);
      a[i * y.size() + j] = v[0];
      b[i * y.size() + j] = v[1];
    }
  }
  return PeriodicField({K1, K2}, {std::move(a), std::move(b)});
}

PeriodicField PeriodicField::zeros_like(const PeriodicField& other) {
  std::vector<Eigen::VectorXd> comps(other.components_.size(),
                                     Eigen::VectorXd::Zero(static_cast<Eigen::Index>(other.points())));
  return PeriodicField(other.grid_, std::move(comps));
}

std::size_t PeriodicField::points() const noexcept {
  std::size_t n = 1;
  for (std::size_t K : grid_) n *= K;
  return n;
}

double PeriodicField::cell_volume() const noexcept {
  double v = 1.0;
  for (std::size_t K : grid_) v *= 2.0 * std::numbers::pi / static_cast<double>(K);
  return v;
}

Eigen::VectorXd PeriodicField::partial(const Eigen::VectorXd& scalar, int axis, int order) const {
  if (axis < 0 || axis >= dim()) throw Error(ErrorKind::Parameter, "axis out of range");
  if (dim() == 1) return differentiate_periodic(scalar, order);
  const auto K1 = static_cast<Eigen::Index>(grid_[0]);
  const auto K2 = static_cast<Eigen::Index>(grid_[1]);
  // Row-major K1 x K2 block viewed as a column-major K2 x K1 matrix: column
  // i is the line x = x_i, so axis 1 derivatives act on columns.
  Eigen::Map<const Eigen::MatrixXd> block(scalar.data(), K2, K1);
  Eigen::MatrixXd out;
  if (axis == 1) {
    out = differentiate_periodic(Eigen::MatrixXd(block), order);
  } else {
    out = differentiate_periodic(Eigen::MatrixXd(block.transpose()), order).transpose();
  }
  return Eigen::Map<const Eigen::VectorXd>(out.data(), out.size());
}

double PeriodicField::integrate(const Eigen::VectorXd& scalar) const {
  return scalar.sum() * cell_volume();
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& other) {
  if (!same_grid(other)) throw Error(ErrorKind::Precondition, "fields live on different grids");
  for (std::size_t k = 0; k < components_.size(); ++k) components_[k] += other.components_[k];
  return *this;
}

PeriodicField& PeriodicField::operator*=(double s) {
  for (auto& c : components_) c *= s;
  return *this;
}

}  // namespace shapeflow
