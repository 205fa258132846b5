#pragma once

// Fourier-collocation machinery on the uniform periodic grid
// theta_j = 2*pi*j/K, j = 0..K-1.

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

namespace shapeflow {

/// Smallest admissible grid size.
inline constexpr std::size_t kMinGridSize = 16;

/// Throws ErrorKind::InvalidGrid unless K is even and >= kMinGridSize.
void check_grid_size(std::size_t K);

/// Uniform periodic parameter grid on [0, 2*pi).
Eigen::VectorXd periodic_grid(std::size_t K);

/// Spectral derivative of periodic samples. Exact on trigonometric
/// polynomials of degree < K/2; odd derivatives drop the Nyquist mode.
Eigen::VectorXd differentiate_periodic(const Eigen::VectorXd& samples, int order = 1);

/// Column-wise spectral derivative (each column is one periodic signal).
Eigen::MatrixXd differentiate_periodic(const Eigen::MatrixXd& samples, int order = 1);

/// Solves (1 - A d^2/dtheta^2) u = rhs mode by mode.
Eigen::VectorXd solve_helmholtz_periodic(const Eigen::VectorXd& rhs, double A);

/// Band-limited resampling to a new even grid size (zero padding or truncation).
Eigen::VectorXd resample_periodic(const Eigen::VectorXd& samples, std::size_t new_size);
Eigen::MatrixXd resample_periodic(const Eigen::MatrixXd& samples, std::size_t new_size);

/// Real-to-complex transform; returns K/2+1 unnormalized coefficients per column.
Eigen::MatrixXcd rfft_columns(const Eigen::MatrixXd& samples);

/// Trigonometric interpolant of a K x d block of periodic samples.
///
/// The Nyquist mode is split symmetrically so the interpolant is real for
/// every theta and its derivative agrees with differentiate_periodic on the
/// grid nodes.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(const Eigen::MatrixXd& samples);
  TrigInterpolant(Eigen::MatrixXcd coefficients, std::size_t grid_size);

  std::size_t grid_size() const noexcept { return K_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(coeffs_.cols()); }
  const Eigen::MatrixXcd& coefficients() const noexcept { return coeffs_; }

  Eigen::VectorXd value(double theta) const;

  /// Value and first derivative at theta, written into the given rows.
  void evaluate(double theta, Eigen::Ref<Eigen::VectorXd> value,
                Eigen::Ref<Eigen::VectorXd> derivative) const;

 private:
  Eigen::MatrixXcd coeffs_;  // (K/2+1) x d, already scaled by 1/K
  std::size_t K_ = 0;
};

}  // namespace shapeflow
