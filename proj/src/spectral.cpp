#include "shapeflow/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "shapeflow/error.hpp"

namespace shapeflow {
namespace {

// FFTW's planner is not reentrant; plans are created once per size under a
// lock and then executed through the thread-safe new-array interface.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [size, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  PlanPair get(std::size_t K) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(K);
    if (it != plans_.end()) return it->second;
    std::vector<double> real(K);
    std::vector<fftw_complex> spec(K / 2 + 1);
    const int n = static_cast<int>(K);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.forward = fftw_plan_dft_r2c_1d(n, real.data(), spec.data(), flags);
    plans.backward = fftw_plan_dft_c2r_1d(n, spec.data(), real.data(), flags);
    plans_.emplace(K, plans);
    return plans;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

using Spectrum = std::vector<std::complex<double>>;

Spectrum forward(const double* data, std::size_t K) {
  const PlanPair plans = plan_cache().get(K);
  std::vector<double> in(data, data + K);
  Spectrum out(K / 2 + 1);
  fftw_execute_dft_r2c(plans.forward, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

// Normalized inverse (includes the 1/K factor). Consumes its argument.
Eigen::VectorXd backward(Spectrum spec, std::size_t K) {
  const PlanPair plans = plan_cache().get(K);
  Eigen::VectorXd out(static_cast<Eigen::Index>(K));
  fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  out /= static_cast<double>(K);
  return out;
}

std::complex<double> derivative_symbol(std::size_t k, std::size_t K, int order) {
  const double kk = static_cast<double>(k);
  if (k == K / 2) {
    if (order % 2 != 0) return 0.0;
    return std::pow(-1.0, order / 2) * std::pow(kk, order);
  }
  return std::pow(std::complex<double>(0.0, kk), order);
}

}  // namespace

void check_grid_size(std::size_t K) {
  if (K < kMinGridSize || K % 2 != 0) {
    throw Error(ErrorKind::InvalidGrid,
                "periodic grid size must be even and >= " + std::to_string(kMinGridSize) +
                    ", got " + std::to_string(K));
  }
}

Eigen::VectorXd periodic_grid(std::size_t K) {
  Eigen::VectorXd theta(static_cast<Eigen::Index>(K));
  for (std::size_t j = 0; j < K; ++j) {
    theta[static_cast<Eigen::Index>(j)] =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(K);
  }
  return theta;
}

Eigen::VectorXd differentiate_periodic(const Eigen::VectorXd& samples, int order) {
  const auto K = static_cast<std::size_t>(samples.size());
  check_grid_size(K);
  if (order < 0) throw Error(ErrorKind::Parameter, "derivative order must be >= 0");
  if (order == 0) return samples;
  Spectrum spec = forward(samples.data(), K);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= derivative_symbol(k, K, order);
  return backward(std::move(spec), K);
}

Eigen::MatrixXd differentiate_periodic(const Eigen::MatrixXd& samples, int order) {
  Eigen::MatrixXd out(samples.rows(), samples.cols());
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    out.col(c) = differentiate_periodic(Eigen::VectorXd(samples.col(c)), order);
  }
  return out;
}

Eigen::VectorXd solve_helmholtz_periodic(const Eigen::VectorXd& rhs, double A) {
  const auto K = static_cast<std::size_t>(rhs.size());
  check_grid_size(K);
  Spectrum spec = forward(rhs.data(), K);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double kk = static_cast<double>(k);
    spec[k] /= 1.0 + A * kk * kk;
  }
  return backward(std::move(spec), K);
}

Eigen::VectorXd resample_periodic(const Eigen::VectorXd& samples, std::size_t new_size) {
  const auto K = static_cast<std::size_t>(samples.size());
  check_grid_size(K);
  check_grid_size(new_size);
  if (new_size == K) return samples;
  const Spectrum spec = forward(samples.data(), K);
  const double scale = static_cast<double>(new_size) / static_cast<double>(K);
  Spectrum out(new_size / 2 + 1, 0.0);
  if (new_size > K) {
    for (std::size_t k = 0; k < K / 2; ++k) out[k] = scale * spec[k];
    out[K / 2] = 0.5 * scale * spec[K / 2];
  } else {
    for (std::size_t k = 0; k < new_size / 2; ++k) out[k] = scale * spec[k];
    out[new_size / 2] = 2.0 * scale * spec[new_size / 2].real();
  }
  return backward(std::move(out), new_size);
}

Eigen::MatrixXd resample_periodic(const Eigen::MatrixXd& samples, std::size_t new_size) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(new_size), samples.cols());
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    out.col(c) = resample_periodic(Eigen::VectorXd(samples.col(c)), new_size);
  }
  return out;
}

Eigen::MatrixXcd rfft_columns(const Eigen::MatrixXd& samples) {
  const auto K = static_cast<std::size_t>(samples.rows());
  check_grid_size(K);
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(K / 2 + 1), samples.cols());
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    const Eigen::VectorXd col = samples.col(c);
    const Spectrum spec = forward(col.data(), K);
    for (std::size_t k = 0; k < spec.size(); ++k) out(static_cast<Eigen::Index>(k), c) = spec[k];
  }
  return out;
}

TrigInterpolant::TrigInterpolant(const Eigen::MatrixXd& samples)
    : coeffs_(rfft_columns(samples) / static_cast<double>(samples.rows())),
      K_(static_cast<std::size_t>(samples.rows())) {}

TrigInterpolant::TrigInterpolant(Eigen::MatrixXcd coefficients, std::size_t grid_size)
    : coeffs_(std::move(coefficients)), K_(grid_size) {
  check_grid_size(K_);
  if (static_cast<std::size_t>(coeffs_.rows()) != K_ / 2 + 1) {
    throw Error(ErrorKind::InvalidGrid, "coefficient block does not match grid size");
  }
}

Eigen::VectorXd TrigInterpolant::value(double theta) const {
  Eigen::VectorXd v(coeffs_.cols()), dv(coeffs_.cols());
  evaluate(theta, v, dv);
  return v;
}

void TrigInterpolant::evaluate(double theta, Eigen::Ref<Eigen::VectorXd> value,
                               Eigen::Ref<Eigen::VectorXd> derivative) const {
  const Eigen::Index d = coeffs_.cols();
  const std::size_t half = K_ / 2;
  value = coeffs_.row(0).real().transpose();
  derivative.setZero();
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> phase = step;
  for (std::size_t k = 1; k < half; ++k) {
    const double kk = static_cast<double>(k);
    const auto row = static_cast<Eigen::Index>(k);
    for (Eigen::Index c = 0; c < d; ++c) {
      const std::complex<double> term = coeffs_(row, c) * phase;
      value[c] += 2.0 * term.real();
      derivative[c] -= 2.0 * kk * term.imag();
    }
    phase *= step;
    // Renormalize occasionally to keep the recurrence on the unit circle.
    if (k % 64 == 0) phase /= std::abs(phase);
  }
  const double nyq = static_cast<double>(half);
  const double c_n = std::cos(nyq * theta);
  const double s_n = std::sin(nyq * theta);
  for (Eigen::Index c = 0; c < d; ++c) {
    const double a = coeffs_(static_cast<Eigen::Index>(half), c).real();
    value[c] += a * c_n;
    derivative[c] -= nyq * a * s_n;
  }
}

}  // namespace shapeflow
