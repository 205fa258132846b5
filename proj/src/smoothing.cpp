#include "shapeflow/smoothing.hpp"

#include <array>
#include <cmath>

#include "shapeflow/error.hpp"

namespace shapeflow {
namespace {

double raw_bump(double u) {
  if (u <= -1.0 || u >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

// Tabulated distribution function Phi(u) and its integral I(u) for the unit
// bump on [-1, 1], evaluated between nodes by cubic Hermite interpolation
// with the exact derivatives Phi' = b/Z and I' = Phi.
class UnitBumpTables {
 public:
  static constexpr int kPanels = 4096;

  UnitBumpTables() {
    constexpr std::array<double, 8> nodes = {
        -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
        0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
    constexpr std::array<double, 8> weights = {
        0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
        0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    h_ = 2.0 / kPanels;
    phi_.assign(kPanels + 1, 0.0);
    integral_.assign(kPanels + 1, 0.0);
    for (int k = 0; k < kPanels; ++k) {
      const double a = -1.0 + h_ * k;
      const double b = a + h_;
      double mass = 0.0, moment = 0.0;
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        const double s = 0.5 * (a + b) + 0.5 * h_ * nodes[q];
        const double w = 0.5 * h_ * weights[q] * raw_bump(s);
        mass += w;
        moment += w * (b - s);
      }
      phi_[k + 1] = phi_[k] + mass;
      integral_[k + 1] = integral_[k] + phi_[k] * h_ + moment;
    }
    norm_ = phi_.back();
    for (int k = 0; k <= kPanels; ++k) {
      phi_[k] /= norm_;
      integral_[k] /= norm_;
    }
  }

  double density(double u) const { return raw_bump(u) / norm_; }

  double phi(double u) const {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return hermite(phi_, u, [this](double s) { return density(s); });
  }

  double integral(double u) const {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return u;  // I(1) = 1 and I' = 1 beyond the support
    return hermite(integral_, u, [this](double s) { return phi_node(s); });
  }

 private:
  // Phi at a node (exact table value).
  double phi_node(double s) const {
    const int k = static_cast<int>(std::lround((s + 1.0) / h_));
    return phi_[k];
  }

  template <class Derivative>
  double hermite(const std::vector<double>& table, double u, Derivative deriv) const {
    const double x = (u + 1.0) / h_;
    int k = static_cast<int>(std::floor(x));
    if (k >= kPanels) k = kPanels - 1;
    const double s = x - k;
    const double u0 = -1.0 + h_ * k;
    const double u1 = u0 + h_;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * table[k] + (s3 - 2 * s2 + s) * h_ * deriv(u0) +
           (-2 * s3 + 3 * s2) * table[k + 1] + (s3 - s2) * h_ * deriv(u1);
  }

  double h_ = 0.0;
  double norm_ = 1.0;
  std::vector<double> phi_;
  std::vector<double> integral_;
};

const UnitBumpTables& tables() {
  static const UnitBumpTables t;
  return t;
}

}  // namespace

BumpKernel::BumpKernel(double width) : eps_(width) {
  if (!(width >= 0.0)) throw Error(ErrorKind::Parameter, "kernel width must be >= 0");
}

double BumpKernel::density(double z) const {
  if (eps_ == 0.0) return 0.0;
  return tables().density(z / eps_) / eps_;
}

double BumpKernel::cdf(double z) const {
  if (eps_ == 0.0) return z >= 0.0 ? 1.0 : 0.0;
  return tables().phi(z / eps_);
}

double BumpKernel::ramp(double z) const {
  if (eps_ == 0.0) return std::max(0.0, z);
  if (z >= eps_) return z;
  return eps_ * tables().integral(z / eps_);
}

double smoothed_unit_clamp(const BumpKernel& kernel, double z) {
  return kernel.ramp(z) - kernel.ramp(z - 1.0);
}

}  // namespace shapeflow
