#pragma once

// The compactly supported C^infinity bump c * exp(-1/(1 - (z/eps)^2)) on
// (-eps, eps), normalized to unit mass, together with its distribution
// function and the convolution of the ramp max(0, z) with it. Everything the
// wave and zig-zag constructions need is a combination of these three.

#include <vector>

namespace shapeflow {

class BumpKernel {
 public:
  /// width: half-width eps of the support; width == 0 gives the unmollified limit.
  explicit BumpKernel(double width);

  double width() const noexcept { return eps_; }

  /// G_eps(z).
  double density(double z) const;
  /// int_{-inf}^z G_eps.
  double cdf(double z) const;
  /// (max(0, .) * G_eps)(z) = int_{-inf}^z cdf.
  double ramp(double z) const;

 private:
  double eps_;
};

/// Mollified clamp to [0, 1]: (max(0, min(1, .)) * G_eps)(z) = ramp(z) - ramp(z - 1).
double smoothed_unit_clamp(const BumpKernel& kernel, double z);

}  // namespace shapeflow
