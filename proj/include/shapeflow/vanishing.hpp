#pragma once

// Zig-zag reparametrizations in time that make the horizontal G^0 length of a
// path between two shapes arbitrarily small.

#include <cstddef>
#include <vector>

#include "shapeflow/shape_metric.hpp"

namespace shapeflow {

struct ZigzagConfig {
  int n = 1;               // number of zig-zags
  double smoothing = -1;   // mollifier half-width in (t, alpha); < 0 selects 1/(16 n)
  std::size_t time_steps = 0;  // output time steps; 0 selects max(128, 32 n)

  /// Validated copy with defaults resolved.
  ZigzagConfig resolved() const;
};

/// Morse function alpha(theta) = (1 - cos theta)/2 on S^1, with critical
/// values exactly {0, 1}.
double morse_alpha(double theta);
double morse_alpha_derivative(double theta);

/// phi(t, alpha) and its partial derivatives.
struct ZigzagValue {
  double phi = 0.0;
  double phi_t = 0.0;
  double phi_alpha = 0.0;
};

/// The zig-zag time change phi: [0,1] x [0,1] -> [0,1], written as
/// p(t) + q(t) tri(alpha) with p = max(0, 2t - 1), q = 1 - |2t - 1| and tri
/// the triangle wave of period 1/n; mollification convolves each factor with
/// the bump kernel, which equals the product-kernel convolution of phi.
ZigzagValue zigzag_phi_full(double t, double alpha, const ZigzagConfig& cfg);
double zigzag_phi(double t, double alpha, const ZigzagConfig& cfg);

/// f~(t, x) = f(phi(t, alpha(x)), x) with explicit velocities phi_t f_t.
/// The base path must be horizontal (residual < 1e-6).
ImmersionPath zigzag_path(const ImmersionPath& base, const ZigzagConfig& cfg);

struct SweepOptions {
  std::size_t base_grid = 128;       // K of the horizontal base path
  std::size_t base_steps = 128;      // T of the horizontal base path
  std::size_t min_grid = 128;        // rows use K = max(min_grid, 32 n)
  std::size_t min_steps = 128;       // rows use T = max(min_steps, 32 n)
  std::size_t resolution_factor = 32;
  unsigned threads = 1;
};

struct SweepRow {
  int n = 0;
  std::size_t K = 0;
  std::size_t T = 0;
  double length = 0.0;      // L^hor_{G^0} of the zig-zag path
  double max_volume = 0.0;  // max_t Vol(f~(t))
};

/// Linear interpolation (1 - t) f0 + t f1 with explicit velocities; throws
/// ErrorKind::DegenerateImmersion when an intermediate curve is singular.
ImmersionPath linear_path(const DiscreteCurve& f0, const DiscreteCurve& f1, std::size_t steps);

/// Horizontal base path from f0 to f1 followed by one zig-zag per n.
std::vector<SweepRow> vanishing_sweep(const DiscreteCurve& f0, const DiscreteCurve& f1,
                                      const std::vector<int>& n_list,
                                      const SweepOptions& options = {});

/// Same, starting from an already horizontal base path.
std::vector<SweepRow> vanishing_sweep(const ImmersionPath& horizontal_base,
                                      const std::vector<int>& n_list,
                                      const SweepOptions& options = {});

}  // namespace shapeflow
