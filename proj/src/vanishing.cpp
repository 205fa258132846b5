#include "shapeflow/vanishing.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "shapeflow/error.hpp"
#include "shapeflow/smoothing.hpp"
#include "shapeflow/spectral.hpp"

namespace shapeflow {
namespace {

constexpr double kBaseHorizontalTol = 1e-6;

struct TriangleWave {
  double value;
  double slope;
};

// Mollified triangle wave of period 1/n with zeros at k/n and peaks of
// height 1 at (2k+1)/(2n). The mollifier is narrower than a quarter period,
// so at most one kink of the wave lies within its support.
TriangleWave smoothed_triangle(double alpha, int n, const BumpKernel& kernel) {
  const double x = 2.0 * n * alpha;
  const double cell = std::floor(x);
  const double frac = x - cell;
  const bool rising = static_cast<long>(cell) % 2 == 0;
  double value = rising ? frac : 1.0 - frac;
  double slope = rising ? 2.0 * n : -2.0 * n;
  const double kink = std::round(x);
  const double offset = (x - kink) / (2.0 * n);
  // Slope jump across the kink: +4n at a trough (even), -4n at a peak (odd).
  const double jump = static_cast<long>(kink) % 2 == 0 ? 4.0 * n : -4.0 * n;
  value += jump * (kernel.ramp(offset) - std::max(0.0, offset));
  slope += jump * (kernel.cdf(offset) - (offset >= 0.0 ? 1.0 : 0.0));
  return {value, slope};
}

// Node-wise cubic Hermite evaluation of a path and its velocity in time.
class NodeHermite {
 public:
  explicit NodeHermite(const ImmersionPath& path) : path_(path) {
    for (std::size_t i = 0; i <= path.steps(); ++i) vel_.push_back(path.velocity(i).vectors());
  }

  void evaluate(double s, Eigen::Index node, Eigen::Ref<Eigen::RowVectorXd> pos,
                Eigen::Ref<Eigen::RowVectorXd> vel) const {
    const double dt = path_.dt();
    double x = (s - path_.t_start()) / dt;
    const double last = static_cast<double>(path_.steps() - 1);
    const auto i = static_cast<std::size_t>(std::clamp(std::floor(x), 0.0, last));
    x -= static_cast<double>(i);
    const auto& p0 = path_.curve(i).points();
    const auto& p1 = path_.curve(i + 1).points();
    const auto& v0 = vel_[i];
    const auto& v1 = vel_[i + 1];
    const double x2 = x * x, x3 = x2 * x;
    pos = (2 * x3 - 3 * x2 + 1) * p0.row(node) + (x3 - 2 * x2 + x) * dt * v0.row(node) +
          (-2 * x3 + 3 * x2) * p1.row(node) + (x3 - x2) * dt * v1.row(node);
    vel = ((6 * x2 - 6 * x) / dt) * p0.row(node) + (3 * x2 - 4 * x + 1) * v0.row(node) +
          ((-6 * x2 + 6 * x) / dt) * p1.row(node) + (3 * x2 - 2 * x) * v1.row(node);
  }

 private:
  const ImmersionPath& path_;
  std::vector<Eigen::MatrixXd> vel_;
};

ImmersionPath resample_path(const ImmersionPath& path, std::size_t K) {
  if (K == path.grid_size()) return path;
  std::vector<DiscreteCurve> curves;
  std::vector<FieldAlongCurve> velocities;
  for (std::size_t i = 0; i <= path.steps(); ++i) {
    curves.emplace_back(resample_periodic(path.curve(i).points(), K));
    velocities.emplace_back(resample_periodic(path.velocity(i).vectors(), K));
  }
  return ImmersionPath(std::move(curves), std::move(velocities), path.t_start(), path.t_end());
}

SweepRow measure_row(const ImmersionPath& base, int n, const SweepOptions& opt) {
  const std::size_t res = opt.resolution_factor * static_cast<std::size_t>(n);
  SweepRow row;
  row.n = n;
  row.K = std::max(opt.min_grid, res);
  row.T = std::max(opt.min_steps, res);
  ZigzagConfig cfg;
  cfg.n = n;
  cfg.time_steps = row.T;
  const ImmersionPath zig = zigzag_path(resample_path(base, row.K), cfg);
  row.length = path_length_energy(zig, 0.0, true).length;
  const auto vols = path_volumes(zig);
  row.max_volume = *std::max_element(vols.begin(), vols.end());
  return row;
}

}  // namespace

ZigzagConfig ZigzagConfig::resolved() const {
  if (n < 1) throw Error(ErrorKind::Parameter, "zig-zag count n must be >= 1");
  ZigzagConfig out = *this;
  if (out.smoothing < 0.0) out.smoothing = 1.0 / (16.0 * n);
  if (!(out.smoothing < 1.0 / (8.0 * n))) {
    throw Error(ErrorKind::Parameter, "smoothing must be < 1/(8n)");
  }
  if (out.time_steps == 0) out.time_steps = std::max<std::size_t>(128, 32 * static_cast<std::size_t>(n));
  return out;
}

double morse_alpha(double theta) { return 0.5 * (1.0 - std::cos(theta)); }

double morse_alpha_derivative(double theta) { return 0.5 * std::sin(theta); }

ZigzagValue zigzag_phi_full(double t, double alpha, const ZigzagConfig& cfg_in) {
  if (!(t >= 0.0 && t <= 1.0) || !(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::Domain, "zig-zag arguments must lie in [0, 1]");
  }
  const ZigzagConfig cfg = cfg_in.resolved();
  const BumpKernel kernel(cfg.smoothing);
  const double z = t - 0.5;
  const double p = 2.0 * kernel.ramp(z);
  const double dp = 2.0 * kernel.cdf(z);
  const double q = 1.0 - 2.0 * (kernel.ramp(z) + kernel.ramp(-z));
  const double dq = -2.0 * (kernel.cdf(z) - kernel.cdf(-z));
  const TriangleWave tri = smoothed_triangle(alpha, cfg.n, kernel);
  return {p + q * tri.value, dp + dq * tri.value, q * tri.slope};
}

double zigzag_phi(double t, double alpha, const ZigzagConfig& cfg) {
  return zigzag_phi_full(t, alpha, cfg).phi;
}

ImmersionPath zigzag_path(const ImmersionPath& base, const ZigzagConfig& cfg_in) {
  const ZigzagConfig cfg = cfg_in.resolved();
  const double residual = horizontality_residual(base, base.has_explicit_velocities());
  if (!(residual < kBaseHorizontalTol)) {
    throw Error(ErrorKind::Precondition,
                "zig-zag base path must be horizontal (residual " + std::to_string(residual) + ")");
  }
  const NodeHermite hermite(base);
  const std::size_t K = base.grid_size();
  const std::size_t T = cfg.time_steps;
  const auto d = static_cast<Eigen::Index>(base.dim());
  const Eigen::VectorXd theta = periodic_grid(K);
  Eigen::VectorXd alpha(theta.size());
  for (Eigen::Index j = 0; j < theta.size(); ++j) alpha[j] = morse_alpha(theta[j]);

  std::vector<DiscreteCurve> curves;
  std::vector<FieldAlongCurve> velocities;
  Eigen::RowVectorXd pos(d), vel(d);
  for (std::size_t i = 0; i <= T; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(T);
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(K), d), v(static_cast<Eigen::Index>(K), d);
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      const ZigzagValue z = zigzag_phi_full(t, alpha[j], cfg);
      const double s = base.t_start() + (base.t_end() - base.t_start()) * z.phi;
      hermite.evaluate(s, j, pos, vel);
      pts.row(j) = pos;
      v.row(j) = (z.phi_t * (base.t_end() - base.t_start())) * vel;
    }
    if (i == T) pts = base.curves().back().points();
    curves.emplace_back(std::move(pts));
    velocities.emplace_back(std::move(v));
  }
  return ImmersionPath(std::move(curves), std::move(velocities));
}

ImmersionPath linear_path(const DiscreteCurve& f0, const DiscreteCurve& f1, std::size_t steps) {
  if (f0.size() != f1.size() || f0.dim() != f1.dim()) {
    throw Error(ErrorKind::Precondition, "endpoint curves must share K and d");
  }
  std::vector<DiscreteCurve> curves;
  std::vector<FieldAlongCurve> velocities;
  const Eigen::MatrixXd delta = f1.points() - f0.points();
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps);
    curves.emplace_back(f0.points() + t * delta);
    try {
      curve_frame(curves.back());
    } catch (const Error&) {
      throw Error(ErrorKind::DegenerateImmersion,
                  "linear interpolation leaves the space of immersions at t = " +
                      std::to_string(t) + "; supply a different base path");
    }
    velocities.emplace_back(delta);
  }
  return ImmersionPath(std::move(curves), std::move(velocities));
}

std::vector<SweepRow> vanishing_sweep(const ImmersionPath& base, const std::vector<int>& n_list,
                                      const SweepOptions& options) {
  std::vector<SweepRow> rows(n_list.size());
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    for (std::size_t r = 0; r < n_list.size(); ++r) rows[r] = measure_row(base, n_list[r], options);
    return rows;
  }
  for (std::size_t start = 0; start < n_list.size(); start += threads) {
    std::vector<std::future<SweepRow>> jobs;
    for (std::size_t r = start; r < std::min(n_list.size(), start + threads); ++r) {
      jobs.push_back(std::async(std::launch::async, measure_row, std::cref(base), n_list[r],
                                std::cref(options)));
    }
    for (std::size_t k = 0; k < jobs.size(); ++k) rows[start + k] = jobs[k].get();
  }
  return rows;
}

std::vector<SweepRow> vanishing_sweep(const DiscreteCurve& f0, const DiscreteCurve& f1,
                                      const std::vector<int>& n_list,
                                      const SweepOptions& options) {
  const DiscreteCurve a(resample_periodic(f0.points(), options.base_grid));
  const DiscreteCurve b(resample_periodic(f1.points(), options.base_grid));
  const ImmersionPath base = make_horizontal(linear_path(a, b, options.base_steps));
  return vanishing_sweep(base, n_list, options);
}

}  // namespace shapeflow
