#include "shapeflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <future>
#include <numbers>
#include <set>
#include <sstream>
#include <variant>

#include "shapeflow/benchmarks.hpp"
#include "shapeflow/compression_wave.hpp"
#include "shapeflow/diff_group.hpp"
#include "shapeflow/error.hpp"
#include "shapeflow/expression.hpp"
#include "shapeflow/shape_curvature.hpp"
#include "shapeflow/shape_geodesics.hpp"
#include "shapeflow/spectral.hpp"
#include "shapeflow/vanishing.hpp"

namespace shapeflow {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- tables

using Cell = std::variant<long long, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error(ErrorKind::Precondition, "row width mismatch");
    rows.push_back(std::move(row));
  }

  std::string csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        if (const auto* i = std::get_if<long long>(&row[c])) out += std::to_string(*i);
        else out += format_real(std::get<double>(row[c]));
      }
      out += '\n';
    }
    return out;
  }

  json describe() const { return {{"columns", columns}, {"rows", rows.size()}}; }
};

Cell integer(std::size_t v) { return static_cast<long long>(v); }
Cell integer(int v) { return static_cast<long long>(v); }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Config, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorKind::Config, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------- parameters

class Params {
 public:
  Params(const json& j, std::set<std::string> allowed) : src_(j.is_null() ? json::object() : j) {
    if (!src_.is_object()) fail("parameters", "must be an object");
    for (const auto& [key, value] : src_.items()) {
      if (!allowed.count(key)) fail(key, "unknown parameter");
    }
  }

  double number(const std::string& key, double def, double lo, double hi) {
    double v = def;
    if (src_.contains(key)) {
      if (!src_[key].is_number()) fail(key, "must be a number");
      v = src_[key].get<double>();
    }
    if (!(v >= lo && v <= hi)) fail(key, "out of range [" + format_real(lo) + ", " + format_real(hi) + "]");
    resolved_[key] = v;
    return v;
  }

  long long integer(const std::string& key, long long def, long long lo, long long hi) {
    long long v = def;
    if (src_.contains(key)) {
      if (!src_[key].is_number_integer()) fail(key, "must be an integer");
      v = src_[key].get<long long>();
    }
    if (v < lo || v > hi) {
      fail(key, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    resolved_[key] = v;
    return v;
  }

  std::size_t grid(const std::string& key, long long def, long long hi = 1 << 16) {
    const long long v = integer(key, def, 16, hi);
    if (v % 2) fail(key, "grid sizes must be even");
    return static_cast<std::size_t>(v);
  }

  bool boolean(const std::string& key, bool def) {
    bool v = def;
    if (src_.contains(key)) {
      if (!src_[key].is_boolean()) fail(key, "must be a boolean");
      v = src_[key].get<bool>();
    }
    resolved_[key] = v;
    return v;
  }

  std::string string(const std::string& key, const std::string& def,
                     const std::vector<std::string>& choices = {}) {
    std::string v = def;
    if (src_.contains(key)) {
      if (!src_[key].is_string()) fail(key, "must be a string");
      v = src_[key].get<std::string>();
    }
    if (!choices.empty() && std::find(choices.begin(), choices.end(), v) == choices.end()) {
      fail(key, "unknown value '" + v + "'");
    }
    resolved_[key] = v;
    return v;
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> def, double lo, double hi) {
    std::vector<double> v = std::move(def);
    if (src_.contains(key)) {
      if (!src_[key].is_array() || src_[key].empty()) fail(key, "must be a non-empty array");
      v.clear();
      for (const auto& e : src_[key]) {
        if (!e.is_number()) fail(key, "entries must be numbers");
        v.push_back(e.get<double>());
      }
    }
    for (double x : v) {
      if (!(x >= lo && x <= hi)) fail(key, "entry out of range");
    }
    resolved_[key] = v;
    return v;
  }

  std::vector<int> integers(const std::string& key, std::vector<int> def, int lo, int hi) {
    std::vector<int> v = std::move(def);
    if (src_.contains(key)) {
      if (!src_[key].is_array() || src_[key].empty()) fail(key, "must be a non-empty array");
      v.clear();
      for (const auto& e : src_[key]) {
        if (!e.is_number_integer()) fail(key, "entries must be integers");
        v.push_back(e.get<int>());
      }
    }
    for (int x : v) {
      if (x < lo || x > hi) fail(key, "entry out of range");
    }
    resolved_[key] = v;
    return v;
  }

  /// A list of expression strings: a single string is a list of length one.
  std::vector<std::string> expressions(const std::string& key, std::vector<std::string> def) {
    std::vector<std::string> v = std::move(def);
    if (src_.contains(key)) {
      const json& e = src_[key];
      v.clear();
      if (e.is_string()) {
        v.push_back(e.get<std::string>());
      } else if (e.is_array()) {
        for (const auto& s : e) {
          if (!s.is_string()) fail(key, "entries must be expression strings");
          v.push_back(s.get<std::string>());
        }
      } else if (e.is_object()) {
        for (const char* c : {"x", "y", "z"}) {
          if (e.contains(c)) {
            if (!e[c].is_string()) fail(key, "entries must be expression strings");
            v.push_back(e[c].get<std::string>());
          }
        }
      } else {
        fail(key, "must be an expression string, an array of them, or {x, y[, z]}");
      }
    }
    resolved_[key] = v;
    return v;
  }

  struct Bump {
    double center, width, height;
    double operator()(double x) const { return bump_profile(x, center, width, height); }
  };

  Bump bump(const std::string& key, Bump def) {
    Bump b = def;
    if (src_.contains(key)) {
      const json& e = src_[key];
      if (!e.is_object()) fail(key, "must be an object {center, width, height}");
      for (const auto& [k, val] : e.items()) {
        if (k != "center" && k != "width" && k != "height") fail(key, "unknown field '" + k + "'");
        if (!val.is_number()) fail(key, "fields must be numbers");
      }
      b.center = e.value("center", def.center);
      b.width = e.value("width", def.width);
      b.height = e.value("height", def.height);
    }
    if (!(b.width > 0.0) || !std::isfinite(b.center) || !std::isfinite(b.height)) {
      fail(key, "width must be positive");
    }
    resolved_[key] = {{"center", b.center}, {"width", b.width}, {"height", b.height}};
    return b;
  }

  const json& resolved() const { return resolved_; }

  [[noreturn]] static void fail(const std::string& key, const std::string& what) {
    throw Error(ErrorKind::Config, "parameter '" + key + "': " + what);
  }

 private:
  json src_;
  json resolved_ = json::object();
};

// ---------------------------------------------------------------- context

struct Context {
  std::filesystem::path dir;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  json tolerances = json::object();
  json metrics = json::object();
  json files = json::object();
  json diagnostics = json::array();
  bool partial = false;

  std::uint64_t require_seed(const std::string& experiment) const {
    if (!seed) throw Error(ErrorKind::Config, experiment + " draws random cases and needs a seed");
    return *seed;
  }

  void write(const std::string& name, const Table& table) {
    write_atomic(dir / name, table.csv());
    files[name] = table.describe();
  }
};

template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  for (std::size_t start = 0; start < count; start += threads) {
    std::vector<std::future<R>> batch;
    const std::size_t end = std::min(count, start + threads);
    for (std::size_t i = start; i < end; ++i) batch.push_back(std::async(std::launch::async, fn, i));
    for (std::size_t i = start; i < end; ++i) out[i] = batch[i - start].get();
  }
  return out;
}

DiscreteCurve curve_from_expressions(const std::vector<std::string>& exprs, std::size_t K) {
  if (exprs.size() != 2 && exprs.size() != 3) {
    throw Error(ErrorKind::Config, "a curve needs 2 or 3 coordinate expressions");
  }
  std::vector<Expression> parsed;
  for (const auto& e : exprs) parsed.push_back(Expression::parse(e, {"theta"}));
  return DiscreteCurve::sample(K, static_cast<int>(parsed.size()), [&](double th) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(parsed.size()));
    for (std::size_t c = 0; c < parsed.size(); ++c) v[static_cast<Eigen::Index>(c)] = parsed[c](th);
    return v;
  });
}

const std::vector<std::string> kDefaultCircle = {"cos(theta)", "sin(theta)"};

// ---------------------------------------------------------------- experiments

// Reference value of L(32)/L(1) for the translated-circle benchmark from a
// brute-force quadrature of the unmollified construction, and the accepted
// slack for mollification and discretization.
constexpr double kPilotRatio = 0.756;
constexpr double kPilotThreshold = 0.83;
constexpr double kTargetRatio = 0.25;

void run_vanish_curves(Params& p, Context& ctx) {
  const auto n_list = p.integers("n_list", {1, 2, 4, 8, 16, 32}, 1, 4096);
  const auto f0e = p.expressions("f0", kDefaultCircle);
  const auto f1e = p.expressions("f1", {"0.5 + cos(theta)", "sin(theta)"});
  SweepOptions opt;
  opt.base_grid = p.grid("base_grid", 128);
  opt.base_steps = static_cast<std::size_t>(p.integer("base_steps", 128, 8, 1 << 16));
  opt.min_grid = p.grid("min_grid", 128);
  opt.min_steps = static_cast<std::size_t>(p.integer("min_steps", 128, 8, 1 << 16));
  opt.resolution_factor = static_cast<std::size_t>(p.integer("resolution_factor", 32, 1, 1024));
  opt.threads = ctx.threads;
  const double threshold = p.number("ratio_threshold", kPilotThreshold, 0.0, 10.0);

  const auto rows = vanishing_sweep(curve_from_expressions(f0e, opt.base_grid),
                                    curve_from_expressions(f1e, opt.base_grid), n_list, opt);
  Table t{{"n", "L_hor", "K", "T", "max_volume"}, {}};
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    t.add({integer(r.n), r.length, integer(r.K), integer(r.T), r.max_volume});
    if (i > 0 && !(r.length < rows[i - 1].length)) decreasing = false;
  }
  ctx.write("results.csv", t);
  const double ratio = rows.front().length > 0 ? rows.back().length / rows.front().length : 0.0;
  ctx.metrics = {{"ratio_last_first", ratio},
                 {"strictly_decreasing", decreasing},
                 {"ratio_below_threshold", ratio < threshold}};
  ctx.tolerances = {{"ratio_threshold", threshold},
                    {"pilot_reference_ratio", kPilotRatio},
                    {"target_ratio", kTargetRatio},
                    {"horizontality_residual_max", 1e-6}};
}

void run_vanish_diff(Params& p, Context& ctx) {
  const auto eps_list = p.numbers("epsilon_list", {0.2, 0.1, 0.05, 0.025}, 1e-3, 0.45);
  const auto g = p.bump("g", {0.0, 1.5, 0.5});
  const auto rho = p.bump("rho", {0.3, 0.8, 1.0});
  const auto f_test = p.bump("f_test", {0.0, 1.2, 1.0});
  const double A = p.number("A", 1.0, 0.0, 1e6);
  const double resolution = p.number("resolution", 8.0, 8.0, 256.0);
  const double margin = p.number("margin", 0.25, 0.0, 10.0);
  WaveWindow window;
  window.t_min = p.number("basic_t_min", 0.0, -1e3, 1e3);
  window.t_max = p.number("basic_t_max", 1.0, -1e3, 1e3);
  window.x_min = p.number("basic_x_min", -2.0, -1e3, 1e3);
  window.x_max = p.number("basic_x_max", 2.0, -1e3, 1e3);

  ShortPathOptions opt;
  opt.support_min = g.center - g.width;
  opt.support_max = g.center + g.width;
  opt.resolution = resolution;
  opt.margin = margin;

  struct Row {
    double eps, basic_e, basic_b, e, b, err, err2, lhs, rhs, ga, ga_low;
    bool ok;
  };
  const auto rows = parallel_map(eps_list.size(), ctx.threads, [&](std::size_t i) {
    const double eps = eps_list[i];
    Row r{};
    r.eps = eps;
    const DiffPath1D basic = basic_wave(1.0 - eps, eps, window);
    const auto be = wave_energy(basic, window.t_min, window.t_max);
    r.basic_e = be.energy;
    r.basic_b = be.bound;
    const DiffPath1D path = short_path_to(g, eps, opt);
    const auto se = wave_energy(path);
    r.e = se.energy;
    r.b = se.bound;
    r.err = final_map_error(path, g);
    ShortPathOptions fine = opt;
    fine.resolution = 2.0 * opt.resolution;
    r.err2 = final_map_error(short_path_to(g, eps, fine), g);
    const auto lb = path_lower_bound(path, rho, f_test, A);
    r.lhs = lb.bound.lhs;
    r.rhs = lb.bound.rhs;
    r.ga = lb.ga_length;
    r.ga_low = lb.ga_length_lower;
    r.ok = be.satisfied && se.satisfied && lb.bound.satisfied;
    return r;
  });

  Table t{{"epsilon", "lambda", "basic_energy", "basic_bound", "short_energy", "short_bound",
           "final_map_error", "final_map_error_refined", "lhs", "rhs", "ga_length",
           "ga_length_lower"},
          {}};
  bool all_ok = true, monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    t.add({r.eps, 1.0 - r.eps, r.basic_e, r.basic_b, r.e, r.b, r.err, r.err2, r.lhs, r.rhs, r.ga,
           r.ga_low});
    all_ok = all_ok && r.ok;
    if (i > 0 && r.eps < rows[i - 1].eps && !(r.e < rows[i - 1].e)) monotone = false;
  }
  ctx.write("results.csv", t);
  ctx.metrics = {{"all_bounds_satisfied", all_ok}, {"short_energy_monotone", monotone}};
  ctx.tolerances = {{"energy_bound_relative_slack", 1e-6},
                    {"bound_relative_tolerance", 1e-8},
                    {"final_map_error_max", 5e-3},
                    {"dx_over_epsilon", 1.0 / resolution}};
}

double tangential_residual(const GeodesicState& s) {
  const CurveFrame frame = curve_frame(s.f);
  const Eigen::VectorXd dot = pointwise_dot(s.v.vectors(), frame.derivative);
  const Eigen::VectorXd vn = s.v.vectors().rowwise().norm();
  return (dot.cwiseAbs().array() / (vn.array() * frame.speed.array() + 1e-12)).maxCoeff();
}

void run_geodesic_shape(Params& p, Context& ctx) {
  const auto curve_e = p.expressions("curve", kDefaultCircle);
  const std::string speed_e = p.string("normal_speed", "-0.1");
  const std::string mode_s = p.string("mode", "horizontal", {"horizontal", "full"});
  const std::size_t K = p.grid("K", 128);
  const double t_end = p.number("T_end", 1.0, 1e-6, 1e3);
  const auto steps = static_cast<int>(p.integer("steps", 200, 16, 1 << 20));
  const bool circle_check = p.boolean("circle_check", false);

  const DiscreteCurve f = curve_from_expressions(curve_e, K);
  if (f.dim() != 2) throw Error(ErrorKind::Config, "geodesic-shape works with plane curves");
  const Expression a = Expression::parse(speed_e, {"theta"});
  const Eigen::VectorXd th = periodic_grid(K);
  Eigen::VectorXd av(th.size());
  for (Eigen::Index i = 0; i < th.size(); ++i) av[i] = a(th[i]);
  const Eigen::MatrixXd n = left_normal(curve_frame(f));
  GeodesicState s0{f, FieldAlongCurve(n.array().colwise() * av.array()), 0.0};
  const GeodesicMode mode = mode_s == "full" ? GeodesicMode::Full : GeodesicMode::Horizontal;
  const GeodesicTrajectory traj = integrate_geodesic(s0, t_end, steps, mode);

  const double e0 = kinetic_energy(traj.states.front());
  const double r0 = curve_frame(f).volume / (2.0 * std::numbers::pi);
  // a = -r' for the left (inward) normal of a counter-clockwise circle.
  const double rdot0 = -av.mean();
  std::vector<std::string> cols = {"t", "kinetic_energy", "volume", "tangential_residual",
                                   "min_speed"};
  if (circle_check) {
    cols.push_back("mean_radius");
    cols.push_back("closed_form_radius");
  }
  Table tr{cols, {}};
  double drift = 0.0, residual = 0.0, radius_err = 0.0;
  for (const auto& s : traj.states) {
    const CurveFrame fr = curve_frame(s.f);
    const double e = kinetic_energy(s);
    const double res = tangential_residual(s);
    drift = std::max(drift, std::abs(e - e0) / std::max(std::abs(e0), 1e-300));
    residual = std::max(residual, res);
    std::vector<Cell> row = {s.t, e, fr.volume, res, fr.speed.minCoeff()};
    if (circle_check) {
      const double r = fr.volume / (2.0 * std::numbers::pi);
      const double base = std::pow(r0, 1.5) + 1.5 * std::sqrt(r0) * rdot0 * s.t;
      const double closed = base > 0.0 ? std::pow(base, 2.0 / 3.0) : 0.0;
      radius_err = std::max(radius_err, std::abs(r - closed));
      row.push_back(r);
      row.push_back(closed);
    }
    tr.add(std::move(row));
  }
  ctx.write("trajectory.csv", tr);
  std::vector<std::string> rcols = {"t_reached", "energy_drift", "max_tangential_residual",
                                    "stopped_early"};
  std::vector<Cell> rrow = {traj.states.back().t, drift, residual,
                            integer(traj.stopped_early ? 1 : 0)};
  if (circle_check) {
    rcols.push_back("max_radius_error");
    rrow.push_back(radius_err);
  }
  Table res{rcols, {}};
  res.add(std::move(rrow));
  ctx.write("results.csv", res);
  if (traj.stopped_early) {
    ctx.partial = true;
    ctx.diagnostics.push_back(traj.diagnostic);
  }
  ctx.metrics = {{"energy_drift", drift}, {"max_tangential_residual", residual}};
  if (circle_check) ctx.metrics["max_radius_error"] = radius_err;
  ctx.tolerances = {{"energy_drift_max", 1e-6},
                    {"tangential_residual_max", 1e-5},
                    {"radius_error_max", 1e-5},
                    {"early_stop_min_speed_ratio", 1e-6},
                    {"early_stop_curvature", 1e6}};
}

void run_geodesic_diff(Params& p, Context& ctx) {
  const std::string eq_s = p.string("equation", "burgers", {"burgers", "epdiff", "camassa_holm"});
  DiffEquationSpec eq;
  eq.kind = eq_s == "burgers" ? DiffEquation::Burgers
            : eq_s == "epdiff" ? DiffEquation::Epdiff
                               : DiffEquation::CamassaHolm;
  eq.A = eq.kind == DiffEquation::CamassaHolm ? p.number("A", 1.0, 1e-12, 1e6) : 0.0;
  const auto u0e = p.expressions("u0", {"0.1*sin(x)"});
  const int dim = static_cast<int>(u0e.size());
  if (dim != 1 && dim != 2) Params::fail("u0", "needs 1 or 2 component expressions");
  if (dim == 2 && eq.kind != DiffEquation::Epdiff) {
    Params::fail("u0", "two-dimensional fields need equation 'epdiff'");
  }
  const std::size_t K = p.grid("K", dim == 1 ? 128 : 32, dim == 1 ? 1 << 16 : 512);
  const double t_end = p.number("T_end", 0.5, 1e-6, 1e3);
  const auto steps = static_cast<std::size_t>(p.integer("steps", 500, 64, 1 << 22));
  const auto snap = static_cast<std::size_t>(
      p.integer("snapshot_every", static_cast<long long>(std::max<std::size_t>(1, steps / 50)), 1,
                1 << 22));

  PeriodicField u0 = [&] {
    if (dim == 1) {
      const Expression e = Expression::parse(u0e[0], {"x"});
      return PeriodicField::sample_1d(K, [&](double x) { return e(x); });
    }
    const Expression e1 = Expression::parse(u0e[0], {"x", "y"});
    const Expression e2 = Expression::parse(u0e[1], {"x", "y"});
    return PeriodicField::sample_2d(
        K, K, [&](double x, double y) { return Eigen::Vector2d(e1(x, y), e2(x, y)); });
  }();
  double l1 = 0.0;
  for (int k = 0; k < u0.dim(); ++k) l1 += u0.integrate(u0.component(k).cwiseAbs());

  const DiffTrajectory traj = integrate_diff_geodesic(u0, eq, t_end, steps, snap);
  const InvariantRow& q0 = traj.log.front();
  auto rel = [](double q, double ref, double floor) {
    return std::abs(q - ref) / std::max(std::abs(ref), floor);
  };
  Table t{{"t", "momentum", "l2", "ga", "max_gradient", "drift_momentum", "drift_l2", "drift_ga"},
          {}};
  double dm = 0.0, dl = 0.0, dg = 0.0;
  for (const auto& r : traj.log) {
    dm = std::max(dm, rel(r.momentum, q0.momentum, std::max(l1, 1e-300)));
    dl = std::max(dl, rel(r.l2, q0.l2, 1e-300));
    dg = std::max(dg, rel(r.ga, q0.ga, 1e-300));
    t.add({r.t, r.momentum, r.l2, r.ga, r.max_gradient, dm, dl, dg});
  }
  ctx.write("results.csv", t);

  Table tr{dim == 1 ? std::vector<std::string>{"t", "x", "u"}
                    : std::vector<std::string>{"t", "x", "y", "u1", "u2"},
           {}};
  const Eigen::VectorXd xs = periodic_grid(K);
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const PeriodicField& u = traj.states[s];
    const double time = traj.state_times[s];
    if (dim == 1) {
      for (Eigen::Index i = 0; i < xs.size(); ++i) tr.add({time, xs[i], u.component(0)[i]});
    } else {
      for (Eigen::Index i = 0; i < xs.size(); ++i) {
        for (Eigen::Index j = 0; j < xs.size(); ++j) {
          const Eigen::Index idx = i * xs.size() + j;
          tr.add({time, xs[i], xs[j], u.component(0)[idx], u.component(1)[idx]});
        }
      }
    }
  }
  ctx.write("trajectory.csv", tr);
  if (traj.stopped_early) {
    ctx.partial = true;
    ctx.diagnostics.push_back(traj.diagnostic);
  }
  ctx.metrics = {{"drift_momentum", dm}, {"drift_l2", dl}, {"drift_ga", dg},
                 {"t_reached", traj.log.back().t}};
  ctx.tolerances = {{"drift_max", 1e-8},
                    {"momentum_drift_normalization", "max(|int u0|, int |u0|)"},
                    {"wave_breaking_gradient", kWaveBreakingGradient}};
}

constexpr double kSignTolerance = 1e-10;

void run_curvature_shape(Params& p, Context& ctx) {
  const std::uint64_t seed = ctx.require_seed("curvature-shape");
  const auto cases = static_cast<std::size_t>(p.integer("cases", 100, 1, 1000000));
  const std::size_t K = p.grid("K", 64);
  const int modes = static_cast<int>(p.integer("curve_modes", 4, 0, 64));
  const double amplitude = p.number("amplitude", 0.15, 0.0, 0.5);
  const int field_modes = static_cast<int>(p.integer("field_modes", 4, 0, 64));
  const double shift = p.number("shift", 0.7, -1e3, 1e3);

  Rng rng(seed);
  Table t{{"case", "term1", "term2", "term3", "term4", "term5", "term6", "term7", "total",
           "sectional", "total_shifted"},
          {}};
  double min_k = std::numeric_limits<double>::infinity(), shift_diff = 0.0;
  long long sign_violations = 0, skipped = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const DiscreteCurve f = random_star_curve(rng, K, modes, amplitude);
    const FieldAlongCurve x = random_normal_field(rng, f, field_modes);
    const FieldAlongCurve y = random_normal_field(rng, f, field_modes);
    CurvatureBreakdown b;
    try {
      b = sectional_curvature_breakdown(f, x, y);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegeneratePlane) throw;
      ++skipped;
      continue;
    }
    const FieldAlongCurve ys(y.vectors() + shift * x.vectors());
    const double shifted = curvature_terms(f, x, ys).total;
    shift_diff = std::max(shift_diff, std::abs(shifted - b.total));
    min_k = std::min(min_k, b.sectional);
    const double tol = kSignTolerance * std::max(1.0, std::abs(b.total));
    if (b.term1 > tol || b.term2 > tol || b.term6 > tol || b.term3 < -tol || b.term7 < -tol) {
      ++sign_violations;
    }
    t.add({integer(c), b.term1, b.term2, b.term3, b.term4, b.term5, b.term6, b.term7, b.total,
           b.sectional, shifted});
  }
  ctx.write("results.csv", t);
  ctx.metrics = {{"min_sectional", min_k},
                 {"sign_violations", sign_violations},
                 {"max_shift_difference", shift_diff},
                 {"degenerate_planes_skipped", skipped}};
  ctx.tolerances = {{"sectional_min", -1e-10},
                    {"shift_invariance", 1e-8},
                    {"term_sign_tolerance", "1e-10 * max(1, |total|)"},
                    {"degenerate_plane_denominator", 1e-10}};
}

void run_curvature_diff(Params& p, Context& ctx) {
  const std::uint64_t seed = ctx.require_seed("curvature-diff");
  const auto pairs = static_cast<std::size_t>(p.integer("pairs", 50, 0, 1000000));
  const std::size_t K = p.grid("K", 64);
  const int modes = static_cast<int>(p.integer("modes", 4, 0, static_cast<long long>(K / 4)));

  Rng rng(seed);
  Table t{{"case", "general", "bracket_form", "abs_difference"}, {}};
  double max_diff = 0.0, sincos = 0.0;
  for (std::size_t c = 0; c <= pairs; ++c) {
    PeriodicField X = c == 0 ? PeriodicField::sample_1d(K, [](double x) { return std::sin(x); })
                             : random_field_1d(rng, K, modes);
    PeriodicField Y = c == 0 ? PeriodicField::sample_1d(K, [](double x) { return std::cos(x); })
                             : random_field_1d(rng, K, modes);
    const double general = diff_curvature(X, Y);
    const PeriodicField br = lie_bracket(X, Y);
    const double bracket = -h0_inner(br, br);
    const double d = std::abs(general - bracket);
    max_diff = std::max(max_diff, d);
    if (c == 0) sincos = general;
    t.add({integer(c), general, bracket, d});
  }
  ctx.write("results.csv", t);
  ctx.metrics = {{"max_abs_difference", max_diff}, {"sin_cos_value", sincos}};
  ctx.tolerances = {{"identity_tolerance", 1e-8}, {"sin_cos_expected", -2.0 * std::numbers::pi}};
}

void run_bounds(Params& p, Context& ctx) {
  const std::uint64_t seed = ctx.require_seed("bounds");
  const auto n_lip = static_cast<std::size_t>(p.integer("lipschitz_paths", 100, 0, 100000));
  const auto n_area = static_cast<std::size_t>(p.integer("area_paths", 25, 0, 100000));
  const auto n_fv = static_cast<std::size_t>(p.integer("first_variation_pairs", 20, 0, 100000));
  const double A = p.number("A", 1.0, 1e-12, 1e6);
  const std::size_t K = p.grid("K", 64);
  const auto T = static_cast<std::size_t>(p.integer("T", 32, 8, 1 << 16));
  const double D = p.number("translation_D", 1.0, 1e-6, 1e3);
  const std::size_t tK = p.grid("translation_K", 8192, 1 << 20);
  const auto tT = static_cast<std::size_t>(p.integer("translation_T", 16, 8, 1 << 16));
  const auto fv_eps = p.numbers("first_variation_eps", {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4}, 1e-8, 1.0);
  const double order_min = 1.9;

  Rng rng(seed);
  Table t{{"kind", "index", "lhs", "rhs", "gap", "satisfied"}, {}};
  long long violations = 0;
  auto add = [&](int kind, std::size_t i, const BoundReport& r) {
    t.add({integer(kind), integer(i), r.lhs, r.rhs, r.gap, integer(r.satisfied ? 1 : 0)});
    if (!r.satisfied) ++violations;
  };
  for (std::size_t i = 0; i < n_lip; ++i) add(0, i, lipschitz_gap(random_perturbation_path(rng, K, T), A));
  for (std::size_t i = 0; i < n_area; ++i) add(1, i, swept_volume(random_perturbation_path(rng, K, T)));
  const ImmersionPath tp = translation_path(tK, tT, D);
  add(1, n_area, swept_volume(tp));
  const BoundReport sweep = swept_volume(tp);
  BoundReport closed;
  closed.lhs = sweep.lhs;
  closed.rhs = 4.0 * D;
  closed.gap = std::abs(sweep.lhs - 4.0 * D);
  closed.satisfied = closed.gap < 1e-6;
  add(2, 0, closed);
  double min_order = std::numeric_limits<double>::infinity();
  double min_pairwise = min_order;
  for (std::size_t i = 0; i < n_fv; ++i) {
    const DiscreteCurve f = random_star_curve(rng, K);
    const FieldAlongCurve h = random_field(rng, f);
    BoundReport r;
    const VariationOrder vo = first_variation_order(f, h, fv_eps);
    min_pairwise = std::min(min_pairwise, vo.min_pairwise);
    r.lhs = vo.fitted;
    r.rhs = order_min;
    r.gap = r.lhs - r.rhs;
    r.satisfied = r.lhs >= order_min;
    min_order = std::min(min_order, r.lhs);
    add(3, i, r);
  }
  ctx.write("results.csv", t);
  ctx.metrics = {{"violations", violations},
                 {"translation_swept_volume", sweep.lhs},
                 {"first_variation_min_order", min_order},
                 {"first_variation_min_pairwise_order", min_pairwise}};
  ctx.tolerances = {{"bound_relative_tolerance", 1e-8},
                    {"translation_closed_form_tolerance", 1e-6},
                    {"first_variation_order_min", order_min},
                    {"first_variation_order_definition", "least-squares slope of log error vs log eps"},
                    {"kinds", {{"0", "lipschitz"}, {"1", "swept_volume"},
                               {"2", "translation_closed_form"}, {"3", "first_variation_order"}}}};
}

void run_wave_demo(Params& p, Context& ctx) {
  const double eps = p.number("epsilon", 0.05, 1e-3, 0.45);
  const auto particles = static_cast<std::size_t>(p.integer("particles", 40, 1, 100000));
  const auto samples = static_cast<std::size_t>(p.integer("time_samples", 200, 2, 1000000));
  const auto g = p.bump("g", {0.0, 1.5, 0.5});
  ShortPathOptions opt;
  opt.support_min = g.center - g.width;
  opt.support_max = g.center + g.width;
  opt.resolution = p.number("resolution", 8.0, 8.0, 256.0);
  const double x_lo = p.number("particle_x_min", opt.support_min - 0.25, -1e3, 1e3);
  const double x_hi = p.number("particle_x_max", opt.support_max + 0.25, -1e3, 1e3);

  const DiffPath1D path = short_path_to(g, eps, opt);
  const auto energy = wave_energy(path);
  const Eigen::Index nx = path.x_grid.size();
  const Eigen::Index nt = path.t_grid.size();
  std::vector<Eigen::Index> cols;
  for (std::size_t k = 0; k < particles; ++k) {
    const double x = particles == 1 ? x_lo
                                    : x_lo + (x_hi - x_lo) * static_cast<double>(k) /
                                                 static_cast<double>(particles - 1);
    const double idx = std::round((x - path.x_grid[0]) / path.dx());
    cols.push_back(std::clamp<Eigen::Index>(static_cast<Eigen::Index>(idx), 0, nx - 1));
  }
  std::vector<Eigen::Index> times;
  for (std::size_t s = 0; s < samples; ++s) {
    times.push_back(static_cast<Eigen::Index>(std::llround(
        static_cast<double>(nt - 1) * static_cast<double>(s) / static_cast<double>(samples - 1))));
  }
  Table tr{{"particle", "x0", "t", "phi"}, {}};
  Table res{{"particle", "x0", "final_x", "target_x"}, {}};
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const double x0 = path.x_grid[cols[k]];
    for (Eigen::Index i : times) tr.add({integer(k), x0, path.t_grid[i], path.phi(i, cols[k])});
    res.add({integer(k), x0, path.phi(nt - 1, cols[k]), x0 + g(x0)});
  }
  ctx.write("results.csv", res);
  ctx.write("trajectory.csv", tr);
  ctx.metrics = {{"energy", energy.energy},
                 {"energy_bound", energy.bound},
                 {"final_map_error", final_map_error(path, g)},
                 {"min_slope", path.min_slope()}};
  ctx.tolerances = {{"final_map_error_max", 5e-3}, {"dx_over_epsilon", 1.0 / opt.resolution}};
}

struct Runner {
  ExperimentInfo info;
  std::set<std::string> keys;
  void (*run)(Params&, Context&);
};

const std::vector<Runner>& runners() {
  static const std::vector<Runner> r = {
      {{"vanish-curves", "zig-zag sweep of horizontal G^0 lengths between two curves", false},
       {"n_list", "f0", "f1", "base_grid", "base_steps", "min_grid", "min_steps",
        "resolution_factor", "ratio_threshold"},
       run_vanish_curves},
      {{"vanish-diff", "compression-wave energies, final-map errors and G^A lower bounds", false},
       {"epsilon_list", "g", "rho", "f_test", "A", "resolution", "margin", "basic_t_min",
        "basic_t_max", "basic_x_min", "basic_x_max"},
       run_vanish_diff},
      {{"geodesic-shape", "G^0 geodesic of a plane curve with normal initial velocity", false},
       {"curve", "normal_speed", "mode", "K", "T_end", "steps", "circle_check"},
       run_geodesic_shape},
      {{"geodesic-diff", "Burgers, EPDiff or Camassa-Holm flow with invariant log", false},
       {"equation", "A", "u0", "K", "T_end", "steps", "snapshot_every"},
       run_geodesic_diff},
      {{"curvature-shape", "sectional curvature terms on random plane curves", true},
       {"cases", "K", "curve_modes", "amplitude", "field_modes", "shift"},
       run_curvature_shape},
      {{"curvature-diff", "Diff curvature formula against -int [X,Y]^2", true},
       {"pairs", "K", "modes"},
       run_curvature_diff},
      {{"bounds", "Lipschitz, swept-volume and first-variation checks", true},
       {"lipschitz_paths", "area_paths", "first_variation_pairs", "A", "K", "T", "translation_D",
        "translation_K", "translation_T", "first_variation_eps"},
       run_bounds},
      {{"wave-demo", "particle trajectories of a short compression-wave path", false},
       {"epsilon", "particles", "time_samples", "g", "resolution", "particle_x_min",
        "particle_x_max"},
       run_wave_demo},
  };
  return r;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> c = [] {
    std::vector<ExperimentInfo> out;
    for (const auto& r : runners()) out.push_back(r.info);
    return out;
  }();
  return c;
}

json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

RunSummary run_experiment(const json& config, const RunOverrides& overrides) {
  if (!config.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (key != "experiment" && key != "parameters" && key != "output_dir" && key != "seed" &&
        key != "threads") {
      throw Error(ErrorKind::Config, "unknown config field '" + key + "'");
    }
  }
  if (!config.contains("experiment") || !config["experiment"].is_string()) {
    throw Error(ErrorKind::Config, "config needs a string field 'experiment'");
  }
  const std::string name = config["experiment"].get<std::string>();
  const auto& all = runners();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Runner& r) { return r.info.name == name; });
  if (it == all.end()) throw Error(ErrorKind::Config, "unknown experiment '" + name + "'");

  Context ctx;
  std::string dir = "out/" + name;
  if (config.contains("output_dir")) {
    if (!config["output_dir"].is_string()) throw Error(ErrorKind::Config, "output_dir must be a string");
    dir = config["output_dir"].get<std::string>();
  }
  if (overrides.output_dir) dir = *overrides.output_dir;
  if (config.contains("threads")) {
    if (!config["threads"].is_number_unsigned() || config["threads"].get<unsigned>() == 0) {
      throw Error(ErrorKind::Config, "threads must be a positive integer");
    }
    ctx.threads = config["threads"].get<unsigned>();
  }
  if (overrides.threads) ctx.threads = std::max(1u, *overrides.threads);
  if (config.contains("seed")) {
    const auto& s = config["seed"];
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0)) {
      throw Error(ErrorKind::Config, "seed must be a non-negative integer");
    }
    ctx.seed = config["seed"].get<std::uint64_t>();
  }
  if (overrides.seed) ctx.seed = overrides.seed;

  if (it->info.uses_seed && !ctx.seed) {
    throw Error(ErrorKind::Config, name + " draws random cases and needs a seed");
  }
  Params params(config.contains("parameters") ? config["parameters"] : json::object(), it->keys);
  ctx.dir = dir;
  std::filesystem::create_directories(ctx.dir);
  it->run(params, ctx);

  json effective = {{"experiment", name},
                    {"output_dir", dir},
                    {"threads", ctx.threads},
                    {"parameters", params.resolved()}};
  if (ctx.seed) effective["seed"] = *ctx.seed;
  const json manifest = {{"tool", "shapeflow"},
                         {"version", SHAPEFLOW_VERSION},
                         {"experiment", name},
                         {"config", effective},
                         {"tolerances", ctx.tolerances},
                         {"metrics", ctx.metrics},
                         {"partial", ctx.partial},
                         {"diagnostics", ctx.diagnostics},
                         {"files", ctx.files},
                         {"csv_number_format", "%.16e"}};
  write_atomic(ctx.dir / "manifest.json", manifest.dump(2) + "\n");

  RunSummary summary;
  summary.experiment = name;
  summary.output_dir = ctx.dir;
  summary.partial = ctx.partial;
  summary.metrics = ctx.metrics;
  for (const auto& [file, desc] : ctx.files.items()) summary.files.push_back(file);
  summary.files.push_back("manifest.json");
  return summary;
}

}  // namespace shapeflow
