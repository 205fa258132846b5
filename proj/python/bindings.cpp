#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shapeflow/benchmarks.hpp"
#include "shapeflow/compression_wave.hpp"
#include "shapeflow/diff_group.hpp"
#include "shapeflow/error.hpp"
#include "shapeflow/experiments.hpp"
#include "shapeflow/shape_curvature.hpp"
#include "shapeflow/shape_geodesics.hpp"
#include "shapeflow/shape_metric.hpp"
#include "shapeflow/vanishing.hpp"

namespace py = pybind11;
using namespace shapeflow;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

PeriodicField field_from(const std::vector<RowMatrix>& comps) {
  if (comps.empty()) throw Error(ErrorKind::Parameter, "a field needs at least one component");
  const RowMatrix& first = comps.front();
  if (first.rows() == 1 || first.cols() == 1) {
    if (comps.size() != 1) throw Error(ErrorKind::Parameter, "1-D fields have one component");
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(first.data(), first.size());
    return PeriodicField({static_cast<std::size_t>(v.size())}, {v});
  }
  std::vector<Eigen::VectorXd> out;
  for (const RowMatrix& c : comps) {
    if (c.rows() != first.rows() || c.cols() != first.cols()) {
      throw Error(ErrorKind::Parameter, "components must share a grid");
    }
    out.push_back(Eigen::Map<const Eigen::VectorXd>(c.data(), c.size()));
  }
  return PeriodicField({static_cast<std::size_t>(first.rows()), static_cast<std::size_t>(first.cols())},
                       std::move(out));
}

py::list components_of(const PeriodicField& u) {
  py::list out;
  for (int k = 0; k < u.dim(); ++k) {
    if (u.dim() == 1) {
      out.append(u.component(k));
    } else {
      const auto& g = u.grid();
      out.append(RowMatrix(Eigen::Map<const RowMatrix>(u.component(k).data(),
                                                       static_cast<Eigen::Index>(g[0]),
                                                       static_cast<Eigen::Index>(g[1]))));
    }
  }
  return out;
}

DiffEquationSpec equation_from(const std::string& name, double A) {
  if (name == "burgers") return {DiffEquation::Burgers, A};
  if (name == "epdiff") return {DiffEquation::Epdiff, A};
  if (name == "camassa_holm") return {DiffEquation::CamassaHolm, A};
  throw Error(ErrorKind::Parameter, "unknown equation '" + name + "'");
}

py::dict path_dict(const DiffPath1D& p) {
  py::dict d;
  d["t"] = p.t_grid;
  d["x"] = p.x_grid;
  d["phi"] = p.phi;
  d["lambda"] = p.lambda;
  d["epsilon"] = p.epsilon;
  return d;
}

ScalarFn bump_fn(double c, double w, double h) {
  return [=](double x) { return bump_profile(x, c, w, h); };
}

}  // namespace

PYBIND11_MODULE(_shapeflow, m) {
  m.doc() = "Numerical experiments on shape spaces and diffeomorphism groups";
  m.attr("__version__") = SHAPEFLOW_VERSION;

  static py::exception<Error> error(m, "ShapeflowError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(to_string(e.kind())), e.what()).ptr());
    }
  });

  m.def("circle", [](std::size_t K, double r, double cx, double cy, bool cw) {
    return circle(K, r, cx, cy, cw).points();
  }, py::arg("K"), py::arg("radius") = 1.0, py::arg("cx") = 0.0, py::arg("cy") = 0.0,
     py::arg("clockwise") = false);

  m.def("curve_length", [](const Eigen::MatrixXd& f) { return curve_frame(DiscreteCurve(f)).volume; },
        py::arg("points"));
  m.def("mean_curvature", [](const Eigen::MatrixXd& f) {
    return mean_curvature(DiscreteCurve(f)).vectors();
  }, py::arg("points"));
  m.def("volume_first_variation", [](const Eigen::MatrixXd& f, const Eigen::MatrixXd& h) {
    return volume_first_variation(DiscreteCurve(f), FieldAlongCurve(h));
  }, py::arg("points"), py::arg("h"));
  m.def("ga_inner", [](const Eigen::MatrixXd& f, const Eigen::MatrixXd& h, const Eigen::MatrixXd& k,
                       double A) {
    return ga_inner(DiscreteCurve(f), FieldAlongCurve(h), FieldAlongCurve(k), A);
  }, py::arg("points"), py::arg("h"), py::arg("k"), py::arg("A"));
  m.def("sectional_curvature", [](const Eigen::MatrixXd& f, const Eigen::MatrixXd& x,
                                  const Eigen::MatrixXd& y) {
    const CurvatureBreakdown b = sectional_curvature_breakdown(DiscreteCurve(f), FieldAlongCurve(x),
                                                               FieldAlongCurve(y));
    py::dict d;
    d["terms"] = std::vector<double>{b.term1, b.term2, b.term3, b.term4, b.term5, b.term6, b.term7};
    d["total"] = b.total;
    d["sectional"] = b.sectional;
    return d;
  }, py::arg("points"), py::arg("x"), py::arg("y"));

  m.def("geodesic", [](const Eigen::MatrixXd& f, const Eigen::VectorXd& a, double t_end, int steps,
                       const std::string& mode) {
    if (mode != "full" && mode != "horizontal") {
      throw Error(ErrorKind::Parameter, "mode must be 'full' or 'horizontal'");
    }
    const DiscreteCurve c(f);
    const Eigen::MatrixXd n = left_normal(curve_frame(c));
    const GeodesicState s0{c, FieldAlongCurve(n.array().colwise() * a.array()), 0.0};
    const auto traj = integrate_geodesic(s0, t_end, steps,
                                         mode == "full" ? GeodesicMode::Full : GeodesicMode::Horizontal);
    py::list times, curves;
    for (const auto& s : traj.states) {
      times.append(s.t);
      curves.append(s.f.points());
    }
    py::dict d;
    d["t"] = times;
    d["curves"] = curves;
    d["stopped_early"] = traj.stopped_early;
    d["diagnostic"] = traj.diagnostic;
    return d;
  }, py::arg("points"), py::arg("normal_speed"), py::arg("t_end"), py::arg("steps"),
     py::arg("mode") = "horizontal");

  m.def("zigzag_phi", [](double t, double alpha, int n, double smoothing) {
    ZigzagConfig cfg;
    cfg.n = n;
    cfg.smoothing = smoothing;
    return zigzag_phi(t, alpha, cfg);
  }, py::arg("t"), py::arg("alpha"), py::arg("n"), py::arg("smoothing") = -1.0);
  m.def("vanishing_sweep", [](const Eigen::MatrixXd& f0, const Eigen::MatrixXd& f1,
                              const std::vector<int>& n_list, unsigned threads) {
    SweepOptions opt;
    opt.base_grid = static_cast<std::size_t>(f0.rows());
    opt.threads = threads;
    py::list out;
    for (const auto& r : vanishing_sweep(DiscreteCurve(f0), DiscreteCurve(f1), n_list, opt)) {
      py::dict d;
      d["n"] = r.n;
      d["K"] = r.K;
      d["T"] = r.T;
      d["length"] = r.length;
      d["max_volume"] = r.max_volume;
      out.append(d);
    }
    return out;
  }, py::arg("f0"), py::arg("f1"), py::arg("n_list"), py::arg("threads") = 1);

  m.def("epdiff_rhs", [](const std::vector<RowMatrix>& u) {
    return components_of(epdiff_rhs(field_from(u)));
  }, py::arg("components"));
  m.def("camassa_holm_rhs", [](const Eigen::VectorXd& u, double A) {
    return camassa_holm_rhs(PeriodicField({static_cast<std::size_t>(u.size())}, {u}), A).component(0);
  }, py::arg("u"), py::arg("A"));
  m.def("beta_operator", [](const std::vector<RowMatrix>& y, const std::vector<RowMatrix>& z) {
    return components_of(beta_operator(field_from(y), field_from(z)));
  }, py::arg("Y"), py::arg("Z"));
  m.def("diff_curvature", [](const std::vector<RowMatrix>& x, const std::vector<RowMatrix>& y) {
    return diff_curvature(field_from(x), field_from(y));
  }, py::arg("X"), py::arg("Y"));
  m.def("ga_diff_inner", [](const std::vector<RowMatrix>& x, const std::vector<RowMatrix>& y,
                            double A) { return ga_diff_inner(field_from(x), field_from(y), A); },
        py::arg("X"), py::arg("Y"), py::arg("A"));
  m.def("integrate_diff_geodesic", [](const std::vector<RowMatrix>& u0, const std::string& equation,
                                      double A, double t_end, std::size_t steps) {
    const auto traj = integrate_diff_geodesic(field_from(u0), equation_from(equation, A), t_end, steps);
    std::vector<double> t, mom, l2, ga, grad;
    for (const auto& r : traj.log) {
      t.push_back(r.t);
      mom.push_back(r.momentum);
      l2.push_back(r.l2);
      ga.push_back(r.ga);
      grad.push_back(r.max_gradient);
    }
    py::dict d;
    d["t"] = t;
    d["momentum"] = mom;
    d["l2"] = l2;
    d["ga"] = ga;
    d["max_gradient"] = grad;
    d["final"] = components_of(traj.states.back());
    d["stopped_early"] = traj.stopped_early;
    d["diagnostic"] = traj.diagnostic;
    return d;
  }, py::arg("u0"), py::arg("equation"), py::arg("A") = 0.0, py::arg("t_end"), py::arg("steps"));

  m.def("basic_wave", [](double lambda, double epsilon) {
    const DiffPath1D p = basic_wave(lambda, epsilon, WaveWindow{});
    py::dict d = path_dict(p);
    const auto e = wave_energy(p, 0.0, 1.0);
    d["energy"] = e.energy;
    d["bound"] = e.bound;
    return d;
  }, py::arg("lambda_"), py::arg("epsilon"));
  m.def("short_path", [](double epsilon, double center, double width, double height, double resolution) {
    ShortPathOptions opt;
    opt.support_min = center - width;
    opt.support_max = center + width;
    opt.resolution = resolution;
    const ScalarFn g = bump_fn(center, width, height);
    const DiffPath1D p = short_path_to(g, epsilon, opt);
    py::dict d = path_dict(p);
    const auto e = wave_energy(p);
    d["energy"] = e.energy;
    d["bound"] = e.bound;
    d["final_map_error"] = final_map_error(p, g);
    return d;
  }, py::arg("epsilon"), py::arg("center") = 0.0, py::arg("width") = 1.5, py::arg("height") = 0.5,
     py::arg("resolution") = 8.0);

  m.def("experiments", [] {
    py::list out;
    for (const auto& e : experiment_catalog()) {
      out.append(py::make_tuple(e.name, e.summary, e.uses_seed));
    }
    return out;
  });
  m.def("_run_experiment_json", [](const std::string& config) {
    nlohmann::json cfg;
    try {
      cfg = nlohmann::json::parse(config);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Config, e.what());
    }
    const RunSummary s = run_experiment(cfg);
    nlohmann::json out = {{"experiment", s.experiment},
                          {"output_dir", s.output_dir.string()},
                          {"partial", s.partial},
                          {"files", s.files},
                          {"metrics", s.metrics}};
    return out.dump();
  }, py::arg("config"));
}
