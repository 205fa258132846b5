#include "shapeflow/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "shapeflow/spectral.hpp"

namespace shapeflow {
namespace {

double uniform(Rng& rng, double a) { return std::uniform_real_distribution<double>(-a, a)(rng); }

struct StarProfile {
  std::vector<double> a, b;  // coefficients of cos k theta, sin k theta for k = 2..

  static StarProfile draw(Rng& rng, int modes, double amplitude) {
    StarProfile p;
    for (int m = 0; m < modes; ++m) {
      const double k = m + 2;
      p.a.push_back(uniform(rng, amplitude / (k * k)));
      p.b.push_back(uniform(rng, amplitude / (k * k)));
    }
    return p;
  }

  double operator()(double th) const {
    double r = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
      const double k = static_cast<double>(m + 2);
      r += a[m] * std::cos(k * th) + b[m] * std::sin(k * th);
    }
    return r;
  }
};

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

}  // namespace

DiscreteCurve circle(std::size_t K, double radius, double cx, double cy, bool clockwise) {
  const double s = clockwise ? -1.0 : 1.0;
  return DiscreteCurve::sample(K, 2, [&](double th) {
    return vec2(cx + radius * std::cos(th), cy + s * radius * std::sin(th));
  });
}

DiscreteCurve random_star_curve(Rng& rng, std::size_t K, int modes, double amplitude) {
  const StarProfile p = StarProfile::draw(rng, modes, amplitude);
  const double cx = uniform(rng, 0.5);
  const double cy = uniform(rng, 0.5);
  return DiscreteCurve::sample(K, 2, [&](double th) {
    const double r = 1.0 + p(th);
    return vec2(cx + r * std::cos(th), cy + r * std::sin(th));
  });
}

Eigen::VectorXd random_trig_polynomial(Rng& rng, std::size_t K, int modes, double amplitude) {
  const Eigen::VectorXd th = periodic_grid(K);
  Eigen::VectorXd v = Eigen::VectorXd::Constant(th.size(), uniform(rng, amplitude));
  for (int k = 1; k <= modes; ++k) {
    const double a = uniform(rng, amplitude);
    const double b = uniform(rng, amplitude);
    v.array() += a * (k * th.array()).cos() + b * (k * th.array()).sin();
  }
  return v;
}

FieldAlongCurve random_normal_field(Rng& rng, const DiscreteCurve& f, int modes) {
  const Eigen::VectorXd a = random_trig_polynomial(rng, f.size(), modes);
  const Eigen::MatrixXd n = left_normal(curve_frame(f));
  return FieldAlongCurve(n.array().colwise() * a.array());
}

FieldAlongCurve random_field(Rng& rng, const DiscreteCurve& f, int modes) {
  Eigen::MatrixXd v(f.points().rows(), f.points().cols());
  for (Eigen::Index c = 0; c < v.cols(); ++c) v.col(c) = random_trig_polynomial(rng, f.size(), modes);
  return FieldAlongCurve(std::move(v));
}

ImmersionPath translation_path(std::size_t K, std::size_t T, double D) {
  return ImmersionPath::sample(
      T, K, 2, [D](double t, double th) { return vec2(std::cos(th) + t * D, std::sin(th)); },
      [D](double, double) { return vec2(D, 0.0); });
}

ImmersionPath random_perturbation_path(Rng& rng, std::size_t K, std::size_t T, int modes,
                                       double amplitude) {
  const StarProfile r0 = StarProfile::draw(rng, modes, amplitude);
  const StarProfile r1 = StarProfile::draw(rng, modes, amplitude);
  const StarProfile r2 = StarProfile::draw(rng, modes, amplitude);
  const double s0 = 1.0 + uniform(rng, 0.3);
  const double s1 = 1.0 + uniform(rng, 0.3);
  const double cx = uniform(rng, 0.5);
  const double cy = uniform(rng, 0.5);
  const double pi = std::numbers::pi;
  auto radius = [=](double t, double th) {
    return s0 + t * (s1 - s0) + r0(th) + t * (r1(th) - r0(th)) + std::sin(pi * t) * r2(th);
  };
  auto radius_t = [=](double t, double th) {
    return (s1 - s0) + r1(th) - r0(th) + pi * std::cos(pi * t) * r2(th);
  };
  return ImmersionPath::sample(
      T, K, 2,
      [=](double t, double th) {
        const double r = radius(t, th);
        return vec2(t * cx + r * std::cos(th), t * cy + r * std::sin(th));
      },
      [=](double t, double th) {
        const double rt = radius_t(t, th);
        return vec2(cx + rt * std::cos(th), cy + rt * std::sin(th));
      });
}

PeriodicField random_field_1d(Rng& rng, std::size_t K, int modes, double amplitude) {
  return PeriodicField({K}, {random_trig_polynomial(rng, K, modes, amplitude)});
}

PeriodicField random_field_2d(Rng& rng, std::size_t K1, std::size_t K2, int modes,
                              double amplitude) {
  struct Mode {
    int kx, ky;
    double c, s;
  };
  std::vector<Mode> comp[2];
  for (auto& list : comp) {
    for (int kx = -modes; kx <= modes; ++kx) {
      for (int ky = 0; ky <= modes; ++ky) {
        list.push_back({kx, ky, uniform(rng, amplitude), uniform(rng, amplitude)});
      }
    }
  }
  return PeriodicField::sample_2d(K1, K2, [&](double x, double y) {
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    for (int c = 0; c < 2; ++c) {
      for (const Mode& m : comp[c]) {
        const double arg = m.kx * x + m.ky * y;
        v[c] += m.c * std::cos(arg) + m.s * std::sin(arg);
      }
    }
    return v;
  });
}

}  // namespace shapeflow
