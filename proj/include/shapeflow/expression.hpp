#pragma once

// Arithmetic expressions over named variables, the constant pi, and the
// functions sin, cos, exp, sqrt. Used for initial data in experiment configs,
// e.g. "0.1*sin(x)" or "(1 + 0.2*cos(2*theta))*cos(theta)". The symbol θ is
// accepted as a spelling of theta.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shapeflow {

class Expression {
 public:
  struct Node;

  /// Throws Error(Config) on syntax errors or unknown identifiers.
  static Expression parse(std::string_view source, std::vector<std::string> variables);

  double operator()(std::span<const double> values) const;
  double operator()(double a) const { return (*this)(std::span<const double>(&a, 1)); }
  double operator()(double a, double b) const {
    const double v[2] = {a, b};
    return (*this)(std::span<const double>(v, 2));
  }

  const std::string& source() const noexcept { return source_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

 private:
  std::string source_;
  std::vector<std::string> variables_;
  std::shared_ptr<const Node> root_;
};

}  // namespace shapeflow
