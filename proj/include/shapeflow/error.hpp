#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shapeflow {

enum class ErrorKind {
  InvalidGrid,
  DegenerateImmersion,
  Parameter,
  Precondition,
  Unsupported,
  InvalidWave,
  InvalidDisplacement,
  Domain,
  DegeneratePlane,
  Config,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a machine-readable kind alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace shapeflow
