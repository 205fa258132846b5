#include "shapeflow/error.hpp"

namespace shapeflow {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidGrid: return "invalid-grid";
    case ErrorKind::DegenerateImmersion: return "degenerate-immersion";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::InvalidWave: return "invalid-wave";
    case ErrorKind::InvalidDisplacement: return "invalid-displacement";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::DegeneratePlane: return "degenerate-plane";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace shapeflow
