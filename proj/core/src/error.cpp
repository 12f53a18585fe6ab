#include "lp2/error.hpp"

namespace lp2 {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::branch: return "branch";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::basis: return "basis";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::collision: return "collision";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::fit: return "fit";
    case ErrorKind::monodromy: return "monodromy";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string context)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + context),
      kind_(kind),
      context_(std::move(context)) {}

}  // namespace lp2
