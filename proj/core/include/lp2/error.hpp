#pragma once

#include <stdexcept>
#include <string>

namespace lp2 {

enum class ErrorKind {
  domain,
  pole,
  branch,
  convergence,
  basis,
  consistency,
  collision,
  quadrature,
  fit,
  monodromy,
  usage,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `context` is a short free-form
/// description of the offending input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string context);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorKind kind_;
  std::string context_;
};

}  // namespace lp2
