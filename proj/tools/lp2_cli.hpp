#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "lp2/appendix.hpp"

namespace lp2::cli {

enum class Format { json, csv };

struct RunConfig {
  double tolerance = 1e-10;
  std::vector<std::complex<double>> y_values;
  Format output_format = Format::json;
  specfun::Precision precision_mode = specfun::Precision::double_;

  /// Throws ErrorKind::usage unless tolerance is in [1e-12, 1e-3].
  void validate() const;
};

/// "re,im" or "re".
std::complex<double> parse_complex(const std::string& s);

/// Exit codes: 0 ok, 1 library error, 2 usage, 3 flagged rows or a failed
/// reproduce step. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace lp2::cli
