#pragma once

#include <string>
#include <vector>

namespace lp2::specfun {

enum class Precision { double_, extended };

Precision parse_precision(const std::string& name);
const char* to_string(Precision p) noexcept;

/// One closed-form identity: a value computed numerically (AGM, series or
/// finite differences) against the printed closed form.
struct IdentityCheck {
  std::string name;
  std::string method;
  // Decimal strings so the extended path keeps all of its digits.
  std::string computed_re, computed_im;
  std::string closed_re, closed_im;
  double rel_err = 0.0;
};

/// K(k+), K(k-), E(k+), E(k-), F(-w), F'(-w) (AGM derivative), F'(-w)
/// (finite difference), F'(-w) (differentiated Ramanujan identity) and
/// the Ramanujan identity at x = sqrt3.
std::vector<IdentityCheck> verify_appendix(Precision precision);

/// Names of the six headline identities, in the order returned first.
const std::vector<std::string>& appendix_core_identities();

}  // namespace lp2::specfun
