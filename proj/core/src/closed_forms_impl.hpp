// Closed-form singular values, templated so the extended path shares them.
#pragma once

#include <boost/math/constants/constants.hpp>

#include "agm_impl.hpp"

namespace lp2::detail {

template <class R>
struct ClosedForms {
  R pi = boost::math::constants::pi<R>();
  R sqrt2 = sqrt_(R(2));
  R sqrt3 = sqrt_(R(3));
  R g13 = tgamma_stirling(R(1) / 3);
  R g23 = tgamma_stirling(R(2) / 3);
  R g13c = g13 * g13 * g13;
  R g23c = g23 * g23 * g23;

  static R sqrt_(const R& v) {
    using std::sqrt;
    return sqrt(v);
  }
  static R p(int base, int num, int den) {
    using std::pow;
    return pow(R(base), R(num) / R(den));
  }

  R k_plus() const { return (sqrt_(R(6)) + sqrt2) / 4; }
  R k_minus() const { return (sqrt_(R(6)) - sqrt2) / 4; }

  R K_plus() const { return p(2, -7, 3) * p(3, 3, 4) * g13c / pi; }
  R K_minus() const { return p(2, -7, 3) * p(3, 1, 4) * g13c / pi; }
  R E_plus() const {
    return p(2, 1, 3) * p(3, -1, 4) * pi * pi / g13c +
           p(2, -10, 3) * p(3, 1, 4) / pi * (sqrt3 - 1) * g13c;
  }
  R E_minus() const {
    return p(2, 1, 3) * p(3, -3, 4) * pi * pi / g13c +
           p(2, -10, 3) * p(3, -1, 4) / pi * (sqrt3 + 1) * g13c;
  }

  template <class C>
  C F_minus_omega() const {
    C one_p_i(R(1), R(1));
    C one_m_i(R(1), R(-1));
    R pref = p(2, -7, 3) * g13c / (pi * pi * sqrt2);
    return one_p_i * (pref * p(3, 3, 4)) + one_m_i * (pref * p(3, 1, 4));
  }

  template <class C>
  C F_prime_minus_omega() const {
    C i_half(R(1) / sqrt2, R(1) / sqrt2);
    C i_mhalf(R(1) / sqrt2, R(-1) / sqrt2);
    C t1 = (i_half - i_mhalf * sqrt3) * (g13c * p(3, -1, 4) * p(2, -7, 3) / (2 * pi * pi));
    C t2 = (i_half + i_mhalf * sqrt3) * (g23c * p(3, 3, 4) * p(2, -8, 3) / (pi * pi));
    return t1 + t2;
  }

  // F'(m) at m = k^2 from K'(k) = E/(k(1-k^2)) - K/k and F(k^2) = (2/pi) K(k).
  R F_prime_from_KE(const R& k, const R& K, const R& E) const {
    R dK = E / (k * (1 - k * k)) - K / k;
    return dK / (pi * k);
  }

  // Differentiate Ramanujan's identity in x at x = sqrt3 and solve for
  // F'((1 + i sqrt3)/2).
  template <class C>
  C F_prime_minus_omega_chain() const {
    using std::pow;
    const R x = sqrt3;
    const R s = 1 + x * x;
    const R dm = pow(s, R(-3) / 2) / 2;
    C one_p_i(R(1), R(1));
    C one_m_i(R(1), R(-1));
    C rhs = one_p_i / R(2) * (F_prime_from_KE(k_plus(), K_plus(), E_plus()) * dm) -
            one_m_i / R(2) * (F_prime_from_KE(k_minus(), K_minus(), E_minus()) * dm);
    C lhs_known = F_minus_omega<C>() * (x / (2 * pow(s, R(3) / 4)));
    C coeff = C(R(0), R(1)) * (pow(s, R(1) / 4) / 2);
    return (rhs - lhs_known) / coeff;
  }
};

}  // namespace lp2::detail
