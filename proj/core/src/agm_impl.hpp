// AGM kernels shared by the double and the extended-precision paths.
// R is a real type, C the matching complex type; both are found by ADL.
#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <utility>

#include <boost/math/constants/constants.hpp>

#include "lp2/error.hpp"

namespace lp2::detail {

inline constexpr int agm_max_iterations = 64;

template <class R, class C>
C agm_step_sqrt(const C& a, const C& g, const C& a_next) {
  using std::abs;
  using std::sqrt;
  C root = sqrt(a * g);
  if (abs(a_next - root) > abs(a_next + root)) root = -root;
  return root;
}

template <class R, class C>
C agm(C a, C g) {
  using std::abs;
  const R eps = std::numeric_limits<R>::epsilon();
  for (int n = 0; n < agm_max_iterations; ++n) {
    if (abs(a - g) <= 4 * eps * abs(a)) return (a + g) / R(2);
    C a_next = (a + g) / R(2);
    g = agm_step_sqrt<R, C>(a, g, a_next);
    a = a_next;
  }
  throw Error(ErrorKind::convergence, "AGM did not converge in 64 iterations");
}

template <class C>
struct KE {
  C K;
  C E;
};

// K(m) and E(m) from the AGM and its companion sum
//   E = K (1 - sum_{n>=0} 2^{n-1} c_n^2),  c_0^2 = m, c_{n+1} = (a_n - g_n)/2.
template <class R, class C>
KE<C> elliptic_KE_m(const C& m) {
  using std::abs;
  using std::sqrt;
  const R eps = std::numeric_limits<R>::epsilon();
  const R pi = boost::math::constants::pi<R>();
  C a(R(1));
  C g = sqrt(C(R(1)) - m);
  C sum = m / R(2);
  R weight(1);
  for (int n = 0;; ++n) {
    if (n == agm_max_iterations)
      throw Error(ErrorKind::convergence, "AGM did not converge in 64 iterations");
    C c = (a - g) / R(2);
    sum += weight * c * c;
    weight *= 2;
    C a_next = (a + g) / R(2);
    g = agm_step_sqrt<R, C>(a, g, a_next);
    a = a_next;
    if (abs(c) <= eps * abs(a)) break;
  }
  C K = pi / (R(2) * a);
  return {K, K * (C(R(1)) - sum)};
}

template <class R, class C>
C hyp2f1_half(const C& z) {
  using std::sqrt;
  return C(R(1)) / agm<R, C>(C(R(1)), sqrt(C(R(1)) - z));
}

// F'(m) = (E - (1-m) K) / (pi m (1-m)).
template <class R, class C>
C hyp2f1_half_prime_agm(const C& m) {
  const R pi = boost::math::constants::pi<R>();
  auto ke = elliptic_KE_m<R, C>(m);
  C one(R(1));
  return (ke.E - (one - m) * ke.K) / (pi * m * (one - m));
}

// log Gamma(x), x > 0, by shifting to x >= 60 and Stirling's series with
// Bernoulli numbers through B_30.
template <class R>
R lgamma_stirling(R x) {
  using std::log;
  static const std::array<std::pair<std::int64_t, std::int64_t>, 15> bern = {{
      {1, 6},
      {-1, 30},
      {1, 42},
      {-1, 30},
      {5, 66},
      {-691, 2730},
      {7, 6},
      {-3617, 510},
      {43867, 798},
      {-174611, 330},
      {854513, 138},
      {-236364091, 2730},
      {8553103, 6},
      {-23749461029LL, 870},
      {8615841276005LL, 14322},
  }};
  R shift(0);
  R prod(1);
  while (x < 60) {
    prod *= x;
    x += 1;
  }
  shift = log(prod);
  const R half_log_2pi = log(2 * boost::math::constants::pi<R>()) / 2;
  R s = (x - R(0.5)) * log(x) - x + half_log_2pi;
  R xpow = x;
  const R x2 = x * x;
  for (std::size_t k = 1; k <= bern.size(); ++k) {
    R b = R(bern[k - 1].first) / R(bern[k - 1].second);
    s += b / (R(2 * k) * R(2 * k - 1) * xpow);
    xpow *= x2;
  }
  return s - shift;
}

template <class R>
R tgamma_stirling(R x) {
  using std::exp;
  return exp(lgamma_stirling(x));
}

}  // namespace lp2::detail
