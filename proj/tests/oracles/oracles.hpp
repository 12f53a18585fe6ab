// Reference values computed without the library: boost.math at 50 digits,
// exact integer arithmetic, Gauss-Kronrod quadrature and brute-force HRR.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using cplx = std::complex<double>;
using big = boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline double tgamma50(double x) { return static_cast<double>(boost::math::tgamma(big(x))); }

/// Gamma(1/3) and Gamma(2/3) to 50 digits.
inline big gamma_third() { return boost::math::tgamma(big(1) / 3); }
inline big gamma_two_thirds() { return boost::math::tgamma(big(2) / 3); }

/// H_n = 1 + 1/2 + ... + 1/n exactly.
inline cpp_rational harmonic(int n) {
  cpp_rational h = 0;
  for (int k = 1; k <= n; ++k) h += cpp_rational(1, k);
  return h;
}

inline double to_double(const cpp_rational& r) { return static_cast<double>(r); }

/// (3m-1)!/(m!)^3 exactly; not an integer in general (m = 3 gives 560/3).
inline cpp_rational hyp_coefficient(int m) {
  cpp_int num = 1, den = 1;
  for (int k = 2; k <= 3 * m - 1; ++k) num *= k;
  for (int k = 2; k <= m; ++k) den *= k;
  return cpp_rational(num, den * den * den);
}

/// sum_{m=1}^{N} a_m (-y)^m in long double, with optional weight
/// psi(3m) - psi(m+1) = H_{3m-1} - H_m.
inline std::complex<long double> hyp_sum(cplx y, bool digamma, int N) {
  std::complex<long double> yl(y.real(), y.imag()), p = 1.0L, s = 0.0L;
  long double a = 1.0L;
  long double h3 = 0.0L, h1 = 0.0L;  // H_{3m-1}, H_m
  for (int m = 1; m <= N; ++m) {
    a = (m == 1) ? 2.0L : a * (3.0L * m - 1) * (3.0L * m - 2) * (3.0L * m - 3) / ((long double)m * m * m);
    for (int k = 3 * m - 3; k <= 3 * m - 1; ++k)
      if (k >= 1) h3 += 1.0L / k;
    h1 += 1.0L / m;
    p *= -yl;
    s += a * p * (digamma ? (h3 - h1) : 1.0L);
  }
  return s;
}

/// 2F1(1/2, 1/2; 1; lam) = (2/pi) int_0^{pi/2} (1 - lam sin^2 t)^{-1/2} dt,
/// principal square root; lam off [1, inf).
inline cplx hyp2f1_quad(cplx lam) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double t) {
    double s = std::sin(t);
    return 1.0 / std::sqrt(1.0 - lam * s * s);
  };
  double re = gauss_kronrod<double, 61>::integrate([&](double t) { return f(t).real(); }, 0.0,
                                                   std::numbers::pi / 2, 15, 1e-13);
  double im = gauss_kronrod<double, 61>::integrate([&](double t) { return f(t).imag(); }, 0.0,
                                                   std::numbers::pi / 2, 15, 1e-13);
  return 2.0 / std::numbers::pi * cplx(re, im);
}

/// Power series of 2F1(1/2, 1/2; 1; z) in long double, |z| < 1.
inline cplx hyp2f1_series(cplx z) {
  std::complex<long double> zl(z.real(), z.imag()), t = 1.0L, s = 1.0L;
  for (int n = 0; n < 4000; ++n) {
    long double r = (n + 0.5L) / (n + 1.0L);
    t *= r * r * zl;
    s += t;
    if (std::abs(t) < 1e-22L) break;
  }
  return {double(s.real()), double(s.imag())};
}

inline double K(double k) { return boost::math::ellint_1(k); }
inline double E(double k) { return boost::math::ellint_2(k); }

/// chi(P^2, O(n)) = (n+1)(n+2)/2.
inline std::int64_t chi_line(std::int64_t n) { return (n + 1) * (n + 2) / 2; }

/// chi(F, G) on P^2 for classes in the basis [O], [O(-1)], [O(-2)].
inline std::int64_t chi_pair(const std::array<std::int64_t, 3>& f, const std::array<std::int64_t, 3>& g) {
  std::int64_t s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += f[i] * g[j] * chi_line(i - j);
  return s;
}

/// chi(F (x) G) on P^2.
inline std::int64_t chi_tensor(const std::array<std::int64_t, 3>& f, const std::array<std::int64_t, 3>& g) {
  std::int64_t s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += f[i] * g[j] * chi_line(-i - j);
  return s;
}

}  // namespace oracle
