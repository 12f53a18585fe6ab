#include "lp2/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "agm_impl.hpp"
#include "closed_forms_impl.hpp"
#include "lp2/error.hpp"

namespace lp2::specfun {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Lanczos coefficients, g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "z = (" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// log Gamma for Re z >= 1/2.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = lanczos_p[0];
  for (std::size_t i = 1; i < lanczos_p.size(); ++i) x += lanczos_p[i] / (z + double(i));
  cplx t = z + lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
  double r = z.real() - 2.0 * std::round(z.real() / 2.0);
  cplx w(r, z.imag());
  if (w.imag() > 0.0)
    return -I * pi * w + std::log((std::exp(2.0 * pi * I * w) - 1.0) / (2.0 * I));
  return I * pi * w + std::log((1.0 - std::exp(-2.0 * pi * I * w)) / (2.0 * I));
}

}  // namespace

void PrecisionConfig::validate() const {
  if (!(target_rel_err >= 1e-15 && target_rel_err <= 1e-6))
    throw Error(ErrorKind::domain, "target_rel_err must lie in [1e-15, 1e-6]");
  if (max_terms < 16) throw Error(ErrorKind::domain, "max_terms must be >= 16");
}

cplx sin_pi(cplx z) {
  double r = z.real() - 2.0 * std::round(z.real() / 2.0);
  double y = z.imag();
  return {std::sin(pi * r) * std::cosh(pi * y), std::cos(pi * r) * std::sinh(pi * y)};
}

cplx cos_pi(cplx z) {
  double r = z.real() - 2.0 * std::round(z.real() / 2.0);
  double y = z.imag();
  return {std::cos(pi * r) * std::cosh(pi * y), -std::sin(pi * r) * std::sinh(pi * y)};
}

cplx log_gamma(cplx z) {
  if (is_pole(z)) throw Error(ErrorKind::pole, "log_gamma at " + describe(z));
  if (z.real() >= 0.5) return log_gamma_right(z);
  return std::log(pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

cplx gamma(cplx z) {
  if (is_pole(z)) throw Error(ErrorKind::pole, "gamma at " + describe(z));
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() <= 20.0 &&
      z.real() == std::floor(z.real())) {
    double f = 1.0;
    for (int k = 2; k < int(z.real()); ++k) f *= k;
    return f;
  }
  if (z.real() >= 0.5) return std::exp(log_gamma_right(z));
  return pi / (sin_pi(z) * std::exp(log_gamma_right(1.0 - z)));
}

cplx rgamma(cplx z) {
  if (is_pole(z)) return 0.0;
  if (z.real() >= 0.5) return std::exp(-log_gamma_right(z));
  return sin_pi(z) * std::exp(log_gamma_right(1.0 - z)) / pi;
}

cplx digamma(cplx z) {
  if (is_pole(z)) throw Error(ErrorKind::pole, "digamma at " + describe(z));
  if (z.real() < 0.5) return digamma(1.0 - z) - pi * cos_pi(z) / sin_pi(z);
  cplx acc = 0.0;
  while (std::abs(z) < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // B_2k / (2k)
  static constexpr std::array<double, 8> c = {1.0 / 12,    -1.0 / 120,  1.0 / 252,
                                              -1.0 / 240,  1.0 / 132,   -691.0 / 32760,
                                              1.0 / 12,    -3617.0 / 8160};
  cplx z2inv = 1.0 / (z * z);
  cplx pw = z2inv;
  cplx s = std::log(z) - 0.5 / z;
  for (double ck : c) {
    s -= ck * pw;
    pw *= z2inv;
  }
  return acc + s;
}

cplx trigamma(cplx z) {
  if (is_pole(z)) throw Error(ErrorKind::pole, "trigamma at " + describe(z));
  if (z.real() < 0.5) {
    cplx s = sin_pi(z);
    return pi * pi / (s * s) - trigamma(1.0 - z);
  }
  cplx acc = 0.0;
  while (std::abs(z) < 12.0) {
    acc += 1.0 / (z * z);
    z += 1.0;
  }
  // B_2k
  static constexpr std::array<double, 8> b = {1.0 / 6,      -1.0 / 30, 1.0 / 42,
                                              -1.0 / 30,    5.0 / 66,  -691.0 / 2730,
                                              7.0 / 6,      -3617.0 / 510};
  cplx zinv = 1.0 / z;
  cplx z2inv = zinv * zinv;
  cplx pw = z2inv * zinv;
  cplx s = zinv + 0.5 * z2inv;
  for (double bk : b) {
    s += bk * pw;
    pw *= z2inv;
  }
  return acc + s;
}

cplx agm(cplx a, cplx g) { return detail::agm<double, cplx>(a, g); }

cplx hyp2f1_half(cplx z) {
  if (z.imag() == 0.0 && z.real() >= 1.0)
    throw Error(ErrorKind::branch, "2F1(1/2,1/2;1;z) on its cut, " + describe(z));
  if (z == 0.0) return 1.0;
  return detail::hyp2f1_half<double, cplx>(z);
}

cplx hyp2f1_half_series(cplx z, const PrecisionConfig& cfg) {
  if (std::abs(z) >= 1.0) throw Error(ErrorKind::domain, "series needs |z| < 1, " + describe(z));
  cplx term = 1.0, sum = 1.0;
  for (int n = 0; n < 100 * cfg.max_terms; ++n) {
    double r = (n + 0.5) / (n + 1.0);
    term *= r * r * z;
    sum += term;
    if (std::abs(term) <= 0.1 * cfg.target_rel_err * std::abs(sum)) return sum;
  }
  throw Error(ErrorKind::convergence, "2F1 series truncated, " + describe(z));
}

cplx hyp2f1_half_prime(cplx z) {
  if (z.imag() == 0.0 && z.real() >= 1.0)
    throw Error(ErrorKind::branch, "2F1' on its cut, " + describe(z));
  if (std::abs(z) < 0.25) {
    // sum_n ((1/2)_{n+1})^2 / ((n+1)! n!) z^n
    cplx term = 0.25, sum = 0.25;
    for (int n = 1; n < 200; ++n) {
      double r = (n + 0.5) * (n + 0.5) / (double(n + 1) * n);
      term *= r * z;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return detail::hyp2f1_half_prime_agm<double, cplx>(z);
}

cplx elliptic_K_m(cplx m) {
  if (m.imag() == 0.0 && m.real() >= 1.0)
    throw Error(ErrorKind::branch, "K(m) needs m outside [1, inf), m " + describe(m));
  return detail::elliptic_KE_m<double, cplx>(m).K;
}

cplx elliptic_E_m(cplx m) {
  if (m.imag() == 0.0 && m.real() > 1.0)
    throw Error(ErrorKind::branch, "E(m) needs m outside (1, inf), m " + describe(m));
  if (m == 1.0) return 1.0;
  return detail::elliptic_KE_m<double, cplx>(m).E;
}

cplx elliptic_K(cplx k) { return elliptic_K_m(k * k); }
cplx elliptic_E(cplx k) { return elliptic_E_m(k * k); }

double ramanujan_residual(double x) {
  if (x < 0.0) throw Error(ErrorKind::domain, "ramanujan_residual needs x >= 0");
  double s = std::sqrt(1.0 + x * x);
  cplx lhs = std::pow(1.0 + x * x, 0.25) * hyp2f1_half(cplx(0.5, 0.5 * x));
  cplx rhs = cplx(0.5, 0.5) * hyp2f1_half(0.5 * (1.0 + x / s)) +
             cplx(0.5, -0.5) * hyp2f1_half(0.5 * (1.0 - x / s));
  return std::abs(lhs - rhs);
}

cplx minus_omega() { return {0.5, std::sqrt(3.0) / 2.0}; }

namespace {
const detail::ClosedForms<double>& closed() {
  static const detail::ClosedForms<double> cf;
  return cf;
}
}  // namespace

double k_plus() { return closed().k_plus(); }
double k_minus() { return closed().k_minus(); }
double K_plus_closed() { return closed().K_plus(); }
double K_minus_closed() { return closed().K_minus(); }
double E_plus_closed() { return closed().E_plus(); }
double E_minus_closed() { return closed().E_minus(); }
cplx F_minus_omega_closed() { return closed().F_minus_omega<cplx>(); }
cplx F_prime_at_minus_omega() { return closed().F_prime_minus_omega<cplx>(); }
cplx F_prime_at_minus_omega_chain() { return closed().F_prime_minus_omega_chain<cplx>(); }

}  // namespace lp2::specfun
