#pragma once

#include <complex>

namespace lp2::specfun {

using cplx = std::complex<double>;

/// Accuracy knobs shared by series and quadrature routines.
struct PrecisionConfig {
  double target_rel_err = 1e-13;
  int max_terms = 200;

  /// Throws ErrorKind::domain unless target_rel_err is in [1e-15, 1e-6]
  /// and max_terms >= 16.
  void validate() const;
};

// Gamma and friends. Lanczos (g = 7) on Re z >= 1/2, reflection below.
cplx gamma(cplx z);
cplx rgamma(cplx z);     // 1/Gamma, entire; exactly zero at the poles
cplx log_gamma(cplx z);  // exp(log_gamma(z)) == gamma(z); branch unspecified
cplx digamma(cplx z);
cplx trigamma(cplx z);

/// sin(pi z) with exact reduction of Re z.
cplx sin_pi(cplx z);
cplx cos_pi(cplx z);

/// Complex arithmetic-geometric mean with the principal ("right") choice
/// of square root at each step. Throws ErrorKind::convergence after 64
/// iterations.
cplx agm(cplx a, cplx g);

/// 2F1(1/2, 1/2; 1; z) on the principal branch, z not in [1, inf).
/// Uses F(z) = 1 / AGM(1, sqrt(1 - z)).
cplx hyp2f1_half(cplx z);
/// Plain power series, |z| < 1. Used as a cross-check.
cplx hyp2f1_half_series(cplx z, const PrecisionConfig& cfg = {});
/// d/dz 2F1(1/2, 1/2; 1; z).
cplx hyp2f1_half_prime(cplx z);

// Complete elliptic integrals in terms of the modulus k (parameter m = k^2).
cplx elliptic_K(cplx k);
cplx elliptic_E(cplx k);
cplx elliptic_K_m(cplx m);
cplx elliptic_E_m(cplx m);

/// |LHS - RHS| of Ramanujan's identity
///   (1+x^2)^{1/4} F((1+ix)/2)
///     = (1+i)/2 F((1 + x/sqrt(1+x^2))/2) + (1-i)/2 F((1 - x/sqrt(1+x^2))/2).
double ramanujan_residual(double x);

/// The point e^{i pi/3} where the closed forms below are evaluated.
cplx minus_omega();

// Closed forms at the singular moduli k_+- = (sqrt6 +- sqrt2)/4.
double k_plus();
double k_minus();
double K_plus_closed();
double K_minus_closed();
double E_plus_closed();
double E_minus_closed();
cplx F_minus_omega_closed();

/// Closed form of F'(e^{i pi/3}).
cplx F_prime_at_minus_omega();
/// The same quantity rebuilt by differentiating Ramanujan's identity at
/// x = sqrt3, using K'(k) = E/(k(1-k^2)) - K/k and the closed forms of
/// K(k_+-), E(k_+-).
cplx F_prime_at_minus_omega_chain();

}  // namespace lp2::specfun
