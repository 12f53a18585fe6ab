#pragma once

#include <array>
#include <complex>
#include <vector>

#include "lp2/specfun.hpp"

namespace lp2::picard_fuchs {

using cplx = std::complex<double>;
using specfun::PrecisionConfig;

/// c0 + c1 rho + c2 rho^2 in C[rho]/rho^3.
struct RhoSeries {
  cplx c0, c1, c2;

  friend RhoSeries operator+(const RhoSeries& a, const RhoSeries& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend RhoSeries operator-(const RhoSeries& a, const RhoSeries& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend RhoSeries operator*(const RhoSeries& a, const RhoSeries& b) {
    return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
  }
  friend RhoSeries operator*(cplx s, const RhoSeries& a) { return {s * a.c0, s * a.c1, s * a.c2}; }
  friend bool operator==(const RhoSeries&, const RhoSeries&) = default;
};

RhoSeries exp(const RhoSeries& a);
/// Principal log of c0; throws ErrorKind::domain when c0 == 0.
RhoSeries log(const RhoSeries& a);
RhoSeries inverse(const RhoSeries& a);
/// log Gamma(a + s rho) as a RhoSeries (Taylor with digamma and trigamma).
RhoSeries log_gamma_shift(cplx a, cplx s);

struct SolutionTriple {
  cplx w0, w1, w2;
  cplx y;
  int truncation_order = 0;
  double err_estimate = 0.0;
};

/// Which side ln(-y) is taken on for y > 0: lower gives ln y - i pi.
enum class LogBranch { lower, upper };
cplx log_minus_y(cplx y, LogBranch branch = LogBranch::lower);

/// Sum of the cohomology-valued series at y (|y| < 1/27) with its rho
/// components mapped onto the charge basis. `theta_order` applies
/// (y d/dy)^j term by term.
RhoSeries chf_rho(cplx y, int n_max, int theta_order = 0, double* err = nullptr,
                  int* used = nullptr);
SolutionTriple chf_expand(cplx y, int n_max = 200);
/// chf_expand applied to (y d/dy)^j w.
SolutionTriple chf_expand_theta(cplx y, int theta_order, int n_max = 200);

/// Map (c0, c1, c2) of a RhoSeries to (w0, w1, w2).
std::array<cplx, 3> rho_to_charge(const RhoSeries& r);

/// a_m = (3m-1)!/(m!)^3, in double.
double hyp_coefficient(int m);

cplx series_w1(cplx y, int N);
cplx series_w2(cplx y, int N, LogBranch branch = LogBranch::lower);

enum class MellinBarnesKind { plain, digamma };
struct MellinBarnesOptions {
  double step = 0.05;       // trapezoid spacing on Re s = -1/2
  double cutoff = 1e-16;    // stop once |integrand| < cutoff * peak
  double max_height = 400;  // give up beyond |Im s| > max_height
};
/// sum_{m>=1} a_m (-y)^m, optionally weighted by psi(3m) - psi(m+1), from
/// the vertical contour integral. y must avoid (-inf, 0].
cplx mellin_barnes(cplx y, MellinBarnesKind which, const MellinBarnesOptions& opt = {});
/// Direct partial sums of the same two series.
cplx hyp_sum(cplx y, MellinBarnesKind which, int N);

/// Large-y representation; |y| > 27.
SolutionTriple w_at_infinity(cplx y, int N = 40);

/// max coefficient residual of theta^3 + 3y(3theta+1)(3theta+2)theta applied
/// to the truncated series of w0, w1, w2 (coefficients taken in powers of
/// 27y), together with the residual polynomial evaluated at the samples.
struct AnnihilationReport {
  double coefficient_residual = 0.0;
  double sample_residual = 0.0;
  std::array<double, 3> per_solution{0, 0, 0};
};
AnnihilationReport annihilation_report(const std::vector<cplx>& y_samples, int n_terms = 40);
double annihilation_residual(const std::vector<cplx>& y_samples, int n_terms = 40);

/// ODE transport of (w, theta w, theta^2 w) for the three solutions.
struct ContinuationOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  cplx y_start{0.01, 0.0};
};
/// Continue the y ~ 0 solutions from y_start to y along the straight line
/// in t = ln y. Throws ErrorKind::domain if y is the conifold point or 0.
SolutionTriple continue_to(cplx y, const ContinuationOptions& opt = {});

struct MonodromyResult {
  std::array<std::array<long, 3>, 3> matrix{};
  std::array<std::array<cplx, 3>, 3> raw{};
  double max_deviation = 0.0;
  bool unipotent = false;
};
/// w(after) = M w(before) for the loop y = r e^{i theta}, theta: 0 -> 2 pi.
MonodromyResult monodromy_around_origin(double r = 0.01, const ContinuationOptions& opt = {});

}  // namespace lp2::picard_fuchs
