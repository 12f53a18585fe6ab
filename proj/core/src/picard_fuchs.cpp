#include "lp2/picard_fuchs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "lp2/error.hpp"

namespace lp2::picard_fuchs {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

std::string describe(cplx y) {
  std::ostringstream os;
  os.precision(17);
  os << "y = (" << y.real() << ", " << y.imag() << ")";
  return os.str();
}

void require_small(cplx y) {
  if (y == 0.0) throw Error(ErrorKind::domain, "series needs y != 0");
  if (std::abs(y) >= 1.0 / 27.0)
    throw Error(ErrorKind::domain, "series needs |y| < 1/27, " + describe(y));
}

double norm(const RhoSeries& r) {
  return std::max({std::abs(r.c0), std::abs(r.c1), std::abs(r.c2)});
}

RhoSeries power(const RhoSeries& a, int j) {
  RhoSeries r{1.0, 0.0, 0.0};
  for (int k = 0; k < j; ++k) r = r * a;
  return r;
}

}  // namespace

RhoSeries exp(const RhoSeries& a) {
  cplx e = std::exp(a.c0);
  return {e, e * a.c1, e * (a.c2 + 0.5 * a.c1 * a.c1)};
}

RhoSeries log(const RhoSeries& a) {
  if (a.c0 == 0.0) throw Error(ErrorKind::domain, "log of a nilpotent RhoSeries");
  cplx u = a.c1 / a.c0;
  return {std::log(a.c0), u, a.c2 / a.c0 - 0.5 * u * u};
}

RhoSeries inverse(const RhoSeries& a) {
  if (a.c0 == 0.0) throw Error(ErrorKind::domain, "inverse of a nilpotent RhoSeries");
  cplx i0 = 1.0 / a.c0;
  return {i0, -a.c1 * i0 * i0, (a.c1 * a.c1 * i0 - a.c2) * i0 * i0};
}

RhoSeries log_gamma_shift(cplx a, cplx s) {
  // Exact at a = 1 so that w0 comes out as exactly 1.
  if (a == 1.0) return {0.0, -s * std::numbers::egamma, s * s * pi * pi / 12.0};
  return {specfun::log_gamma(a), s * specfun::digamma(a), 0.5 * s * s * specfun::trigamma(a)};
}

cplx log_minus_y(cplx y, LogBranch branch) {
  return std::log(y) + (branch == LogBranch::lower ? -I * pi : I * pi);
}

std::array<cplx, 3> rho_to_charge(const RhoSeries& r) {
  // w = w0 + w1 (e^J - 1) + w2 (e^J - 1)^2 with J = 2 pi i rho.
  cplx w1 = r.c1 / (2.0 * pi * I);
  cplx w2 = -r.c2 / (4.0 * pi * pi) - 0.5 * w1;
  return {r.c0, w1, w2};
}

RhoSeries chf_rho(cplx y, int n_max, int theta_order, double* err, int* used) {
  require_small(y);
  if (n_max < 1) throw Error(ErrorKind::domain, "n_max must be >= 1");
  const cplx L = std::log(y);
  // n = 0: y^rho / (Gamma(1+rho)^3 Gamma(1-3rho)).
  RhoSeries lg1 = log_gamma_shift(1.0, 1.0);
  RhoSeries lg3 = log_gamma_shift(1.0, -3.0);
  RhoSeries expo = RhoSeries{0.0, L, 0.0} - 3.0 * lg1 - lg3;
  RhoSeries sum = exp(expo) * power({0.0, 1.0, 0.0}, theta_order);
  // n >= 1: 1/Gamma(1 - 3(n+rho)) = (-1)^n Gamma(3n+3rho) sin(3 pi rho)/pi,
  // and sin(3 pi rho)/pi = 3 rho mod rho^3.
  const RhoSeries sine{0.0, 3.0, 0.0};
  double last = 0.0;
  int n = 1;
  for (; n <= n_max; ++n) {
    RhoSeries g = log_gamma_shift(3.0 * n, 3.0) - 3.0 * log_gamma_shift(n + 1.0, 1.0) +
                  RhoSeries{double(n) * L, L, 0.0};
    double sign = (n % 2) ? -1.0 : 1.0;
    RhoSeries term = sign * (sine * exp(g)) * power({double(n), 1.0, 0.0}, theta_order);
    sum = sum + term;
    last = norm(term);
    if (last <= 1e-18 * norm(sum)) break;
  }
  double r = 27.0 * std::abs(y);
  if (err) *err = last * r / (1.0 - r);
  if (used) *used = std::min(n, n_max);
  return sum;
}

SolutionTriple chf_expand_theta(cplx y, int theta_order, int n_max) {
  double err = 0.0;
  int used = 0;
  RhoSeries r = chf_rho(y, n_max, theta_order, &err, &used);
  auto w = rho_to_charge(r);
  return {w[0], w[1], w[2], y, used, err};
}

SolutionTriple chf_expand(cplx y, int n_max) { return chf_expand_theta(y, 0, n_max); }

double hyp_coefficient(int m) {
  if (m < 1) throw Error(ErrorKind::domain, "coefficient index must be >= 1");
  double a = 2.0;
  for (int k = 2; k <= m; ++k)
    a *= double(3 * k - 1) * double(3 * k - 2) * double(3 * k - 3) / (double(k) * k * k);
  return a;
}

cplx hyp_sum(cplx y, MellinBarnesKind which, int N) {
  // running term a_m (-y)^m; a_m alone overflows long before the sum does
  cplx p = 1.0, sum = 0.0;
  for (int m = 1; m <= N; ++m) {
    p *= (m == 1) ? -2.0 * y
                  : -y * double(3 * m - 1) * double(3 * m - 2) * double(3 * m - 3) /
                        (double(m) * m * m);
    cplx t = p;
    if (which == MellinBarnesKind::digamma)
      t *= specfun::digamma(3.0 * m) - specfun::digamma(m + 1.0);
    sum += t;
    if (p == 0.0) break;
  }
  return sum;
}

cplx series_w1(cplx y, int N) {
  require_small(y);
  return (std::log(y) + 3.0 * hyp_sum(y, MellinBarnesKind::plain, N)) / (2.0 * pi * I);
}

cplx series_w2(cplx y, int N, LogBranch branch) {
  require_small(y);
  cplx lm = log_minus_y(y, branch);
  return -lm * lm / (8.0 * pi * pi) + 0.125 -
         3.0 / (4.0 * pi * pi) * lm * hyp_sum(y, MellinBarnesKind::plain, N) -
         9.0 / (4.0 * pi * pi) * hyp_sum(y, MellinBarnesKind::digamma, N);
}

cplx mellin_barnes(cplx y, MellinBarnesKind which, const MellinBarnesOptions& opt) {
  if (y == 0.0 || (y.imag() == 0.0 && y.real() < 0.0))
    throw Error(ErrorKind::domain, "Mellin-Barnes needs y off (-inf, 0], " + describe(y));
  const cplx L = std::log(y);
  auto f = [&](double tau) {
    cplx s(-0.5, tau);
    cplx lg = specfun::log_gamma(-3.0 * s) + specfun::log_gamma(s) -
              2.0 * specfun::log_gamma(1.0 - s) - s * L;
    cplx v = std::exp(lg);
    if (which == MellinBarnesKind::digamma)
      v *= specfun::digamma(-3.0 * s) - specfun::digamma(1.0 - s);
    return v;
  };
  cplx sum = f(0.0);
  double peak = std::abs(sum);
  for (int side : {1, -1}) {
    int quiet = 0;
    for (int k = 1;; ++k) {
      double tau = side * k * opt.step;
      if (std::abs(tau) > opt.max_height)
        throw Error(ErrorKind::convergence,
                    "Mellin-Barnes integrand still above cutoff at |Im s| = " +
                        std::to_string(opt.max_height) + ", " + describe(y));
      cplx v = f(tau);
      sum += v;
      double a = std::abs(v);
      peak = std::max(peak, a);
      quiet = (a < opt.cutoff * peak) ? quiet + 1 : 0;
      if (quiet >= 8) break;
    }
  }
  // (1/2 pi i) int ds with ds = i dtau
  return sum * opt.step / (2.0 * pi);
}

SolutionTriple w_at_infinity(cplx y, int N) {
  if (std::abs(y) <= 27.0) throw Error(ErrorKind::domain, "large-y expansion needs |y| > 27");
  if (N < 1) throw Error(ErrorKind::domain, "N must be >= 1");
  const cplx t = std::exp(-std::log(y) / 3.0);
  const double g13 = specfun::gamma(1.0 / 3.0).real();
  const double g23 = specfun::gamma(2.0 / 3.0).real();
  cplx t1 = g13 * g13 * g13, t2 = g23 * g23 * g23 / 2.0;
  cplx s1 = 0.0, s2 = 0.0;
  for (int n = 0; n < N; ++n) {
    s1 += t1;
    s2 += t2;
    double a = n + 1.0 / 3.0, b = n + 2.0 / 3.0;
    t1 *= -a * a * a / ((3.0 * n + 2) * (3.0 * n + 3) * (3.0 * n + 4)) / y;
    t2 *= -b * b * b / ((3.0 * n + 3) * (3.0 * n + 4) * (3.0 * n + 5)) / y;
  }
  const double q = 4.0 * pi * pi;
  const double s3 = std::sqrt(3.0);
  cplx w1 = 3.0 / (2.0 * pi * I) * (-t * s1 / q + t * t * s2 / q);
  cplx w2 = 1.0 / 3.0 + s3 / (4.0 * pi) *
                            (-cplx(1.0, s3) * t * s1 / q + cplx(-1.0, s3) * t * t * s2 / q);
  double err = (std::abs(t * t1) + std::abs(t * t * t2)) / q;
  return {1.0, w1, w2, y, N, err};
}

namespace {

// Sum_n Sum_j c[n][j] x^n L^j with x = 27 y and L = ln y.
using LogSeries = std::vector<std::array<cplx, 3>>;

LogSeries theta(const LogSeries& f) {
  LogSeries r(f.size(), {0.0, 0.0, 0.0});
  for (std::size_t n = 0; n < f.size(); ++n)
    for (int j = 0; j < 3; ++j) {
      r[n][j] += double(n) * f[n][j];
      if (j > 0) r[n][j - 1] += double(j) * f[n][j];
    }
  return r;
}

LogSeries axpy(cplx a, const LogSeries& x, const LogSeries& y) {
  LogSeries r = y;
  for (std::size_t n = 0; n < x.size(); ++n)
    for (int j = 0; j < 3; ++j) r[n][j] += a * x[n][j];
  return r;
}

// theta^3 f + (x/9)(9 theta^3 + 9 theta^2 + 2 theta) f, truncated to the
// orders that the input fully determines.
LogSeries apply_operator(const LogSeries& f) {
  LogSeries t1 = theta(f), t2 = theta(t1), t3 = theta(t2);
  LogSeries p = axpy(9.0, t3, axpy(9.0, t2, axpy(2.0, t1, LogSeries(f.size(), {0.0, 0.0, 0.0}))));
  LogSeries r = t3;
  for (std::size_t n = 1; n < f.size(); ++n)
    for (int j = 0; j < 3; ++j) r[n][j] += p[n - 1][j] / 9.0;
  return r;
}

cplx evaluate(const LogSeries& f, cplx y) {
  cplx x = 27.0 * y, L = std::log(y), xp = 1.0, s = 0.0;
  for (const auto& c : f) {
    s += xp * (c[0] + L * (c[1] + L * c[2]));
    xp *= x;
  }
  return s;
}

}  // namespace

AnnihilationReport annihilation_report(const std::vector<cplx>& y_samples, int n_terms) {
  if (n_terms < 1) throw Error(ErrorKind::domain, "n_terms must be >= 1");
  for (cplx y : y_samples) require_small(y);
  const std::size_t size = std::size_t(n_terms) + 1;
  // b_m = a_m (-1/27)^m, h_m = psi(3m) - psi(m+1)
  std::vector<double> b(size, 0.0), h(size, 0.0);
  for (int m = 1; m <= n_terms; ++m) {
    b[m] = (m == 1) ? -2.0 / 27.0
                    : -b[m - 1] * double(3 * m - 1) * double(3 * m - 2) * double(3 * m - 3) /
                          (27.0 * double(m) * m * m);
    h[m] = (specfun::digamma(3.0 * m) - specfun::digamma(m + 1.0)).real();
  }
  std::array<LogSeries, 3> w;
  for (auto& s : w) s.assign(size, {0.0, 0.0, 0.0});
  w[0][0][0] = 1.0;
  const cplx tpi = 2.0 * pi * I;
  w[1][0][1] = 1.0 / tpi;
  for (int m = 1; m <= n_terms; ++m) w[1][m][0] = 3.0 * b[m] / tpi;
  // -(L - i pi)^2/(8 pi^2) + 1/8 - 3/(4 pi^2)(L - i pi) S1 - 9/(4 pi^2) S2
  const double q = 4.0 * pi * pi;
  w[2][0][2] = -1.0 / (2.0 * q);
  w[2][0][1] = I / (4.0 * pi);
  w[2][0][0] = 0.25;
  for (int m = 1; m <= n_terms; ++m) {
    w[2][m][1] = -3.0 / q * b[m];
    w[2][m][0] = 3.0 / q * I * pi * b[m] - 9.0 / q * b[m] * h[m];
  }
  AnnihilationReport rep;
  for (int i = 0; i < 3; ++i) {
    LogSeries r = apply_operator(w[i]);
    double mx = 0.0;
    for (const auto& c : r)
      for (cplx v : c) mx = std::max(mx, std::abs(v));
    rep.per_solution[i] = mx;
    rep.coefficient_residual = std::max(rep.coefficient_residual, mx);
    for (cplx y : y_samples)
      rep.sample_residual = std::max(rep.sample_residual, std::abs(evaluate(r, y)));
  }
  return rep;
}

double annihilation_residual(const std::vector<cplx>& y_samples, int n_terms) {
  auto rep = annihilation_report(y_samples, n_terms);
  return std::max(rep.coefficient_residual, rep.sample_residual);
}

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<cplx, 9>;

// Rows: solution index; columns: w, theta w, theta^2 w.
using Frame = std::array<std::array<cplx, 3>, 3>;

Frame initial_frame(cplx y0) {
  Frame f{};
  for (int j = 0; j < 3; ++j) {
    SolutionTriple s = chf_expand_theta(y0, j, 400);
    f[0][j] = s.w0;
    f[1][j] = s.w1;
    f[2][j] = s.w2;
  }
  return f;
}

// theta^3 w = -y (27 theta^2 w + 6 theta w) / (1 + 27 y), along
// t(s) = t0 + s dt.
Frame transport(const Frame& start, cplx t0, cplx dt, double rel_tol, double abs_tol) {
  State u{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) u[3 * i + j] = start[i][j];
  auto rhs = [&](const State& x, State& dxds, double s) {
    cplx y = std::exp(t0 + s * dt);
    cplx c = -y / (1.0 + 27.0 * y);
    for (int i = 0; i < 3; ++i) {
      dxds[3 * i] = dt * x[3 * i + 1];
      dxds[3 * i + 1] = dt * x[3 * i + 2];
      dxds[3 * i + 2] = dt * c * (27.0 * x[3 * i + 2] + 6.0 * x[3 * i + 1]);
    }
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(abs_tol, rel_tol);
  odeint::integrate_adaptive(stepper, rhs, u, 0.0, 1.0, 1e-3);
  Frame out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = u[3 * i + j];
  return out;
}

void check_path(cplx y) {
  if (y == 0.0) throw Error(ErrorKind::domain, "continuation target y = 0");
  if (std::abs(y + 1.0 / 27.0) < 1e-10)
    throw Error(ErrorKind::domain, "continuation target is the conifold point y = -1/27");
}

}  // namespace

SolutionTriple continue_to(cplx y, const ContinuationOptions& opt) {
  check_path(y);
  require_small(opt.y_start);
  Frame f0 = initial_frame(opt.y_start);
  cplx t0 = std::log(opt.y_start), dt = std::log(y) - t0;
  Frame fine = transport(f0, t0, dt, opt.rel_tol, opt.abs_tol);
  Frame coarse = transport(f0, t0, dt, opt.rel_tol * 100.0, opt.abs_tol * 100.0);
  double err = 0.0;
  for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(fine[i][0] - coarse[i][0]));
  return {fine[0][0], fine[1][0], fine[2][0], y, 0, err};
}

MonodromyResult monodromy_around_origin(double r, const ContinuationOptions& opt) {
  if (!(r > 0.0 && r < 1.0 / 27.0)) throw Error(ErrorKind::domain, "loop radius must be in (0, 1/27)");
  cplx y0(r, 0.0);
  Frame before = initial_frame(y0);
  Frame after = transport(before, std::log(y0), cplx(0.0, 2.0 * pi), opt.rel_tol, opt.abs_tol);
  Eigen::Matrix3cd B, A;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      B(i, j) = before[i][j];
      A(i, j) = after[i][j];
    }
  Eigen::Matrix3cd M = A * B.inverse();
  MonodromyResult res;
  Eigen::Matrix3d N = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      res.raw[i][j] = M(i, j);
      long v = std::lround(M(i, j).real());
      res.matrix[i][j] = v;
      res.max_deviation = std::max(res.max_deviation, std::abs(M(i, j) - double(v)));
      N(i, j) = double(v) - (i == j ? 1.0 : 0.0);
    }
  if (res.max_deviation > 1e-6) {
    std::ostringstream os;
    os << "monodromy entries deviate from integers by " << res.max_deviation;
    throw Error(ErrorKind::monodromy, os.str());
  }
  res.unipotent = (N * N * N).cwiseAbs().maxCoeff() == 0.0;
  return res;
}

}  // namespace lp2::picard_fuchs
