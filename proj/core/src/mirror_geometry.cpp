#include "lp2/mirror_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lp2/error.hpp"

namespace lp2::mirror_geometry {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

cplx ipow(cplx w, int n) {
  cplx r = 1.0;
  for (int i = 0; i < n; ++i) r *= w;
  return r;
}

double sign_k(int k) { return (k % 2) ? -1.0 : 1.0; }

void check_index(int k) {
  if (k < 0 || k > 2) throw Error(ErrorKind::domain, "cycle index must be 0, 1 or 2");
}

// The two labels other than k, in increasing order.
std::pair<int, int> others(int k) {
  return k == 0 ? std::pair{1, 2} : (k == 1 ? std::pair{0, 2} : std::pair{0, 1});
}

cplx poly(cplx x, cplx z) { return ((x + z * z / 4.0) * x + z / 2.0) * x + 0.25; }
cplx dpoly(cplx x, cplx z) { return (3.0 * x + z * z / 2.0) * x + z / 2.0; }

double min_separation(const std::array<cplx, 3>& x) {
  return std::min({std::abs(x[0] - x[1]), std::abs(x[0] - x[2]), std::abs(x[1] - x[2])});
}

// lam crossing the real axis between two samples: which cut and direction.
enum class Cut { none, one_inf, minus_inf_zero };
struct Crossing {
  Cut cut = Cut::none;
  bool upward = false;
};
Crossing crossing(cplx l0, cplx l1) {
  if ((l0.imag() < 0) == (l1.imag() < 0)) return {};
  double x = l0.real() + (l1.real() - l0.real()) * (-l0.imag()) / (l1.imag() - l0.imag());
  bool up = l1.imag() >= 0;
  if (x > 1.0) return {Cut::one_inf, up};
  if (x < 0.0) return {Cut::minus_inf_zero, up};
  return {};
}

cplx F(cplx x) { return specfun::hyp2f1_half(x); }

}  // namespace

cplx omega_c() { return {-0.5, std::sqrt(3.0) / 2.0}; }
cplx omega_p() { return {-0.5, -std::sqrt(3.0) / 2.0}; }

CriticalPoints critical_points(cplx y) {
  if (y == 0.0) throw Error(ErrorKind::domain, "critical points need y != 0");
  CriticalPoints c;
  c.z_star = -std::exp(-std::log(y) / 3.0);
  for (int k = 0; k < 3; ++k) c.z[k] = 3.0 * ipow(omega_c(), k);
  return c;
}

std::array<cplx, 3> cubic_roots(cplx z) {
  Eigen::Matrix3cd C = Eigen::Matrix3cd::Zero();
  C(1, 0) = 1.0;
  C(2, 1) = 1.0;
  C(0, 2) = -0.25;
  C(1, 2) = -z / 2.0;
  C(2, 2) = -z * z / 4.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(C, false);
  std::array<cplx, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = es.eigenvalues()(i);
  // Polish the most isolated root, then deflate: the remaining pair may be
  // (nearly) double, where Newton stalls at sqrt(eps) but Vieta still holds.
  int a = 0;
  double best = -1.0;
  for (int i = 0; i < 3; ++i) {
    double d = std::min(std::abs(r[i] - r[(i + 1) % 3]), std::abs(r[i] - r[(i + 2) % 3]));
    if (d > best) best = d, a = i;
  }
  cplx x = r[a];
  for (int it = 0; it < 8; ++it) {
    cplx d = dpoly(x, z);
    if (d == 0.0) break;
    cplx nx = x - poly(x, z) / d;
    if (!(std::abs(poly(nx, z)) < std::abs(poly(x, z)))) break;
    x = nx;
  }
  const cplx b = z * z / 4.0 + x, c = -0.25 / x;
  cplx disc = std::sqrt(b * b - 4.0 * c);
  if (std::abs(b + disc) < std::abs(b - disc)) disc = -disc;
  const cplx q = -(b + disc) / 2.0;
  return {x, q, c / q};
}

std::array<cplx, 3> roots_at_zero() {
  const double s = -std::pow(2.0, -2.0 / 3.0);
  return {s, s * omega_p(), s * omega_p() * omega_p()};
}

double vieta_residual(const CubicRoots& r) {
  const auto& x = r.x;
  cplx z = r.z;
  return std::max({std::abs(x[0] + x[1] + x[2] + z * z / 4.0),
                   std::abs(x[0] * x[1] + x[0] * x[2] + x[1] * x[2] - z / 2.0),
                   std::abs(x[0] * x[1] * x[2] + 0.25)});
}

std::array<cplx, 3> match_roots(const std::array<cplx, 3>& prev, std::array<cplx, 3> next) {
  std::array<int, 3> perm{0, 1, 2}, best = perm;
  double best_d = INFINITY;
  do {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d += std::norm(next[perm[i]] - prev[i]);
    if (d < best_d) {
      best_d = d;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {next[best[0]], next[best[1]], next[best[2]]};
}

void PathZ::validate(const std::vector<cplx>& avoid, double eps) const {
  if (vertices.size() < 2) throw Error(ErrorKind::domain, "path needs at least two vertices");
  if (refinement < 1) throw Error(ErrorKind::domain, "path refinement must be >= 1");
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    cplx a = vertices[i], b = vertices[i + 1];
    if (a == b) throw Error(ErrorKind::domain, "repeated path vertex " + describe(a));
    for (cplx p : avoid) {
      if ((i == 0 && std::abs(p - a) < eps) ||
          (i + 2 == vertices.size() && std::abs(p - b) < eps))
        continue;
      double t = std::clamp(std::real((p - a) * std::conj(b - a)) / std::norm(b - a), 0.0, 1.0);
      if (std::abs(a + t * (b - a) - p) < eps)
        throw Error(ErrorKind::domain, "path passes within " + std::to_string(eps) +
                                           " of critical point " + describe(p));
    }
  }
}

PathZ standard_path(cplx y, int k, int refinement) {
  check_index(k);
  auto c = critical_points(y);
  return {{c.z[k], 0.0, c.z_star}, refinement};
}

std::vector<CubicRoots> cubic_roots_along(const PathZ& path,
                                          const std::optional<std::array<cplx, 3>>& seed) {
  if (path.vertices.empty()) throw Error(ErrorKind::domain, "empty path");
  if (!seed && path.vertices.front() != 0.0)
    throw Error(ErrorKind::domain, "path must start at z = 0 or carry a branch seed");
  std::array<cplx, 3> prev = seed ? *seed : roots_at_zero();
  if (seed) prev = match_roots(prev, cubic_roots(path.vertices.front()));
  std::vector<CubicRoots> out;
  out.push_back({prev, path.vertices.front()});
  const cplx first = path.vertices.front(), last = path.vertices.back();

  auto at_endpoint = [&](cplx z) { return std::abs(z - first) < 1e-12 || std::abs(z - last) < 1e-12; };
  for (std::size_t v = 0; v + 1 < path.vertices.size(); ++v) {
    cplx a = path.vertices[v], b = path.vertices[v + 1];
    for (int m = 1; m <= path.refinement; ++m) {
      cplx target = a + (b - a) * (double(m) / path.refinement);
      cplx z0 = a + (b - a) * (double(m - 1) / path.refinement);
      // Advance from z0 to target in substeps small against the root spacing.
      double done = 0.0, step = 1.0;
      int halvings = 0;
      while (done < 1.0) {
        double t = std::min(1.0, done + step);
        cplx z = z0 + (target - z0) * t;
        auto next = match_roots(prev, cubic_roots(z));
        double move = 0.0;
        for (int i = 0; i < 3; ++i) move = std::max(move, std::abs(next[i] - prev[i]));
        double sep = min_separation(prev);
        bool ok = move < 0.25 * sep || (at_endpoint(z) && t == 1.0);
        if (!ok) {
          // Near a double root the admissible step shrinks like the squared
          // separation; below rounding level the path effectively hits it.
          if (++halvings > 60 || std::abs(target - z0) * step < 1e-13 * (1.0 + std::abs(z)))
            throw Error(ErrorKind::collision, "roots collide near z = " + describe(z) +
                                                  " (path too close to the discriminant)");
          step /= 2.0;
          continue;
        }
        if (min_separation(next) < 1e-9 && !at_endpoint(z))
          throw Error(ErrorKind::collision, "roots collide at z = " + describe(z) +
                                                " (path too close to the discriminant)");
        prev = next;
        done = t;
        halvings = 0;
        step = std::min(1.0, step * 2.0);
      }
      out.push_back({prev, target});
    }
  }
  return out;
}

VanishingValue vanishing_integral_Jk(const CubicRoots& roots, int k) {
  check_index(k);
  auto [i, j] = others(k);
  const auto& x = roots.x;
  if (min_separation(x) == 0.0) throw Error(ErrorKind::domain, "vanishing_integral_Jk needs distinct roots");
  VanishingValue out;
  auto safe_F = [&](cplx l) {
    if (l.imag() == 0.0 && l.real() >= 1.0) {
      out.cut_fallback = true;
      return F(cplx(l.real(), 1e-300));
    }
    return F(l);
  };
  cplx l1 = (x[k] - x[i]) / (x[j] - x[i]);
  cplx l2 = (x[k] - x[j]) / (x[i] - x[j]);
  out.value = 2.0 * pi / std::sqrt(x[j] - x[i]) * safe_F(l1) -
              2.0 * pi / std::sqrt(x[i] - x[j]) * safe_F(l2);
  return out;
}

// ---------------------------------------------------------------------------

CycleTracker::CycleTracker(int k, cplx z_star, int checkpoints) : k_(k), z_star_(z_star) {
  check_index(k);
  if (checkpoints < 16) throw Error(ErrorKind::domain, "tracker needs at least 16 checkpoints");
  z_k_ = 3.0 * ipow(omega_c(), k);

  // Leg 0 grid: geometric next to z_k, where the colliding roots separate
  // like sqrt(z - z_k), then uniform.
  auto& g0 = legs_[0].s;
  const int n_geo = 300;
  for (int m = 0; m < n_geo; ++m) g0.push_back(1e-12 * std::pow(1e10, double(m) / n_geo));
  for (int m = 0; m <= checkpoints; ++m) g0.push_back(1e-2 + (1.0 - 1e-2) * double(m) / checkpoints);

  // Labels: track from z = 0 back toward z_k.
  std::vector<std::array<cplx, 3>> xs(g0.size());
  std::array<cplx, 3> prev = roots_at_zero();
  for (std::size_t m = g0.size(); m-- > 0;) {
    prev = match_roots(prev, cubic_roots(point(0, g0[m])));
    xs[m] = prev;
  }

  auto [i, j] = others(k);
  State st;
  st.x = xs[0];
  st.lam = (st.x[j] - st.x[i]) / (st.x[k] - st.x[i]);
  st.sq = std::sqrt(st.x[k] - st.x[i]);
  const cplx sq_seed = -std::sqrt(3.0) / 2.0 * sign_k(k) * ipow(omega_c(), k);
  if (std::abs(st.sq - sq_seed) > std::abs(st.sq + sq_seed)) st.sq = -st.sq;
  legs_[0].states.push_back(st);
  for (std::size_t m = 1; m < g0.size(); ++m) {
    State nx = advance(legs_[0].states.back(), point(0, g0[m]));
    legs_[0].states.push_back(nx);
  }

  auto& g1 = legs_[1].s;
  const int n1 = std::max(16, checkpoints / 10);
  for (int m = 0; m <= n1; ++m) g1.push_back(double(m) / n1);
  legs_[1].states.push_back(legs_[0].states.back());
  for (int m = 1; m <= n1; ++m) legs_[1].states.push_back(advance(legs_[1].states.back(), point(1, g1[m])));
}

CycleTracker::State CycleTracker::advance(const State& from, cplx z) const {
  auto [i, j] = others(k_);
  State st = from;
  st.x = match_roots(from.x, cubic_roots(z));
  st.lam = (st.x[j] - st.x[i]) / (st.x[k_] - st.x[i]);
  st.sq = std::sqrt(st.x[k_] - st.x[i]);
  if (std::abs(st.sq - from.sq) > std::abs(st.sq + from.sq)) st.sq = -st.sq;
  Crossing c = crossing(from.lam, st.lam);
  if (c.cut == Cut::one_inf)
    st.beta = c.upward ? from.beta - 2.0 * I * from.alpha : from.beta + 2.0 * I * from.alpha;
  else if (c.cut == Cut::minus_inf_zero)
    st.alpha = c.upward ? from.alpha + 2.0 * I * from.beta : from.alpha - 2.0 * I * from.beta;
  return st;
}

cplx CycleTracker::value(const State& st) const {
  cplx v = st.alpha * F(st.lam);
  if (st.beta != 0.0) v += st.beta * F(1.0 - st.lam);
  return 2.0 * pi / st.sq * v;
}

const CycleTracker::State& CycleTracker::checkpoint(int leg, double s) const {
  const auto& L = legs_[leg];
  auto it = std::upper_bound(L.s.begin(), L.s.end(), s);
  std::size_t m = (it == L.s.begin()) ? 0 : std::size_t(it - L.s.begin()) - 1;
  return L.states[m];
}

CycleTracker::State CycleTracker::state(int leg, double s) const {
  if (leg < 0 || leg > 1) throw Error(ErrorKind::domain, "leg must be 0 or 1");
  return advance(checkpoint(leg, s), point(leg, s));
}

cplx CycleTracker::J(int leg, double s) const { return value(state(leg, s)); }

// ---------------------------------------------------------------------------

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  int leg;
  double a, b;
  cplx value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const CycleTracker& tr, int leg, double a, double b) {
  const auto& x = GK::abscissa();
  const auto& w = GK::weights();
  // Gauss 7 weights on the even Kronrod nodes.
  static const double wg[4] = {0.4179591836734694, 0.38183005050511892, 0.27970539148927664,
                               0.1294849661688697};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx dz = tr.leg_end(leg) - tr.leg_start(leg);
  cplx k = 0.0, g = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    int reps = (i == 0) ? 1 : 2;
    for (int r = 0; r < reps; ++r) {
      double s = (r == 0) ? c + h * x[i] : c - h * x[i];
      cplx f = tr.J(leg, s) * dz;
      k += w[i] * f;
      mag += w[i] * std::abs(f);
      if (i % 2 == 0) g += wg[i / 2] * f;
    }
  }
  k *= h;
  g *= h;
  mag *= h;
  double err = std::max(std::abs(k - g), 50.0 * std::numeric_limits<double>::epsilon() * mag);
  return {leg, a, b, k, err};
}

}  // namespace

PeriodResult period_Ik(cplx y, int k, const PrecisionConfig& quad, int fixed_panels) {
  check_index(k);
  if (!(std::abs(y) > 27.0)) throw Error(ErrorKind::domain, "periods need |y| > 27, y = " + describe(y));
  if (!(quad.target_rel_err >= 1e-15 && quad.target_rel_err <= 1e-3))
    throw Error(ErrorKind::domain, "quadrature tolerance must be in [1e-15, 1e-3]");
  auto cp = critical_points(y);
  CycleTracker tr(k, cp.z_star);
  const double norm = 1.0 / (8.0 * pi * pi);

  std::vector<Panel> done;
  if (fixed_panels > 0) {
    for (int leg = 0; leg < 2; ++leg)
      for (int p = 0; p < fixed_panels; ++p)
        done.push_back(gk15(tr, leg, double(p) / fixed_panels, double(p + 1) / fixed_panels));
  } else {
    std::priority_queue<Panel> q;
    q.push(gk15(tr, 0, 0.0, 1.0));
    q.push(gk15(tr, 1, 0.0, 1.0));
    const int max_panels = 20 * quad.max_terms;
    for (;;) {
      cplx total = 0.0;
      double err = 0.0;
      auto copy = q;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().err;
        copy.pop();
      }
      if (err * norm <= quad.target_rel_err * std::max(std::abs(total) * norm, 1e-3)) break;
      Panel worst = q.top();
      if (int(q.size()) >= max_panels) {
        std::ostringstream os;
        os << "period quadrature did not converge (k = " << k << ", y = " << describe(y)
           << "); worst segment: leg " << worst.leg << " s in [" << worst.a << ", " << worst.b
           << "], error " << worst.err * norm;
        throw Error(ErrorKind::quadrature, os.str());
      }
      q.pop();
      double m = 0.5 * (worst.a + worst.b);
      q.push(gk15(tr, worst.leg, worst.a, m));
      q.push(gk15(tr, worst.leg, m, worst.b));
    }
    while (!q.empty()) {
      done.push_back(q.top());
      q.pop();
    }
  }
  PeriodResult r;
  for (const auto& p : done) {
    (p.leg == 0 ? r.A : r.B) += p.value * norm;
    (p.leg == 0 ? r.err_A : r.err_B) += p.err * norm;
  }
  r.value = r.A + r.B;
  r.err = r.err_A + r.err_B;
  r.panels = int(done.size());
  return r;
}

PeriodVector periods(cplx y, const PrecisionConfig& quad) {
  PeriodVector p;
  p.y = y;
  for (int k = 0; k < 3; ++k) {
    auto r = period_Ik(y, k, quad);
    p.I[k] = r.value;
    p.err[k] = r.err;
  }
  cplx s = p.torus_sum();
  if (std::abs(s + 1.0) < std::abs(s - 1.0)) {
    for (auto& v : p.I) v = -v;
    p.orientation_flipped = true;
  }
  return p;
}

const ExpansionData& expansion_data() {
  static const ExpansionData d = [] {
    ExpansionData e;
    const auto x = roots_at_zero();
    const double d0 = 1.0 / (3.0 * std::cbrt(2.0));
    std::array<cplx, 3> dx;
    for (int j = 0; j < 3; ++j) dx[j] = d0 * ipow(omega_p(), 2 * j);
    // Cycle 0: a = X_1, b = X_2, c = X_0; lam(0) = e^{i pi/3}.
    const cplx a = x[1], b = x[2], c = x[0];
    const cplx da = dx[1], db = dx[2], dc = dx[0];
    // Branch of sqrt(c - a) reached by continuation from z_0.
    const cplx sq = -std::sqrt(c - a);
    const cplx beta(0.0, -2.0);
    const cplx Fl = specfun::F_minus_omega_closed(), Fr = std::conj(Fl);
    const cplx Fpl = specfun::F_prime_at_minus_omega(), Fpr = std::conj(Fpl);
    const cplx dlam = ((db - da) * (c - a) - (b - a) * (dc - da)) / ((c - a) * (c - a));
    e.J0_zero = 2.0 * pi / sq * (Fl + beta * Fr);
    e.J0_prime_zero = 2.0 * pi / sq * (-0.5 * (dc - da) / (c - a) * (Fl + beta * Fr) + (Fpl - beta * Fpr) * dlam);
    const double g1 = specfun::gamma(1.0 / 3.0).real(), g2 = specfun::gamma(2.0 / 3.0).real();
    e.c1 = std::sqrt(3.0) * g1 * g1 * g1 / (8.0 * pi * pi * pi);
    e.c2 = std::sqrt(3.0) * g2 * g2 * g2 / (16.0 * pi * pi * pi);
    return e;
  }();
  return d;
}

std::array<cplx, 3> b_expansion(cplx y) {
  if (!(std::abs(y) > 27.0)) throw Error(ErrorKind::domain, "b_expansion needs |y| > 27");
  const auto& e = expansion_data();
  const cplx t = std::exp(-std::log(y) / 3.0);
  std::array<cplx, 3> out;
  for (int k = 0; k < 3; ++k)
    out[k] = sign_k(k) * (-e.J0_zero * ipow(omega_p(), k) * t / (8.0 * pi * pi) +
                          e.J0_prime_zero * ipow(omega_p(), 2 * k) * t * t / (16.0 * pi * pi));
  return out;
}

cplx f_zero_printed(cplx w) {
  return std::cbrt(2.0) / (4.0 * pi * w * std::sqrt(w * w - w)) * specfun::F_minus_omega_closed();
}

PhaseReport phase_convention(const PeriodVector& p) {
  const auto& e = expansion_data();
  const cplx t = std::exp(-std::log(p.y) / 3.0);
  struct Cand {
    const char* name;
    bool alt;
    cplx w;
  };
  const Cand cands[] = {{"omega_c", false, omega_c()},
                        {"omega_p", false, omega_p()},
                        {"(-1)^k omega_c", true, omega_c()},
                        {"(-1)^k omega_p", true, omega_p()}};
  PhaseReport rep;
  for (const auto& a : cands)
    for (const auto& b : cands) {
      double dev = 0.0;
      for (int k = 0; k < 3; ++k) {
        cplx B = p.I[k] - sign_k(k) / 3.0;
        cplx p1 = (a.alt ? sign_k(k) : 1.0) * ipow(a.w, k);
        cplx p2 = (b.alt ? sign_k(k) : 1.0) * ipow(b.w, 2 * k);
        dev = std::max(dev, std::abs((B - p1 * e.c1 * t) / (p2 * e.c2 * t * t) - 1.0));
      }
      rep.fits.push_back({std::string(a.name) + "^k", std::string(b.name) + "^2k", dev});
    }
  std::stable_sort(rep.fits.begin(), rep.fits.end(),
                   [](const PhaseFit& x, const PhaseFit& y) { return x.deviation < y.deviation; });
  return rep;
}

}  // namespace lp2::mirror_geometry
