#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lp2/error.hpp"
#include "lp2/mirror_geometry.hpp"
#include "oracles/oracles.hpp"

namespace mg = lp2::mirror_geometry;
using cplx = std::complex<double>;
using std::numbers::pi;

namespace {

const double s3 = std::sqrt(3.0);

cplx ipow(cplx w, int n) {
  cplx r = 1.0;
  for (int i = 0; i < ((n % 3) + 3) % 3; ++i) r *= w;
  return r;
}

template <class F>
lp2::ErrorKind kind_of(F f) {
  try {
    f();
  } catch (const lp2::Error& e) {
    return e.kind();
  }
  return lp2::ErrorKind::usage;
}

std::array<int, 3> others(int k) {
  if (k == 0) return {1, 2, 0};
  if (k == 1) return {0, 2, 1};
  return {0, 1, 2};
}

// 4/sqrt(X_j - X_i) int_0^{pi/2} (1 - l1 sin^2)^{-1/2} - 4/sqrt(X_i - X_j) int (1 - l2 sin^2)^{-1/2}:
// the double-cover segment integral of dX/sqrt(cubic) after X = X_i + (X_k - X_i) sin^2.
cplx J_quadrature(const std::array<cplx, 3>& x, int k) {
  auto [i, j, kk] = others(k);
  (void)kk;
  cplx l1 = (x[k] - x[i]) / (x[j] - x[i]), l2 = (x[k] - x[j]) / (x[i] - x[j]);
  return pi / std::sqrt(x[j] - x[i]) * oracle::hyp2f1_quad(l1) * 2.0 -
         pi / std::sqrt(x[i] - x[j]) * oracle::hyp2f1_quad(l2) * 2.0;
}

bool off_cut(cplx l) { return !(std::abs(l.imag()) < 1e-3 && l.real() > 0.9); }

}  // namespace

TEST(CriticalPoints, Examples) {
  auto c = mg::critical_points(1.0);
  EXPECT_LT(std::abs(c.z_star + 1.0), 1e-15);
  EXPECT_LT(std::abs(mg::critical_points(1e3).z_star + 0.1), 1e-15);
  for (cplx y : {cplx(1.0), cplx(-5.0, 2.0), cplx(1e3)}) {
    auto p = mg::critical_points(y);
    for (cplx z : p.z) EXPECT_LT(std::abs(z * z * z - 27.0), 1e-12);
    EXPECT_LT(std::abs(p.z_star * p.z_star * p.z_star * y + 1.0), 1e-12);
  }
  EXPECT_EQ(kind_of([] { mg::critical_points(0.0); }), lp2::ErrorKind::domain);
  EXPECT_LT(std::abs(mg::omega_c() - std::polar(1.0, 2 * pi / 3)), 4e-16);
  EXPECT_EQ(mg::omega_p(), std::conj(mg::omega_c()));
}

TEST(Roots, AtZero) {
  auto x = mg::roots_at_zero();
  double r = std::pow(2.0, -2.0 / 3.0);
  for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(x[j] + r * ipow(mg::omega_p(), j)), 1e-15);
}

TEST(Roots, AtCriticalValues) {
  // (X + 1)^2 (X + 1/4) at z = 3: X_0 = -1/4, X_1 = X_2 = -1.
  mg::PathZ p{{0.0, 3.0}, 200};
  auto r = mg::cubic_roots_along(p).back();
  EXPECT_LT(std::abs(r.x[0] + 0.25), 1e-12);
  EXPECT_LT(std::abs(r.x[1] + 1.0), 1e-6);
  EXPECT_LT(std::abs(r.x[2] + 1.0), 1e-6);
  std::array<double, 3> printed{0.5 - 0.75, -0.25 - 0.75, -0.25 - 0.75};
  for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(r.x[j] - printed[j]), 1e-6);
  // X_j(z_i) = X_k(z_i) for j != i != k
  for (int i = 1; i < 3; ++i) {
    mg::PathZ q{{0.0, 3.0 * ipow(mg::omega_c(), i)}, 200};
    auto s = mg::cubic_roots_along(q).back();
    auto [a, b, c] = others(i);
    (void)c;
    EXPECT_LT(std::abs(s.x[a] - s.x[b]), 1e-6) << i;
    EXPECT_GT(std::abs(s.x[i] - s.x[a]), 0.5);
  }
}

TEST(Roots, VietaAlongPathsProperty) {
  for (int k = 0; k < 3; ++k) {
    mg::PathZ from0{{0.0, 3.0 * ipow(mg::omega_c(), k)}, 256};
    for (const auto& r : mg::cubic_roots_along(from0)) ASSERT_LT(mg::vieta_residual(r), 1e-12);
    mg::PathZ to_star{{0.0, mg::critical_points(cplx(-2e3, 7e2)).z_star}, 64};
    for (const auto& r : mg::cubic_roots_along(to_star)) ASSERT_LT(mg::vieta_residual(r), 1e-12);
  }
  mg::PathZ wander{{0.0, cplx(1.0, 1.0), cplx(-2.0, 0.5), cplx(0.5, -2.5), cplx(4.0, 0.2)}, 100};
  auto rs = mg::cubic_roots_along(wander);
  for (const auto& r : rs) ASSERT_LT(mg::vieta_residual(r), 1e-12);
  for (std::size_t n = 1; n < rs.size(); ++n)
    for (int j = 0; j < 3; ++j) ASSERT_LT(std::abs(rs[n].x[j] - rs[n - 1].x[j]), 0.5);
}

TEST(Roots, LabelsDependOnlyOnHomotopyClass) {
  // Three deformations of 0 -> 2i that stay clear of the critical values.
  cplx end(0.0, 2.0);
  std::vector<mg::PathZ> paths = {
      {{0.0, end}, 64},
      {{0.0, cplx(1.0, 0.5), end}, 64},
      {{0.0, cplx(-1.2, 0.3), cplx(-0.8, 1.8), end}, 64},
  };
  auto ref = mg::cubic_roots_along(paths[0]).back();
  for (const auto& p : paths) {
    auto r = mg::cubic_roots_along(p).back();
    for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(r.x[j] - ref.x[j]), 1e-12);
  }
  // Looping around z_0 = 3 swaps X_1 and X_2.
  mg::PathZ loop{{0.0, cplx(2.0, -1.0), cplx(4.0, -1.0), cplx(4.0, 1.0), cplx(2.0, 1.0), cplx(0.0, 0.5), end}, 64};
  auto r = mg::cubic_roots_along(loop).back();
  EXPECT_LT(std::abs(r.x[0] - ref.x[0]), 1e-12);
  EXPECT_LT(std::abs(r.x[1] - ref.x[2]), 1e-12);
  EXPECT_LT(std::abs(r.x[2] - ref.x[1]), 1e-12);
}

TEST(Roots, MatchRoots) {
  std::array<cplx, 3> prev{1.0, cplx(0, 1), -1.0};
  auto m = mg::match_roots(prev, {cplx(-1.01, 0), cplx(1.02, 0), cplx(0, 0.99)});
  EXPECT_EQ(m[0], cplx(1.02, 0));
  EXPECT_EQ(m[1], cplx(0, 0.99));
  EXPECT_EQ(m[2], cplx(-1.01, 0));
}

TEST(Paths, ValidationAndCollision) {
  EXPECT_EQ(kind_of([] { mg::PathZ{{0.0, 0.0, 1.0}, 4}.validate({}); }), lp2::ErrorKind::domain);
  EXPECT_EQ(kind_of([] { mg::PathZ{{0.0, 6.0}, 4}.validate({3.0}); }), lp2::ErrorKind::domain);
  EXPECT_NO_THROW((mg::PathZ{{0.0, 3.0}, 4}.validate({3.0})));
  EXPECT_EQ(kind_of([] { mg::cubic_roots_along(mg::PathZ{{1.0, 2.0}, 4}); }), lp2::ErrorKind::domain);
  EXPECT_EQ(kind_of([] { mg::cubic_roots_along(mg::PathZ{{0.0, 3.0, 5.0}, 64}); }), lp2::ErrorKind::collision);
  auto p = mg::standard_path(1e3, 1);
  ASSERT_EQ(p.vertices.size(), 3u);
  EXPECT_LT(std::abs(p.vertices[0] - 3.0 * mg::omega_c()), 1e-15);
  EXPECT_EQ(p.vertices[1], cplx(0.0));
  EXPECT_LT(std::abs(p.vertices[2] + 0.1), 1e-15);
}

TEST(VanishingIntegral, PrintedFormulaEqualsQuadratureProperty) {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  int checked = 0;
  while (checked < 10) {
    cplx z(u(rng), u(rng));
    mg::CubicRoots r{mg::cubic_roots(z), z, {0, 1, 2}};
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      auto [i, j, kk] = others(k);
      (void)kk;
      ok = ok && off_cut((r.x[k] - r.x[i]) / (r.x[j] - r.x[i])) && off_cut((r.x[k] - r.x[j]) / (r.x[i] - r.x[j]));
    }
    if (!ok) continue;
    ++checked;
    for (int k = 0; k < 3; ++k) {
      auto v = mg::vanishing_integral_Jk(r, k);
      EXPECT_FALSE(v.cut_fallback);
      EXPECT_LT(std::abs(v.value - J_quadrature(r.x, k)), 1e-9) << z << " k=" << k;
    }
  }
}

TEST(VanishingIntegral, CutFallbackFlagged) {
  // Real roots ordered so that the first ratio is real and > 1.
  mg::CubicRoots r{{cplx(0.0), cplx(1.0), cplx(3.0)}, 0.0, {0, 1, 2}};
  auto v = mg::vanishing_integral_Jk(r, 2);  // (X_2 - X_0)/(X_1 - X_0) = 3
  EXPECT_TRUE(v.cut_fallback);
  EXPECT_TRUE(std::isfinite(v.value.real()) && std::isfinite(v.value.imag()));
  mg::CubicRoots d{{cplx(0.0), cplx(0.0), cplx(1.0)}, 0.0, {0, 1, 2}};
  EXPECT_EQ(kind_of([&] { mg::vanishing_integral_Jk(d, 2); }), lp2::ErrorKind::domain);
}

TEST(VanishingIntegral, CollapsingPairGivesLogarithmicGrowthNotZero) {
  // As X_k -> X_i the printed J_k does not vanish: the second term carries
  // F(1 - eps) ~ log(1/eps).
  for (double e : {1e-2, 1e-4, 1e-6}) {
    mg::CubicRoots r{{cplx(0.0), cplx(1.0, 0.5), cplx(e, e)}, 0.0, {0, 1, 2}};
    EXPECT_GT(std::abs(mg::vanishing_integral_Jk(r, 2).value), 1.0);
  }
}

TEST(Tracker, ValueAtZeroMatchesClosedForm) {
  double g13 = double(oracle::gamma_third()), g23 = double(oracle::gamma_two_thirds());
  mg::CycleTracker t(0, -0.1);
  cplx j0 = t.J(0, 1.0);
  EXPECT_LT(std::abs(j0 - (-s3 * std::pow(g13, 3) / pi)), 1e-10);
  const auto& e = mg::expansion_data();
  EXPECT_LT(std::abs(e.J0_zero - j0), 1e-10);
  EXPECT_LT(std::abs(e.J0_prime_zero - s3 * std::pow(g23, 3) / pi), 1e-10);
  // Central difference across z = 0 along the real axis (leg 0 comes from +3,
  // leg 1 leaves towards z_* = -0.1).
  double h = 1e-4;
  cplx fd = (t.J(0, 1.0 - h / 3.0) - t.J(1, h / 0.1)) / (2 * h);
  EXPECT_LT(std::abs(fd - e.J0_prime_zero), 1e-6);
  EXPECT_NEAR(e.c1, s3 * std::pow(g13, 3) / (8 * pi * pi * pi), 1e-15);
  EXPECT_NEAR(e.c2, s3 * std::pow(g23, 3) / (16 * pi * pi * pi), 1e-15);
}

TEST(Tracker, NormalizationAtCriticalValue) {
  for (int k = 0; k < 3; ++k) {
    mg::CycleTracker t(k, -0.1);
    cplx expect = (k % 2 ? -1.0 : 1.0) * ipow(mg::omega_c(), 2 * k) * (-4 * pi / s3);
    // At z_k itself the colliding pair is only known to sqrt(eps).
    EXPECT_LT(std::abs(t.J(0, 0.0) - expect), 1e-7) << k;
    EXPECT_LT(std::abs(t.J(0, 1e-9) - expect), 1e-3) << k;
  }
}

TEST(Tracker, RotationCovarianceProperty) {
  // Roots at omega z are omega^{-1} times the roots at z with labels shifted
  // by one, so J_{k+1}(omega z) = omega^{-1} J_k(z) up to the (-1)^k of the
  // normalization at z_k.
  std::array<mg::CycleTracker, 3> t{mg::CycleTracker(0, -0.1), mg::CycleTracker(1, -0.1), mg::CycleTracker(2, -0.1)};
  cplx w = mg::omega_c();
  for (double s : {0.01, 0.2, 0.5, 0.77, 0.95, 1.0})
    for (int k = 0; k < 3; ++k) {
      int k1 = (k + 1) % 3;
      EXPECT_LT(std::abs(t[k1].point(0, s) - w * t[k].point(0, s)), 1e-14);
      double sign = (k % 2 == k1 % 2) ? 1.0 : -1.0;
      EXPECT_LT(std::abs(t[k1].J(0, s) - sign * t[k].J(0, s) / w), 1e-10) << "k=" << k << " s=" << s;
      auto a = t[k].state(0, s), b = t[k1].state(0, s);
      for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(b.x[(j + 1) % 3] - a.x[j] / w), 1e-12);
    }
}

TEST(Tracker, ContinuityAlongLegs) {
  mg::CycleTracker t(2, mg::critical_points(cplx(-500.0, 900.0)).z_star);
  for (int leg = 0; leg < 2; ++leg) {
    cplx prev = t.J(leg, 0.0);
    double worst = 0.0;
    for (int n = 1; n <= 4000; ++n) {
      cplx v = t.J(leg, n / 4000.0);
      worst = std::max(worst, std::abs(v - prev));
      prev = v;
    }
    EXPECT_LT(worst, 0.05) << leg;
  }
}

TEST(Periods, LegIntegralsAgainstIndependentQuadrature) {
  using boost::math::quadrature::gauss_kronrod;
  cplx y = 2e3;
  for (int k = 0; k < 3; ++k) {
    auto r = mg::period_Ik(y, k, {1e-13, 200});
    mg::CycleTracker t(k, mg::critical_points(y).z_star);
    for (int leg = 0; leg < 2; ++leg) {
      cplx dz = t.leg_end(leg) - t.leg_start(leg);
      auto part = [&](bool im) {
        return gauss_kronrod<double, 31>::integrate(
            [&](double s) {
              cplx v = t.J(leg, s) * dz / (8 * pi * pi);
              return im ? v.imag() : v.real();
            },
            0.0, 1.0, 15, 1e-13);
      };
      cplx q(part(false), part(true));
      EXPECT_LT(std::abs(q - (leg == 0 ? r.A : r.B)), 1e-11) << k << " " << leg;
    }
  }
}

TEST(Periods, ConstantPartIsPlusMinusOneThird) {
  for (int k = 0; k < 3; ++k) {
    auto r = mg::period_Ik(1e6, k);
    EXPECT_LT(std::abs(r.A - (k % 2 ? -1.0 : 1.0) / 3.0), 1e-12) << k;
    EXPECT_LT(std::abs(r.value - r.A - r.B), 1e-16);
  }
  auto p = mg::periods(1e9);
  for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(p.I[k] - (k % 2 ? -1.0 : 1.0) / 3.0), 2e-4);
}

TEST(Periods, TorusSumProperty) {
  for (cplx y : {cplx(1e3), cplx(2e3), cplx(4e3), cplx(1e4), cplx(-3e3, 2e3), cplx(0.0, -5e3)}) {
    auto p = mg::periods(y);
    double tol = 10.0 * (p.err[0] + p.err[1] + p.err[2]);
    EXPECT_LT(std::abs(p.torus_sum() - 1.0), tol) << y;
    EXPECT_GT(tol, 0.0);
  }
}

TEST(Periods, HalvingReducesErrorProperty) {
  for (int k = 0; k < 3; ++k) {
    auto one = mg::period_Ik(1e3, k, {}, 1), two = mg::period_Ik(1e3, k, {}, 2);
    EXPECT_GE(one.err / two.err, 4.0) << k;
    EXPECT_LT(std::abs(one.value - two.value), one.err);
  }
}

TEST(Periods, TwoTermExpansion) {
  const auto& e = mg::expansion_data();
  for (double y : {1e3, 2e3, 4e3}) {
    auto b = mg::b_expansion(y);
    double t = std::cbrt(1.0 / y);
    for (int k = 0; k < 3; ++k) {
      auto r = mg::period_Ik(y, k);
      double dev = std::abs(r.B - b[k]) / (e.c2 * t * t);
      EXPECT_LE(dev, 5e-3) << y << " k=" << k;
    }
  }
}

TEST(Periods, LeadingScaling) {
  auto a = mg::period_Ik(1e6, 0), b = mg::period_Ik(8e6, 0);
  EXPECT_LT(std::abs(b.B / a.B - 0.5), 5e-3);
}

TEST(Periods, PhaseConvention) {
  auto rep = mg::phase_convention(mg::periods(1e3));
  ASSERT_FALSE(rep.fits.empty());
  EXPECT_EQ(rep.best().order1, "(-1)^k omega_p^k");
  EXPECT_EQ(rep.best().order2, "(-1)^k omega_p^2k");
  EXPECT_LE(rep.best().deviation, 5e-3);
  // The printed phases omega^k, omega^{2k} without (-1)^k are not the best fit.
  for (const auto& f : rep.fits)
    if (f.order1.rfind("(-1)^k", 0) != 0) EXPECT_GT(f.deviation, 0.5) << f.order1 << " / " << f.order2;
}

TEST(Periods, PrintedFZero) {
  // The leading coefficient -f(0)(omega - omega^{-1}) of B_0 has modulus c1 only
  // when omega is a primitive cube root of unity; e^{i pi/3} misses by a factor.
  const auto& e = mg::expansion_data();
  auto lead = [](cplx w) { return -mg::f_zero_printed(w) * (w - 1.0 / w); };
  EXPECT_NEAR(std::abs(lead(mg::omega_c())), e.c1, 1e-13);
  EXPECT_LT(std::abs(lead(mg::omega_p()) + e.c1), 1e-13);
  EXPECT_GT(std::abs(std::abs(lead(std::polar(1.0, pi / 3))) / e.c1 - 1.0), 0.3);
}

TEST(Periods, Errors) {
  EXPECT_EQ(kind_of([] { mg::period_Ik(20.0, 0); }), lp2::ErrorKind::domain);
  EXPECT_EQ(kind_of([] { mg::period_Ik(1e3, 3); }), lp2::ErrorKind::domain);
  EXPECT_EQ(kind_of([] { mg::period_Ik(1e3, 0, {1e-2, 200}); }), lp2::ErrorKind::domain);
  EXPECT_EQ(kind_of([] { mg::b_expansion(10.0); }), lp2::ErrorKind::domain);
}
