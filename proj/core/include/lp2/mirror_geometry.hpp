#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lp2/specfun.hpp"

namespace lp2::mirror_geometry {

using cplx = std::complex<double>;
using specfun::PrecisionConfig;

/// e^{2 pi i/3}, used for the critical values z_k = 3 omega_c^k.
cplx omega_c();
/// e^{-2 pi i/3} = conj(omega_c), used for the root labels at z = 0.
cplx omega_p();

struct CriticalPoints {
  cplx z_star;               // -y^{-1/3}, principal cube root
  std::array<cplx, 3> z;     // 3 omega_c^k
};
CriticalPoints critical_points(cplx y);

/// Roots of X^3 + (z/2)^2 X^2 + (z/2) X + 1/4 at z, in label order. Label j
/// is the root that continues to -2^{-2/3} omega_p^j at z = 0.
struct CubicRoots {
  std::array<cplx, 3> x{};
  cplx z{};
  std::array<int, 3> seed{0, 1, 2};
};

/// Unordered roots (companion matrix, Newton polish).
std::array<cplx, 3> cubic_roots(cplx z);
/// The labelled roots at z = 0.
std::array<cplx, 3> roots_at_zero();
/// Max of the three Vieta residuals.
double vieta_residual(const CubicRoots& r);
/// Permute `next` so that it is closest to `prev` (min total squared distance).
std::array<cplx, 3> match_roots(const std::array<cplx, 3>& prev, std::array<cplx, 3> next);

struct PathZ {
  std::vector<cplx> vertices;
  int refinement = 64;

  /// Throws ErrorKind::domain for repeated vertices or for segments that pass
  /// within eps of a point in `avoid`, except at the first and last vertex.
  void validate(const std::vector<cplx>& avoid, double eps = 1e-6) const;
};

/// The polyline z_k -> 0 -> z_*.
PathZ standard_path(cplx y, int k, int refinement = 64);

/// Labelled roots at every refinement sample. The path must start at z = 0
/// unless `seed` supplies labelled roots at its first vertex. Throws
/// ErrorKind::collision when two roots come within 1e-9 of each other away
/// from the first and last vertex.
std::vector<CubicRoots> cubic_roots_along(const PathZ& path,
                                          const std::optional<std::array<cplx, 3>>& seed = {});

/// Two-term closed form
///   2 pi/sqrt(X_j - X_i) F((X_k - X_i)/(X_j - X_i))
///     - 2 pi/sqrt(X_i - X_j) F((X_k - X_j)/(X_i - X_j))
/// with (i, j) the other two labels in increasing order and principal
/// square roots. When an argument lies on [1, inf) the boundary value from
/// the upper half plane is used and `cut_fallback` is set.
struct VanishingValue {
  cplx value{};
  bool cut_fallback = false;
};
VanishingValue vanishing_integral_Jk(const CubicRoots& roots, int k);

/// The vanishing-cycle integral of cycle k continued from z_k along the
/// legs z_k -> 0 -> z_*. At z_k the cycle is normalized to
///   J_k(z_k) = (-1)^k omega_c^{2k} (-4 pi/sqrt3).
/// J is written 2 pi/sqrt(X_k - X_i) (alpha F(lam) + beta F(1 - lam)) with
/// lam = (X_j - X_i)/(X_k - X_i); (alpha, beta) jump when lam crosses a cut.
class CycleTracker {
 public:
  struct State {
    std::array<cplx, 3> x{};
    cplx sq{}, alpha{1.0}, beta{0.0}, lam{};
  };

  CycleTracker(int k, cplx z_star, int checkpoints = 4000);

  int k() const { return k_; }
  cplx leg_start(int leg) const { return leg == 0 ? z_k_ : 0.0; }
  cplx leg_end(int leg) const { return leg == 0 ? 0.0 : z_star_; }
  cplx point(int leg, double s) const { return leg_start(leg) + s * (leg_end(leg) - leg_start(leg)); }
  /// J at parameter s in [0, 1] of leg 0 (z_k -> 0) or leg 1 (0 -> z_*).
  cplx J(int leg, double s) const;
  State state(int leg, double s) const;
  /// Tracked state at z = 0.
  const State& state_at_zero() const { return legs_[0].states.back(); }

 private:
  struct Leg {
    std::vector<double> s;
    std::vector<State> states;
  };
  State advance(const State& from, cplx z) const;
  cplx value(const State& st) const;
  const State& checkpoint(int leg, double s) const;

  int k_;
  cplx z_k_, z_star_;
  std::array<Leg, 2> legs_;
};

struct PeriodResult {
  cplx value{};   // I_k = A_k + B_k
  double err = 0.0;
  cplx A{}, B{};  // leg z_k -> 0 and leg 0 -> z_*
  double err_A = 0.0, err_B = 0.0;
  int panels = 0;
};

/// I_k = (1/8 pi^2) int_{z_k -> 0 -> z_*} J_k dz by composite Gauss-Kronrod
/// (7, 15) on each leg. Adaptive to quad.target_rel_err when fixed_panels is
/// 0, otherwise exactly fixed_panels equal panels per leg. Needs |y| > 27.
PeriodResult period_Ik(cplx y, int k, const PrecisionConfig& quad = {}, int fixed_panels = 0);

struct PeriodVector {
  std::array<cplx, 3> I{};
  cplx y{};
  std::array<double, 3> err{};
  bool orientation_flipped = false;

  cplx torus_sum() const { return I[0] - I[1] + I[2]; }
};
/// All three periods, with the global orientation chosen so that
/// I_0 - I_1 + I_2 = +1.
PeriodVector periods(cplx y, const PrecisionConfig& quad = {});

/// J_0 and dJ_0/dz at z = 0 from F(-omega), F'(-omega) and the root
/// derivatives dX_j/dz(0) = omega_p^{2j}/(3 2^{1/3}).
struct ExpansionData {
  cplx J0_zero{}, J0_prime_zero{};
  double c1 = 0.0;  // sqrt3 Gamma(1/3)^3/(8 pi^3)
  double c2 = 0.0;  // sqrt3 Gamma(2/3)^3/(16 pi^3)
};
const ExpansionData& expansion_data();

/// B_k(y) ~ (-1)^k [-J_0(0) omega_p^k t/(8 pi^2) + J_0'(0) omega_p^{2k} t^2/(16 pi^2)],
/// t = y^{-1/3}.
std::array<cplx, 3> b_expansion(cplx y);

/// f(0) = 2^{1/3}/(4 pi w sqrt(w^2 - w)) F(-omega) for a chosen cube root w.
cplx f_zero_printed(cplx w);

/// Phase conventions for the two orders of B_k, ranked by
///   max_k |(B_k - p1_k c1 t)/(p2_k c2 t^2) - 1|.
struct PhaseFit {
  std::string order1, order2;
  double deviation = 0.0;
};
struct PhaseReport {
  std::vector<PhaseFit> fits;  // best first
  const PhaseFit& best() const { return fits.front(); }
};
PhaseReport phase_convention(const PeriodVector& p);

}  // namespace lp2::mirror_geometry
