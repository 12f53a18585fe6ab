#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "lp2/cohomology.hpp"
#include "lp2/mirror_geometry.hpp"

namespace lp2::mirror_map {

using cplx = std::complex<double>;
using cohomology::KClass;
using specfun::PrecisionConfig;

/// (w_0, w_1, w_2) = (I_0, I_1, I_2) M.
struct TransferMatrix {
  std::array<std::array<long, 3>, 3> entries{};
  std::array<std::array<cplx, 3>, 3> raw{};  // least-squares solution
  double rounding_deviation = 0.0;  // max |raw - entries|
  double residual = 0.0;            // max |W - I entries| over the samples
  long determinant = 0;
};

/// The expected matrix [[1,0,0],[-1,1,-1],[1,1,0]].
std::array<std::array<long, 3>, 3> expected_transfer_matrix();

/// Least-squares fit of W = I M from rows I = (I_0, I_1, I_2) and
/// W = (w_0, w_1, w_2), then rounding. Throws ErrorKind::fit when the
/// post-rounding residual exceeds 1e-3.
TransferMatrix fit_transfer_matrix(const std::vector<std::array<cplx, 3>>& I_rows,
                                   const std::vector<std::array<cplx, 3>>& W_rows);
/// The same with periods by quadrature and w from the large-y expansion.
/// Needs >= 3 pairwise distinct samples with |y| >= 1e3.
TransferMatrix fit_transfer_matrix(const std::vector<cplx>& y_samples, const PrecisionConfig& quad = {});

struct MirrorObjects {
  std::array<KClass, 3> brane;        // N_i in the brane basis
  std::array<KClass, 3> line_bundle;  // N_i in [O], [O(-1)], [O(-2)]
  bool n1_is_twisted_tangent = false; // N_1 == T(-1) (x) O(-2)
};
MirrorObjects mirror_objects();

struct HomTable {
  /// chi_{P^2}(N_i, N_j); equals dim Hom^0 for i <= j.
  std::array<std::array<std::int64_t, 3>, 3> chi{};
  /// chi(N_i, N_j) - chi(N_j, N_i), the Euler form on X.
  std::array<std::array<std::int64_t, 3>, 3> x_form{};
};
HomTable hom_dimensions();

/// N_i == E_i (x) O(-2) for (E_0, E_1, E_2) = (O, T(-1), O(1)).
bool ako_twist_check();

struct ChargeRow {
  std::string label;
  KClass cls;
  cplx from_charge{};   // sum_j w_j chi(cls, E_j)
  cplx from_periods{};  // sum_k I_k (M v)_k, v = brane coordinates
  double tolerance = 0.0;
  bool flagged = false;
};
/// Rows for B_0, B_1, B_2, N_0, N_1, N_2 and the zero class.
std::vector<ChargeRow> central_charge_report(cplx y, const TransferMatrix& M,
                                             const PrecisionConfig& quad = {});

/// Cycle mirror to N_i: M applied to the brane coordinates of N_i.
struct Relabel {
  std::array<std::array<long, 3>, 3> cycles{};  // row i: coefficients of L_0, L_1, L_2
  std::array<std::string, 3> labels;            // e.g. "-L1"
  bool matches_printed = false;                  // (-L1, -L0, L2)
};
Relabel relabel_pattern(const TransferMatrix& M);

}  // namespace lp2::mirror_map
