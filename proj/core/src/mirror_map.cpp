#include "lp2/mirror_map.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "lp2/error.hpp"
#include "lp2/picard_fuchs.hpp"

namespace lp2::mirror_map {

using cohomology::Basis;

namespace {

long det3(const std::array<std::array<long, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

const std::array<KClass, 3>& n_brane() {
  static const std::array<KClass, 3> n = {{
      {Basis::brane, {0, 0, 1}},   // B_2
      {Basis::brane, {-1, 1, 2}},  // -B_0 + B_1 + 2 B_2
      {Basis::brane, {0, 1, 1}},   // B_1 + B_2
  }};
  return n;
}

}  // namespace

std::array<std::array<long, 3>, 3> expected_transfer_matrix() {
  return {{{1, 0, 0}, {-1, 1, -1}, {1, 1, 0}}};
}

TransferMatrix fit_transfer_matrix(const std::vector<std::array<cplx, 3>>& I_rows,
                                   const std::vector<std::array<cplx, 3>>& W_rows) {
  if (I_rows.size() != W_rows.size() || I_rows.size() < 3)
    throw Error(ErrorKind::fit, "transfer-matrix fit needs >= 3 matching sample rows");
  const Eigen::Index n = Eigen::Index(I_rows.size());
  Eigen::MatrixXcd A(n, 3), B(n, 3);
  for (Eigen::Index r = 0; r < n; ++r)
    for (int c = 0; c < 3; ++c) {
      A(r, c) = I_rows[r][c];
      B(r, c) = W_rows[r][c];
    }
  auto qr = A.colPivHouseholderQr();
  if (qr.rank() < 3) throw Error(ErrorKind::fit, "period samples are linearly dependent");
  Eigen::MatrixXcd X = qr.solve(B);
  TransferMatrix t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      t.raw[i][j] = X(i, j);
      t.entries[i][j] = std::lround(X(i, j).real());
      t.rounding_deviation = std::max(t.rounding_deviation, std::abs(X(i, j) - double(t.entries[i][j])));
    }
  t.determinant = det3(t.entries);
  for (Eigen::Index r = 0; r < n; ++r)
    for (int j = 0; j < 3; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 3; ++k) s += A(r, k) * double(t.entries[k][j]);
      t.residual = std::max(t.residual, std::abs(s - B(r, j)));
    }
  if (t.residual > 1e-3) {
    std::ostringstream os;
    os << "transfer-matrix residual " << t.residual << " after rounding; raw entries:";
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) os << " " << t.raw[i][j];
    throw Error(ErrorKind::fit, os.str());
  }
  return t;
}

TransferMatrix fit_transfer_matrix(const std::vector<cplx>& y_samples, const PrecisionConfig& quad) {
  if (y_samples.size() < 3) throw Error(ErrorKind::fit, "transfer-matrix fit needs >= 3 samples");
  for (std::size_t i = 0; i < y_samples.size(); ++i) {
    if (std::abs(y_samples[i]) < 1e3) throw Error(ErrorKind::domain, "transfer-matrix samples need |y| >= 1e3");
    for (std::size_t j = 0; j < i; ++j)
      if (y_samples[i] == y_samples[j]) throw Error(ErrorKind::fit, "transfer-matrix samples must be distinct");
  }
  std::vector<std::array<cplx, 3>> I, W;
  for (cplx y : y_samples) {
    I.push_back(mirror_geometry::periods(y, quad).I);
    auto w = picard_fuchs::w_at_infinity(y);
    W.push_back({w.w0, w.w1, w.w2});
  }
  return fit_transfer_matrix(I, W);
}

MirrorObjects mirror_objects() {
  MirrorObjects m;
  m.brane = n_brane();
  for (int i = 0; i < 3; ++i) m.line_bundle[i] = cohomology::basis_change(m.brane[i], Basis::line_bundle);
  KClass t = cohomology::tensor(KClass{Basis::ako, {0, 1, 0}}, cohomology::line_bundle(-2));
  m.n1_is_twisted_tangent = (t == m.line_bundle[1]) && (t == KClass{Basis::line_bundle, {-1, 3, 0}});
  return m;
}

HomTable hom_dimensions() {
  HomTable h;
  const auto& n = n_brane();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      h.chi[i][j] = cohomology::euler_pairing_P2(n[i], n[j]);
      h.x_form[i][j] = cohomology::euler_form_compact(n[i], n[j]);
    }
  return h;
}

bool ako_twist_check() {
  const auto& n = n_brane();
  const KClass o_minus2 = cohomology::line_bundle(-2);
  for (int i = 0; i < 3; ++i) {
    KClass e{Basis::ako, {i == 0, i == 1, i == 2}};
    if (cohomology::tensor(e, o_minus2) != cohomology::basis_change(n[i], Basis::line_bundle)) return false;
  }
  return true;
}

std::vector<ChargeRow> central_charge_report(cplx y, const TransferMatrix& M, const PrecisionConfig& quad) {
  if (std::abs(y) < 1e3) throw Error(ErrorKind::domain, "central-charge report needs |y| >= 1e3");
  auto p = mirror_geometry::periods(y, quad);
  auto ws = picard_fuchs::w_at_infinity(y);
  const std::array<cplx, 3> w{ws.w0, ws.w1, ws.w2};

  std::vector<std::pair<std::string, KClass>> classes = {
      {"B0", {Basis::brane, {1, 0, 0}}}, {"B1", {Basis::brane, {0, 1, 0}}},
      {"B2", {Basis::brane, {0, 0, 1}}}};
  const char* n_names[] = {"N0", "N1", "N2"};
  for (int i = 0; i < 3; ++i) classes.push_back({n_names[i], n_brane()[i]});
  classes.push_back({"zero", {Basis::brane, {0, 0, 0}}});

  std::vector<ChargeRow> rows;
  for (const auto& [label, cls] : classes) {
    ChargeRow r;
    r.label = label;
    r.cls = cls;
    r.from_charge = cohomology::central_charge(cls, w);
    auto v = cohomology::basis_change(cls, Basis::brane).coords;
    double err = ws.err_estimate;
    for (int k = 0; k < 3; ++k) {
      double mv = 0.0;
      for (int j = 0; j < 3; ++j) mv += double(M.entries[k][j]) * double(v[j]);
      r.from_periods += p.I[k] * mv;
      err += std::abs(mv) * p.err[k];
    }
    r.tolerance = 10.0 * (err + 1e-15);
    r.flagged = std::abs(r.from_charge - r.from_periods) > r.tolerance;
    rows.push_back(r);
  }
  return rows;
}

Relabel relabel_pattern(const TransferMatrix& M) {
  Relabel r;
  const auto& n = n_brane();
  for (int i = 0; i < 3; ++i) {
    std::string label;
    for (int k = 0; k < 3; ++k) {
      long c = 0;
      for (int j = 0; j < 3; ++j) c += M.entries[k][j] * n[i].coords[j];
      r.cycles[i][k] = c;
      if (c == 0) continue;
      if (c < 0) label += "-";
      else if (!label.empty()) label += "+";
      if (std::abs(c) != 1) label += std::to_string(std::abs(c));
      label += "L" + std::to_string(k);
    }
    r.labels[i] = label.empty() ? "0" : label;
  }
  r.matches_printed = r.labels[0] == "-L1" && r.labels[1] == "-L0" && r.labels[2] == "L2";
  return r;
}

}  // namespace lp2::mirror_map
