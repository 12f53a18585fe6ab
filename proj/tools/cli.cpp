#include "lp2_cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lp2/cohomology.hpp"
#include "lp2/error.hpp"
#include "lp2/mirror_geometry.hpp"
#include "lp2/mirror_map.hpp"
#include "lp2/picard_fuchs.hpp"

namespace lp2::cli {

namespace {

using json = nlohmann::ordered_json;
using cplx = std::complex<double>;
namespace pf = picard_fuchs;
namespace mg = mirror_geometry;
namespace mm = mirror_map;
namespace coh = cohomology;

constexpr double pi = std::numbers::pi;

json cx(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

template <class T, std::size_t N>
json arr(const std::array<T, N>& a) {
  json j = json::array();
  for (const auto& v : a) j.push_back(v);
  return j;
}
template <std::size_t N>
json arr(const std::array<cplx, N>& a) {
  json j = json::array();
  for (const auto& v : a) j.push_back(cx(v));
  return j;
}
template <class T>
json mat(const std::array<std::array<T, 3>, 3>& m) {
  json j = json::array();
  for (const auto& r : m) j.push_back(arr(r));
  return j;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json results;
  Table csv;
  bool flagged = false;
};

void write_csv(std::ostream& os, const Table& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

specfun::PrecisionConfig quad_config(const RunConfig& cfg) {
  specfun::PrecisionConfig q;
  q.target_rel_err = std::max(cfg.tolerance, 1e-15);
  return q;
}

std::vector<cplx> ys_or(const RunConfig& cfg, std::vector<cplx> fallback) {
  return cfg.y_values.empty() ? fallback : cfg.y_values;
}

// ---------------------------------------------------------------------------
// series

struct SeriesRow {
  cplx y;
  std::array<cplx, 3> chf;
  cplx s1, s2;
  bool has_mb = false;
  cplx m1, m2;
  double max_diff = 0.0;
};

SeriesRow series_row(cplx y) {
  SeriesRow r;
  r.y = y;
  auto c = pf::chf_expand(y);
  r.chf = {c.w0, c.w1, c.w2};
  r.s1 = pf::series_w1(y, 400);
  r.s2 = pf::series_w2(y, 400);
  r.max_diff = std::max(std::abs(r.s1 - c.w1), std::abs(r.s2 - c.w2));
  r.has_mb = !(y.imag() == 0.0 && y.real() < 0.0);
  if (r.has_mb) {
    const cplx tpi(0.0, 2.0 * pi);
    cplx p = pf::mellin_barnes(y, pf::MellinBarnesKind::plain);
    cplx d = pf::mellin_barnes(y, pf::MellinBarnesKind::digamma);
    cplx lm = pf::log_minus_y(y);
    r.m1 = (std::log(y) + 3.0 * p) / tpi;
    r.m2 = -lm * lm / (8.0 * pi * pi) + 0.125 - 3.0 / (4.0 * pi * pi) * lm * p - 9.0 / (4.0 * pi * pi) * d;
    for (cplx a : {r.s1, c.w1}) r.max_diff = std::max(r.max_diff, std::abs(a - r.m1));
    for (cplx a : {r.s2, c.w2}) r.max_diff = std::max(r.max_diff, std::abs(a - r.m2));
  }
  return r;
}

Output cmd_series(const RunConfig& cfg) {
  Output o;
  o.results = json::array();
  o.csv.header = {"y_re", "y_im", "source", "w0_re", "w0_im", "w1_re", "w1_im", "w2_re", "w2_im"};
  for (cplx y : ys_or(cfg, {{0.01, 0.0}, {0.005, 0.01}})) {
    auto r = series_row(y);
    bool flag = r.max_diff > cfg.tolerance;
    o.flagged |= flag;
    json row = {{"y", cx(y)},
                {"chf", {{"w0", cx(r.chf[0])}, {"w1", cx(r.chf[1])}, {"w2", cx(r.chf[2])}}},
                {"series", {{"w1", cx(r.s1)}, {"w2", cx(r.s2)}}}};
    row["mellin_barnes"] = r.has_mb ? json{{"w1", cx(r.m1)}, {"w2", cx(r.m2)}} : json(nullptr);
    row["max_pairwise_diff"] = r.max_diff;
    row["flagged"] = flag;
    o.results.push_back(row);
    auto add = [&](const char* src, cplx w0, cplx w1, cplx w2) {
      o.csv.rows.push_back({num(y.real()), num(y.imag()), src, num(w0.real()), num(w0.imag()), num(w1.real()),
                            num(w1.imag()), num(w2.real()), num(w2.imag())});
    };
    add("chf", r.chf[0], r.chf[1], r.chf[2]);
    add("series", 1.0, r.s1, r.s2);
    if (r.has_mb) add("mellin_barnes", 1.0, r.m1, r.m2);
  }
  return o;
}

// ---------------------------------------------------------------------------
// continue

Output cmd_continue(const RunConfig& cfg) {
  Output o;
  o.results = json::array();
  o.csv.header = {"y_re", "y_im", "w0_re", "w0_im", "w1_re", "w1_im", "w2_re", "w2_im", "err", "reference", "reference_diff"};
  pf::ContinuationOptions opt;
  opt.rel_tol = std::max(1e-13, cfg.tolerance * 1e-2);
  opt.abs_tol = opt.rel_tol * 1e-2;
  for (cplx y : ys_or(cfg, {{0.02, 0.01}, {1000.0, 0.0}})) {
    auto s = pf::continue_to(y, opt);
    json row = {{"y", cx(y)}, {"w", {{"w0", cx(s.w0)}, {"w1", cx(s.w1)}, {"w2", cx(s.w2)}}}, {"err_estimate", s.err_estimate}};
    std::string ref = "none";
    double diff = 0.0;
    if (std::abs(y) < 1.0 / 27.0 || std::abs(y) > 27.0) {
      auto r = std::abs(y) < 1.0 / 27.0 ? pf::chf_expand(y) : pf::w_at_infinity(y);
      ref = std::abs(y) < 1.0 / 27.0 ? "chf" : "large_y";
      diff = std::max({std::abs(r.w0 - s.w0), std::abs(r.w1 - s.w1), std::abs(r.w2 - s.w2)});
    }
    bool flag = diff > std::max(cfg.tolerance, 100.0 * s.err_estimate);
    o.flagged |= flag;
    row["reference"] = ref;
    row["reference_diff"] = ref == "none" ? json(nullptr) : json(diff);
    row["flagged"] = flag;
    o.results.push_back(row);
    o.csv.rows.push_back({num(y.real()), num(y.imag()), num(s.w0.real()), num(s.w0.imag()), num(s.w1.real()),
                          num(s.w1.imag()), num(s.w2.real()), num(s.w2.imag()), num(s.err_estimate), ref,
                          ref == "none" ? "" : num(diff)});
  }
  return o;
}

// ---------------------------------------------------------------------------
// monodromy

Output cmd_monodromy(const RunConfig&) {
  Output o;
  auto m = pf::monodromy_around_origin();
  std::array<std::array<long, 3>, 3> expected{{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}};
  o.flagged = !m.unipotent;
  o.results = {{"radius", 0.01},
               {"matrix", mat(m.matrix)},
               {"raw", mat(m.raw)},
               {"max_deviation", m.max_deviation},
               {"unipotent", m.unipotent},
               {"expected", mat(expected)},
               {"matches_expected", m.matrix == expected},
               {"flagged", o.flagged}};
  o.csv.header = {"row", "col", "value", "raw_re", "raw_im"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      o.csv.rows.push_back({std::to_string(i), std::to_string(j), std::to_string(m.matrix[i][j]),
                            num(m.raw[i][j].real()), num(m.raw[i][j].imag())});
  return o;
}

// ---------------------------------------------------------------------------
// periods

struct PeriodCheck {
  mg::PeriodVector p;
  std::array<cplx, 3> b;
  std::array<double, 3> t2_dev{};
  double torus_dev = 0.0, torus_tol = 0.0;
  bool torus_ok = false;
  mg::PhaseFit phase;
};

PeriodCheck check_periods(cplx y, const specfun::PrecisionConfig& q) {
  PeriodCheck c;
  c.p = mg::periods(y, q);
  c.b = mg::b_expansion(y);
  const auto& e = mg::expansion_data();
  const cplx t = std::exp(-std::log(y) / 3.0);
  for (int k = 0; k < 3; ++k) {
    double s = (k % 2) ? -1.0 : 1.0;
    cplx wk = std::pow(mg::omega_p(), double(k)), w2k = std::pow(mg::omega_p(), 2.0 * k);
    c.t2_dev[k] = std::abs((c.p.I[k] - s / 3.0 - s * wk * e.c1 * t) / (s * w2k * e.c2 * t * t) - 1.0);
  }
  c.torus_dev = std::abs(c.p.torus_sum() - 1.0);
  c.torus_tol = 10.0 * (c.p.err[0] + c.p.err[1] + c.p.err[2]);
  c.torus_ok = c.torus_dev <= c.torus_tol;
  c.phase = mg::phase_convention(c.p).best();
  return c;
}

Output cmd_periods(const RunConfig& cfg) {
  Output o;
  o.results = json::array();
  o.csv.header = {"y_re", "y_im", "k", "I_re", "I_im", "err", "B_expansion_re", "B_expansion_im"};
  for (cplx y : ys_or(cfg, {{1000.0, 0.0}})) {
    auto c = check_periods(y, quad_config(cfg));
    o.flagged |= !c.torus_ok;
    o.results.push_back({{"y", cx(y)},
                         {"I", arr(c.p.I)},
                         {"err", arr(c.p.err)},
                         {"torus_sum", cx(c.p.torus_sum())},
                         {"torus_deviation", c.torus_dev},
                         {"torus_tolerance", c.torus_tol},
                         {"orientation_flipped", c.p.orientation_flipped},
                         {"b_expansion", arr(c.b)},
                         {"t2_coefficient_deviation", arr(c.t2_dev)},
                         {"phase_convention", {{"order1", c.phase.order1}, {"order2", c.phase.order2}, {"deviation", c.phase.deviation}}},
                         {"flagged", !c.torus_ok}});
    for (int k = 0; k < 3; ++k)
      o.csv.rows.push_back({num(y.real()), num(y.imag()), std::to_string(k), num(c.p.I[k].real()),
                            num(c.p.I[k].imag()), num(c.p.err[k]), num(c.b[k].real()), num(c.b[k].imag())});
  }
  return o;
}

// ---------------------------------------------------------------------------
// transfer-matrix, central-charges

const std::vector<cplx> default_fit_samples = {{1000.0, 0.0}, {2000.0, 0.0}, {4000.0, 0.0}};

json transfer_json(const mm::TransferMatrix& t, const std::vector<cplx>& ys, bool& ok) {
  auto rl = mm::relabel_pattern(t);
  bool expected = t.entries == mm::expected_transfer_matrix();
  ok = expected && t.rounding_deviation <= 1e-4 && std::abs(t.determinant) == 1;
  json samples = json::array();
  for (cplx y : ys) samples.push_back(cx(y));
  return {{"samples", samples},
          {"entries", mat(t.entries)},
          {"raw", mat(t.raw)},
          {"rounding_deviation", t.rounding_deviation},
          {"residual", t.residual},
          {"determinant", t.determinant},
          {"expected", mat(mm::expected_transfer_matrix())},
          {"matches_expected", expected},
          {"first_column", {t.entries[0][0], t.entries[1][0], t.entries[2][0]}},
          {"relabel", {{"labels", arr(rl.labels)}, {"cycles", mat(rl.cycles)}, {"matches_printed", rl.matches_printed}}},
          {"flagged", !ok}};
}

Output cmd_transfer(const RunConfig& cfg) {
  Output o;
  auto ys = ys_or(cfg, default_fit_samples);
  auto t = mm::fit_transfer_matrix(ys, quad_config(cfg));
  bool ok = false;
  o.results = transfer_json(t, ys, ok);
  o.flagged = !ok;
  o.csv.header = {"row", "col", "entry", "raw_re", "raw_im"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      o.csv.rows.push_back({std::to_string(i), std::to_string(j), std::to_string(t.entries[i][j]),
                            num(t.raw[i][j].real()), num(t.raw[i][j].imag())});
  return o;
}

json charge_rows_json(cplx y, const std::vector<mm::ChargeRow>& rows, Table& csv, bool& flagged) {
  json out = json::array();
  for (const auto& r : rows) {
    flagged |= r.flagged;
    auto b = coh::basis_change(r.cls, coh::Basis::brane).coords;
    out.push_back({{"label", r.label},
                   {"brane_coords", arr(b)},
                   {"from_charge", cx(r.from_charge)},
                   {"from_periods", cx(r.from_periods)},
                   {"tolerance", r.tolerance},
                   {"flagged", r.flagged}});
    csv.rows.push_back({num(y.real()), num(y.imag()), r.label, num(r.from_charge.real()), num(r.from_charge.imag()),
                        num(r.from_periods.real()), num(r.from_periods.imag()), r.flagged ? "1" : "0"});
  }
  return out;
}

Output cmd_central(const RunConfig& cfg) {
  Output o;
  auto q = quad_config(cfg);
  auto t = mm::fit_transfer_matrix(default_fit_samples, q);
  o.csv.header = {"y_re", "y_im", "label", "charge_re", "charge_im", "periods_re", "periods_im", "flagged"};
  o.results = json::array();
  for (cplx y : ys_or(cfg, {{1000.0, 0.0}})) {
    auto rows = mm::central_charge_report(y, t, q);
    o.results.push_back({{"y", cx(y)}, {"rows", charge_rows_json(y, rows, o.csv, o.flagged)}});
  }
  return o;
}

// ---------------------------------------------------------------------------
// mirror-objects, ktheory-table

json kclass_json(const coh::KClass& k) { return arr(k.coords); }

Output cmd_mirror_objects(const RunConfig&) {
  Output o;
  auto m = mm::mirror_objects();
  const char* names[] = {"N0", "N1", "N2"};
  const char* desc[] = {"O(-2)", "T(-3)", "O(-1)"};
  json objs = json::array();
  o.csv.header = {"name", "basis", "c0", "c1", "c2"};
  for (int i = 0; i < 3; ++i) {
    objs.push_back({{"name", names[i]},
                    {"sheaf", desc[i]},
                    {"brane", kclass_json(m.brane[i])},
                    {"line_bundle", kclass_json(m.line_bundle[i])}});
    for (const auto* k : {&m.brane[i], &m.line_bundle[i]}) {
      std::vector<std::string> row = {names[i], coh::to_string(k->basis)};
      for (auto c : k->coords) row.push_back(std::to_string(c));
      o.csv.rows.push_back(row);
    }
  }
  o.flagged = !m.n1_is_twisted_tangent;
  o.results = {{"objects", objs}, {"n1_is_twisted_tangent", m.n1_is_twisted_tangent}, {"flagged", o.flagged}};
  return o;
}

struct KTheorySuite {
  std::array<std::array<std::int64_t, 3>, 3> duality{}, euler_branes{};
  coh::IntMatrix c_tau_omega{};
  bool duality_ok = true, antisymmetric = true, round_trip_ok = true, mirror_ok = false, hom_ok = true,
       ako_ok = false;
  mm::HomTable hom;
  bool all() const { return duality_ok && antisymmetric && round_trip_ok && mirror_ok && hom_ok && ako_ok; }
};

KTheorySuite ktheory_suite() {
  using coh::Basis;
  KTheorySuite s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      coh::KClass b{Basis::brane, {i == 0, i == 1, i == 2}};
      coh::KClass b2{Basis::brane, {j == 0, j == 1, j == 2}};
      coh::KClass e{Basis::charge, {j == 0, j == 1, j == 2}};
      s.duality[i][j] = coh::euler_pairing_bk(b, e);
      s.duality_ok &= s.duality[i][j] == (i == j ? 1 : 0);
      s.euler_branes[i][j] = coh::euler_form_compact(b, b2);
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.antisymmetric &= s.euler_branes[i][j] == -s.euler_branes[j][i];
  s.c_tau_omega = coh::c_tau_omega();
  for (Basis a : {Basis::line_bundle, Basis::brane, Basis::ako, Basis::mirror_n, Basis::charge})
    for (Basis b : {Basis::line_bundle, Basis::brane, Basis::ako, Basis::mirror_n, Basis::charge})
      for (int i = 0; i < 3; ++i) {
        coh::KClass v{a, {i == 0 ? 1 : -2, i == 1 ? 3 : 1, i == 2 ? 5 : 0}};
        s.round_trip_ok &= coh::basis_change(coh::basis_change(v, b), a) == v;
      }
  auto m = mm::mirror_objects();
  s.mirror_ok = m.n1_is_twisted_tangent &&
                m.line_bundle[0] == coh::KClass{Basis::line_bundle, {0, 0, 1}} &&
                m.line_bundle[2] == coh::KClass{Basis::line_bundle, {0, 1, 0}};
  s.hom = mm::hom_dimensions();
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) s.hom_ok &= s.hom.chi[i][j] == (i == j ? 1 : 3);
  s.ako_ok = mm::ako_twist_check();
  return s;
}

Output cmd_ktheory(const RunConfig&) {
  Output o;
  auto s = ktheory_suite();
  o.flagged = !s.all();
  o.results = {{"duality", mat(s.duality)},
               {"duality_ok", s.duality_ok},
               {"euler_form_branes", mat(s.euler_branes)},
               {"antisymmetric", s.antisymmetric},
               {"c_tau_omega", mat(s.c_tau_omega)},
               {"round_trip_ok", s.round_trip_ok},
               {"mirror_objects_ok", s.mirror_ok},
               {"hom_dimensions", mat(s.hom.chi)},
               {"x_euler_form", mat(s.hom.x_form)},
               {"hom_ok", s.hom_ok},
               {"ako_twist_check", s.ako_ok},
               {"flagged", o.flagged}};
  o.csv.header = {"table", "row", "col", "value"};
  auto add = [&](const char* name, const auto& m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        o.csv.rows.push_back({name, std::to_string(i), std::to_string(j), std::to_string(m[i][j])});
  };
  add("duality", s.duality);
  add("euler_form_branes", s.euler_branes);
  add("c_tau_omega", s.c_tau_omega);
  add("hom_dimensions", s.hom.chi);
  add("x_euler_form", s.hom.x_form);
  return o;
}

// ---------------------------------------------------------------------------
// verify-appendix

double ramanujan_sweep_max() {
  double mx = 0.0;
  for (int i = 0; i < 49; ++i) mx = std::max(mx, specfun::ramanujan_residual(5.0 * i / 48.0));
  return std::max(mx, specfun::ramanujan_residual(std::sqrt(3.0)));
}

Output cmd_appendix(const RunConfig& cfg) {
  Output o;
  auto rows = specfun::verify_appendix(cfg.precision_mode);
  json list = json::array();
  o.csv.header = {"name", "method", "computed_re", "computed_im", "closed_re", "closed_im", "rel_err", "pass"};
  for (const auto& r : rows) {
    bool pass = r.rel_err <= cfg.tolerance;
    o.flagged |= !pass;
    list.push_back({{"name", r.name},
                    {"method", r.method},
                    {"computed", {{"re", r.computed_re}, {"im", r.computed_im}}},
                    {"closed_form", {{"re", r.closed_re}, {"im", r.closed_im}}},
                    {"rel_err", r.rel_err},
                    {"pass", pass}});
    o.csv.rows.push_back({"\"" + r.name + "\"", "\"" + r.method + "\"", r.computed_re, r.computed_im, r.closed_re,
                          r.closed_im, num(r.rel_err), pass ? "1" : "0"});
  }
  double sweep = ramanujan_sweep_max();
  o.results = {{"precision", specfun::to_string(cfg.precision_mode)},
               {"identities", list},
               {"ramanujan_sweep", {{"points", 50}, {"x_max", 5.0}, {"max_residual", sweep}}},
               {"flagged", o.flagged}};
  return o;
}

// ---------------------------------------------------------------------------
// reproduce

Output cmd_reproduce(const RunConfig& cfg) {
  Output o;
  json steps = json::array();
  o.csv.header = {"step", "pass", "metric", "threshold"};
  auto step = [&](const std::string& name, bool pass, double metric, double threshold, json detail) {
    steps.push_back({{"step", name}, {"pass", pass}, {"metric", metric}, {"threshold", threshold}, {"detail", detail}});
    o.csv.rows.push_back({name, pass ? "1" : "0", num(metric), num(threshold)});
    o.flagged |= !pass;
  };

  {
    double worst = 0.0;
    auto rows = specfun::verify_appendix(cfg.precision_mode);
    const double thr = cfg.precision_mode == specfun::Precision::extended ? 1e-20 : 1e-10;
    const auto& core = specfun::appendix_core_identities();
    for (const auto& r : rows)
      if (std::find(core.begin(), core.end(), r.name) != core.end()) worst = std::max(worst, r.rel_err);
    step("appendix identities", worst <= thr, worst, thr, {{"precision", specfun::to_string(cfg.precision_mode)}});
    double sweep = ramanujan_sweep_max();
    step("ramanujan identity sweep", sweep <= 1e-11, sweep, 1e-11, {{"points", 50}});
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      double r = 0.002 + 0.018 * i / 9.0;
      double th = -2.5 + 5.0 * i / 9.0;
      worst = std::max(worst, series_row(std::polar(r, th)).max_diff);
    }
    step("series / mellin-barnes / chf agreement", worst <= 1e-9, worst, 1e-9, {{"points", 10}});
  }
  {
    auto rep = pf::annihilation_report({{0.01, 0.0}, {0.005, 0.01}, {-0.02, 0.0}}, 40);
    step("annihilation", rep.coefficient_residual <= 1e-10, rep.coefficient_residual, 1e-10,
         {{"sample_residual", rep.sample_residual}});
  }
  {
    auto m = pf::monodromy_around_origin();
    bool ok = m.unipotent && m.max_deviation <= 1e-6;
    step("monodromy at y = 0", ok, m.max_deviation, 1e-6, {{"matrix", mat(m.matrix)}, {"unipotent", m.unipotent}});
  }
  {
    auto s = pf::continue_to({1000.0, 0.0});
    auto r = pf::w_at_infinity({1000.0, 0.0});
    double d = std::max({std::abs(r.w0 - s.w0), std::abs(r.w1 - s.w1), std::abs(r.w2 - s.w2)});
    step("continuation to y = 1000 vs large-y series", d <= 1e-8, d, 1e-8, json::object());
  }
  auto q = quad_config(cfg);
  {
    double worst_t2 = 0.0, worst_torus = 0.0;
    bool torus_ok = true;
    for (cplx y : default_fit_samples) {
      auto c = check_periods(y, q);
      for (double d : c.t2_dev) worst_t2 = std::max(worst_t2, d);
      torus_ok &= c.torus_ok;
      worst_torus = std::max(worst_torus, c.torus_dev);
    }
    step("periods: y^(-2/3) coefficient", worst_t2 <= 5e-3, worst_t2, 5e-3, json::object());
    step("periods: I0 - I1 + I2 = 1", torus_ok, worst_torus, 0.0, {{"note", "threshold is 10x the per-sample quadrature error"}});
  }
  mm::TransferMatrix t = mm::fit_transfer_matrix(default_fit_samples, q);
  {
    bool ok = false;
    json tj = transfer_json(t, default_fit_samples, ok);
    step("transfer matrix", ok, t.rounding_deviation, 1e-4, tj);
  }
  {
    Table dummy;
    bool flagged = false;
    auto rows = mm::central_charge_report({1000.0, 0.0}, t, q);
    json rj = charge_rows_json({1000.0, 0.0}, rows, dummy, flagged);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.from_charge - r.from_periods));
    step("central charges", !flagged, worst, 0.0, {{"rows", rj}, {"note", "threshold is 10x the per-row error"}});
  }
  {
    auto s = ktheory_suite();
    step("k-theory suite", s.all(), 0.0, 0.0, json::object());
  }
  o.results = {{"steps", steps}, {"pass", !o.flagged}};
  return o;
}

// ---------------------------------------------------------------------------

using Handler = std::function<Output(const RunConfig&)>;

const std::vector<std::pair<std::string, std::pair<std::string, Handler>>>& commands() {
  static const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> c = {
      {"series", {"w0, w1, w2 near y = 0 from the CHF, the power series and Mellin-Barnes", cmd_series}},
      {"continue", {"ODE continuation of the y ~ 0 solutions", cmd_continue}},
      {"monodromy", {"monodromy of the solutions around y = 0", cmd_monodromy}},
      {"periods", {"periods I_k by quadrature, |y| > 27", cmd_periods}},
      {"transfer-matrix", {"fit (w0, w1, w2) = (I0, I1, I2) M", cmd_transfer}},
      {"mirror-objects", {"the mirror K-classes N0, N1, N2", cmd_mirror_objects}},
      {"central-charges", {"central charges from K-theory and from periods", cmd_central}},
      {"verify-appendix", {"closed forms for K, E, F and F' at the singular moduli", cmd_appendix}},
      {"ktheory-table", {"duality, Euler forms, base changes and Hom dimensions", cmd_ktheory}},
      {"reproduce", {"run the full pipeline and check every threshold", cmd_reproduce}},
  };
  return c;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& context) {
  err << json{{"error", kind}, {"context", context}}.dump() << "\n";
}

}  // namespace

void RunConfig::validate() const {
  if (!(tolerance >= 1e-12 && tolerance <= 1e-3))
    throw Error(ErrorKind::usage, "--tol must be in [1e-12, 1e-3], got " + num(tolerance));
}

std::complex<double> parse_complex(const std::string& s) {
  auto parse = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || !std::isfinite(v))
      throw Error(ErrorKind::usage, "cannot parse complex number '" + s + "' (expected \"re,im\" or \"re\")");
    return v;
  };
  auto comma = s.find(',');
  if (comma == std::string::npos) return {parse(s), 0.0};
  return {parse(s.substr(0, comma)), parse(s.substr(comma + 1))};
}

std::string usage() {
  std::ostringstream os;
  os << "usage: lp2 <command> [--tol T] [--y re,im]... [--format json|csv] [--precision double|extended] [--out PATH]\n\ncommands:\n";
  for (const auto& [name, c] : commands()) os << "  " << std::left << std::setw(17) << name << c.first << "\n";
  os << "\nLP2_PRECISION sets the default for --precision.\n";
  return os.str();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage();
    return 2;
  }
  CLI::App app{"lp2"};
  app.require_subcommand(1);
  app.set_help_flag();
  double tol = 1e-10;
  std::vector<std::string> ys;
  std::string format = "json", precision, out_path;
  if (const char* env = std::getenv("LP2_PRECISION")) precision = env;
  if (precision.empty()) precision = "double";

  std::map<CLI::App*, Handler> handlers;
  for (const auto& [name, c] : commands()) {
    auto* sub = app.add_subcommand(name, c.first);
    sub->add_option("--tol", tol, "tolerance in [1e-12, 1e-3]");
    sub->add_option("--y", ys, "complex sample \"re,im\" (repeatable)")->take_all()->allow_extra_args(false);
    sub->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", precision)->check(CLI::IsMember({"double", "extended"}));
    sub->add_option("--out", out_path);
    handlers[sub] = c.second;
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    err << usage();
    emit_error(err, "usage", e.what());
    return 2;
  }
  try {
    RunConfig cfg;
    cfg.tolerance = tol;
    for (const auto& y : ys) cfg.y_values.push_back(parse_complex(y));
    cfg.output_format = format == "csv" ? Format::csv : Format::json;
    cfg.precision_mode = specfun::parse_precision(precision);
    cfg.validate();

    CLI::App* sub = app.get_subcommands().front();
    Output o = handlers.at(sub)(cfg);

    std::ostringstream body;
    if (cfg.output_format == Format::csv) {
      write_csv(body, o.csv);
    } else {
      json cfg_json = {{"tolerance", cfg.tolerance}, {"precision", specfun::to_string(cfg.precision_mode)}};
      json doc = {{"command", sub->get_name()}, {"config", cfg_json}, {"results", o.results}, {"flagged", o.flagged}};
      body << doc.dump(2) << "\n";
    }
    if (out_path.empty()) {
      out << body.str();
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw Error(ErrorKind::usage, "cannot open --out path '" + out_path + "'");
      f << body.str();
    }
    return o.flagged ? 3 : 0;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::usage) err << usage();
    emit_error(err, to_string(e.kind()), e.context());
    return e.kind() == ErrorKind::usage ? 2 : 1;
  }
}

}  // namespace lp2::cli
