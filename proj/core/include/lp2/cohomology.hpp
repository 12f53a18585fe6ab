#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lp2::cohomology {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using cplx = std::complex<double>;

/// a0 + a1 J + a2 J^2 in Q[J]/J^3.
struct CohClass {
  Rational a0, a1, a2;

  static CohClass one() { return {1, 0, 0}; }
  static CohClass J() { return {0, 1, 0}; }
  /// ch(O(n)) = exp(nJ) truncated.
  static CohClass exp_nJ(std::int64_t n);

  CohClass dual() const { return {a0, -a1, a2}; }

  friend CohClass operator+(const CohClass& a, const CohClass& b);
  friend CohClass operator-(const CohClass& a, const CohClass& b);
  friend CohClass operator-(const CohClass& a);
  friend CohClass operator*(const CohClass& a, const CohClass& b);
  friend CohClass operator*(const Rational& s, const CohClass& a);
  friend bool operator==(const CohClass& a, const CohClass& b) = default;
};

std::string to_string(const CohClass& c);

/// Registered K-theory bases. Coordinates are always w.r.t. the listed
/// elements, in order.
///   line_bundle : [O], [O(-1)], [O(-2)]
///   brane       : B0 = [O_p], B1 = [O_H(-1)], B2 = [O(-2)]
///   ako         : E0 = [O], E1 = [T(-1)], E2 = [O(1)]
///   mirror_n    : N0, N1, N2
///   charge      : the basis of K(X) dual to the branes, ch = 1, e^J - 1, (e^J - 1)^2
enum class Basis { line_bundle, brane, ako, mirror_n, charge };

const char* to_string(Basis b) noexcept;
Basis parse_basis(const std::string& name);

struct KClass {
  Basis basis = Basis::line_bundle;
  std::array<std::int64_t, 3> coords{0, 0, 0};

  friend bool operator==(const KClass&, const KClass&) = default;
};

using IntMatrix = std::array<std::array<std::int64_t, 3>, 3>;

/// Columns are the basis elements written in line-bundle coordinates.
IntMatrix to_line_bundle_matrix(Basis b);
/// Matrix taking `from` coordinates to `to` coordinates.
IntMatrix basis_change_matrix(Basis from, Basis to);
KClass basis_change(const KClass& k, Basis target);
std::int64_t determinant(const IntMatrix& m);

CohClass chern(const KClass& k);
/// Inverse of chern on K(P^2); throws ErrorKind::consistency when the
/// class has no integral preimage.
KClass from_chern(const CohClass& c);
/// K-theoretic tensor product, result in the line-bundle basis.
KClass tensor(const KClass& a, const KClass& b);
KClass line_bundle(std::int64_t n);

CohClass todd_X();
CohClass todd_P2();
/// Total Chern class of the tangent bundle of X restricted to P^2.
CohClass chern_total_X();
/// Coefficient of J^2 (the class of a point integrates to 1).
Rational integrate_P2(const CohClass& c);

/// chi_{P^2}(F, G) = int ch(F^v) ch(G) td(P^2).
std::int64_t euler_pairing_P2(const KClass& f, const KClass& g);
/// chi(b, e) = int_{P^2} ch(F) ch(e|_{P^2}) td(P^2) for a compact class b.
std::int64_t euler_pairing_bk(const KClass& b, const KClass& e);
/// chi(F, G) - chi(G, F) for compactly supported classes.
std::int64_t euler_form_compact(const KClass& b1, const KClass& b2);

/// Z(f) = sum_i w_i chi(f, E_i) with E_i the charge basis.
cplx central_charge(const KClass& f, const std::array<cplx, 3>& w);

/// C_{tau omega}: columns are the branes written in the AKO basis.
IntMatrix c_tau_omega();

}  // namespace lp2::cohomology
