#include "lp2/cohomology.hpp"

#include <sstream>

#include "lp2/error.hpp"

namespace lp2::cohomology {

CohClass operator+(const CohClass& a, const CohClass& b) {
  return {a.a0 + b.a0, a.a1 + b.a1, a.a2 + b.a2};
}
CohClass operator-(const CohClass& a, const CohClass& b) {
  return {a.a0 - b.a0, a.a1 - b.a1, a.a2 - b.a2};
}
CohClass operator-(const CohClass& a) { return {-a.a0, -a.a1, -a.a2}; }
CohClass operator*(const CohClass& a, const CohClass& b) {
  return {a.a0 * b.a0, a.a0 * b.a1 + a.a1 * b.a0, a.a0 * b.a2 + a.a1 * b.a1 + a.a2 * b.a0};
}
CohClass operator*(const Rational& s, const CohClass& a) { return {s * a.a0, s * a.a1, s * a.a2}; }

CohClass CohClass::exp_nJ(std::int64_t n) {
  Rational r(n);
  return {1, r, r * r / 2};
}

std::string to_string(const CohClass& c) {
  std::ostringstream os;
  os << c.a0 << " + (" << c.a1 << ")J + (" << c.a2 << ")J^2";
  return os.str();
}

const char* to_string(Basis b) noexcept {
  switch (b) {
    case Basis::line_bundle: return "line_bundle";
    case Basis::brane: return "brane";
    case Basis::ako: return "ako";
    case Basis::mirror_n: return "mirror_n";
    case Basis::charge: return "charge";
  }
  return "unknown";
}

Basis parse_basis(const std::string& name) {
  for (Basis b : {Basis::line_bundle, Basis::brane, Basis::ako, Basis::mirror_n, Basis::charge})
    if (name == to_string(b)) return b;
  throw Error(ErrorKind::basis, "unknown basis '" + name + "'");
}

namespace {

IntMatrix from_columns(std::array<std::int64_t, 3> c0, std::array<std::int64_t, 3> c1,
                       std::array<std::int64_t, 3> c2) {
  IntMatrix m{};
  for (int i = 0; i < 3; ++i) {
    m[i][0] = c0[i];
    m[i][1] = c1[i];
    m[i][2] = c2[i];
  }
  return m;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// Inverse of a unimodular integer matrix via the adjugate.
IntMatrix inverse(const IntMatrix& m) {
  std::int64_t d = determinant(m);
  if (d != 1 && d != -1) throw Error(ErrorKind::basis, "base-change matrix is not unimodular");
  IntMatrix r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) * d;
    }
  return r;
}

std::array<std::int64_t, 3> apply_matrix(const IntMatrix& m, const std::array<std::int64_t, 3>& v) {
  std::array<std::int64_t, 3> r{0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i] += m[i][k] * v[k];
  return r;
}

std::int64_t to_integer(const Rational& r, const char* what) {
  if (boost::multiprecision::denominator(r) != 1)
    throw Error(ErrorKind::consistency, std::string(what) + " is not an integer");
  return static_cast<std::int64_t>(boost::multiprecision::numerator(r));
}

}  // namespace

std::int64_t determinant(const IntMatrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

IntMatrix to_line_bundle_matrix(Basis b) {
  switch (b) {
    case Basis::line_bundle:
      return from_columns({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    case Basis::brane:
      // [O_p] = [O] - 2[O(-1)] + [O(-2)],  [O_H(-1)] = [O(-1)] - [O(-2)]
      return from_columns({1, -2, 1}, {0, 1, -1}, {0, 0, 1});
    case Basis::ako:
      // T(-1) = 3[O] - [O(-1)] (Euler sequence), O(1) = 3[O] - 3[O(-1)] + [O(-2)]
      return from_columns({1, 0, 0}, {3, -1, 0}, {3, -3, 1});
    case Basis::mirror_n:
      // N0 = [O(-2)], N1 = -[O] + 3[O(-1)], N2 = [O(-1)]
      return from_columns({0, 0, 1}, {-1, 3, 0}, {0, 1, 0});
    case Basis::charge:
      // ch = 1, J + J^2/2, J^2
      return from_columns({1, 0, 0}, {2, -3, 1}, {1, -2, 1});
  }
  throw Error(ErrorKind::basis, "unregistered basis tag");
}

IntMatrix basis_change_matrix(Basis from, Basis to) {
  return mul(inverse(to_line_bundle_matrix(to)), to_line_bundle_matrix(from));
}

KClass basis_change(const KClass& k, Basis target) {
  return {target, apply_matrix(basis_change_matrix(k.basis, target), k.coords)};
}

KClass line_bundle(std::int64_t n) {
  // [O(n)] in the basis [O], [O(-1)], [O(-2)], from (1 - L^{-1})^3 = 0.
  CohClass c = CohClass::exp_nJ(n);
  return from_chern(c);
}

CohClass chern(const KClass& k) {
  KClass lb = basis_change(k, Basis::line_bundle);
  CohClass r{0, 0, 0};
  for (int i = 0; i < 3; ++i) r = r + Rational(lb.coords[i]) * CohClass::exp_nJ(-i);
  return r;
}

KClass from_chern(const CohClass& c) {
  // x0 + x1 e^{-J} + x2 e^{-2J} = c
  //   a0 = x0 + x1 + x2,  a1 = -x1 - 2 x2,  a2 = x1/2 + 2 x2
  Rational x2 = c.a2 + c.a1 / 2;
  Rational x1 = -c.a1 - 2 * x2;
  Rational x0 = c.a0 - x1 - x2;
  return {Basis::line_bundle,
          {to_integer(x0, "K-class coordinate"), to_integer(x1, "K-class coordinate"),
           to_integer(x2, "K-class coordinate")}};
}

KClass tensor(const KClass& a, const KClass& b) { return from_chern(chern(a) * chern(b)); }

CohClass chern_total_X() {
  // c(T_{P^2}) c(O(-3)) = (1 + 3J + 3J^2)(1 - 3J)
  return CohClass{1, 3, 3} * CohClass{1, -3, 0};
}

CohClass todd_X() {
  CohClass c = chern_total_X();
  // td = 1 + c1/2 + (c1^2 + c2)/12
  return CohClass{1, c.a1 / 2, (c.a1 * c.a1 + c.a2) / 12};
}

CohClass todd_P2() {
  // c(T_{P^2}) = 1 + 3J + 3J^2
  Rational c1 = 3, c2 = 3;
  return CohClass{1, c1 / 2, (c1 * c1 + c2) / 12};
}

Rational integrate_P2(const CohClass& c) { return c.a2; }

std::int64_t euler_pairing_P2(const KClass& f, const KClass& g) {
  return to_integer(integrate_P2(chern(f).dual() * chern(g) * todd_P2()), "Euler pairing");
}

std::int64_t euler_pairing_bk(const KClass& b, const KClass& e) {
  return to_integer(integrate_P2(chern(b) * chern(e) * todd_P2()), "Euler pairing");
}

std::int64_t euler_form_compact(const KClass& b1, const KClass& b2) {
  return euler_pairing_P2(b1, b2) - euler_pairing_P2(b2, b1);
}

cplx central_charge(const KClass& f, const std::array<cplx, 3>& w) {
  cplx z = 0.0;
  for (int i = 0; i < 3; ++i) {
    KClass e{Basis::charge, {i == 0, i == 1, i == 2}};
    z += w[i] * double(euler_pairing_bk(f, e));
  }
  return z;
}

IntMatrix c_tau_omega() { return basis_change_matrix(Basis::brane, Basis::ako); }

}  // namespace lp2::cohomology
