#include "lp2/appendix.hpp"

#include <complex>
#include <iomanip>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "agm_impl.hpp"
#include "closed_forms_impl.hpp"
#include "lp2/error.hpp"

namespace lp2::specfun {

namespace {

using ext_real = boost::multiprecision::cpp_bin_float_50;
using ext_cplx = boost::multiprecision::cpp_complex_50;

template <class R>
std::string dec(const R& v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

template <class R, class C>
struct Runner {
  int digits;
  detail::ClosedForms<R> cf;
  std::vector<IdentityCheck> out;

  static R re(const C& z) {
    using std::real;
    return real(z);
  }
  static R im(const C& z) {
    using std::imag;
    return imag(z);
  }

  void add(std::string name, std::string method, const C& computed, const C& closed) {
    using std::abs;
    IdentityCheck c;
    c.name = std::move(name);
    c.method = std::move(method);
    c.computed_re = dec(re(computed), digits);
    c.computed_im = dec(im(computed), digits);
    c.closed_re = dec(re(closed), digits);
    c.closed_im = dec(im(closed), digits);
    c.rel_err = static_cast<double>(R(abs(C(computed - closed)) / abs(closed)));
    out.push_back(std::move(c));
  }

  C F(const C& z) const { return detail::hyp2f1_half<R, C>(z); }

  void run(bool extended) {
    const R kp = cf.k_plus(), km = cf.k_minus();
    auto ke_p = detail::elliptic_KE_m<R, C>(C(kp * kp));
    auto ke_m = detail::elliptic_KE_m<R, C>(C(km * km));
    add("K(k+)", "agm", ke_p.K, C(cf.K_plus()));
    add("K(k-)", "agm", ke_m.K, C(cf.K_minus()));
    add("E(k+)", "agm companion sum", ke_p.E, C(cf.E_plus()));
    add("E(k-)", "agm companion sum", ke_m.E, C(cf.E_minus()));

    const C z0(R(1) / 2, cf.sqrt3 / 2);
    add("F(-omega)", "agm", F(z0), cf.template F_minus_omega<C>());
    const C fp_closed = cf.template F_prime_minus_omega<C>();
    add("F'(-omega)", "agm derivative (E - (1-m)K)/(pi m (1-m))",
        detail::hyp2f1_half_prime_agm<R, C>(z0), fp_closed);

    // Five-point central difference along the real direction.
    const R h = extended ? R(1e-8) : R(1e-3);
    C d1 = F(z0 + C(h)) - F(z0 - C(h));
    C d2 = F(z0 + C(2 * h)) - F(z0 - C(2 * h));
    add("F'(-omega) [finite difference]", "five-point central difference",
        (d1 * R(8) - d2) / (R(12) * h), fp_closed);
    add("F'(-omega) [Ramanujan chain]", "differentiated Ramanujan identity",
        cf.template F_prime_minus_omega_chain<C>(), fp_closed);

    // Ramanujan's identity at x = sqrt3; both sides computed by AGM.
    using std::pow;
    using std::sqrt;
    const R x = cf.sqrt3;
    const R s = sqrt(R(1) + x * x);
    C lhs = F(C(R(1) / 2, x / 2)) * pow(R(1) + x * x, R(1) / 4);
    C rhs = C(R(1) / 2, R(1) / 2) * F(C((1 + x / s) / 2)) +
            C(R(1) / 2, R(-1) / 2) * F(C((1 - x / s) / 2));
    add("Ramanujan identity at x = sqrt3", "agm both sides", lhs, rhs);
  }
};

}  // namespace

Precision parse_precision(const std::string& name) {
  if (name == "double") return Precision::double_;
  if (name == "extended") return Precision::extended;
  throw Error(ErrorKind::usage, "precision must be 'double' or 'extended', got '" + name + "'");
}

const char* to_string(Precision p) noexcept {
  return p == Precision::extended ? "extended" : "double";
}

const std::vector<std::string>& appendix_core_identities() {
  static const std::vector<std::string> names = {"K(k+)", "K(k-)",     "E(k+)",
                                                 "E(k-)", "F(-omega)", "F'(-omega)"};
  return names;
}

std::vector<IdentityCheck> verify_appendix(Precision precision) {
  if (precision == Precision::extended) {
    Runner<ext_real, ext_cplx> r{45, {}, {}};
    r.run(true);
    return r.out;
  }
  Runner<double, std::complex<double>> r{17, {}, {}};
  r.run(false);
  return r.out;
}

}  // namespace lp2::specfun
