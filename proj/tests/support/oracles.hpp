#pragma once

// Reference implementations used only by the tests. None of them share code
// with the library: they use 50-digit arithmetic, plain series, the AGM in
// its textbook form, or direct ODE integration.

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

inline mp mp_pi() { return boost::math::constants::pi<mp>(); }

/// erf by its Maclaurin series, summed in 50 digits until the terms vanish.
inline double erf_series(double xd) {
  const mp x = xd;
  const mp x2 = x * x;
  mp term = x;  // (-1)^n x^(2n+1) / n!
  mp sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= -x2 / n;
    const mp add = term / (2 * n + 1);
    sum += add;
    if (abs(add) < mp("1e-45") * abs(sum)) break;
  }
  return static_cast<double>(2 * sum / sqrt(mp_pi()));
}

/// erfi(x) = 2/sqrt(pi) sum x^(2n+1) / (n! (2n+1)), all terms positive.
inline double erfi_series(double xd) {
  const mp x = xd;
  const mp x2 = x * x;
  mp term = x;
  mp sum = x;
  for (int n = 1; n < 2000; ++n) {
    term *= x2 / n;
    const mp add = term / (2 * n + 1);
    sum += add;
    if (abs(add) < mp("1e-45") * abs(sum)) break;
  }
  return static_cast<double>(2 * sum / sqrt(mp_pi()));
}

/// K(k) = pi / (2 AGM(1, sqrt(1 - k^2))), iterated to a fixed point.
inline double ellip_k_agm(double kd) {
  const mp k = kd;
  mp a = 1;
  mp b = sqrt(1 - k * k);
  for (int i = 0; i < 100 && abs(a - b) > mp("1e-48"); ++i) {
    const mp an = (a + b) / 2;
    b = sqrt(a * b);
    a = an;
  }
  return static_cast<double>(mp_pi() / (2 * a));
}

struct Triple {
  double sn, cn, dn;
};

/// sn, cn, dn by RK4 on sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn from
/// (0, 1, 1), in long double.
inline Triple jacobi_ode(double u, double kd, int steps = 20000) {
  using ld = long double;
  const ld k2 = static_cast<ld>(kd) * kd;
  ld s = 0, c = 1, d = 1;
  const ld h = static_cast<ld>(u) / steps;
  auto rhs = [k2](ld s_, ld c_, ld d_, ld& ds, ld& dc, ld& dd) {
    ds = c_ * d_;
    dc = -s_ * d_;
    dd = -k2 * s_ * c_;
  };
  for (int i = 0; i < steps; ++i) {
    ld a1, b1, c1, a2, b2, c2, a3, b3, c3, a4, b4, c4;
    rhs(s, c, d, a1, b1, c1);
    rhs(s + h / 2 * a1, c + h / 2 * b1, d + h / 2 * c1, a2, b2, c2);
    rhs(s + h / 2 * a2, c + h / 2 * b2, d + h / 2 * c2, a3, b3, c3);
    rhs(s + h * a3, c + h * b3, d + h * c3, a4, b4, c4);
    s += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    c += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
    d += h / 6 * (c1 + 2 * c2 + 2 * c3 + c4);
  }
  return {static_cast<double>(s), static_cast<double>(c), static_cast<double>(d)};
}

/// |psi1| of the elliptic family evaluated straight from its definition,
/// rho A0 sd(A0 zeta, 1/sqrt2) / sqrt2, in 50-digit arithmetic.
inline double elliptic_psi1_direct(double xid, double chid, int n) {
  const mp xi = xid;
  const mp chi = chid;
  const mp k = 1 / sqrt(mp(2));
  mp a = 1;
  mp b = sqrt(1 - k * k);
  for (int i = 0; i < 100; ++i) {
    const mp an = (a + b) / 2;
    b = sqrt(a * b);
    a = an;
  }
  const mp kk = mp_pi() / (2 * a);
  const mp a0 = 2 * n * kk / sqrt(mp_pi());
  const mp zeta = sqrt(mp_pi()) / 2 * (1 + boost::math::erf(xi));
  const mp sn = boost::math::jacobi_sn(k, a0 * zeta);
  const mp dn = sqrt(1 - k * k * sn * sn);
  const mp rho = exp(xi * xi / 2) / sqrt(chi);
  return static_cast<double>(abs(rho * a0 * sn / dn / sqrt(mp(2))));
}

/// Free evolution of psi(x, 0) = exp(-x^2 / (2 s0)) under i psi_t = -psi_xx.
inline std::complex<double> free_gaussian(double x, double t, double s0) {
  const std::complex<double> s(s0, 2.0 * t);
  return std::sqrt(s0 / s) * std::exp(-x * x / (2.0 * s));
}

}  // namespace oracle
