#include "cnls/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "cnls/errors.hpp"

namespace cnls::specfun {
namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;
constexpr double kSeriesCutoff = 2.0;

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be finite");
  }
}

// Maclaurin series, alternating; |x| <= 2 keeps the largest term below ~3.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;  // (-1)^n x^{2n+1} / n!
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    const double contrib = term / (2 * n + 1);
    sum += contrib;
    if (std::abs(contrib) < 1e-17 * std::abs(sum)) {
      break;
    }
  }
  return kTwoOverSqrtPi * sum;
}

// exp(x^2) erfc(x) for x > 0 from the continued fraction
//   sqrt(pi) exp(x^2) erfc(x) = 1 / (x + (1/2) / (x + 1 / (x + (3/2) / (x + ...))))
// evaluated with the modified Lentz algorithm.
double erfcx_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int j = 1; j < 20000; ++j) {
    const double a = 0.5 * j;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return std::numbers::inv_sqrtpi / f;
}

}  // namespace

double erf(double x) {
  require_finite(x, "erf");
  const double ax = std::abs(x);
  double value;
  if (ax <= kSeriesCutoff) {
    value = erf_series(ax);
  } else {
    value = 1.0 - std::exp(-ax * ax) * erfcx_continued_fraction(ax);
  }
  return std::copysign(value, x);
}

double erfc(double x) {
  require_finite(x, "erfc");
  if (x < 0.0) {
    return 2.0 - erfc(-x);
  }
  if (x <= kSeriesCutoff) {
    return 1.0 - erf_series(x);
  }
  return std::exp(-x * x) * erfcx_continued_fraction(x);
}

double erfcx(double x) {
  require_finite(x, "erfcx");
  if (x > kSeriesCutoff) {
    return erfcx_continued_fraction(x);
  }
  return std::exp(x * x) * erfc(x);
}

double erfi(double x) {
  require_finite(x, "erfi");
  const double ax = std::abs(x);
  // exp(x^2) overflows beyond sqrt(log(DBL_MAX)).
  if (ax > 26.6) {
    return std::copysign(std::numeric_limits<double>::infinity(), x);
  }
  // All terms positive: sum_n x^{2n+1} / (n! (2n+1)).
  const double x2 = ax * ax;
  double term = ax;
  double sum = ax;
  for (int n = 1; n < 5000; ++n) {
    term *= x2 / n;
    const double contrib = term / (2 * n + 1);
    sum += contrib;
    if (contrib < 1e-17 * sum && n > x2) {
      break;
    }
  }
  return std::copysign(kTwoOverSqrtPi * sum, x);
}

double ellip_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("ellip_k: modulus must satisfy 0 <= k < 1");
  }
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return std::numbers::pi / (2.0 * a);
}

EllipticTriple jacobi_elliptic(double u, double k) {
  require_finite(u, "jacobi_elliptic");
  if (!(k >= 0.0 && k <= 1.0)) {
    throw DomainError("jacobi_elliptic: modulus must satisfy 0 <= k <= 1");
  }
  if (k == 0.0) {
    return {std::sin(u), std::cos(u), 1.0};
  }
  if (k == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }

  const double kc2 = (1.0 - k) * (1.0 + k);
  const double quarter = ellip_k(k);
  const double period = 4.0 * quarter;
  const double r = u - period * std::nearbyint(u / period);

  constexpr int kMaxLevels = 16;
  std::array<double, kMaxLevels + 1> a{};
  std::array<double, kMaxLevels + 1> c{};
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt(kc2);
  int levels = 0;
  while (levels < kMaxLevels && std::abs(c[levels]) > 1e-16) {
    const double an = a[levels];
    a[levels + 1] = 0.5 * (an + b);
    c[levels + 1] = 0.5 * (an - b);
    b = std::sqrt(an * b);
    ++levels;
  }

  double phi = std::ldexp(a[levels] * r, levels);
  for (int n = levels; n > 0; --n) {
    phi = 0.5 * (phi + std::asin(c[n] * std::sin(phi) / a[n]));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn^2 = k'^2 + k^2 cn^2: both terms non-negative, no cancellation near u = K.
  const double dn = std::sqrt(kc2 + k * k * cn * cn);
  return {sn, cn, dn};
}

}  // namespace cnls::specfun
