#pragma once

// Special functions used by the similarity-transform families: error
// functions (real and imaginary), the complete elliptic integral K(k) and the
// Jacobi elliptic functions sn, cn, dn. Everything here is pure.

namespace cnls::specfun {

struct EllipticTriple {
  double sn;
  double cn;
  double dn;
};

/// Error function. Maclaurin series for |x| <= 2, continued-fraction
/// complement above. Exactly odd.
double erf(double x);

/// Complementary error function, evaluated directly in the tail.
double erfc(double x);

/// Scaled complement exp(x^2) erfc(x); finite and smooth for large positive x.
double erfcx(double x);

/// Imaginary error function erfi(x) = -i erf(ix). Overflows to +-inf for |x| > ~26.6.
double erfi(double x);

/// Complete elliptic integral of the first kind, modulus convention
/// (K(k) = int_0^{pi/2} dθ / sqrt(1 - k^2 sin^2 θ)), via the AGM. 0 <= k < 1.
double ellip_k(double k);

/// sn, cn, dn for modulus 0 <= k <= 1. Descending Landen/AGM scheme with the
/// argument reduced modulo 4K.
EllipticTriple jacobi_elliptic(double u, double k);

}  // namespace cnls::specfun
