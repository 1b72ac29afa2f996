#include "cnls/families.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cnls/errors.hpp"
#include "cnls/specfun.hpp"
#include "cnls/transform.hpp"

namespace cnls {
namespace {

const double kEllipticModulus = 1.0 / std::numbers::sqrt2;
const double kSqrtPi = std::sqrt(std::numbers::pi);

double sech(double z) {
  const double az = std::abs(z);
  // cosh overflows past ~710; sech is already below 1e-300 there.
  return az > 700.0 ? 0.0 : 1.0 / std::cosh(az);
}

// Signed rho * A0 sd(A0 zeta) / sqrt 2 for |xi| >= cutoff. With eps the
// distance of A0 zeta from the nearest end of (0, 2nK),
//   sd(A0 zeta) = +-sd(eps),  eps exp(xi^2/2) = A0 (sqrt(pi)/2) erfcx(|xi|) exp(-xi^2/2).
double signed_tail(double xi_value, double chi, double a0, int n) {
  const double axi = std::abs(xi_value);
  const double scaled = 0.5 * kSqrtPi * a0 * specfun::erfcx(axi);  // eps exp(xi^2)
  const double eps = scaled * std::exp(-axi * axi);
  double ratio = 1.0;  // sd(eps) / eps
  if (eps > 0.0) {
    const auto e = specfun::jacobi_elliptic(eps, kEllipticModulus);
    ratio = e.sn / (e.dn * eps);
  }
  // sn(2nK - eps) = (-1)^(n+1) sn(eps); dn has period 2K.
  const double sign = (xi_value > 0.0 && n % 2 == 0) ? -1.0 : 1.0;
  return sign * a0 / std::sqrt(2.0 * chi) * ratio * scaled * std::exp(-0.5 * axi * axi);
}

int mode_from_a0(double a0) {
  const double quarter = specfun::ellip_k(kEllipticModulus);
  const double n = std::round(a0 * kSqrtPi / (2.0 * quarter));
  if (n < 1.0 || std::abs(a0 - amplitude_a0(static_cast<int>(n))) > 1e-12 * a0) {
    throw ArgumentError("stable_tail_ex1: A0 is not 2nK(1/sqrt2)/sqrt(pi) for integer n >= 1");
  }
  return static_cast<int>(n);
}

// Per-(family, t) evaluator shared by field_at and assemble.
class FieldEvaluator {
 public:
  FieldEvaluator(const FamilySpec& family, double t, const ModulationTrace& trace)
      : family_(family), sample_(trace.at(t)), stretch_(stretch_for(family)) {
    if (family.kind == FamilyKind::elliptic_ex1) a0_ = amplitude_a0(family.n);
  }

  std::pair<Complex, Complex> operator()(double x) const {
    const double chi = sample_.chi;
    const double s = x / chi;
    const Complex phase = std::polar(1.0, eta(x, chi, sample_.dchi_dt, sample_.a));
    double r1 = 0.0;
    double r2 = 0.0;
    if (family_.kind == FamilyKind::elliptic_ex1 && std::abs(s) >= kTailCutoff) {
      r1 = signed_tail(s, chi, a0_, family_.n);
      r2 = r1 / std::numbers::sqrt2;
    } else {
      const double r = rho(stretch_, s, chi);
      const auto [a1, a2] = reduced_amplitudes(family_.kind, stretch_.zeta(s), a0_);
      r1 = r * a1;
      r2 = r * a2;
    }
    return {r1 * phase, r2 * phase};
  }

 private:
  const FamilySpec& family_;
  ChiSample sample_;
  StretchSpec stretch_;
  double a0_ = 0.0;
};

}  // namespace

double amplitude_a0(int n) {
  if (n < 1) throw ArgumentError("amplitude_a0: n must be >= 1");
  return 2.0 * n * specfun::ellip_k(kEllipticModulus) / kSqrtPi;
}

std::pair<double, double> reduced_amplitudes(FamilyKind kind, double zeta, double a0) {
  switch (kind) {
    case FamilyKind::elliptic_ex1: {
      const auto e = specfun::jacobi_elliptic(a0 * zeta, kEllipticModulus);
      const double sd = e.sn / e.dn;
      return {a0 * sd / std::numbers::sqrt2, 0.5 * a0 * sd};
    }
    case FamilyKind::sech_ex2: {
      const double s = sech(zeta);
      return {s, s / std::numbers::sqrt2};
    }
    case FamilyKind::darkbright_ex3:
      return {std::tanh(zeta) / std::numbers::sqrt2, sech(zeta)};
  }
  throw ArgumentError("reduced_amplitudes: unknown family");
}

double stable_tail_ex1(double xi_value, double chi, double a0) {
  if (!(std::abs(xi_value) >= kTailCutoff)) {
    throw RefusalError("stable_tail_ex1: |xi| = " + std::to_string(std::abs(xi_value)) +
                       " is below the cutoff; evaluate directly");
  }
  if (!(chi > 0.0)) throw DomainError("stable_tail_ex1: chi must be positive");
  return std::abs(signed_tail(xi_value, chi, a0, mode_from_a0(a0)));
}

ModulationTrace make_trace(const FamilySpec& family, double t_end, double dt) {
  family.validate();
  switch (family.kind) {
    case FamilyKind::elliptic_ex1:
    case FamilyKind::sech_ex2:
      if (family.drive.kind == DriveKind::constant) {
        return ModulationTrace::closed_form_f1(t_end, dt);
      }
      return ModulationTrace::from_mathieu(family.drive, t_end, dt);
    case FamilyKind::darkbright_ex3:
      return ModulationTrace::explicit_ex3(family.alpha, family.beta, t_end, dt);
  }
  throw ArgumentError("make_trace: unknown family");
}

std::pair<Complex, Complex> field_at(const FamilySpec& family, double x, double t,
                                     const ModulationTrace& trace) {
  family.validate();
  return FieldEvaluator(family, t, trace)(x);
}

FieldPair assemble(const FamilySpec& family, const SpatialGrid& grid, double t,
                   const ModulationTrace& trace) {
  family.validate();
  const FieldEvaluator eval(family, t, trace);
  FieldPair out(grid, t);
  const auto x = grid.x();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [p1, p2] = eval(x[i]);
    out.psi1[i] = p1;
    out.psi2[i] = p2;
  }
  return out;
}

double default_half_length(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::elliptic_ex1: return 32.0;
    case FamilyKind::sech_ex2: return 32.0;
    case FamilyKind::darkbright_ex3: return 15.0;
  }
  return 32.0;
}

}  // namespace cnls
