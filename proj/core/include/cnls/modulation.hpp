#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cnls {

enum class DriveKind { constant, quasiperiodic };

/// Trap-curvature drive f(t): 1 for `constant`, 1 + epsilon cos(omega0 t) for
/// `quasiperiodic`. The label follows the source convention even though a
/// single cosine is strictly periodic.
struct Drive {
  DriveKind kind = DriveKind::constant;
  double epsilon = 0.0;
  double omega0 = 1.0;

  double operator()(double t) const noexcept;
};

double drive_f(DriveKind kind, double epsilon, double omega0, double t);

/// One point of a pair of solutions of z'' + 4 f(t) z = 0.
struct MathieuState {
  double t = 0.0;
  double z1 = 0.0;
  double dz1_dt = 0.0;
  double z2 = 0.0;
  double dz2_dt = 0.0;
  double wronskian = 0.0;  // z1 z2' - z1' z2
};

/// Classical RK4 for z'' + 4 f(t) z = 0 with z1(0) = sqrt(2), z1'(0) = 0 and
/// z2(0) = 0, z2'(0) = 1. The step used is t_end / ceil(t_end / dt), so the
/// last state lands exactly on t_end.
std::vector<MathieuState> integrate_mathieu(const std::function<double(double)>& f,
                                            double t_end, double dt);

/// chi = sqrt(2 z1^2 + 2 z2^2 / W^2). Throws DegeneracyError when W == 0.
double chi_from_mathieu(const MathieuState& state);

/// chi, chi' and chi'' from an ODE state; chi'' uses z'' = -4 f z.
struct ChiDerivatives {
  double chi;
  double dchi_dt;
  double d2chi_dt2;
};
ChiDerivatives chi_derivatives_from_mathieu(const MathieuState& state, double f_at_t);

/// 1 + alpha sin t + beta sin(sqrt(2) t) and its first two derivatives.
/// Requires |alpha| + |beta| < 1 so that chi stays positive.
ChiDerivatives chi_explicit_ex3(double alpha, double beta, double t);

/// Closed-form width for f == 1: sqrt(1 + 15 cos^2 2t) / 2.
ChiDerivatives chi_closed_form_f1(double t);

enum class ChiSource { closed_form_f1, mathieu, explicit_ex3 };
std::string_view to_string(ChiSource source) noexcept;

/// How the phase offset a(t) in eta = chi'/(4 chi) x^2 + a is chosen.
///   inverse_chi_squared: a = int_0^t chi^-2 ds (removes h(t) for Examples 1-2)
///   zero:                a == 0 (Example 3, whose potential carries no -a' term)
enum class PhaseOffset { inverse_chi_squared, zero };

struct ChiSample {
  double chi;
  double dchi_dt;
  double d2chi_dt2;
  double a;
  double da_dt;
};

/// Uniformly sampled chi(t), chi'(t), chi''(t) and a(t) on [0, t_end].
/// Immutable after construction. Off-node queries interpolate chi, chi' and a
/// with cubic Hermite polynomials built from the stored derivatives; explicit
/// and closed-form sources are evaluated analytically instead.
class ModulationTrace {
 public:
  static ModulationTrace closed_form_f1(double t_end, double dt);
  static ModulationTrace from_mathieu(const Drive& drive, double t_end, double dt);
  static ModulationTrace explicit_ex3(double alpha, double beta, double t_end, double dt);

  ChiSource source() const noexcept { return source_; }
  PhaseOffset phase_offset() const noexcept { return phase_offset_; }
  /// Drive behind the width, when the source has one.
  const std::optional<Drive>& drive() const noexcept { return drive_; }

  double step() const noexcept { return step_; }
  double t_begin() const noexcept { return times_.front(); }
  double t_end() const noexcept { return times_.back(); }
  bool covers(double t) const noexcept;
  std::size_t size() const noexcept { return times_.size(); }

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> chi() const noexcept { return chi_; }
  std::span<const double> dchi_dt() const noexcept { return dchi_; }
  std::span<const double> d2chi_dt2() const noexcept { return d2chi_; }
  std::span<const double> a() const noexcept { return a_; }

  /// Throws RangeError outside [t_begin, t_end].
  ChiSample at(double t) const;

  /// Rebuild `a` as int_0^t chi^-2 ds by composite Simpson quadrature.
  friend ModulationTrace accumulate_a(const ModulationTrace& trace);

 private:
  ModulationTrace() = default;
  static ModulationTrace sampled(ChiSource source, double t_end, double dt,
                                 const std::function<ChiDerivatives(double)>& eval);

  ChiSource source_ = ChiSource::closed_form_f1;
  PhaseOffset phase_offset_ = PhaseOffset::zero;
  std::optional<Drive> drive_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double step_ = 0.0;
  std::vector<double> times_;
  std::vector<double> chi_;
  std::vector<double> dchi_;
  std::vector<double> d2chi_;
  std::vector<double> a_;
};

ModulationTrace accumulate_a(const ModulationTrace& trace);

/// Quadratic phase (chi'/(4 chi)) x^2 + a.
double eta(double x, double chi, double dchi_dt, double a);

}  // namespace cnls
