#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cnls/fft.hpp"
#include "cnls/grid.hpp"
#include "cnls/transform.hpp"

namespace cnls {

enum class PerturbationModel {
  multiplicative,  // psi (1 + a u)
  additive,        // psi + a max|psi| u
};

struct PropagationConfig {
  double dt = 5e-4;
  double t_end = 5.0;
  SpatialGrid grid{32.0, 1024};
  double perturbation_amplitude = 0.0;
  std::uint64_t rng_seed = 42;
  PerturbationModel perturbation_model = PerturbationModel::multiplicative;
  std::shared_ptr<const CoefficientSource> coefficients;
  /// Diagnostics are recorded every `record_stride` steps and at t_end.
  std::size_t record_stride = 20;
  /// Dark-background sources cannot be represented on a periodic grid;
  /// propagate() refuses them unless this is set.
  bool allow_dark_background = false;

  /// Throws ArgumentError on a violated precondition.
  void validate() const;
};

/// Amplitude above which a perturbation no longer counts as small.
inline constexpr double kMaxPerturbation = 0.2;

struct DiagnosticsTrace {
  std::vector<double> times;
  std::vector<double> norm1;
  std::vector<double> norm2;
  std::vector<double> profile_error1;  // NaN when no reference was given
  std::vector<double> profile_error2;
  std::vector<double> peak_pos1;

  std::size_t size() const noexcept { return times.size(); }
};

/// Relative L2 distance between |psi|^2 and |ref|^2.
double profile_error(std::span<const Complex> psi, std::span<const Complex> ref);

/// Reference solution at time t on the propagation grid.
using ReferenceFn = std::function<FieldPair(double t)>;

/// Strang split-step integrator for
///   i psi_j,t = -psi_j,xx + v_j psi_j + sum_k g_jk |psi_k|^2 psi_j
/// on a periodic grid: half kinetic step exp(-i k^2 dt/2) in Fourier space,
/// full potential + nonlinear phase with coefficients frozen at t + dt/2, half
/// kinetic step. Every substep multiplies by a unit-modulus factor, so both
/// component norms are conserved to rounding.
class SplitStepPropagator {
 public:
  explicit SplitStepPropagator(PropagationConfig config);

  const PropagationConfig& config() const noexcept { return config_; }
  /// Step actually used: t_end divided into a whole number of steps no larger than dt.
  double effective_dt() const noexcept { return dt_; }
  std::size_t steps() const noexcept { return steps_; }

  /// One step from t to t + dt. Throws DivergenceError on non-finite output.
  FieldPair step(FieldPair fields, double t);

  /// Evolve from initial.t to initial.t + t_end. The configured perturbation is
  /// applied to the initial state first.
  DiagnosticsTrace propagate(FieldPair initial, const ReferenceFn& reference = {});

 private:
  void kinetic_half(std::vector<Complex>& psi);
  void record(const FieldPair& f, const ReferenceFn& reference, DiagnosticsTrace& out) const;

  PropagationConfig config_;
  double dt_;
  std::size_t steps_;
  Fft fft_;
  std::vector<Complex> half_kick_;
  CoefficientField coeff_;
};

/// psi_k -> psi_k (1 + amplitude u_k) with u_k iid uniform on [-1, 1).
/// The variates come from std::mt19937_64 seeded with `seed`, mapped as
/// u = 2 (r >> 11) 2^-53 - 1; first all of psi1, then all of psi2. Both the
/// generator and the mapping are fully specified, so results are identical
/// on every platform.
FieldPair perturb(FieldPair fields, double amplitude, std::uint64_t seed,
                  PerturbationModel model = PerturbationModel::multiplicative);

struct StabilityVerdict {
  bool stable = false;
  double max_error = 0.0;
  double time_of_max = 0.0;
  int component = 1;
  std::string summary;
};

inline constexpr double kDefaultStabilityThreshold = 0.1;

/// Stable iff max_t profile_error_k(t) <= threshold for both components.
StabilityVerdict stability_verdict(const DiagnosticsTrace& trace,
                                   double threshold = kDefaultStabilityThreshold);

enum class SpatialScheme {
  spectral,            // periodic FFT derivative; needs fields that vanish at the edges
  finite_difference,   // 8th-order central stencil, no periodicity assumed
};

struct PdeResidual {
  double eq1 = 0.0;
  double eq2 = 0.0;
};

/// Residual of the coupled equations for a space-time field. i psi_t comes
/// from a 4th-order central stencil (one-sided near the start of the trace)
/// of step `dt`; interior rows only (4 points trimmed at each edge).
PdeResidual pde_residual(const CoefficientSource& coefficients,
                         const std::function<FieldPair(double)>& fields_at,
                         const SpatialGrid& grid, double t,
                         SpatialScheme scheme = SpatialScheme::finite_difference,
                         double dt = 1e-4);

/// Residual of the family's analytic solution at time t.
PdeResidual pde_residual(const FamilySpec& family, const SpatialGrid& grid, double t,
                         const std::shared_ptr<const ModulationTrace>& trace,
                         SpatialScheme scheme = SpatialScheme::finite_difference,
                         double dt = 1e-4);

}  // namespace cnls
