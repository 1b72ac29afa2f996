#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cnls/family_spec.hpp"
#include "cnls/grid.hpp"
#include "cnls/modulation.hpp"

namespace cnls {

/// The stretching function zeta = F(xi), xi = x / chi(t), given by its
/// derivative F' (which must stay positive) and a closed form for F.
struct StretchSpec {
  std::string name;
  std::function<double(double)> fprime;
  std::function<double(double)> zeta;
};

StretchSpec stretch_for(const FamilySpec& family);

double xi(double x, double chi);

/// rho = 1 / sqrt(chi F'(xi)).
double rho(const StretchSpec& spec, double xi, double chi);

/// g = G / (rho^6 chi^4). Overflows for exponentially large rho; the
/// equivalent G F'(xi)^3 / chi is g_map_direct.
double g_map(double G, const StretchSpec& spec, double xi, double chi);
double g_map_direct(double G, const StretchSpec& spec, double xi, double chi);

/// Closed-form potentials (v1, v2) of a family at (x, t).
std::pair<double, double> potential(const FamilySpec& family, double x, double t,
                                    const ModulationTrace& trace);

/// How the mu term of the exported potential is signed. `flipped` negates it,
/// which no longer matches the analytic fields; it exists to inspect the
/// alternative reading of the sech family's potential.
enum class MuSign { paper, flipped };

struct Coefficients {
  double v1;
  double v2;
  CouplingMatrix g;
};

struct CoefficientField {
  std::vector<double> v1, v2, g11, g12, g21, g22;
};

/// Anything that yields v1, v2 and g_jk at (x, t). The propagator and the
/// residual oracle consume coefficients through this interface.
class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;

  virtual Coefficients at(double x, double t) const = 0;
  virtual bool covers(double t) const = 0;
  /// True when the matching fields do not vanish as |x| -> infinity.
  virtual bool dark_background() const { return false; }

  /// Fill all six coefficient arrays on a grid at time t.
  void fill(const SpatialGrid& grid, double t, CoefficientField& out) const;
};

/// Coefficients independent of x and t.
class ConstantCoefficients final : public CoefficientSource {
 public:
  ConstantCoefficients(double v1, double v2, CouplingMatrix g) : c_{v1, v2, g} {}

  Coefficients at(double, double) const override { return c_; }
  bool covers(double) const override { return true; }

 private:
  Coefficients c_;
};

/// Evaluates v1, v2 and g_jk at arbitrary (x, t) for one family and one
/// width trace. Immutable; safe for concurrent reads.
class CoefficientSampler final : public CoefficientSource {
 public:
  CoefficientSampler(FamilySpec family, std::shared_ptr<const ModulationTrace> trace,
                     MuSign mu_sign = MuSign::paper);

  const FamilySpec& family() const noexcept { return family_; }
  const ModulationTrace& trace() const noexcept { return *trace_; }
  std::shared_ptr<const ModulationTrace> trace_ptr() const noexcept { return trace_; }
  const StretchSpec& stretch() const noexcept { return stretch_; }
  MuSign mu_sign() const noexcept { return mu_sign_; }

  Coefficients at(double x, double t) const override;
  bool covers(double t) const override { return trace_->covers(t); }
  bool dark_background() const override { return family_.has_dark_background(); }
  std::pair<double, double> potential(double x, double t) const;

 private:
  FamilySpec family_;
  std::shared_ptr<const ModulationTrace> trace_;
  StretchSpec stretch_;
  MuSign mu_sign_;
};

/// rho, eta and zeta of the similarity transform as functions of (x, t).
struct TransformFields {
  std::function<double(double, double)> rho;
  std::function<double(double, double)> eta;
  std::function<double(double, double)> zeta;
};

TransformFields transform_fields(const FamilySpec& family,
                                 std::shared_ptr<const ModulationTrace> trace);

struct LatticeSlice {
  double t;
  double x_min;
  double x_max;
};

/// Space-time lattice for the constraint verifier. Each slice is sampled at
/// `nx` points; derivatives use local 4th-order central stencils of spacing
/// hx (space) and ht (time) around every lattice point.
struct ConstraintLattice {
  std::vector<LatticeSlice> slices;
  std::size_t nx = 257;
  double hx = 1e-3;
  double ht = 1e-4;
};

inline constexpr std::size_t kMinLatticeX = 256;
inline constexpr std::size_t kMinLatticeT = 64;

/// Reference lattice: `n_times` slices spread over the trace, each spanning
/// |xi| <= xi_max for the family (4, 8 and 6 for the three kinds).
ConstraintLattice reference_lattice(const FamilySpec& family, const ModulationTrace& trace,
                                    std::size_t n_times = kMinLatticeT,
                                    std::size_t nx = 257);

/// Max-norm residuals of the three compatibility constraints. The continuity
/// and flux constraints are reported divided by rho^2, which keeps them
/// meaningful where rho is exponentially large:
///   continuity: rho_t/rho + eta_xx + 2 (rho_x/rho) eta_x
///   transport:  zeta_t + 2 eta_x zeta_x
///   flux:       zeta_xx + 2 (rho_x/rho) zeta_x
struct ConstraintReport {
  double continuity = 0.0;
  double transport = 0.0;
  double flux = 0.0;

  double worst() const noexcept;
};

/// Throws RefusalError when the lattice has fewer than 256 x points or 64
/// slices.
ConstraintReport verify_constraints(const TransformFields& fields,
                                    const ConstraintLattice& lattice);

/// Largest |closed-form potential - generic potential| over the lattice, per
/// component, where the generic potential is rho_xx/rho - eta_t - eta_x^2 -
/// mu zeta_x^2 built from finite differences of the transform fields.
std::pair<double, double> potential_cross_check(const CoefficientSampler& sampler,
                                                const ConstraintLattice& lattice);

}  // namespace cnls
