#pragma once

#include <memory>
#include <utility>

#include "cnls/family_spec.hpp"
#include "cnls/grid.hpp"
#include "cnls/modulation.hpp"

namespace cnls {

/// A0 = 2 n K(1/sqrt 2) / sqrt(pi); the elliptic argument A0 zeta then runs
/// from 0 to 2nK across the whole line, so the field vanishes at both ends.
double amplitude_a0(int n);

/// Amplitudes (A1, A2) of the constant-coefficient system at zeta.
/// `a0` is only read for the elliptic family.
std::pair<double, double> reduced_amplitudes(FamilyKind kind, double zeta, double a0);

/// |psi1| of the elliptic family for |xi| >= kTailCutoff, written as a
/// product of well-scaled factors so the exp(xi^2/2) growth of rho never
/// multiplies a cancelled sn value.
inline constexpr double kTailCutoff = 4.0;
double stable_tail_ex1(double xi, double chi, double a0);

/// Width trace matching a family: the closed form for a constant drive, the
/// Mathieu construction for the cosine drive, the explicit chi for the
/// dark-bright family. Covers [0, t_end] with spacing dt.
ModulationTrace make_trace(const FamilySpec& family, double t_end, double dt = 1e-4);

/// psi_k = rho exp(i eta) A_k(zeta) at one point.
std::pair<Complex, Complex> field_at(const FamilySpec& family, double x, double t,
                                     const ModulationTrace& trace);

/// The analytic pair on a grid at time t.
FieldPair assemble(const FamilySpec& family, const SpatialGrid& grid, double t,
                   const ModulationTrace& trace);

/// Default half-length of the spatial window for a family.
double default_half_length(FamilyKind kind) noexcept;

}  // namespace cnls
