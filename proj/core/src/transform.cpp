#include "cnls/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cnls/errors.hpp"
#include "cnls/specfun.hpp"

namespace cnls {

StretchSpec stretch_for(const FamilySpec& family) {
  family.validate();
  switch (family.kind) {
    case FamilyKind::elliptic_ex1:
      return {"gaussian",
              [](double s) { return std::exp(-s * s); },
              [](double s) { return 0.5 * std::sqrt(std::numbers::pi) * specfun::erfc(-s); }};
    case FamilyKind::sech_ex2: {
      const double width = family.gamma * std::sqrt(3.0);
      const double scale = 0.5 * width * std::sqrt(std::numbers::pi);
      return {"inverse_gaussian",
              [width](double s) {
                const double r = s / width;
                return std::exp(r * r);
              },
              [width, scale](double s) { return scale * specfun::erfi(s / width); }};
    }
    case FamilyKind::darkbright_ex3: {
      const double lambda = family.lambda;
      return {"bump",
              [lambda](double s) { return 1.0 + lambda * std::exp(-s * s); },
              [lambda](double s) {
                return s + 0.5 * std::sqrt(std::numbers::pi) * lambda * specfun::erf(s);
              }};
    }
  }
  throw ArgumentError("stretch_for: unknown family");
}

double xi(double x, double chi) {
  if (!(chi > 0.0)) throw DomainError("xi: chi must be positive");
  return x / chi;
}

double rho(const StretchSpec& spec, double xi_value, double chi) {
  if (!(chi > 0.0)) throw DomainError("rho: chi must be positive");
  const double fp = spec.fprime(xi_value);
  if (!(fp > 0.0)) {
    throw InvariantError("rho: F'(xi) must be positive, got " + std::to_string(fp) +
                         " at xi = " + std::to_string(xi_value));
  }
  return 1.0 / std::sqrt(chi * fp);
}

double g_map(double G, const StretchSpec& spec, double xi_value, double chi) {
  const double r = rho(spec, xi_value, chi);
  const double r3 = r * r * r;
  const double c2 = chi * chi;
  return G / (r3 * r3 * c2 * c2);
}

double g_map_direct(double G, const StretchSpec& spec, double xi_value, double chi) {
  if (!(chi > 0.0)) throw DomainError("g_map: chi must be positive");
  const double fp = spec.fprime(xi_value);
  if (!(fp > 0.0)) throw InvariantError("g_map: F'(xi) must be positive");
  return G * fp * fp * fp / chi;
}

namespace {

// Closed-form potential with an explicit sign on the mu term.
std::pair<double, double> closed_potential(const FamilySpec& family, double x, double t,
                                           const ModulationTrace& trace, double mu_factor) {
  const ChiSample c = trace.at(t);
  const double chi = c.chi;
  const double chi2 = chi * chi;
  const double s = x / chi;
  const double x2 = x * x;
  switch (family.kind) {
    case FamilyKind::elliptic_ex1: {
      // v = f(t) x^2 + h(t), f = 1/chi^4 - chi''/(4 chi), h = 1/chi^2 - a'.
      const double f = trace.drive() ? (*trace.drive())(t)
                                     : 1.0 / (chi2 * chi2) - c.d2chi_dt2 / (4.0 * chi);
      const double h = 1.0 / chi2 - c.da_dt;
      return {f * x2 + h, f * x2 + h};
    }
    case FamilyKind::sech_ex2: {
      const double g2 = family.gamma * family.gamma;
      const double base = x2 / (9.0 * g2 * g2 * chi2 * chi2) - 1.0 / (3.0 * g2 * chi2) -
                          c.d2chi_dt2 / (4.0 * chi) * x2 - c.da_dt;
      // zeta_x^2 = F'(xi)^2 / chi^2
      const double zx2 = std::exp(2.0 * s * s / (3.0 * g2)) / chi2;
      return {base - mu_factor * family.mu[0] * zx2, base - mu_factor * family.mu[1] * zx2};
    }
    case FamilyKind::darkbright_ex3: {
      const double bump = family.lambda * std::exp(-s * s);
      const double s1 = -c.d2chi_dt2 / (4.0 * chi);
      const double s2 = bump / (chi2 * (1.0 + bump)) *
                        (1.0 + (bump - 2.0) * x2 / (chi2 * (1.0 + bump)));
      const double v = s1 * x2 + s2 - c.da_dt;
      return {v, v};
    }
  }
  throw ArgumentError("potential: unknown family");
}

}  // namespace

std::pair<double, double> potential(const FamilySpec& family, double x, double t,
                                    const ModulationTrace& trace) {
  return closed_potential(family, x, t, trace, 1.0);
}

CoefficientSampler::CoefficientSampler(FamilySpec family,
                                       std::shared_ptr<const ModulationTrace> trace,
                                       MuSign mu_sign)
    : family_(family), trace_(std::move(trace)), stretch_(stretch_for(family)), mu_sign_(mu_sign) {
  if (!trace_) throw ArgumentError("CoefficientSampler: null trace");
}

std::pair<double, double> CoefficientSampler::potential(double x, double t) const {
  return closed_potential(family_, x, t, *trace_, mu_sign_ == MuSign::paper ? 1.0 : -1.0);
}

Coefficients CoefficientSampler::at(double x, double t) const {
  const auto [v1, v2] = potential(x, t);
  const double chi = trace_->at(t).chi;
  const double s = x / chi;
  const double fp = stretch_.fprime(s);
  const double scale = fp * fp * fp / chi;
  Coefficients c{v1, v2, {}};
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) c.g[j][k] = family_.G[j][k] * scale;
  }
  return c;
}

void CoefficientSource::fill(const SpatialGrid& grid, double t, CoefficientField& out) const {
  const std::size_t n = grid.size();
  for (auto* v : {&out.v1, &out.v2, &out.g11, &out.g12, &out.g21, &out.g22}) v->resize(n);
  const auto x = grid.x();
  for (std::size_t i = 0; i < n; ++i) {
    const Coefficients c = at(x[i], t);
    out.v1[i] = c.v1;
    out.v2[i] = c.v2;
    out.g11[i] = c.g[0][0];
    out.g12[i] = c.g[0][1];
    out.g21[i] = c.g[1][0];
    out.g22[i] = c.g[1][1];
  }
}

TransformFields transform_fields(const FamilySpec& family,
                                 std::shared_ptr<const ModulationTrace> trace) {
  if (!trace) throw ArgumentError("transform_fields: null trace");
  auto stretch = std::make_shared<StretchSpec>(stretch_for(family));
  TransformFields f;
  f.rho = [stretch, trace](double x, double t) {
    const double chi = trace->at(t).chi;
    return rho(*stretch, x / chi, chi);
  };
  f.eta = [trace](double x, double t) {
    const ChiSample c = trace->at(t);
    return eta(x, c.chi, c.dchi_dt, c.a);
  };
  f.zeta = [stretch, trace](double x, double t) {
    return stretch->zeta(x / trace->at(t).chi);
  };
  return f;
}

ConstraintLattice reference_lattice(const FamilySpec& family, const ModulationTrace& trace,
                                    std::size_t n_times, std::size_t nx) {
  double xi_max = 4.0;
  switch (family.kind) {
    case FamilyKind::elliptic_ex1: xi_max = 4.0; break;
    case FamilyKind::sech_ex2: xi_max = 8.0; break;
    case FamilyKind::darkbright_ex3: xi_max = 6.0; break;
  }
  ConstraintLattice lattice;
  lattice.nx = nx;
  // Keep the time stencil inside the trace.
  const double margin = 4.0 * lattice.ht;
  const double t0 = trace.t_begin() + margin;
  const double t1 = trace.t_end() - margin;
  lattice.slices.reserve(n_times);
  for (std::size_t j = 0; j < n_times; ++j) {
    const double t = t0 + (t1 - t0) * (static_cast<double>(j) + 0.5) / static_cast<double>(n_times);
    const double half = xi_max * trace.at(t).chi;
    lattice.slices.push_back({t, -half, half});
  }
  return lattice;
}

double ConstraintReport::worst() const noexcept {
  return std::max({continuity, transport, flux});
}

namespace {

struct Stencil {
  double d1;  // first derivative
  double d2;  // second derivative
};

// 4th-order central differences from samples at offsets -2..2.
Stencil central(const std::array<double, 5>& f, double h) {
  return {(f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h),
          (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)};
}

template <typename F>
Stencil in_x(const F& fn, double x, double t, double h) {
  std::array<double, 5> s{};
  for (int m = -2; m <= 2; ++m) s[m + 2] = fn(x + m * h, t);
  return central(s, h);
}

template <typename F>
double dt_of(const F& fn, double x, double t, double h) {
  std::array<double, 5> s{};
  for (int m = -2; m <= 2; ++m) s[m + 2] = fn(x, t + m * h);
  return central(s, h).d1;
}

void check_lattice(const ConstraintLattice& lattice) {
  if (lattice.nx < kMinLatticeX || lattice.slices.size() < kMinLatticeT) {
    throw RefusalError("constraint lattice too coarse: need >= " + std::to_string(kMinLatticeX) +
                       " x points and >= " + std::to_string(kMinLatticeT) +
                       " time slices, got " + std::to_string(lattice.nx) + " x " +
                       std::to_string(lattice.slices.size()));
  }
  if (!(lattice.hx > 0.0) || !(lattice.ht > 0.0)) {
    throw ArgumentError("constraint lattice: stencil spacings must be positive");
  }
}

template <typename Visit>
void for_each_point(const ConstraintLattice& lattice, Visit&& visit) {
  for (const LatticeSlice& slice : lattice.slices) {
    const double dx = (slice.x_max - slice.x_min) / static_cast<double>(lattice.nx - 1);
    for (std::size_t i = 0; i < lattice.nx; ++i) {
      visit(slice.x_min + static_cast<double>(i) * dx, slice.t);
    }
  }
}

}  // namespace

ConstraintReport verify_constraints(const TransformFields& fields,
                                    const ConstraintLattice& lattice) {
  check_lattice(lattice);
  ConstraintReport report;
  for_each_point(lattice, [&](double x, double t) {
    const double r = fields.rho(x, t);
    const Stencil rx = in_x(fields.rho, x, t, lattice.hx);
    const Stencil ex = in_x(fields.eta, x, t, lattice.hx);
    const Stencil zx = in_x(fields.zeta, x, t, lattice.hx);
    const double rt = dt_of(fields.rho, x, t, lattice.ht);
    const double zt = dt_of(fields.zeta, x, t, lattice.ht);
    const double lr_x = rx.d1 / r;

    const double continuity = rt / r + ex.d2 + 2.0 * lr_x * ex.d1;
    const double transport = zt + 2.0 * ex.d1 * zx.d1;
    const double flux = zx.d2 + 2.0 * lr_x * zx.d1;
    report.continuity = std::max(report.continuity, std::abs(continuity));
    report.transport = std::max(report.transport, std::abs(transport));
    report.flux = std::max(report.flux, std::abs(flux));
  });
  return report;
}

std::pair<double, double> potential_cross_check(const CoefficientSampler& sampler,
                                                const ConstraintLattice& lattice) {
  check_lattice(lattice);
  const TransformFields fields = transform_fields(sampler.family(), sampler.trace_ptr());
  const auto& mu = sampler.family().mu;
  double worst1 = 0.0;
  double worst2 = 0.0;
  for_each_point(lattice, [&](double x, double t) {
    const Stencil rx = in_x(fields.rho, x, t, lattice.hx);
    const Stencil ex = in_x(fields.eta, x, t, lattice.hx);
    const Stencil zx = in_x(fields.zeta, x, t, lattice.hx);
    const double et = dt_of(fields.eta, x, t, lattice.ht);
    const double common = rx.d2 / fields.rho(x, t) - et - ex.d1 * ex.d1;
    const double zx2 = zx.d1 * zx.d1;
    const auto [v1, v2] = sampler.potential(x, t);
    worst1 = std::max(worst1, std::abs(v1 - (common - mu[0] * zx2)));
    worst2 = std::max(worst2, std::abs(v2 - (common - mu[1] * zx2)));
  });
  return {worst1, worst2};
}

}  // namespace cnls
