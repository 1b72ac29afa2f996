#include "cnls/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "cnls/errors.hpp"
#include "cnls/families.hpp"

namespace cnls {

void PropagationConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("propagation: dt must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ArgumentError("propagation: t_end must be > 0");
  }
  if (!(perturbation_amplitude >= 0.0) || !(perturbation_amplitude < kMaxPerturbation)) {
    throw ArgumentError("propagation: perturbation amplitude must be in [0, 0.2)");
  }
  if (!coefficients) throw ArgumentError("propagation: no coefficient source");
  if (record_stride == 0) throw ArgumentError("propagation: record stride must be >= 1");
  const double kmax = grid.max_wavenumber();
  if (dt * kmax * kmax > std::numbers::pi) {
    std::ostringstream msg;
    msg << "propagation: dt * max|k|^2 = " << dt * kmax * kmax
        << " exceeds pi; reduce dt below " << std::numbers::pi / (kmax * kmax)
        << " or coarsen the grid";
    throw ArgumentError(msg.str());
  }
}

double profile_error(std::span<const Complex> psi, std::span<const Complex> ref) {
  if (psi.size() != ref.size()) throw ArgumentError("profile_error: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double r = std::norm(ref[i]);
    const double d = std::norm(psi[i]) - r;
    num += d * d;
    den += r * r;
  }
  if (den == 0.0) throw ArgumentError("profile_error: reference profile is identically zero");
  return std::sqrt(num / den);
}

SplitStepPropagator::SplitStepPropagator(PropagationConfig config)
    : config_(std::move(config)), dt_(0.0), steps_(0), fft_(config_.grid.size()) {
  config_.validate();
  steps_ = static_cast<std::size_t>(std::ceil(config_.t_end / config_.dt - 1e-9));
  dt_ = config_.t_end / static_cast<double>(steps_);
  const auto k = config_.grid.k();
  const double inv_n = 1.0 / static_cast<double>(config_.grid.size());
  half_kick_.resize(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    half_kick_[j] = std::polar(inv_n, -0.5 * k[j] * k[j] * dt_);
  }
}

void SplitStepPropagator::kinetic_half(std::vector<Complex>& psi) {
  fft_.forward(psi);
  for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= half_kick_[j];
  fft_.backward(psi);
}

FieldPair SplitStepPropagator::step(FieldPair f, double t) {
  if (!(f.grid == config_.grid)) throw ArgumentError("step: fields are not on the configured grid");
  f.check_shape();
  kinetic_half(f.psi1);
  kinetic_half(f.psi2);

  config_.coefficients->fill(config_.grid, t + 0.5 * dt_, coeff_);
  // |psi_k| is unchanged by this substep, so the phase is exact for frozen coefficients.
  for (std::size_t i = 0; i < f.psi1.size(); ++i) {
    const double n1 = std::norm(f.psi1[i]);
    const double n2 = std::norm(f.psi2[i]);
    const double w1 = coeff_.v1[i] + coeff_.g11[i] * n1 + coeff_.g12[i] * n2;
    const double w2 = coeff_.v2[i] + coeff_.g21[i] * n1 + coeff_.g22[i] * n2;
    f.psi1[i] *= std::polar(1.0, -w1 * dt_);
    f.psi2[i] *= std::polar(1.0, -w2 * dt_);
  }

  kinetic_half(f.psi1);
  kinetic_half(f.psi2);
  f.t = t + dt_;

  auto finite = [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  if (!std::all_of(f.psi1.begin(), f.psi1.end(), finite) ||
      !std::all_of(f.psi2.begin(), f.psi2.end(), finite)) {
    throw DivergenceError(f.t, "split-step diverged (non-finite field) at t = " + std::to_string(f.t));
  }
  return f;
}

void SplitStepPropagator::record(const FieldPair& f, const ReferenceFn& reference,
                                 DiagnosticsTrace& out) const {
  const double dx = config_.grid.dx();
  out.times.push_back(f.t);
  out.norm1.push_back(norm_squared(f.psi1, dx));
  out.norm2.push_back(norm_squared(f.psi2, dx));
  if (reference) {
    const FieldPair ref = reference(f.t);
    out.profile_error1.push_back(profile_error(f.psi1, ref.psi1));
    out.profile_error2.push_back(profile_error(f.psi2, ref.psi2));
  } else {
    out.profile_error1.push_back(std::numeric_limits<double>::quiet_NaN());
    out.profile_error2.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  const auto peak = std::max_element(f.psi1.begin(), f.psi1.end(), [](const Complex& a, const Complex& b) {
    return std::norm(a) < std::norm(b);
  });
  out.peak_pos1.push_back(config_.grid.x()[static_cast<std::size_t>(peak - f.psi1.begin())]);
}

DiagnosticsTrace SplitStepPropagator::propagate(FieldPair initial, const ReferenceFn& reference) {
  if (config_.coefficients->dark_background() && !config_.allow_dark_background) {
    throw RefusalError(
        "propagate: the dark-background family does not vanish at the edges and cannot be "
        "propagated on a periodic split-step grid (the known failure of this method for dark "
        "components); pass the explicit override to run it anyway");
  }
  const double t0 = initial.t;
  if (!config_.coefficients->covers(t0) || !config_.coefficients->covers(t0 + config_.t_end)) {
    throw RangeError("propagate: coefficients do not cover the propagation interval");
  }

  FieldPair f = config_.perturbation_amplitude > 0.0
                    ? perturb(std::move(initial), config_.perturbation_amplitude,
                              config_.rng_seed, config_.perturbation_model)
                    : std::move(initial);
  DiagnosticsTrace out;
  record(f, reference, out);
  for (std::size_t s = 0; s < steps_; ++s) {
    const double t = t0 + static_cast<double>(s) * dt_;
    f = step(std::move(f), t);
    if ((s + 1) % config_.record_stride == 0 || s + 1 == steps_) record(f, reference, out);
  }
  return out;
}

FieldPair perturb(FieldPair fields, double amplitude, std::uint64_t seed,
                  PerturbationModel model) {
  if (!(amplitude >= 0.0)) throw ArgumentError("perturb: amplitude must be >= 0");
  if (amplitude == 0.0) return fields;
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] {
    return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
  };
  auto apply = [&](std::vector<Complex>& psi) {
    double peak = 0.0;
    if (model == PerturbationModel::additive) {
      for (const Complex& z : psi) peak = std::max(peak, std::abs(z));
    }
    for (Complex& z : psi) {
      const double u = uniform();
      if (model == PerturbationModel::multiplicative) {
        z *= 1.0 + amplitude * u;
      } else {
        z += amplitude * peak * u;
      }
    }
  };
  apply(fields.psi1);
  apply(fields.psi2);
  return fields;
}

StabilityVerdict stability_verdict(const DiagnosticsTrace& trace, double threshold) {
  if (trace.size() == 0) throw ArgumentError("stability_verdict: empty trace");
  StabilityVerdict v;
  v.max_error = -1.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (int c = 1; c <= 2; ++c) {
      const double e = c == 1 ? trace.profile_error1[i] : trace.profile_error2[i];
      if (std::isnan(e)) {
        throw ArgumentError("stability_verdict: trace has no reference profile errors");
      }
      if (e > v.max_error) {
        v.max_error = e;
        v.time_of_max = trace.times[i];
        v.component = c;
      }
    }
  }
  v.stable = v.max_error <= threshold;
  std::ostringstream s;
  s << (v.stable ? "stable" : "unstable") << ": max profile error " << v.max_error
    << " (component " << v.component << ", t = " << v.time_of_max << ") vs threshold "
    << threshold;
  v.summary = s.str();
  return v;
}

namespace {

constexpr std::array<double, 9> kFd8 = {-1.0 / 560, 8.0 / 315, -1.0 / 5,   8.0 / 5, -205.0 / 72,
                                        8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};
constexpr std::size_t kTrim = 4;

std::vector<Complex> second_derivative_fd(std::span<const Complex> f, double h) {
  std::vector<Complex> out(f.size(), Complex{});
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t i = kTrim; i + kTrim < f.size(); ++i) {
    Complex acc{};
    for (std::size_t m = 0; m < kFd8.size(); ++m) acc += kFd8[m] * f[i + m - kTrim];
    out[i] = acc * inv_h2;
  }
  return out;
}

}  // namespace

PdeResidual pde_residual(const CoefficientSource& coefficients,
                         const std::function<FieldPair(double)>& fields_at,
                         const SpatialGrid& grid, double t, SpatialScheme scheme, double dt) {
  if (!(dt > 0.0)) throw ArgumentError("pde_residual: dt must be positive");

  // 4th-order first-derivative stencil: central if it fits, one-sided otherwise.
  std::array<double, 5> offsets{};
  std::array<double, 5> weights{};
  if (coefficients.covers(t - 2 * dt) && coefficients.covers(t + 2 * dt)) {
    offsets = {-2, -1, 0, 1, 2};
    weights = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  } else if (coefficients.covers(t + 4 * dt) && coefficients.covers(t)) {
    offsets = {0, 1, 2, 3, 4};
    weights = {-25.0 / 12, 48.0 / 12, -36.0 / 12, 16.0 / 12, -3.0 / 12};
  } else if (coefficients.covers(t - 4 * dt) && coefficients.covers(t)) {
    offsets = {0, -1, -2, -3, -4};
    weights = {25.0 / 12, -48.0 / 12, 36.0 / 12, -16.0 / 12, 3.0 / 12};
  } else {
    throw RangeError("pde_residual: coefficients do not cover the time stencil");
  }

  const std::size_t n = grid.size();
  std::vector<Complex> dt1(n, Complex{});
  std::vector<Complex> dt2(n, Complex{});
  FieldPair now(grid, t);
  for (std::size_t m = 0; m < offsets.size(); ++m) {
    FieldPair f = fields_at(t + offsets[m] * dt);
    f.check_shape();
    if (offsets[m] == 0) now = f;
    if (weights[m] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      dt1[i] += weights[m] * f.psi1[i];
      dt2[i] += weights[m] * f.psi2[i];
    }
  }
  std::vector<Complex> xx1;
  std::vector<Complex> xx2;
  if (scheme == SpatialScheme::spectral) {
    Fft fft(n);
    xx1 = spectral_second_derivative(grid, now.psi1, fft);
    xx2 = spectral_second_derivative(grid, now.psi2, fft);
  } else {
    xx1 = second_derivative_fd(now.psi1, grid.dx());
    xx2 = second_derivative_fd(now.psi2, grid.dx());
  }

  const Complex I{0.0, 1.0};
  const auto x = grid.x();
  PdeResidual r;
  for (std::size_t i = kTrim; i + kTrim < n; ++i) {
    const Coefficients c = coefficients.at(x[i], t);
    const Complex p1 = now.psi1[i];
    const Complex p2 = now.psi2[i];
    const double n1 = std::norm(p1);
    const double n2 = std::norm(p2);
    const Complex lhs1 = I * dt1[i] / dt;
    const Complex lhs2 = I * dt2[i] / dt;
    const Complex rhs1 = -xx1[i] + (c.v1 + c.g[0][0] * n1 + c.g[0][1] * n2) * p1;
    const Complex rhs2 = -xx2[i] + (c.v2 + c.g[1][0] * n1 + c.g[1][1] * n2) * p2;
    r.eq1 = std::max(r.eq1, std::abs(lhs1 - rhs1));
    r.eq2 = std::max(r.eq2, std::abs(lhs2 - rhs2));
  }
  return r;
}

PdeResidual pde_residual(const FamilySpec& family, const SpatialGrid& grid, double t,
                         const std::shared_ptr<const ModulationTrace>& trace,
                         SpatialScheme scheme, double dt) {
  const CoefficientSampler sampler(family, trace);
  auto fields_at = [&](double time) { return assemble(family, grid, time, *trace); };
  return pde_residual(sampler, fields_at, grid, t, scheme, dt);
}

}  // namespace cnls
