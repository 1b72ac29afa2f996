#include "cnls/modulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cnls/errors.hpp"

namespace cnls {

double Drive::operator()(double t) const noexcept {
  return kind == DriveKind::constant ? 1.0 : 1.0 + epsilon * std::cos(omega0 * t);
}

double drive_f(DriveKind kind, double epsilon, double omega0, double t) {
  return Drive{kind, epsilon, omega0}(t);
}

std::vector<MathieuState> integrate_mathieu(const std::function<double(double)>& f,
                                            double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end > 0.0)) {
    throw ArgumentError("integrate_mathieu: dt and t_end must be positive");
  }
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);

  // y = (z1, z1', z2, z2')
  using State = std::array<double, 4>;
  auto rhs = [&f](double t, const State& y) {
    const double w = 4.0 * f(t);
    return State{y[1], -w * y[0], y[3], -w * y[2]};
  };
  auto record = [](double t, const State& y) {
    return MathieuState{t, y[0], y[1], y[2], y[3], y[0] * y[3] - y[1] * y[2]};
  };

  std::vector<MathieuState> out;
  out.reserve(steps + 1);
  State y{std::numbers::sqrt2, 0.0, 0.0, 1.0};
  out.push_back(record(0.0, y));
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * h;
    const State k1 = rhs(t, y);
    State tmp;
    for (int c = 0; c < 4; ++c) tmp[c] = y[c] + 0.5 * h * k1[c];
    const State k2 = rhs(t + 0.5 * h, tmp);
    for (int c = 0; c < 4; ++c) tmp[c] = y[c] + 0.5 * h * k2[c];
    const State k3 = rhs(t + 0.5 * h, tmp);
    for (int c = 0; c < 4; ++c) tmp[c] = y[c] + h * k3[c];
    const State k4 = rhs(t + h, tmp);
    for (int c = 0; c < 4; ++c) {
      y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    out.push_back(record(static_cast<double>(i + 1) * h, y));
  }
  return out;
}

double chi_from_mathieu(const MathieuState& s) {
  if (s.wronskian == 0.0) {
    throw DegeneracyError("chi_from_mathieu: zero Wronskian, solutions are dependent");
  }
  const double r = s.z2 / s.wronskian;
  return std::sqrt(2.0 * s.z1 * s.z1 + 2.0 * r * r);
}

ChiDerivatives chi_derivatives_from_mathieu(const MathieuState& s, double f_at_t) {
  const double chi = chi_from_mathieu(s);
  const double inv_w2 = 1.0 / (s.wronskian * s.wronskian);
  const double dchi = 2.0 * (s.z1 * s.dz1_dt + s.z2 * s.dz2_dt * inv_w2) / chi;
  // d^2/dt^2 (chi^2) = 2 chi chi'' + 2 chi'^2, with z'' = -4 f z.
  const double zz = s.z1 * s.z1 + s.z2 * s.z2 * inv_w2;
  const double dd = s.dz1_dt * s.dz1_dt + s.dz2_dt * s.dz2_dt * inv_w2;
  const double second_of_square = 4.0 * dd - 16.0 * f_at_t * zz;
  const double d2chi = (0.5 * second_of_square - dchi * dchi) / chi;
  return {chi, dchi, d2chi};
}

ChiDerivatives chi_explicit_ex3(double alpha, double beta, double t) {
  if (!(std::abs(alpha) + std::abs(beta) < 1.0)) {
    throw ArgumentError("chi_explicit_ex3: |alpha| + |beta| must be < 1 to keep chi > 0");
  }
  constexpr double w = std::numbers::sqrt2;
  return {1.0 + alpha * std::sin(t) + beta * std::sin(w * t),
          alpha * std::cos(t) + beta * w * std::cos(w * t),
          -alpha * std::sin(t) - 2.0 * beta * std::sin(w * t)};
}

ChiDerivatives chi_closed_form_f1(double t) {
  const double c = std::cos(2.0 * t);
  const double chi = 0.5 * std::sqrt(1.0 + 15.0 * c * c);
  // (chi^2)' = -15 sin(4t) / 2,  (chi^2)'' = -30 cos(4t)
  const double dchi = -15.0 * std::sin(4.0 * t) / (4.0 * chi);
  const double d2chi = (-15.0 * std::cos(4.0 * t) - dchi * dchi) / chi;
  return {chi, dchi, d2chi};
}

std::string_view to_string(ChiSource source) noexcept {
  switch (source) {
    case ChiSource::closed_form_f1: return "closed_form_f1";
    case ChiSource::mathieu: return "mathieu";
    case ChiSource::explicit_ex3: return "explicit_ex3";
  }
  return "unknown";
}

ModulationTrace ModulationTrace::sampled(ChiSource source, double t_end, double dt,
                                         const std::function<ChiDerivatives(double)>& eval) {
  if (!(dt > 0.0) || !(t_end > 0.0)) {
    throw ArgumentError("ModulationTrace: dt and t_end must be positive");
  }
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  if (steps < 2) throw ArgumentError("ModulationTrace: need at least three samples");
  ModulationTrace tr;
  tr.source_ = source;
  tr.step_ = t_end / static_cast<double>(steps);
  tr.times_.resize(steps + 1);
  tr.chi_.resize(steps + 1);
  tr.dchi_.resize(steps + 1);
  tr.d2chi_.resize(steps + 1);
  tr.a_.assign(steps + 1, 0.0);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * tr.step_;
    const ChiDerivatives d = eval(t);
    tr.times_[i] = t;
    tr.chi_[i] = d.chi;
    tr.dchi_[i] = d.dchi_dt;
    tr.d2chi_[i] = d.d2chi_dt2;
  }
  return tr;
}

ModulationTrace ModulationTrace::closed_form_f1(double t_end, double dt) {
  ModulationTrace tr = sampled(ChiSource::closed_form_f1, t_end, dt, chi_closed_form_f1);
  tr.drive_ = Drive{};
  return accumulate_a(tr);
}

ModulationTrace ModulationTrace::from_mathieu(const Drive& drive, double t_end, double dt) {
  const auto states = integrate_mathieu(drive, t_end, dt);
  ModulationTrace tr;
  tr.source_ = ChiSource::mathieu;
  tr.drive_ = drive;
  tr.step_ = states[1].t - states[0].t;
  const std::size_t n = states.size();
  tr.times_.resize(n);
  tr.chi_.resize(n);
  tr.dchi_.resize(n);
  tr.d2chi_.resize(n);
  tr.a_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const ChiDerivatives d = chi_derivatives_from_mathieu(states[i], drive(states[i].t));
    tr.times_[i] = states[i].t;
    tr.chi_[i] = d.chi;
    tr.dchi_[i] = d.dchi_dt;
    tr.d2chi_[i] = d.d2chi_dt2;
  }
  return accumulate_a(tr);
}

ModulationTrace ModulationTrace::explicit_ex3(double alpha, double beta, double t_end,
                                              double dt) {
  auto eval = [alpha, beta](double t) { return chi_explicit_ex3(alpha, beta, t); };
  ModulationTrace tr = sampled(ChiSource::explicit_ex3, t_end, dt, eval);
  tr.alpha_ = alpha;
  tr.beta_ = beta;
  tr.phase_offset_ = PhaseOffset::zero;
  return tr;
}

bool ModulationTrace::covers(double t) const noexcept {
  const double slack = 1e-12 * (1.0 + std::abs(t));
  return t >= t_begin() - slack && t <= t_end() + slack;
}

namespace {

double hermite(double y0, double y1, double d0, double d1, double h, double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * h * d1;
}

}  // namespace

ChiSample ModulationTrace::at(double t) const {
  if (!covers(t)) {
    throw RangeError("ModulationTrace: t = " + std::to_string(t) + " outside [" +
                     std::to_string(t_begin()) + ", " + std::to_string(t_end()) + "]");
  }
  const double tc = std::clamp(t, t_begin(), t_end());

  if (source_ == ChiSource::explicit_ex3) {
    const ChiDerivatives d = chi_explicit_ex3(alpha_, beta_, tc);
    return {d.chi, d.dchi_dt, d.d2chi_dt2, 0.0, 0.0};
  }

  const auto last = static_cast<std::ptrdiff_t>(times_.size()) - 2;
  const auto i = std::clamp(static_cast<std::ptrdiff_t>(std::floor((tc - t_begin()) / step_)),
                            std::ptrdiff_t{0}, last);
  const double s = (tc - times_[i]) / step_;
  const double inv0 = 1.0 / (chi_[i] * chi_[i]);
  const double inv1 = 1.0 / (chi_[i + 1] * chi_[i + 1]);
  const bool accumulates = phase_offset_ == PhaseOffset::inverse_chi_squared;

  ChiDerivatives d{};
  if (source_ == ChiSource::closed_form_f1) {
    d = chi_closed_form_f1(tc);
  } else {
    d.chi = hermite(chi_[i], chi_[i + 1], dchi_[i], dchi_[i + 1], step_, s);
    d.dchi_dt = hermite(dchi_[i], dchi_[i + 1], d2chi_[i], d2chi_[i + 1], step_, s);
    // chi'' + 4 f chi = 4 / chi^3 holds for chi built from a Mathieu pair.
    d.d2chi_dt2 = 4.0 / (d.chi * d.chi * d.chi) - 4.0 * (*drive_)(tc) * d.chi;
  }
  double a = 0.0;
  double da = 0.0;
  if (accumulates) {
    const double da0 = inv0;
    const double da1 = inv1;
    a = hermite(a_[i], a_[i + 1], da0, da1, step_, s);
    da = 1.0 / (d.chi * d.chi);
  }
  return {d.chi, d.dchi_dt, d.d2chi_dt2, a, da};
}

ModulationTrace accumulate_a(const ModulationTrace& trace) {
  const std::size_t n = trace.chi_.size();
  if (n < 3) throw ArgumentError("accumulate_a: need at least three samples");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(trace.chi_[i] > 0.0)) {
      throw DomainError("accumulate_a: chi sample " + std::to_string(i) + " is not positive");
    }
    y[i] = 1.0 / (trace.chi_[i] * trace.chi_[i]);
  }
  const double h = trace.step_;
  ModulationTrace out = trace;
  out.phase_offset_ = PhaseOffset::inverse_chi_squared;
  auto& a = out.a_;
  a.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      a[i] = a[i - 2] + h / 3.0 * (y[i - 2] + 4.0 * y[i - 1] + y[i]);
    } else if (i + 1 < n) {
      a[i] = a[i - 1] + h / 12.0 * (5.0 * y[i - 1] + 8.0 * y[i] - y[i + 1]);
    } else {
      a[i] = a[i - 1] + h / 12.0 * (-y[i - 2] + 8.0 * y[i - 1] + 5.0 * y[i]);
    }
  }
  return out;
}

double eta(double x, double chi, double dchi_dt, double a) {
  if (!(chi > 0.0)) throw DomainError("eta: chi must be positive");
  return dchi_dt / (4.0 * chi) * x * x + a;
}

}  // namespace cnls
