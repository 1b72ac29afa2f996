#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cnls/errors.hpp"
#include "cnls/modulation.hpp"

using namespace cnls;

namespace {

double chi_f1(double t) {
  const double c = std::cos(2 * t);
  return 0.5 * std::sqrt(1 + 15 * c * c);
}

// int_0^t 4 / (1 + 15 cos^2 2s) ds, with the arctan branch unwrapped.
double a_f1(double t) {
  const double branch = std::round(2 * t / std::numbers::pi);
  return 0.5 * (std::atan(std::tan(2 * t) / 4) + branch * std::numbers::pi);
}

}  // namespace

TEST_CASE("drive values") {
  CHECK(drive_f(DriveKind::constant, 0.5, 1.0, 3.7) == 1.0);
  CHECK(drive_f(DriveKind::quasiperiodic, 0.5, 1.0, 0.0) == 1.5);
  for (double t : {0.0, 1.0, 2.5}) CHECK(drive_f(DriveKind::quasiperiodic, 0.0, 1.0, t) == 1.0);
  const Drive d{DriveKind::quasiperiodic, 0.5, 2.0};
  CHECK(d(1.0) == doctest::Approx(1 + 0.5 * std::cos(2.0)));
}

TEST_CASE("Mathieu integration for f = 1 reproduces the harmonic solutions") {
  const auto states = integrate_mathieu([](double) { return 1.0; }, std::numbers::pi, 1e-4);
  const auto& s0 = states.front();
  CHECK(s0.z1 == doctest::Approx(std::numbers::sqrt2));
  CHECK(s0.z2 == 0.0);
  CHECK(s0.wronskian == doctest::Approx(std::numbers::sqrt2));
  const auto& end = states.back();
  CHECK(end.t == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(std::abs(end.z1 - std::numbers::sqrt2) <= 1e-8);
  CHECK(std::abs(end.z2 - std::sin(2 * end.t) / 2) <= 1e-8);
  for (const auto& s : states) REQUIRE(std::abs(s.wronskian - s0.wronskian) <= 1e-8);
}

TEST_CASE("Wronskian drift stays below 1e-8 for the cosine drive") {
  const Drive d{DriveKind::quasiperiodic, 0.5, 1.0};
  const auto states = integrate_mathieu(d, 20.0, 1e-4);
  const double w0 = states.front().wronskian;
  double worst = 0.0;
  for (const auto& s : states) worst = std::max(worst, std::abs(s.wronskian / w0 - 1));
  CHECK(worst <= 1e-8);
}

TEST_CASE("Mathieu integration rejects bad steps") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(integrate_mathieu(one, 1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(integrate_mathieu(one, -1.0, 1e-3), ArgumentError);
}

TEST_CASE("chi from a Mathieu state") {
  MathieuState s{0.0, std::numbers::sqrt2, 0.0, 0.0, 1.0, std::numbers::sqrt2};
  CHECK(chi_from_mathieu(s) == doctest::Approx(2.0));
  s.z1 = 0.0;
  s.z2 = 0.5;
  CHECK(chi_from_mathieu(s) == doctest::Approx(0.5));

  const auto states = integrate_mathieu(Drive{DriveKind::quasiperiodic, 0.5, 1.0}, 3.0, 1e-3);
  for (double c : {1e-3, 0.7, 42.0}) {
    for (std::size_t i = 0; i < states.size(); i += 97) {
      MathieuState r = states[i];
      r.z2 *= c;
      r.dz2_dt *= c;
      r.wronskian *= c;
      REQUIRE(chi_from_mathieu(r) == doctest::Approx(chi_from_mathieu(states[i])).epsilon(1e-12));
    }
  }
  MathieuState bad{0.0, 1.0, 0.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(chi_from_mathieu(bad), DegeneracyError);
}

TEST_CASE("Mathieu chi for f = 1 matches the closed form on [0, 10]") {
  const auto tr = ModulationTrace::from_mathieu(Drive{}, 10.0, 1e-4);
  CHECK(tr.source() == ChiSource::mathieu);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    worst = std::max(worst, std::abs(tr.chi()[i] - chi_f1(tr.times()[i])));
  }
  CHECK(worst <= 1e-6);
  CHECK(tr.at(std::numbers::pi / 4).chi == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("closed-form trace values and derivatives") {
  const auto tr = ModulationTrace::closed_form_f1(5.0, 1e-3);
  for (double t : {0.0, 0.4, 1.3, 2.77, 5.0}) {
    const auto c = tr.at(t);
    CHECK(std::abs(c.chi - chi_f1(t)) <= 1e-12);
    const double h = 1e-5;
    CHECK(c.dchi_dt == doctest::Approx((chi_f1(t + h) - chi_f1(t - h)) / (2 * h)).epsilon(1e-7));
    CHECK(c.da_dt == doctest::Approx(1 / (c.chi * c.chi)));
    CHECK(std::abs(c.a - a_f1(t)) <= 1e-9);
  }
  // Ermakov identity chi'' + 4 chi = 4 / chi^3 for f = 1.
  for (double t : {0.1, 0.9, 2.2}) {
    const auto c = tr.at(t);
    CHECK(c.d2chi_dt2 + 4 * c.chi == doctest::Approx(4 / std::pow(c.chi, 3)).epsilon(1e-12));
  }
}

TEST_CASE("phase offset a(t)") {
  const auto tr = ModulationTrace::from_mathieu(Drive{DriveKind::quasiperiodic, 0.5, 1.0}, 5.0, 1e-4);
  CHECK(tr.a()[0] == 0.0);
  for (std::size_t i = 1; i < tr.size(); ++i) REQUIRE(tr.a()[i] > tr.a()[i - 1]);

  const auto f1 = ModulationTrace::closed_form_f1(1.0, 1e-4);
  CHECK(f1.at(1e-3).a == doctest::Approx(1e-3 / 4).epsilon(1e-6));

  const auto fine = ModulationTrace::from_mathieu(Drive{DriveKind::quasiperiodic, 0.5, 1.0}, 5.0, 5e-5);
  for (double t : {0.5, 2.0, 5.0}) CHECK(std::abs(fine.at(t).a - tr.at(t).a) <= 1e-9);

  // int_0^{pi/2} 4 / (1 + 15 cos^2 2s) ds = pi / 2 over one period of chi.
  const auto period = ModulationTrace::from_mathieu(Drive{}, 4.0, 1e-4);
  CHECK(std::abs(period.at(std::numbers::pi / 2).a - std::numbers::pi / 2) <= 1e-9);
  CHECK(std::abs(period.at(std::numbers::pi).a - std::numbers::pi) <= 1e-9);
  CHECK(ModulationTrace::explicit_ex3(0.1, 0.0, 5.0, 1e-3).at(5.0).a == 0.0);
}

TEST_CASE("explicit dark-bright width") {
  CHECK(chi_explicit_ex3(0.1, 0.0, 0.0).chi == 1.0);
  for (double t = 0.0; t < 50.0; t += 0.37) {
    const double c = chi_explicit_ex3(0.1, 0.1, t).chi;
    REQUIRE(c >= 0.8);
    REQUIRE(c <= 1.2);
    REQUIRE(chi_explicit_ex3(0.0, 0.0, t).chi == 1.0);
  }
  const auto d = chi_explicit_ex3(0.1, 0.1, 0.7);
  CHECK(d.dchi_dt == doctest::Approx(0.1 * std::cos(0.7) + 0.1 * std::sqrt(2) * std::cos(std::sqrt(2) * 0.7)));
  CHECK(d.d2chi_dt2 == doctest::Approx(-0.1 * std::sin(0.7) - 0.2 * std::sin(std::sqrt(2) * 0.7)));
  CHECK_THROWS_AS(chi_explicit_ex3(0.6, 0.4, 0.0), ArgumentError);
  const auto tr = ModulationTrace::explicit_ex3(0.1, 0.0, 2.0, 1e-3);
  CHECK(tr.phase_offset() == PhaseOffset::zero);
  CHECK(tr.at(1.3).a == 0.0);
}

TEST_CASE("trace range and Hermite interpolation") {
  const auto tr = ModulationTrace::from_mathieu(Drive{DriveKind::quasiperiodic, 0.5, 1.0}, 2.0, 1e-3);
  CHECK(tr.covers(0.0));
  CHECK(tr.covers(2.0));
  CHECK_FALSE(tr.covers(2.1));
  CHECK_THROWS_AS(tr.at(-0.1), RangeError);
  CHECK_THROWS_AS(tr.at(2.5), RangeError);
  const auto fine = ModulationTrace::from_mathieu(Drive{DriveKind::quasiperiodic, 0.5, 1.0}, 2.0, 1e-4);
  for (double t : {0.00035, 0.7777, 1.23456}) {
    CHECK(std::abs(tr.at(t).chi - fine.at(t).chi) <= 1e-10);
  }
  CHECK_THROWS_AS(ModulationTrace::closed_form_f1(1.0, 0.0), ArgumentError);
}

TEST_CASE("quadratic phase") {
  for (double x : {-3.0, 0.0, 2.0}) CHECK(eta(x, 1.7, 0.0, 0.0) == 0.0);
  CHECK(eta(2.0, 2.0, 1.0, 0.0) == doctest::Approx(0.5));
  const auto c = ModulationTrace::closed_form_f1(1.0, 1e-3).at(0.0);
  CHECK(eta(4.2, c.chi, c.dchi_dt, c.a) == 0.0);
  CHECK_THROWS_AS(eta(1.0, 0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(eta(1.0, -1.0, 0.0, 0.0), DomainError);
}
