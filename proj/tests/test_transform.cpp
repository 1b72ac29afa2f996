#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "cnls/errors.hpp"
#include "cnls/families.hpp"
#include "cnls/transform.hpp"

using namespace cnls;

namespace {

std::shared_ptr<const ModulationTrace> trace_of(const FamilySpec& f, double t_end = 5.0) {
  return std::make_shared<const ModulationTrace>(make_trace(f, t_end));
}

std::vector<FamilySpec> all_families() {
  return {FamilySpec::elliptic(1),
          FamilySpec::elliptic(2, Drive{DriveKind::quasiperiodic, 0.5, 1.0}),
          FamilySpec::sech(6.0),
          FamilySpec::sech(6.0, Drive{DriveKind::quasiperiodic, 0.5, 1.0}),
          FamilySpec::dark_bright(0.5, 0.1, 0.0),
          FamilySpec::dark_bright(-0.5, 0.1, 0.1)};
}

}  // namespace

TEST_CASE("stretched coordinate") {
  CHECK(xi(0.0, 3.0) == 0.0);
  CHECK(xi(3.0, 2.0) == 1.5);
  CHECK(xi(-4.2, 1.0) == -4.2);
  CHECK_THROWS_AS(xi(1.0, 0.0), DomainError);
}

TEST_CASE("rho values") {
  const auto ex1 = stretch_for(FamilySpec::elliptic(1));
  CHECK(rho(ex1, 0.0, 1.0) == 1.0);
  CHECK(rho(ex1, 1.0, 1.0) == doctest::Approx(std::exp(0.5)));
  CHECK(rho(ex1, 1.0, 4.0) == doctest::Approx(std::exp(0.5) / 2));
  const auto ex3 = stretch_for(FamilySpec::dark_bright(0.5, 0.1, 0.0));
  CHECK(rho(ex3, 0.0, 1.0) == doctest::Approx(1 / std::sqrt(1.5)));
  const auto ex2 = stretch_for(FamilySpec::sech(6.0));
  CHECK(rho(ex2, 6.0, 1.0) == doctest::Approx(std::exp(-1.0 / 6.0)));

  const StretchSpec broken{"broken", [](double) { return -0.5; }, [](double s) { return -0.5 * s; }};
  CHECK_THROWS_AS(rho(broken, 0.0, 1.0), InvariantError);
  CHECK_THROWS_AS(rho(ex1, 0.0, -1.0), DomainError);
}

TEST_CASE("nonlinearity map, both forms") {
  const auto ex1 = stretch_for(FamilySpec::elliptic(1));
  CHECK(g_map(-1.0, ex1, 1.0, 2.0) == doctest::Approx(-std::exp(-3.0) / 2).epsilon(1e-12));
  const auto ex3 = stretch_for(FamilySpec::dark_bright(0.5, 0.1, 0.0));
  CHECK(g_map(2.0, ex3, 0.0, 1.0) == doctest::Approx(6.75).epsilon(1e-12));
  const auto ex2 = stretch_for(FamilySpec::sech(6.0));
  CHECK(g_map(-2.0, ex2, 0.0, 1.6) == doctest::Approx(-2.0 / 1.6).epsilon(1e-12));
  CHECK(g_map_direct(-1.0, ex2, 6.0, 1.0) == doctest::Approx(-std::exp(1.0)).epsilon(1e-12));

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> us(-5.0, 5.0);
  std::uniform_real_distribution<double> uc(0.2, 3.0);
  for (const auto& fam : all_families()) {
    const auto st = stretch_for(fam);
    for (int i = 0; i < 10000; ++i) {
      const double s = us(gen);
      const double c = uc(gen);
      const double a = g_map(1.0, st, s, c);
      const double b = g_map_direct(1.0, st, s, c);
      REQUIRE(std::abs(a - b) <= 1e-12 * std::abs(b));
    }
  }
}

TEST_CASE("zeta closed forms integrate F' and increase monotonically") {
  for (const auto& fam : all_families()) {
    const auto st = stretch_for(fam);
    const double h = 1e-4;
    double prev = -std::numeric_limits<double>::infinity();
    for (double s = -6.0; s <= 6.0; s += 0.05) {
      const double fd = (st.zeta(s + h) - st.zeta(s - h)) / (2 * h);
      REQUIRE(std::abs(fd - st.fprime(s)) <= 1e-8 * std::max(1.0, st.fprime(s)));
      REQUIRE(st.zeta(s) >= prev);
      prev = st.zeta(s);
    }
  }
  const auto ex1 = stretch_for(FamilySpec::elliptic(1));
  CHECK(ex1.zeta(30.0) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(ex1.zeta(-30.0) == 0.0);
  CHECK(ex1.zeta(0.0) == doctest::Approx(std::sqrt(std::numbers::pi) / 2));
}

TEST_CASE("closed-form potentials at reference points") {
  const auto e1 = FamilySpec::elliptic(1);
  const auto t1 = trace_of(e1);
  for (double t : {0.0, 1.3, 4.9}) {
    CHECK(potential(e1, 2.0, t, *t1).first == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(potential(e1, -0.7, t, *t1).second == doctest::Approx(0.49).epsilon(1e-12));
  }

  const auto e2 = FamilySpec::sech(6.0);
  const auto t2 = trace_of(e2);
  for (double t : {0.0, 0.9}) {
    const double chi = t2->at(t).chi;
    CHECK(potential(e2, 0.0, t, *t2).first ==
          doctest::Approx(-1.0 / (3 * 36 * chi * chi)).epsilon(1e-10));
  }

  const auto e3 = FamilySpec::dark_bright(0.5, 0.1, 0.0);
  const auto t3 = trace_of(e3);
  const auto v = potential(e3, 0.0, 0.0, *t3);
  CHECK(v.first == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(v.second == v.first);
  CHECK_THROWS_AS(potential(e3, 0.0, 7.0, *t3), RangeError);
}

TEST_CASE("sampler couplings satisfy g rho^6 chi^4 = G") {
  for (const auto& fam : all_families()) {
    const auto tr = trace_of(fam);
    const CoefficientSampler s(fam, tr);
    const auto st = stretch_for(fam);
    for (double t : {0.0, 2.1, 4.4}) {
      const double chi = tr->at(t).chi;
      for (double x = -4.0; x <= 4.0; x += 0.5) {
        const Coefficients c = s.at(x, t);
        const double r = rho(st, x / chi, chi);
        for (int j = 0; j < 2; ++j) {
          for (int k = 0; k < 2; ++k) {
            const double back = c.g[j][k] * std::pow(r, 6) * std::pow(chi, 4);
            REQUIRE(std::abs(back - fam.G[j][k]) <= 1e-10 * std::max(1.0, std::abs(fam.G[j][k])));
          }
        }
      }
    }
  }
}

TEST_CASE("flipped mu sign changes only the mu term") {
  const auto fam = FamilySpec::sech(6.0);
  const auto tr = trace_of(fam);
  const CoefficientSampler standard(fam, tr);
  const CoefficientSampler flipped(fam, tr, MuSign::flipped);
  const double chi = tr->at(1.0).chi;
  const double zx2 = 1.0 / (chi * chi);  // zeta_x^2 at x = 0
  CHECK(standard.potential(0.0, 1.0).first - flipped.potential(0.0, 1.0).first ==
        doctest::Approx(-2 * fam.mu[0] * zx2));
}

TEST_CASE("constraint residuals on the reference lattice") {
  for (const auto& fam : all_families()) {
    const auto tr = trace_of(fam);
    const auto lattice = reference_lattice(fam, *tr);
    CHECK(lattice.slices.size() >= kMinLatticeT);
    CHECK(lattice.nx >= kMinLatticeX);
    const auto r = verify_constraints(transform_fields(fam, tr), lattice);
    CHECK(r.continuity <= 1e-5);
    CHECK(r.transport <= 1e-5);
    CHECK(r.flux <= 1e-5);
    CHECK(r.worst() == std::max({r.continuity, r.transport, r.flux}));
  }
}

TEST_CASE("generic potential agrees with each closed form") {
  for (const auto& fam : all_families()) {
    const auto tr = trace_of(fam);
    const CoefficientSampler s(fam, tr);
    const auto [d1, d2] = potential_cross_check(s, reference_lattice(fam, *tr));
    CHECK(d1 <= 1e-4);
    CHECK(d2 <= 1e-4);
  }
  const auto fam = FamilySpec::sech(6.0);
  const auto tr = trace_of(fam);
  const CoefficientSampler flipped(fam, tr, MuSign::flipped);
  CHECK(potential_cross_check(flipped, reference_lattice(fam, *tr)).first > 1e-2);
}

TEST_CASE("verifier detects a corrupted rho") {
  const auto fam = FamilySpec::elliptic(1);
  const auto tr = trace_of(fam);
  auto fields = transform_fields(fam, tr);
  fields.rho = [rho = fields.rho](double x, double t) { return rho(x, t) * (1.0 + 0.01 * x); };
  CHECK(verify_constraints(fields, reference_lattice(fam, *tr)).flux > 1e-3);
}

TEST_CASE("coarse lattices are refused") {
  const auto fam = FamilySpec::elliptic(1);
  const auto tr = trace_of(fam);
  const auto fields = transform_fields(fam, tr);
  CHECK_THROWS_AS(verify_constraints(fields, reference_lattice(fam, *tr, 63)), RefusalError);
  CHECK_THROWS_AS(verify_constraints(fields, reference_lattice(fam, *tr, 64, 255)), RefusalError);
  CHECK_NOTHROW(verify_constraints(fields, reference_lattice(fam, *tr, 64, 256)));
}
