#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include "oracles.hpp"
#include "vortexflow/errors.hpp"
#include "vortexflow/integrator.hpp"

using namespace vortexflow;
using boost::math::cyl_bessel_j;

TEST_CASE("linear model reproduces Bessel J0") {
  const auto m = oracle::linear_model();
  IntegrationConfig cfg;
  cfg.r_max = 40.0;
  for (double a : {1.0, -3.0, 25.0}) {
    const auto t = integrate(m, a, cfg);
    REQUIRE(t.termination == Termination::ReachedRMax);
    double err = 0;
    for (const auto& p : t.points) {
      err = std::max(err, std::abs(p.psi - a * cyl_bessel_j(0, p.r)) +
                              std::abs(p.beta + a * cyl_bessel_j(1, p.r)));
    }
    CHECK(err < 1e-9 * std::abs(a));
    // dense output between samples
    const double r = 17.123456;
    const auto s = t.state_at(r);
    CHECK(s.psi == doctest::Approx(a * cyl_bessel_j(0, r)).epsilon(1e-8));
  }
}

TEST_CASE("series start on the linear model") {
  const auto s = series_start(oracle::linear_model(), 2.0, 1.0 / 16.0);
  CHECK(s.at_handoff.psi == doctest::Approx(2.0 * cyl_bessel_j(0, 1.0 / 16.0)).epsilon(1e-13));
  CHECK(s.at_handoff.beta == doctest::Approx(-2.0 * cyl_bessel_j(1, 1.0 / 16.0)).epsilon(1e-11));
}

TEST_CASE("energy never increases and drops by the dissipation integral") {
  const auto m = constantin_model();
  for (double a : {2.0, 10.0, 50.0}) {
    const auto t = integrate(m, a);
    double worst_rise = 0, worst_cell = 0;
    for (std::size_t i = 0; i + 1 < t.points.size(); ++i) {
      const double drop = t.points[i].E - t.points[i + 1].E;
      worst_rise = std::max(worst_rise, -drop);
      // relative 1e-6, with a floor at the state tolerance for very short steps
      const double d = dissipation_over_cell(t, i);
      const double allowed = 1e-6 * d + 10 * 1e-10 * std::max(1.0, std::abs(t.points[i].E));
      worst_cell = std::max(worst_cell, std::abs(drop - d) / allowed);
    }
    CHECK(worst_rise <= 1e-7);
    double total = 0;
    for (std::size_t i = 0; i + 1 < t.points.size(); ++i) total += dissipation_over_cell(t, i);
    const double drop = t.points.front().E - t.points.back().E;
    CHECK(drop == doctest::Approx(total).epsilon(1e-6));
    CHECK(worst_cell <= 1.0);
  }
}

TEST_CASE("equilibria are preserved") {
  for (const auto& m : {constantin_model(), example_model(0.02), power_law_model(0.3)}) {
    const double u0 = find_positive_zero(m);
    for (double a : {u0, -u0}) {
      const auto t = integrate(m, a);
      double dev = 0;
      for (const auto& p : t.points) dev = std::max(dev, std::abs(p.psi - a) + std::abs(p.beta));
      CHECK(dev <= 1e-10);
    }
  }
}

TEST_CASE("halving the tolerances moves the endpoint by less than ten coarse tolerances") {
  for (const auto& m : {constantin_model(), power_law_model(0.5)}) {
    IntegrationConfig coarse;
    coarse.rel_tol = 1e-8;
    coarse.abs_tol = 1e-10;
    IntegrationConfig fine = coarse;
    fine.rel_tol *= 0.5;
    fine.abs_tol *= 0.5;
    for (double a : {3.0, 20.0}) {
      const double pc = integrate(m, a, coarse).points.back().psi;
      const double pf = integrate(m, a, fine).points.back().psi;
      CHECK(std::abs(pc - pf) < 10 * (coarse.abs_tol + coarse.rel_tol * std::abs(pc)));
    }
  }
}

TEST_CASE("finite-difference theta rate stays in its envelope") {
  for (const auto& m : {constantin_model(), power_law_model(0.5)}) {
    const auto t = integrate(m, 10.0);
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < t.points.size(); ++i) {
      const auto& p = t.points[i];
      const auto& q = t.points[i + 1];
      if (p.r < 1 || p.E <= 0 || q.E <= 0) continue;
      // both bounds are widest at the left end of the cell
      const auto [lo, hi] = theta_envelope(m.ledger().lambda_g, p.r);
      const double slope = (q.theta - p.theta) / (q.r - p.r);
      REQUIRE(slope >= lo - 1e-6);
      REQUIRE(slope <= hi + 1e-6);
      ++n;
    }
    CHECK(n > 100);
  }
}

TEST_CASE("stored energy equals beta^2/2 + F") {
  const auto m = example_model(0.02);
  const auto t = integrate(m, 7.0);
  for (const auto& p : t.points) REQUIRE(p.E == doctest::Approx(energy(m, {p.psi, p.beta})).epsilon(1e-12));
}

TEST_CASE("recorded events lie on their surfaces") {
  const auto m = constantin_model();
  IntegrationConfig cfg;
  cfg.r_max = 7000;
  cfg.events = {radius_event(1.1), energy_zero_event(), psi_zero_event()};
  const auto t = integrate(m, 100.0, cfg);
  std::size_t n_ring = 0, n_energy = 0, n_axis = 0;
  for (const auto& e : t.events) {
    if (e.name == "psi_zero") {
      ++n_axis;
      CHECK(std::abs(e.state.psi) < 1e-9);
    } else if (e.name == "energy_zero") {
      ++n_energy;
      CHECK(std::abs(e.state.E) < 1e-9);
    } else {
      ++n_ring;
      CHECK(e.state.R == doctest::Approx(1.1).epsilon(1e-9));
    }
  }
  CHECK(n_ring >= 1);
  CHECK(n_energy == 1);
  CHECK(n_axis > 10);
}

TEST_CASE("terminal event stops the run") {
  IntegrationConfig cfg;
  cfg.r_max = 1e4;
  cfg.events = {energy_zero_event(Crossing::Falling, true)};
  const auto t = integrate(constantin_model(), 10.0, cfg);
  CHECK(t.termination == Termination::TerminalEvent);
  CHECK(std::abs(t.points.back().E) < 1e-9);
}

TEST_CASE("backward then forward round trip") {
  const auto m = constantin_model();
  const double T = 6.0;
  const auto back = integrate_backward(m, 2.0, 0.0, T, std::sqrt(T * T - 1));
  const auto& p = back.points.front();
  IntegrationConfig cfg;
  cfg.r_max = T;
  const auto fwd = integrate_from(m, p.r, {p.psi, p.beta}, cfg);
  CHECK(std::abs(fwd.points.back().psi - 2.0) < 1e-8);
  CHECK(std::abs(fwd.points.back().beta) < 1e-8);
}

TEST_CASE("configuration validation") {
  IntegrationConfig cfg;
  cfg.rel_tol = 0;
  CHECK_THROWS_AS(integrate(constantin_model(), 3.0, cfg), ParameterDomainError);
  cfg = {};
  cfg.r_handoff = 2.0;
  CHECK_THROWS_AS(integrate(constantin_model(), 3.0, cfg), ParameterDomainError);
  CHECK_THROWS_AS(integrate_backward(constantin_model(), 1.0, 0.0, 5.0, 4.9), DomainError);
}

TEST_CASE("radius bound covers the trajectory") {
  const auto m = constantin_model();
  const auto t = integrate(m, 20.0);
  const double bound = radius_bound(m, t.points.front().E);
  for (const auto& p : t.points) REQUIRE(p.R <= bound * (1 + 1e-12));
}
