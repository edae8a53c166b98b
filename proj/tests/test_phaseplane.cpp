#include <cmath>
#include <numbers>

#include <doctest.h>

#include "vortexflow/errors.hpp"
#include "vortexflow/integrator.hpp"
#include "vortexflow/phaseplane.hpp"
#include "vortexflow/sampling.hpp"

using namespace vortexflow;
constexpr double kPi = std::numbers::pi;

TEST_CASE("energy and its rate") {
  const auto m = constantin_model();
  CHECK(energy(m, {1.0, 0.0}) == doctest::Approx(-1.0 / 6.0));
  CHECK(energy(m, {0.0, 2.0}) == doctest::Approx(2.0));
  CHECK(energy_rate({0.3, 2.0}, 4.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(energy_rate({0.3, 2.0}, 0.0), DomainError);
}

namespace {
// E'(r) at the state reached by integrating from (r0, y0) to r.
double rate_after(const VorticityModel& m, double r0, PhasePoint y0, double r) {
  IntegrationConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-15;
  cfg.r_max = r;
  const auto t = integrate_from(m, r0, y0, cfg);
  const auto& p = r > r0 ? t.points.back() : t.points.front();
  return -p.beta * p.beta / r;
}
}  // namespace

TEST_CASE("second and third energy derivatives match finite differences") {
  const auto m = example_model(0.01);
  for (auto [r, p] : {std::pair{2.0, PhasePoint{1.7, -0.4}}, std::pair{5.0, PhasePoint{-2.5, 1.1}},
                      std::pair{1.3, PhasePoint{0.6, 2.0}}}) {
    const double h = 1e-3, k = 1e-4;
    const double ep = rate_after(m, r, p, r + h);
    const double em = rate_after(m, r, p, r - h);
    const double e0 = -p.beta * p.beta / r;
    const auto [e2, e3] = energy_second_third(m, p, r);
    const double fd2 = (rate_after(m, r, p, r + k) - rate_after(m, r, p, r - k)) / (2 * k);
    CHECK(e2 == doctest::Approx(fd2).epsilon(1e-7));
    CHECK(e3 == doctest::Approx((ep - 2 * e0 + em) / (h * h)).epsilon(1e-4));
  }
}

TEST_CASE("third derivative refuses a stencil across the kink") {
  CHECK_THROWS_AS(energy_second_third(constantin_model(), {1e-9, 1.0}, 2.0), NotDifferentiable);
}

TEST_CASE("polar angle agrees with the Cartesian form") {
  HaltonSequence h(3);
  for (const auto& m : {constantin_model(), power_law_model(0.7), example_model(0.02)}) {
    for (std::uint64_t i = 1; i <= 400; ++i) {
      const PhasePoint p{h.coord(i, 0) * 10 - 5, h.coord(i, 1) * 10 - 5};
      const double r = 0.5 + 20 * h.coord(i, 2);
      const auto pp = to_polar(p);
      REQUIRE(pp);
      const double dpsi = p.beta;
      const double dbeta = -p.beta / r - m.f(p.psi);
      const double expected = (p.psi * dbeta - p.beta * dpsi) / (pp->R * pp->R);
      REQUIRE(*theta_rhs(m, *pp, r) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK_FALSE(to_polar({0.0, 0.0}));
  CHECK_FALSE(theta_rhs(constantin_model(), {0.0, 0.0}, 1.0));
}

TEST_CASE("unwrapping keeps the angle continuous") {
  double prev = 0.0;
  for (int k = 1; k <= 2000; ++k) {
    const double t = -0.01 * k;
    const auto pp = to_polar({2 * std::cos(t), 2 * std::sin(t)}, prev);
    REQUIRE(pp->theta == doctest::Approx(t).epsilon(1e-12));
    prev = pp->theta;
  }
}

TEST_CASE("theta rate stays inside its envelope while E > 0") {
  HaltonSequence h(11);
  for (const auto& m : {constantin_model(), example_model(0.02), power_law_model(0.5)}) {
    const double lam = m.ledger().lambda_g;
    std::size_t tested = 0;
    for (std::uint64_t i = 1; i <= 5000; ++i) {
      const PhasePoint p{h.coord(i, 0) * 40 - 20, h.coord(i, 1) * 40 - 20};
      if (energy(m, p) <= 0) continue;
      const double r = 1.0 + 100 * h.coord(i, 2);
      const double th = *theta_rhs(m, *to_polar(p), r);
      const auto [lo, hi] = theta_envelope(lam, r);
      REQUIRE(th >= lo - 1e-12);
      REQUIRE(th <= hi + 1e-12);
      ++tested;
    }
    CHECK(tested > 4000);
  }
}

TEST_CASE("level set geometry") {
  const auto g = level_set_geometry(constantin_model());
  CHECK(g.psi_plus == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
  CHECK(g.psi_minus == doctest::Approx(-16.0 / 9.0).epsilon(1e-12));
  const auto m = constantin_model();
  for (const auto& s : g.samples) {
    REQUIRE(s.beta >= 0);
    REQUIRE(std::abs(energy(m, s)) < 1e-12);
  }
  for (const auto& mm : {example_model(0.02), power_law_model(0.3)}) {
    const auto gg = level_set_geometry(mm);
    CHECK(std::abs(potential(mm, gg.psi_plus)) < 1e-12);
    CHECK(gg.psi_plus > find_positive_zero(mm));
  }
}

TEST_CASE("iota scales points onto the zero level set") {
  HaltonSequence h(5);
  for (const auto& m : {constantin_model(), example_model(0.02), power_law_model(0.3)}) {
    for (std::uint64_t i = 1; i <= 200; ++i) {
      const PhasePoint p{h.coord(i, 0) * 6 - 3, h.coord(i, 1) * 6 - 3};
      const auto s = iota(m, p);
      if (!s) continue;
      REQUIRE(*s > 0);
      REQUIRE(std::abs(energy(m, {*s * p.psi, *s * p.beta})) < 1e-9);
    }
  }
  const auto m = constantin_model();
  const PhasePoint p{1.2, 0.7};
  const double R = std::hypot(p.psi, p.beta);
  CHECK(*iota(m, p) == doctest::Approx(16.0 / 9.0 * std::pow(p.psi, 3) / std::pow(R, 4)));
  CHECK_FALSE(iota(m, {0.0, 1.0}));
}

TEST_CASE("documented phase-plane values") {
  const auto m = constantin_model();
  CHECK(energy_second_third(m, {2.0, 0.0}, 10.0).first == 0.0);
  CHECK(energy_second(m, {0.0, 1.0}, 1.0) == doctest::Approx(3.0));
  CHECK(energy_second(m, {1.3, -0.4}, 2.0) == energy_second_third(m, {1.3, -0.4}, 2.0).first);
  for (double psi : {0.5, 2.0, -3.0}) CHECK(energy_second_third(m, {psi, 0.0}, 4.0).second < 0);
  const auto [lo, hi] = theta_envelope(0.75, 1.0);
  CHECK(lo == doctest::Approx(-1.5));
  CHECK(hi == doctest::Approx(0.25));
  const auto [lo2, hi2] = theta_envelope(0.6, 2.0);
  CHECK(lo2 == doctest::Approx(-1.25));
  CHECK(hi2 == doctest::Approx(-0.15));
  CHECK(to_polar({0.0, -1.0}, -kPi / 4)->theta == doctest::Approx(-kPi / 2));
  CHECK(to_polar({-1.0, 1e-9}, -3.0)->theta == doctest::Approx(-kPi));
  CHECK(to_polar({1.0, 0.0})->theta == 0.0);
  CHECK(*theta_rhs(m, {2.0, kPi / 2}, 7.0) == doctest::Approx(-1.0));
  CHECK(*iota(m, {16.0 / 9.0, 0.0}) == doctest::Approx(1.0));
  CHECK(*iota(m, {1.0, 0.0}) == doctest::Approx(16.0 / 9.0));
}

TEST_CASE("square root of iota in polar form") {
  HaltonSequence h(9);
  const auto m = constantin_model();
  for (std::uint64_t i = 1; i <= 1000; ++i) {
    const PhasePoint p{h.coord(i, 0) * 8 - 4, h.coord(i, 1) * 8 - 4};
    const auto pp = *to_polar(p);
    const auto s = iota(m, p);
    if (!s) continue;
    const double expected = 4.0 / 3.0 * std::pow(std::abs(std::cos(pp.theta)), 1.5) / std::sqrt(pp.R);
    REQUIRE(std::sqrt(*s) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("peak curvature and scaled peaks") {
  CHECK(level_set_geometry(constantin_model()).peak_curvature == doctest::Approx(9.0 / 4.0).epsilon(1e-3));
  for (double eps : {0.01, 0.05}) {
    const auto g = level_set_geometry(scaled_constantin_model(eps));
    CHECK(g.psi_plus == doctest::Approx(16.0 / 9.0 * (1 + eps) * (1 + eps)).epsilon(1e-10));
  }
}

TEST_CASE("the quadrant-I level set is concave") {
  for (const auto& m : {constantin_model(), example_model(0.02)}) {
    const auto g = level_set_geometry(m);
    const auto& s = g.samples;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      const double h1 = s[i].psi - s[i - 1].psi, h2 = s[i + 1].psi - s[i].psi;
      const double second = ((s[i + 1].beta - s[i].beta) / h2 - (s[i].beta - s[i - 1].beta) / h1) /
                            (0.5 * (h1 + h2));
      REQUIRE(second * h1 * h2 <= 1e-8);
    }
  }
}

TEST_CASE("oblique lines meet the lobe in one segment") {
  const auto m = constantin_model();
  const double peak = 16.0 / 9.0;
  HaltonSequence h(13);
  std::size_t tested = 0;
  for (std::uint64_t i = 1; tested < 100; ++i) {
    // line through (x0, 0) with negative slope, crossing quadrant I
    const double x0 = peak * (0.05 + 0.9 * h.coord(i, 0));
    const double slope = -(0.2 + 5 * h.coord(i, 1));
    int runs = 0;
    bool inside = false;
    for (int k = 0; k <= 1000; ++k) {
      const double psi = x0 * k / 1000.0;
      const bool in = energy(m, {psi, slope * (psi - x0)}) <= 0;
      if (in && !inside) ++runs;
      inside = in;
    }
    if (runs == 0) continue;
    REQUIRE(runs == 1);
    ++tested;
  }
}

TEST_CASE("the zero level set meets the vertical axis only at the origin") {
  for (const auto& m : {constantin_model(), example_model(0.02), power_law_model(0.3)}) {
    double least = 1e300;
    for (int k = -3000; k <= 3000; ++k) {
      if (k == 0) continue;
      least = std::min(least, std::abs(energy(m, {0.0, k / 1000.0})));
    }
    CHECK(least > 0);
  }
}
