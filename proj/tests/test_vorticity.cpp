#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "vortexflow/errors.hpp"
#include "vortexflow/sampling.hpp"
#include "vortexflow/vorticity.hpp"

using namespace vortexflow;

namespace {
std::vector<VorticityModel> all_models() {
  return {constantin_model(), example_model(0.02), example_model(0.005), power_law_model(0.3),
          power_law_model(0.9)};
}
}  // namespace

TEST_CASE("constantin potential closed form") {
  const auto m = constantin_model();
  CHECK(m.closed_form_potential());
  for (double psi : {-7.5, -1.0, -0.3, 0.0, 0.25, 1.0, 16.0 / 9.0, 40.0}) {
    const double x = std::abs(psi);
    const double expected = 0.5 * psi * psi - 2.0 / 3.0 * x * std::sqrt(x);
    CHECK(potential(m, psi) == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK(std::abs(potential(m, 1.0) + 1.0 / 6.0) < 1e-12);
  CHECK(std::abs(potential(m, 16.0 / 9.0)) < 1e-14);
}

TEST_CASE("potentials agree with Gauss-Kronrod") {
  for (const auto& m : all_models()) {
    INFO(m.id());
    for (double psi : {-30.0, -2.0, -0.7, -1e-3, 1e-3, 0.5, 1.0, 3.0, 50.0}) {
      const double ref = oracle::potential(m, psi);
      CHECK(std::abs(potential(m, psi) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
      CHECK(std::abs(potential_by_quadrature(m, psi) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("f = u - g and g potential") {
  for (const auto& m : all_models()) {
    INFO(m.id());
    for (double u : {-5.0, -0.2, 0.3, 1.0, 9.0}) {
      CHECK(m.f(u) == doctest::Approx(u - m.g(u)).epsilon(1e-14));
      CHECK(m.g_potential(u) == doctest::Approx(0.5 * u * u - potential(m, u)).epsilon(1e-10));
    }
  }
}

TEST_CASE("oddness on Halton points") {
  HaltonSequence h(7);
  const auto us = h.uniform(500, -100.0, 100.0);
  for (const auto& m : all_models()) {
    for (double u : us) {
      REQUIRE(m.f(-u) == -m.f(u));
      REQUIRE(potential(m, -u) == doctest::Approx(potential(m, u)).epsilon(1e-12));
    }
  }
}

TEST_CASE("positive zero is one for every model") {
  for (const auto& m : all_models()) {
    INFO(m.id());
    CHECK(std::abs(find_positive_zero(m) - 1.0) < 1e-9);
    CHECK(std::abs(m.f(1.0)) < 1e-15);
  }
}

TEST_CASE("perturbed model parameters") {
  const double s2 = std::numbers::sqrt2;
  CHECK(example_c2_upper_bound() == doctest::Approx((3 - 2 * s2) / (4 + 3 * s2)).epsilon(1e-15));
  CHECK(example_c2_upper_bound() == doctest::Approx(0.0208153).epsilon(1e-6));
  CHECK_THROWS_AS(example_model(0.1), ParameterDomainError);
  CHECK_THROWS_AS(example_model(0.0), ParameterDomainError);
  CHECK_THROWS_AS(example_model(-0.01), ParameterDomainError);
  CHECK_NOTHROW(example_model(0.1, DomainCheck::Skip));
  const auto m = example_model(0.02);
  const double c1 = std::sin(0.01);
  // f(u) at u = 2 from the definition.
  const double u = 2.0;
  CHECK(m.f(u) == doctest::Approx(u - std::sqrt(u) * (1 + c1 - std::sin(0.02 * u * u / (u * u + 1))))
                      .epsilon(1e-15));
}

TEST_CASE("power law parameters") {
  CHECK_THROWS_AS(power_law_model(0.0), ParameterDomainError);
  CHECK_THROWS_AS(power_law_model(1.0), ParameterDomainError);
  const auto m = power_law_model(0.3);
  CHECK(m.f(8.0) == doctest::Approx(8.0 - std::pow(8.0, 0.3)));
}

TEST_CASE("model selection by id") {
  CHECK(make_model({"constantin", 0.02, 0.5}).id() == "constantin");
  CHECK(make_model({"example", 0.01, 0.5}).id() == "example");
  CHECK(make_model({"powerlaw", 0.02, 0.4}).id() == "powerlaw");
  CHECK_THROWS_AS(make_model({"nonsense", 0.02, 0.5}), ParameterDomainError);
}

TEST_CASE("ledger constants lie in their ranges") {
  for (const auto& m : all_models()) {
    INFO(m.id());
    const auto& l = m.ledger();
    CHECK(l.eta > 3.0);
    CHECK(l.eta <= 3.5);
    CHECK(l.L > 0.0);
    CHECK(l.L < 2.5);
    CHECK(l.lambda_g > 0.5);
    CHECK(l.lambda_g < 1.0);
    CHECK(l.c >= 0.0);
    CHECK(l.c < 1.0);
    CHECK(l.nu > 0.0);
    CHECK(l.nu < 1.0);
  }
}

TEST_CASE("coercivity proxy and negative equilibrium energy") {
  for (const auto& m : all_models()) {
    INFO(m.id());
    const double q2 = potential(m, 1e2) / 1e2, q3 = potential(m, 1e3) / 1e3,
                 q4 = potential(m, 1e4) / 1e4;
    CHECK(q2 < q3);
    CHECK(q3 < q4);
    CHECK(q4 > 10);
    CHECK(potential(m, find_positive_zero(m)) < 0);
  }
}

TEST_CASE("lambda_g condition on sampled psi") {
  HaltonSequence h(2);
  for (const auto& m : all_models()) {
    const double lam = m.ledger().lambda_g;
    for (double psi : h.uniform(1000, 1e-6, 1e3)) {
      const double G = 0.5 * psi * psi - potential(m, psi);
      REQUIRE(G >= psi * m.g(psi) / (2 * lam) - 1e-10 * std::max(1.0, psi * m.g(psi)));
    }
  }
}
