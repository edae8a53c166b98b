#include <cmath>

#include <doctest.h>

#include "vortexflow/admissibility.hpp"
#include "vortexflow/errors.hpp"
#include "vortexflow/phaseplane.hpp"

using namespace vortexflow;

namespace {
const std::vector<double> kGrid{1.0, 10.0, 100.0};
}

TEST_CASE("reports pass for the shipped models") {
  for (const auto& m : {constantin_model(), example_model(0.02), example_model(0.005),
                        example_model(0.0208 * (1 - 1e-6)), power_law_model(0.5),
                        power_law_model(0.9), power_law_model(0.3)}) {
    INFO(m.id());
    const auto rep = full_report(m, kGrid);
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.passed());
    }
    CHECK(rep.overall);
  }
}

TEST_CASE("growth and slope witnesses for the perturbed model") {
  const auto m = example_model(0.02);
  for (double a : kGrid) {
    const auto g = check_growth(m, a);
    CHECK(g.verdict == Verdict::Pass);
    CHECK(g.witness("max_abs_f") <= 10.0 / 3.0 * a);
    const auto l = check_lipschitz(m, a);
    CHECK(l.verdict == Verdict::Pass);
    CHECK(l.witness("slope_estimate") < 2.5);
  }
}

TEST_CASE("growth interval") {
  const auto m = constantin_model();
  const auto [lo, hi] = growth_interval(m, 8.0);
  CHECK(lo == doctest::Approx((1 - m.ledger().eta / 4) * 8.0));
  CHECK(hi == doctest::Approx((1 + m.ledger().eta / 4) * 8.0));
}

TEST_CASE("forced constants are caught") {
  auto led = constantin_model().ledger();
  led.eta = 2.0;
  const auto bad = constantin_model().with_ledger(led);
  CHECK(check_growth(bad, 10.0).verdict == Verdict::Fail);
  CHECK_FALSE(full_report(bad, kGrid).overall);

  led = constantin_model().ledger();
  led.lambda_g = 0.51;
  CHECK(check_lambda(constantin_model().with_ledger(led)).verdict == Verdict::Fail);

  led = constantin_model().ledger();
  led.L = 0.5;
  CHECK(check_lipschitz(constantin_model().with_ledger(led), 10.0).verdict == Verdict::Fail);
}

TEST_CASE("out-of-range perturbation fails the slope check") {
  const auto m = example_model(0.1, DomainCheck::Skip);
  CHECK(check_lipschitz(m, 10.0).verdict == Verdict::Fail);
  CHECK(check_parameter_domain(m).verdict == Verdict::Fail);
}

TEST_CASE("sandwich applies only to the perturbed model") {
  CHECK(check_level_set_sandwich(constantin_model()).verdict == Verdict::NotApplicable);
  CHECK(check_level_set_sandwich(constantin_model()).passed());
  CHECK(check_level_set_sandwich(example_model(0.02)).verdict == Verdict::Pass);
  const auto m = example_model(0.02);
  for (double psi : {-3.0, -0.5, 0.4, 2.5}) {
    const auto [lo, hi] = sandwich_bounds(m, psi, 0.3);
    const double e = energy(m, {psi, 0.3});
    CHECK(lo <= e + 1e-12);
    CHECK(e <= hi + 1e-12);
  }
}

TEST_CASE("growth margin") {
  CHECK(growth_margin(10.0 / 3.0) == doctest::Approx(std::pow(1.5, 2) / (1 + 10.0 / 12.0)));
  double prev = growth_margin(3.0);
  for (int i = 1; i <= 100; ++i) {
    const double h = growth_margin(3.0 + 0.005 * i);
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("verdicts do not depend on the sampling seed or execution mode") {
  const auto m = example_model(0.01);
  const auto a = full_report(m, kGrid, {0, kernels::Exec::Serial});
  const auto b = full_report(m, kGrid, {0, kernels::Exec::Parallel});
  const auto c = full_report(m, kGrid, {12345, kernels::Exec::Parallel});
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].verdict == b.checks[i].verdict);
    CHECK(a.checks[i].witnesses == b.checks[i].witnesses);
    CHECK(a.checks[i].verdict == c.checks[i].verdict);
  }
}

TEST_CASE("verdict strings and lookup") {
  CHECK(std::string(to_string(Verdict::Pass)) == "pass");
  CHECK(std::string(to_string(Verdict::Fail)) == "fail");
  CHECK(std::string(to_string(Verdict::NotApplicable)) == "not-applicable");
  const auto rep = full_report(constantin_model(), {1.0});
  CHECK_NOTHROW(rep.find("oddness"));
  CHECK_THROWS_AS(rep.find("nothing"), std::out_of_range);
  CHECK_THROWS_AS(rep.checks.front().witness("nothing"), std::out_of_range);
}

TEST_CASE("perturbed model across its admissible range") {
  for (double c2 : {0.005, 0.01, 0.0208 * (1 - 1e-6)}) {
    CAPTURE(c2);
    const auto rep = full_report(example_model(c2), kGrid);
    CHECK(rep.overall);
    CHECK(check_growth_constant(example_model(c2)).verdict == Verdict::Pass);
  }
}

TEST_CASE("reports are bit-identical across runs") {
  const auto m = example_model(0.02);
  const auto a = full_report(m, kGrid);
  const auto b = full_report(m, kGrid);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].witnesses == b.checks[i].witnesses);
  }
}
