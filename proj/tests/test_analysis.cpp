#include <cmath>
#include <numbers>

#include <doctest.h>

#include "vortexflow/analysis.hpp"
#include "vortexflow/errors.hpp"
#include "vortexflow/integrator.hpp"

using namespace vortexflow;
constexpr double kPi = std::numbers::pi;

namespace {
// Uniform rotation: psi = cos r, beta = -sin r, so theta = -r exactly.
Trajectory rotation(double r_lo, double r_hi, double h) {
  Trajectory t;
  t.model_id = "rotation";
  double prev = -r_lo;
  for (double r = r_lo; r <= r_hi + 1e-12; r += h) {
    TrajectoryPoint p;
    p.r = r;
    p.psi = std::cos(r);
    p.beta = -std::sin(r);
    p.R = 1.0;
    p.theta = prev + std::remainder(-r - prev, 2 * kPi);
    prev = p.theta;
    p.E = 0.5;
    p.dbeta = -std::cos(r);
    t.points.push_back(p);
  }
  return t;
}

const Trajectory& run100() {
  static const Trajectory t = [] {
    IntegrationConfig cfg;
    cfg.r_max = 1e4;
    return integrate(constantin_model(), 100.0, cfg);
  }();
  return t;
}
}  // namespace

TEST_CASE("ring construction") {
  const auto ring = make_ring(0.05, 0.1, constantin_model());
  CHECK(ring.c == 0.0);
  CHECK_THROWS_AS(make_ring(0.1, 0.05, 0.0, 0.5), ParameterDomainError);
  CHECK_THROWS_AS(make_ring(0.0, 0.1, 0.0, 0.5), ParameterDomainError);
  CHECK_THROWS_AS(make_ring(0.05, 0.1, 0.1, 0.5), ParameterDomainError);  // needs eps > 0.21
  CHECK_NOTHROW(make_ring(0.3, 0.4, 0.1, 0.5));
}

TEST_CASE("rate and gap bounds") {
  const RingSpec ring{};
  CHECK(gap_lower_bound(ring) == doctest::Approx(kPi / 3));
  const double r = 200.0;
  CHECK(angular_rate(ring, r) == doctest::Approx(1 - 1 / (2 * r) - std::pow(1.05, -0.5)));
  const auto chain = ring_bound_chain(ring, r);
  CHECK(chain.holds);
  CHECK(chain.middle == doctest::Approx(3.0));
  CHECK(chain.two_eta_hat < 2.0);
}

TEST_CASE("crossing radii of a uniform rotation") {
  const auto t = rotation(0.0, 300.0, 0.01);
  const RingSpec ring{};
  const double r_start = 50.0;
  const auto seq = crossing_sequence(t, 3 * kPi / 4, kPi / 4, r_start, ring);
  REQUIRE(seq.applicable);
  REQUIRE(seq.n.size() > 30);
  for (std::size_t i = 0; i < seq.n.size(); ++i) {
    const double n = seq.n[i];
    CHECK(seq.r_minus[i] == doctest::Approx(r_start + 2 * n * kPi - 3 * kPi / 4).epsilon(1e-9));
    CHECK(seq.r_plus[i] == doctest::Approx(r_start + 2 * n * kPi - kPi / 4).epsilon(1e-9));
  }
  CHECK(seq.checks.ordered);
  CHECK(seq.checks.min_gap == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(seq.checks.gaps_ok);
}

TEST_CASE("crossing sequence refuses a non-rotating trajectory") {
  auto t = rotation(0.0, 100.0, 0.01);
  for (auto& p : t.points) p.theta = -p.theta;
  const auto seq = crossing_sequence(t, 3 * kPi / 4, kPi / 4, 50.0, RingSpec{});
  CHECK_FALSE(seq.applicable);
  CHECK_FALSE(seq.note.empty());
  CHECK_THROWS_AS(crossing_sequence(t, kPi / 4, 3 * kPi / 4, 50.0, RingSpec{}), PreconditionError);
}

TEST_CASE("ring entry for a large amplitude") {
  const auto ring = make_ring(0.05, 0.1, constantin_model());
  const auto e = ring_entry(run100(), ring);
  REQUIRE(e);
  CHECK(e->r_entry < 1e4);
  CHECK(e->state.R == doctest::Approx(1.1).epsilon(1e-9));
  CHECK(e->min_R_after <= 1.05);
  CHECK(e->liminf_bound == doctest::Approx(1.0));
  IntegrationConfig cfg;
  cfg.r_max = 50;
  CHECK_THROWS_AS(ring_entry(integrate(constantin_model(), 5.0, cfg), ring), PreconditionError);
}

TEST_CASE("crossings on the integrated run") {
  const auto& t = run100();
  const RingSpec ring{};
  const auto r_minus = select_r_minus(t, ring);
  REQUIRE(r_minus);
  const auto region = e_region_entry(t);
  REQUIRE(region);
  const auto seq = crossing_sequence(t, 3 * kPi / 4, kPi / 4, *r_minus, ring, region->r_cross);
  REQUIRE(seq.applicable);
  CHECK(seq.n.size() > 10);
  CHECK(seq.checks.all());
}

TEST_CASE("entry into E <= 0") {
  const auto m = constantin_model();
  for (double a : {5.0, 10.0, 50.0}) {
    IntegrationConfig cfg;
    cfg.r_max = 1e4;
    const auto e = e_region_entry(integrate(m, a, cfg));
    REQUIRE(e);
    CHECK(std::abs(e->state.E) < 1e-9);
    CHECK(e->energy_rate < 0);
    REQUIRE(e->E_after);
    CHECK(*e->E_after < 0);
    CHECK(e->transversal);
  }
  CHECK_THROWS_AS(e_region_entry(integrate(m, 1.0)), PreconditionError);
}

TEST_CASE("axis crossings are transversal") {
  const auto m = constantin_model();
  const auto rep = transversality_check(m, integrate(m, 10.0));
  CHECK(rep.crossings > 0);
  CHECK(rep.passed);
  CHECK(rep.min_abs_beta > 1e-8);
  CHECK(rep.max_residual < 1e-8);
  CHECK(vertical_axis_dbeta(m, 2.0, 4.0) == doctest::Approx(-0.5));
}

TEST_CASE("shot classification is execution independent") {
  const auto m = constantin_model();
  const std::vector<double> grid{2, 3, 4, 5, 6, 7, 8, 9};
  const auto s = classify_batch(m, grid, kernels::Exec::Serial);
  const auto p = classify_batch(m, grid, kernels::Exec::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].outcome == p[i].outcome);
    CHECK(s[i].min_R == p[i].min_R);
    CHECK(s[i].r_end == p[i].r_end);
  }
  CHECK(first_change(s));
}

TEST_CASE("shooting brackets and refuses a non-bracket") {
  const auto m = constantin_model();
  CHECK_THROWS_AS(shoot_for_origin(m, 7.0, 8.0, 1e-6), NoBracketError);
  const auto res = shoot_for_origin(m, 3.0, 4.0, 1e-6);
  CHECK(res.a_hi - res.a_lo <= 1e-6);
  CHECK(res.min_R_achieved < 0.05);
  const auto grid = default_shooting_grid();
  CHECK(grid.front() == 2.0);
  CHECK(grid.back() == 200.0);
}

TEST_CASE("analysis skips what does not apply") {
  const auto m = constantin_model();
  AnalysisOptions opt;
  opt.ring = make_ring(0.05, 0.1, m);
  const auto rep = analyze(m, integrate(m, 3.0), opt);
  CHECK_FALSE(rep.ring);
  CHECK_FALSE(rep.notes.empty());
  const auto full = analyze(m, run100(), opt);
  CHECK(full.ring);
  CHECK(full.region);
  CHECK(full.crossings);
  CHECK(full.transversality);
}

TEST_CASE("bound chain holds for every admissible ring") {
  for (double c : {0.0, 0.05, 0.2}) {
    for (double nu : {0.3, 0.5, 0.9}) {
      const double floor = std::pow(1 + c, 1 / nu) - 1;
      for (double eps : {floor + 0.01, floor + 0.2}) {
        const auto ring = make_ring(eps, eps + 0.1, c, nu);
        for (double r : {50.0, 500.0, 1e4}) {
          CAPTURE(c);
          CAPTURE(nu);
          CAPTURE(eps);
          CHECK(ring_bound_chain(ring, r).holds);
        }
      }
    }
  }
}

TEST_CASE("theta decreases at the certified rate outside the ring") {
  const auto& t = run100();
  const RingSpec ring{};
  const double r_minus = *select_r_minus(t, ring);
  const double eta = angular_rate(ring, r_minus);
  const auto entry = ring_entry(t, ring);
  std::size_t n = 0;
  for (std::size_t i = t.lower_index(r_minus); i + 1 < t.points.size(); ++i) {
    const auto& p = t.points[i];
    const auto& q = t.points[i + 1];
    if (std::min(p.R, q.R) <= 1 + ring.epsilon || q.r > entry->r_entry) break;
    const double slope = (q.theta - p.theta) / (q.r - p.r);
    REQUIRE(slope >= -1.5 - ring.c / std::pow(1 + ring.epsilon, ring.nu) - 1e-6);
    REQUIRE(slope <= -eta + 1e-6);
    ++n;
  }
  CHECK(n > 1000);
}

TEST_CASE("classification is stable under tiny perturbations") {
  const auto m = constantin_model();
  for (double a : {2.5, 5.5, 12.0, 40.0}) {
    CHECK(classify_shot(m, a).outcome == classify_shot(m, a + 1e-9).outcome);
  }
}
