#include "vortexflow/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "vortexflow/errors.hpp"
#include "vortexflow/phaseplane.hpp"
#include "vortexflow/sampling.hpp"

namespace vortexflow {
namespace {

constexpr double kTol = kVerdictTolerance;
constexpr std::size_t kIntervalSamples = 10'000;

Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

std::string with_a(const char* name, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s[a=%.17g]", name, a);
  return buf;
}

bool is_example(const VorticityModel& m) {
  return m.id() == "example" && m.ledger().params.count("c1") && m.ledger().params.count("c2");
}

bool ledger_in_range(const ConstantsLedger& l) {
  return l.eta > 3.0 && l.eta <= 3.5 && l.L > 0.0 && l.L < 2.5 && l.lambda_g > 0.5 &&
         l.lambda_g < 1.0 && l.c >= 0.0 && l.c < 1.0 && l.nu > 0.0 && l.nu < 1.0;
}

void require_a(double a, const char* who) {
  if (!(a >= 1.0)) throw PreconditionError(std::string(who) + ": need a >= 1");
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

double CheckRecord::witness(const std::string& key) const {
  for (const auto& [k, v] : witnesses) {
    if (k == key) return v;
  }
  throw std::out_of_range("no witness '" + key + "' in check " + name);
}

const CheckRecord& AdmissibilityReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no check named " + name);
}

std::pair<double, double> growth_interval(const VorticityModel& model, double a) {
  const double q = model.ledger().eta / 4.0;
  return {(1.0 - q) * a, (1.0 + q) * a};
}

CheckRecord check_growth(const VorticityModel& model, double a, const SamplingOptions& opt) {
  require_a(a, "check_growth");
  const double eta = model.ledger().eta;
  const auto [lo, hi] = growth_interval(model, a);
  const auto xs = linspace(lo, hi, kIntervalSamples - 1);
  const auto m = kernels::max_of(
      xs.size(), [&](std::size_t i) { return std::abs(model.f(xs[i])); }, opt.exec);
  const bool eta_ok = eta > 3.0 && eta <= 3.5;
  CheckRecord rec{with_a("growth", a), verdict_of(eta_ok && m.value <= eta * a + kTol),
                  {{"eta", eta},
                   {"a", a},
                   {"max_abs_f", m.value},
                   {"argmax", xs[m.index]},
                   {"bound", eta * a},
                   {"eta_in_range", eta_ok ? 1.0 : 0.0}},
                  kTol,
                  ""};
  if (!eta_ok) rec.note = "eta outside (3, 7/2]";
  return rec;
}

CheckRecord check_lipschitz(const VorticityModel& model, double a, const SamplingOptions& opt) {
  require_a(a, "check_lipschitz");
  const double L = model.ledger().L;
  const auto [lo, hi] = growth_interval(model, a);
  const auto xs = linspace(lo, hi, kIntervalSamples);
  const auto m = kernels::max_of(
      kIntervalSamples,
      [&](std::size_t i) {
        return std::abs(model.f(xs[i + 1]) - model.f(xs[i])) / (xs[i + 1] - xs[i]);
      },
      opt.exec);
  bool ok = m.value <= L + kTol && L < 2.5;
  CheckRecord rec{with_a("lipschitz", a), Verdict::Fail,
                  {{"a", a}, {"L", L}, {"slope_estimate", m.value}, {"at", xs[m.index]}},
                  kTol,
                  ""};
  if (is_example(model)) {
    const double c2 = model.ledger().params.at("c2");
    const bool pre = c2 > 0.0 && c2 < example_c2_upper_bound();
    rec.witnesses.push_back({"c2", c2});
    rec.witnesses.push_back({"c2_precondition", pre ? 1.0 : 0.0});
    if (!pre) rec.note = "c2 outside (0, (3 - 2 sqrt 2)/(4 + 3 sqrt 2))";
    ok = ok && pre;
  }
  if (!(L < 2.5) && rec.note.empty()) rec.note = "L >= 5/2";
  rec.verdict = verdict_of(ok);
  return rec;
}

CheckRecord check_lambda(const VorticityModel& model, const SamplingOptions& opt) {
  const double lambda = model.ledger().lambda_g;
  const auto psis = logspace(1e-6, 1e3, 1000);
  // Normalized by psi g(psi), so the tolerance is scale free: G / (psi g) >= 1 / (2 lambda).
  const double need = 1.0 / (2.0 * lambda);
  const auto slack = kernels::min_of(
      2 * psis.size(),
      [&](std::size_t i) {
        const double psi = i < psis.size() ? psis[i] : -psis[i - psis.size()];
        const double pg = psi * model.g(psi);
        if (pg == 0.0) return model.g_potential(psi) >= 0.0 ? 0.0 : -1.0;
        return model.g_potential(psi) / pg - need;
      },
      opt.exec);
  const auto sign = kernels::min_of(
      2 * psis.size(),
      [&](std::size_t i) {
        const double psi = i < psis.size() ? psis[i] : -psis[i - psis.size()];
        return psi * model.g(psi);
      },
      opt.exec);
  const bool range = lambda > 0.5 && lambda < 1.0;
  return {"lambda",
          verdict_of(range && slack.value >= -kTol && sign.value >= -kTol),
          {{"lambda_g", lambda},
           {"min_normalized_slack", slack.value},
           {"min_psi_g", sign.value},
           {"lambda_in_range", range ? 1.0 : 0.0}},
          kTol,
          range ? "" : "lambda_g outside (1/2, 1)"};
}

CheckRecord check_ring_bound(const VorticityModel& model, const SamplingOptions& opt) {
  const double c = model.ledger().c;
  const double nu = model.ledger().nu;
  const HaltonSequence seq(opt.seed);
  constexpr std::size_t kPairs = 10'000;
  constexpr std::size_t kEdges = 100;  // |psi| = R, where the upper bound is tight
  const auto sample = [&](std::size_t i) {
    if (i >= kPairs) {
      const std::size_t j = i - kPairs;
      const double R = 1000.0 * seq.coord(j / 2, 2);
      return std::make_pair(j % 2 ? -R : R, R);
    }
    const double R = 1000.0 * seq.coord(i, 0);
    return std::make_pair(R * (2.0 * seq.coord(i, 1) - 1.0), R);
  };
  const std::size_t n = kPairs + 2 * kEdges;
  const auto lower = kernels::min_of(
      n,
      [&](std::size_t i) {
        const auto [psi, R] = sample(i);
        return psi * model.g(psi) / (R * R) + c / std::pow(R, nu);
      },
      opt.exec);
  const auto upper = kernels::min_of(
      n,
      [&](std::size_t i) {
        const auto [psi, R] = sample(i);
        return (1.0 + c) / std::pow(R, nu) - psi * model.g(psi) / (R * R);
      },
      opt.exec);
  const bool range = c >= 0.0 && c < 1.0 && nu > 0.0 && nu < 1.0;
  return {"ring_bound",
          verdict_of(range && lower.value >= -kTol && upper.value >= -kTol),
          {{"c", c}, {"nu", nu}, {"min_lower_slack", lower.value}, {"min_upper_slack", upper.value}},
          kTol,
          range ? "" : "c or nu outside range"};
}

std::pair<double, double> sandwich_bounds(const VorticityModel& model, double psi, double beta) {
  if (!is_example(model)) throw PreconditionError("sandwich_bounds: perturbed model only");
  const double c1 = model.ledger().params.at("c1");
  const double c2 = model.ledger().params.at("c2");
  const double quad = 0.5 * (beta * beta + psi * psi);
  const double p = (2.0 / 3.0) * std::pow(std::abs(psi), 1.5);
  return {quad - (1.0 + c1) * p, quad - (1.0 - (c2 - c1)) * p};
}

CheckRecord check_level_set_sandwich(const VorticityModel& model, const SamplingOptions& opt) {
  if (!is_example(model)) {
    return {"level_set_sandwich", Verdict::NotApplicable, {{"applicable", 0.0}}, kTol,
            "defined for the perturbed model only"};
  }
  constexpr std::size_t kSide = 200;
  const auto axis = linspace(-4.0, 4.0, kSide - 1);
  std::vector<double> G(kSide);
  kernels::for_each_index(kSide, [&](std::size_t i) { G[i] = model.g_potential(axis[i]); },
                          opt.exec);
  const auto slack = [&](std::size_t k, bool lower_side) {
    const double psi = axis[k / kSide];
    const double beta = axis[k % kSide];
    const double E = 0.5 * (beta * beta + psi * psi) - G[k / kSide];
    const auto [lo, hi] = sandwich_bounds(model, psi, beta);
    return lower_side ? E - lo : hi - E;
  };
  const auto lo = kernels::min_of(kSide * kSide, [&](std::size_t k) { return slack(k, true); },
                                  opt.exec);
  const auto hi = kernels::min_of(kSide * kSide, [&](std::size_t k) { return slack(k, false); },
                                  opt.exec);
  return {"level_set_sandwich",
          verdict_of(lo.value >= -kTol && hi.value >= -kTol),
          {{"applicable", 1.0},
           {"grid_side", static_cast<double>(kSide)},
           {"min_lower_slack", lo.value},
           {"min_upper_slack", hi.value}},
          kTol,
          ""};
}

double growth_margin(double eta) {
  const double t = 0.75 * eta - 1.0;
  return t * t / (1.0 + 0.25 * eta);
}

CheckRecord check_oddness(const VorticityModel& model, const SamplingOptions& opt) {
  const auto us = HaltonSequence(opt.seed).uniform(10'000, -100.0, 100.0);
  const auto odd = kernels::max_of(
      us.size(),
      [&](std::size_t i) { return std::abs(model.f(us[i]) + model.f(-us[i])) / (1.0 + std::abs(us[i])); },
      opt.exec);
  const auto psis = linspace(0.0, 50.0, 63);
  const auto even = kernels::max_of(
      psis.size(),
      [&](std::size_t i) {
        const double Fp = model.potential(psis[i]);
        return std::abs(Fp - model.potential(-psis[i])) / (1.0 + std::abs(Fp));
      },
      opt.exec);
  const double f0 = model.f(0.0);
  return {"oddness",
          verdict_of(odd.value <= kTol && even.value <= kTol && f0 == 0.0),
          {{"max_f_odd_residual", odd.value}, {"max_F_even_residual", even.value}, {"f_at_0", f0}},
          kTol,
          ""};
}

CheckRecord check_decomposition(const VorticityModel& model, const SamplingOptions& opt) {
  const auto us = HaltonSequence(opt.seed).uniform(10'000, -100.0, 100.0, 1);
  const auto m = kernels::max_of(
      us.size(),
      [&](std::size_t i) {
        const double u = us[i];
        return std::abs(model.f(u) - (u - model.g(u))) / (1.0 + std::abs(u));
      },
      opt.exec);
  return {"decomposition", verdict_of(m.value <= kTol), {{"max_residual", m.value}}, kTol, ""};
}

CheckRecord check_potential_consistency(const VorticityModel& model) {
  double worst = 0.0;
  for (double psi : linspace(-50.0, 50.0, 49)) {
    const double F = model.potential(psi);
    worst = std::max(worst, std::abs(F - potential_by_quadrature(model, psi)) / (1.0 + std::abs(F)));
  }
  constexpr double tol = 1e-9;
  return {"potential_consistency", verdict_of(worst <= tol), {{"max_relative_gap", worst}}, tol,
          ""};
}

CheckRecord check_zeros(const VorticityModel& model) {
  const double u0 = find_positive_zero(model);
  const double ledger_u0 = model.ledger().u0;
  const double fp = model.f(u0);
  const double fm = model.f(-u0);
  // No further zeros: f < 0 on (0, u0) and f > 0 on (u0, 10^4].
  const auto inside = logspace(1e-9 * u0, u0 * (1.0 - 1e-9), 500);
  const auto outside = logspace(u0 * (1.0 + 1e-9), 1e4, 2000);
  double max_inside = -std::numeric_limits<double>::infinity();
  double min_outside = std::numeric_limits<double>::infinity();
  for (double u : inside) max_inside = std::max(max_inside, model.f(u));
  for (double u : outside) min_outside = std::min(min_outside, model.f(u));
  const bool ok = std::abs(u0 - ledger_u0) <= 1e-9 && u0 > 0.0 && u0 <= 1.0 &&
                  std::abs(fp) <= kTol && std::abs(fm) <= kTol && max_inside < 0.0 &&
                  min_outside > 0.0;
  return {"zeros",
          verdict_of(ok),
          {{"u0", u0},
           {"ledger_u0", ledger_u0},
           {"f_at_u0", fp},
           {"f_at_minus_u0", fm},
           {"max_f_inside", max_inside},
           {"min_f_outside", min_outside}},
          1e-9,
          ""};
}

CheckRecord check_coercivity(const VorticityModel& model) {
  CheckRecord rec{"coercivity", Verdict::Pass, {}, 0.0, ""};
  double prev = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (double psi : {1e2, 1e3, 1e4}) {
    const double ratio = model.potential(psi) / psi;
    const double mirrored = model.potential(-psi) / psi;
    char key[32];
    std::snprintf(key, sizeof key, "F_over_psi_%g", psi);
    rec.witnesses.push_back({key, ratio});
    ok = ok && ratio > prev && ratio > 0.0 && mirrored > 0.0;
    prev = ratio;
  }
  rec.verdict = verdict_of(ok);
  return rec;
}

CheckRecord check_equilibrium_energy(const VorticityModel& model) {
  const double u0 = model.ledger().u0;
  const double Fp = model.potential(u0);
  const double Fm = model.potential(-u0);
  return {"equilibrium_energy", verdict_of(Fp < 0.0 && Fm < 0.0),
          {{"F_at_u0", Fp}, {"F_at_minus_u0", Fm}}, 0.0, ""};
}

CheckRecord check_ledger_ranges(const VorticityModel& model) {
  const auto& l = model.ledger();
  return {"ledger_ranges",
          verdict_of(ledger_in_range(l)),
          {{"eta", l.eta}, {"L", l.L}, {"lambda_g", l.lambda_g}, {"c", l.c}, {"nu", l.nu}},
          0.0,
          ""};
}

CheckRecord check_parameter_domain(const VorticityModel& model) {
  if (!is_example(model)) {
    return {"parameter_domain", Verdict::NotApplicable, {{"applicable", 0.0}}, 0.0,
            "defined for the perturbed model only"};
  }
  const double c1 = model.ledger().params.at("c1");
  const double c2 = model.ledger().params.at("c2");
  const double bound = example_c2_upper_bound();
  return {"parameter_domain",
          verdict_of(0.0 < c1 && c1 < c2 && c2 < bound),
          {{"c1", c1},
           {"c2", c2},
           {"c2_bound", bound},
           {"stated_round_bound", 0.02},
           {"bound_exceeds_stated", bound > 0.02 ? 1.0 : 0.0}},
          0.0,
          ""};
}

CheckRecord check_growth_constant(const VorticityModel& model) {
  if (!is_example(model)) {
    return {"growth_constant", Verdict::NotApplicable, {{"applicable", 0.0}}, 0.0,
            "defined for the perturbed model only"};
  }
  const double c2 = model.ledger().params.at("c2");
  bool increasing = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 100; ++i) {
    const double h = growth_margin(3.0 + 0.5 * i / 100.0);
    increasing = increasing && h > prev;
    prev = h;
  }
  const double lhs = (1.0 + 1.5 * c2) * (1.0 + 1.5 * c2);
  const double rhs = growth_margin(10.0 / 3.0);
  return {"growth_constant",
          verdict_of(increasing && lhs <= rhs && model.ledger().eta == 10.0 / 3.0),
          {{"eta", model.ledger().eta},
           {"h_increasing", increasing ? 1.0 : 0.0},
           {"h_at_10_3", rhs},
           {"lhs", lhs}},
          0.0,
          ""};
}

AdmissibilityReport full_report(const VorticityModel& model, const std::vector<double>& a_grid,
                                const SamplingOptions& opt) {
  if (a_grid.empty()) throw PreconditionError("full_report: empty a grid");
  for (double a : a_grid) require_a(a, "full_report");
  AdmissibilityReport rep;
  rep.model_id = model.id();
  auto& c = rep.checks;
  c.push_back(check_ledger_ranges(model));
  c.push_back(check_oddness(model, opt));
  c.push_back(check_decomposition(model, opt));
  c.push_back(check_potential_consistency(model));
  c.push_back(check_zeros(model));
  c.push_back(check_coercivity(model));
  c.push_back(check_equilibrium_energy(model));
  if (is_example(model)) {
    c.push_back(check_parameter_domain(model));
    c.push_back(check_growth_constant(model));
  }
  for (double a : a_grid) {
    c.push_back(check_growth(model, a, opt));
    c.push_back(check_lipschitz(model, a, opt));
  }
  c.push_back(check_lambda(model, opt));
  c.push_back(check_ring_bound(model, opt));
  if (is_example(model)) c.push_back(check_level_set_sandwich(model, opt));
  rep.overall = std::all_of(c.begin(), c.end(), [](const CheckRecord& r) { return r.passed(); });
  return rep;
}

}  // namespace vortexflow
