#include "vortexflow/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "vortexflow/admissibility.hpp"
#include "vortexflow/analysis.hpp"
#include "vortexflow/errors.hpp"
#include "vortexflow/fixedpoint.hpp"
#include "vortexflow/integrator.hpp"
#include "vortexflow/phaseplane.hpp"

namespace vortexflow {
namespace {

constexpr const char* kTitles[] = {
    "",
    "positive zero u0 = 1",
    "equilibrium energy F(1) = -1/6",
    "ledger reproduction for the perturbed model",
    "energy decay along trajectories",
    "Picard bounds and residual",
    "contraction constants and factor",
    "theta' envelope",
    "ring entry",
    "E <= 0 entry",
    "crossing sequences",
    "shooting for the origin",
    "backward/forward round trip",
    "determinism",
};

struct Builder {
  CriterionResult res;
  explicit Builder(int id) {
    res.id = id;
    res.title = kTitles[id];
    res.passed = true;
  }
  void witness(const std::string& key, double v) { res.witnesses.push_back({key, v}); }
  void require(bool ok, const std::string& what) {
    if (!ok && res.passed) {
      res.passed = false;
      res.detail = what;
    }
  }
};

std::string tag(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

Trajectory long_run(double a) {
  IntegrationConfig cfg;
  cfg.r_max = 1e4;
  return integrate(constantin_model(), a, cfg);
}

CriterionResult zeros() {
  Builder b(1);
  const std::pair<const char*, VorticityModel> models[] = {
      {"constantin", constantin_model()},
      {"example", example_model(0.02)},
      {"powerlaw", power_law_model(0.3)}};
  for (const auto& [name, m] : models) {
    const double u0 = find_positive_zero(m);
    b.witness(std::string("u0_") + name, u0);
    b.require(std::abs(u0 - 1.0) <= 1e-9, std::string("u0 off for ") + name);
  }
  return b.res;
}

CriterionResult equilibrium_energy() {
  Builder b(2);
  const auto m = constantin_model();
  const double closed = potential(m, 1.0);
  const double quad = potential_by_quadrature(m, 1.0);
  b.witness("F_closed", closed);
  b.witness("F_quadrature", quad);
  b.require(std::abs(closed + 1.0 / 6.0) <= 1e-9, "closed form differs from -1/6");
  b.require(std::abs(quad - closed) <= 1e-10, "quadrature disagrees with closed form");
  return b.res;
}

CriterionResult ledger(const AcceptanceOptions& opt) {
  Builder b(3);
  const auto m = example_model(opt.example_c2);
  const auto rep = full_report(m, {1.0, 10.0, 100.0}, {0, opt.exec});
  b.witness("c2", opt.example_c2);
  b.witness("checks", static_cast<double>(rep.checks.size()));
  for (const auto& c : rep.checks) b.require(c.passed(), "check " + c.name + " failed");
  for (double a : {1.0, 10.0, 100.0}) {
    const auto& g = rep.find(tag("growth[a=%.17g]", a));
    const auto& l = rep.find(tag("lipschitz[a=%.17g]", a));
    b.witness(tag("max_abs_f_a%g", a), g.witness("max_abs_f"));
    b.witness(tag("slope_a%g", a), l.witness("slope_estimate"));
    b.require(g.witness("max_abs_f") <= (10.0 / 3.0) * a, tag("growth bound at a=%g", a));
    b.require(l.witness("slope_estimate") < 2.5, tag("slope bound at a=%g", a));
  }
  b.require(rep.overall, "report overall fail");
  return b.res;
}

CriterionResult energy_decay() {
  Builder b(4);
  const auto m = constantin_model();
  for (double a : {2.0, 10.0, 50.0}) {
    IntegrationConfig cfg;
    cfg.r_max = 100.0;
    cfg.rel_tol = 1e-10;
    const auto tr = integrate(m, a, cfg);
    double max_increase = 0.0, dissipated = 0.0;
    for (std::size_t i = 0; i + 1 < tr.points.size(); ++i) {
      max_increase = std::max(max_increase, tr.points[i + 1].E - tr.points[i].E);
      dissipated += dissipation_over_cell(tr, i);
    }
    const double drop = tr.points.front().E - tr.points.back().E;
    const double rel = std::abs(drop - dissipated) / std::abs(drop);
    b.witness(tag("max_increase_a%g", a), max_increase);
    b.witness(tag("relative_mismatch_a%g", a), rel);
    b.require(tr.termination == Termination::ReachedRMax, tag("run stopped early at a=%g", a));
    b.require(max_increase <= 1e-7, tag("E increased at a=%g", a));
    b.require(rel <= 1e-6, tag("drop and dissipation disagree at a=%g", a));
  }
  return b.res;
}

CriterionResult picard_bounds() {
  Builder b(5);
  const auto m = constantin_model();
  const double eta = m.ledger().eta;
  for (double a : {1.0, 10.0, 100.0}) {
    const auto res = picard_solve(m, a, 1.0);
    double dev = 0.0;
    for (double v : res.psi.values()) dev = std::max(dev, std::abs(v - a));
    const double end = res.psi.values().back();
    const double residual = integral_equation_residual(m, a, res.psi);
    b.witness(tag("max_deviation_a%g", a), dev);
    b.witness(tag("psi1_a%g", a), end);
    b.witness(tag("residual_a%g", a), residual);
    b.require(dev <= eta * a / 4.0, tag("left the ball at a=%g", a));
    b.require(end >= a / 8.0, tag("psi(1) below a/8 at a=%g", a));
    b.require(residual < 1e-8, tag("residual too large at a=%g", a));
  }
  return b.res;
}

CriterionResult contraction() {
  Builder b(6);
  const auto m = constantin_model();
  const auto cc = select_contraction_constants(6.0, 1.0 + std::sqrt(2.0));
  const auto au = audit_contraction_constants(cc);
  b.witness("lambda_m", cc.lambda_m);
  b.witness("k", cc.k);
  b.witness("zeta", cc.zeta);
  b.witness("identity_gap", au.identity_gap);
  b.require(au.all(), "constant chain violated");
  const auto solved = banach_solve(m, 2.0, 0.0, cc);
  b.witness("empirical_factor", solved.empirical_factor);
  b.require(solved.empirical_factor <= cc.zeta + 0.05, "empirical factor above zeta + 0.05");
  const auto probe = banach_solve(m, 1.0, 0.0, cc);
  double dev = 0.0;
  for (std::size_t i = 0; i < probe.psi.values().size(); ++i) {
    dev = std::max({dev, std::abs(probe.psi[i] - 1.0), std::abs(probe.beta[i])});
  }
  b.witness("probe_deviation", dev);
  b.require(dev < 1e-8, "probe (1, 0) is not constant");
  return b.res;
}

CriterionResult theta_envelope_check() {
  Builder b(7);
  const auto m = constantin_model();
  IntegrationConfig cfg;
  cfg.r_max = 100.0;
  const auto tr = integrate(m, 10.0, cfg);
  double worst_low = std::numeric_limits<double>::infinity();
  double worst_high = std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
  for (std::size_t i = 0; i + 1 < tr.points.size(); ++i) {
    const auto& p = tr.points[i];
    const auto& q = tr.points[i + 1];
    if (p.r < 1.0 || !(p.E > 0.0) || !(q.E > 0.0)) continue;
    const double slope = (q.theta - p.theta) / (q.r - p.r);
    // The difference quotient equals theta' somewhere in [p.r, q.r]; the envelope is
    // widest at the left end.
    const auto [lo, hi] = theta_envelope(m.ledger().lambda_g, p.r);
    worst_low = std::min(worst_low, slope - (lo - 1e-4));
    worst_high = std::min(worst_high, (hi + 1e-4) - slope);
    ++samples;
  }
  b.witness("samples", static_cast<double>(samples));
  b.witness("min_lower_slack", worst_low);
  b.witness("min_upper_slack", worst_high);
  b.require(samples > 0, "no samples with E > 0 and r >= 1");
  b.require(worst_low >= 0.0, "theta' below the envelope");
  b.require(worst_high >= 0.0, "theta' above the envelope");
  return b.res;
}

CriterionResult ring() {
  Builder b(8);
  const auto m = constantin_model();
  const auto tr = long_run(100.0);
  const auto spec = make_ring(0.05, 0.1, m);
  const auto entry = ring_entry(tr, spec);
  b.require(entry.has_value(), "no ring entry before r = 1e4");
  if (entry) {
    b.witness("r_entry", entry->r_entry);
    b.witness("min_R_after", entry->min_R_after);
    b.require(entry->r_entry < 1e4, "ring entry too late");
    b.require(entry->min_R_after <= 1.05, "min R after entry above 1.05");
  }
  return b.res;
}

CriterionResult region() {
  Builder b(9);
  for (double a : {5.0, 10.0, 50.0, 100.0}) {
    const auto tr = long_run(a);
    const auto e = e_region_entry(tr);
    b.require(e.has_value(), tag("no E = 0 crossing for a=%g", a));
    if (!e) continue;
    b.witness(tag("r_cross_a%g", a), e->r_cross);
    b.witness(tag("E_after_a%g", a), e->E_after.value_or(std::numeric_limits<double>::quiet_NaN()));
    b.require(e->E_after && *e->E_after < 0.0, tag("E not negative after crossing for a=%g", a));
  }
  return b.res;
}

CriterionResult crossings() {
  Builder b(10);
  const auto m = constantin_model();
  const auto tr = long_run(100.0);
  AnalysisOptions o;
  o.ring = make_ring(0.05, 0.1, m);
  o.dichotomy = false;
  const auto rep = analyze(m, tr, o);
  b.require(rep.crossings.has_value(), "no crossing sequence");
  if (!rep.crossings) return b.res;
  const auto& seq = *rep.crossings;
  const auto& ck = seq.checks;
  b.witness("pairs", static_cast<double>(seq.n.size()));
  b.witness("r_minus", seq.r_start);
  b.witness("eta_rate", seq.eta_rate);
  b.witness("min_gap", ck.min_gap);
  b.witness("max_gap", ck.max_gap);
  b.witness("max_upper_excess", ck.max_upper_excess);
  b.require(seq.applicable, "theta not monotone: " + seq.note);
  b.require(!seq.n.empty(), "no crossing pairs");
  b.require(ck.min_gap >= std::numbers::pi / 3.0 - 1e-3, "gap below pi/3");
  b.require(ck.max_gap <= std::numbers::pi / (2.0 * seq.eta_rate), "gap above pi/(2 eta)");
  b.require(ck.upper_ok, "r_n^+ above the linear upper bound");
  b.require(ck.ordered, "crossings out of order");
  return b.res;
}

CriterionResult shooting(const AcceptanceOptions& opt) {
  Builder b(11);
  const auto m = constantin_model();
  const auto scan = classify_batch(m, default_shooting_grid(), opt.exec);
  const auto change = first_change(scan);
  b.require(change.has_value(), "no classification change over the scan");
  if (!change) return b.res;
  const auto res = shoot_for_origin(m, change->first.a, change->second.a, 1e-6);
  b.witness("scan_lo", change->first.a);
  b.witness("scan_hi", change->second.a);
  b.witness("a_star", res.a_star);
  b.witness("bracket_width", res.a_hi - res.a_lo);
  b.witness("min_R_achieved", res.min_R_achieved);
  b.require(res.origin_hit || res.a_hi - res.a_lo < 1e-6, "bracket not narrowed to 1e-6");
  b.require(res.min_R_achieved < 0.05, "min R not below 0.05");
  return b.res;
}

CriterionResult round_trip() {
  Builder b(12);
  const auto m = constantin_model();
  const double T = 6.0;
  const double r_end = std::sqrt(T * T - 1.0);
  IntegrationConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  const auto back = integrate_backward(m, 2.0, 0.0, T, r_end, cfg);
  const auto& start = back.points.front();
  IntegrationConfig fwd = cfg;
  fwd.r_max = T;
  const auto again = integrate_from(m, start.r, {start.psi, start.beta}, fwd);
  const auto& end = again.points.back();
  const double err = std::max(std::abs(end.psi - 2.0), std::abs(end.beta));
  b.witness("r_end", start.r);
  b.witness("psi_at_r_end", start.psi);
  b.witness("beta_at_r_end", start.beta);
  b.witness("round_trip_error", err);
  b.require(std::abs(end.r - T) <= 1e-12, "forward run did not reach T");
  b.require(err <= 1e-8, "round trip error above 1e-8");
  return b.res;
}

CriterionResult guarded(int id, const AcceptanceOptions& opt) {
  try {
    switch (id) {
      case 1: return zeros();
      case 2: return equilibrium_energy();
      case 3: return ledger(opt);
      case 4: return energy_decay();
      case 5: return picard_bounds();
      case 6: return contraction();
      case 7: return theta_envelope_check();
      case 8: return ring();
      case 9: return region();
      case 10: return crossings();
      case 11: return shooting(opt);
      case 12: return round_trip();
      default: break;
    }
  } catch (const std::exception& e) {
    Builder b(id);
    b.require(false, std::string("raised: ") + e.what());
    return b.res;
  }
  throw PreconditionError("run_criterion: id must be in 1..12");
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) { return guarded(id, opt); }

io::Json acceptance_json(const std::vector<CriterionResult>& results) {
  io::Json doc = io::document("acceptance");
  io::Json items = io::Json::array();
  bool all = true;
  for (const auto& r : results) {
    io::Json w = io::Json::object();
    for (const auto& [k, v] : r.witnesses) w[k] = v;
    io::Json item{{"id", r.id}, {"title", r.title}, {"pass", r.passed}, {"witnesses", w}};
    if (!r.detail.empty()) item["detail"] = r.detail;
    items.push_back(item);
    all = all && r.passed;
  }
  doc["criteria"] = items;
  doc["overall"] = all;
  return doc;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 12; ++id) out.push_back(guarded(id, opt));
  const std::string first = acceptance_json(out).dump();

  std::vector<CriterionResult> again;
  for (int id = 1; id <= 12; ++id) again.push_back(guarded(id, opt));
  const std::string second = acceptance_json(again).dump();

  Builder b(13);
  b.witness("report_bytes", static_cast<double>(first.size()));
  b.require(first == second, "repeated run produced a different report");
  out.push_back(b.res);
  return out;
}

std::string acceptance_matrix(const std::vector<CriterionResult>& results) {
  std::string s;
  for (const auto& r : results) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s  [%2d] %s", r.passed ? "PASS" : "FAIL", r.id,
                  r.title.c_str());
    s += buf;
    if (!r.passed) s += ": " + r.detail;
    s += '\n';
  }
  return s;
}

}  // namespace vortexflow
