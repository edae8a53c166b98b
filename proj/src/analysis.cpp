#include "vortexflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "vortexflow/errors.hpp"
#include "vortexflow/phaseplane.hpp"

namespace vortexflow {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(const char* pattern, double v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// First crossing of spec in [r_lo, r_hi], walking cells from the left.
std::optional<TrajectoryPoint> first_crossing(const Trajectory& traj, const EventSpec& spec,
                                              double r_lo, double r_hi) {
  const auto& pts = traj.points;
  if (pts.size() < 2) return std::nullopt;
  std::size_t i = traj.lower_index(r_lo);
  if (i > 0) --i;
  for (; i + 1 < pts.size() && pts[i].r <= r_hi; ++i) {
    if (pts[i + 1].r < r_lo) continue;
    if (auto hit = refine_crossing(spec, pts[i], pts[i + 1]); hit && hit->r >= r_lo) {
      if (hit->r > r_hi) return std::nullopt;
      return hit;
    }
  }
  return std::nullopt;
}

}  // namespace

RingSpec make_ring(double epsilon, double delta, double c, double nu) {
  if (!(c >= 0.0 && c < 1.0) || !(nu > 0.0 && nu < 1.0)) {
    throw ParameterDomainError("ring: need c in [0,1) and nu in (0,1)");
  }
  const double floor_eps = std::pow(1.0 + c, 1.0 / nu) - 1.0;
  if (!(epsilon > floor_eps) || !(delta > epsilon)) {
    throw ParameterDomainError(
        fmt("ring: need delta > epsilon > (1+c)^(1/nu) - 1 = %.6g", floor_eps));
  }
  return {epsilon, delta, c, nu};
}

RingSpec make_ring(double epsilon, double delta, const VorticityModel& model) {
  return make_ring(epsilon, delta, model.ledger().c, model.ledger().nu);
}

double angular_rate(const RingSpec& ring, double r_minus) {
  return -(-1.0 + 1.0 / (2.0 * r_minus) + (1.0 + ring.c) * std::pow(1.0 + ring.epsilon, -ring.nu));
}

double gap_lower_bound(const RingSpec& ring) {
  return std::numbers::pi / (3.0 - 2.0 * ring.c / std::pow(1.0 + ring.epsilon, ring.nu));
}

BoundChain ring_bound_chain(const RingSpec& ring, double r_minus) {
  BoundChain b;
  b.two_eta_hat = 2.0 * angular_rate(ring, r_minus);
  b.middle = (3.0 + ring.c) / (1.0 + ring.c);
  b.right = 3.0 - 2.0 * ring.c / std::pow(1.0 + ring.epsilon, ring.nu);
  b.holds = b.two_eta_hat < 2.0 && 2.0 < b.middle && b.middle <= b.right;
  return b;
}

std::optional<RingEntry> ring_entry(const Trajectory& traj, const RingSpec& ring) {
  if (traj.points.empty()) throw PreconditionError("ring_entry: empty trajectory");
  const double a = traj.points.front().psi;
  if (!(a > 8.0 * (1.0 + ring.delta))) {
    throw PreconditionError(fmt("ring_entry: need a > 8(1+delta), got a = %.17g", a));
  }
  const auto hit = first_crossing(traj, radius_event(1.0 + ring.delta, Crossing::Falling),
                                  traj.points.front().r, traj.points.back().r);
  if (!hit) return std::nullopt;
  RingEntry e;
  e.r_entry = hit->r;
  e.state = *hit;
  e.min_R_after = hit->R;
  for (std::size_t i = traj.lower_index(hit->r); i < traj.points.size(); ++i) {
    e.min_R_after = std::min(e.min_R_after, traj.points[i].R);
  }
  e.liminf_bound = std::pow(1.0 + ring.c, 1.0 / ring.nu);
  return e;
}

std::optional<double> select_r_minus(const Trajectory& traj, const RingSpec& ring,
                                     double r_floor) {
  for (const auto& p : traj.points) {
    if (p.r < r_floor || p.r <= 0.0) continue;
    if (-angular_rate(ring, p.r) <= -0.01) return p.r;
  }
  return std::nullopt;
}

CrossingSequence crossing_sequence(const Trajectory& traj, double theta0, double theta1,
                                   double r_start, const RingSpec& ring,
                                   std::optional<double> r_end, double tol) {
  if (!(theta0 > theta1) || !(theta0 - theta1 < kTwoPi)) {
    throw PreconditionError("crossing_sequence: need theta0 > theta1 and theta0 - theta1 < 2 pi");
  }
  const auto& pts = traj.points;
  if (pts.size() < 2 || r_start < pts.front().r || r_start >= pts.back().r) {
    throw PreconditionError("crossing_sequence: r_start outside the trajectory");
  }
  CrossingSequence seq;
  seq.theta_offsets = {theta0, theta1};
  seq.r_start = r_start;
  seq.r_end = std::min(r_end.value_or(pts.back().r), pts.back().r);
  if (seq.r_end <= r_start) throw PreconditionError("crossing_sequence: empty interval");
  seq.eta_rate = angular_rate(ring, r_start);

  const TrajectoryPoint start = traj.state_at(r_start);
  seq.theta_start = start.theta;
  {
    double prev = start.theta;
    for (std::size_t i = traj.lower_index(r_start); i < pts.size() && pts[i].r < seq.r_end; ++i) {
      if (pts[i].r <= r_start) continue;
      if (!(pts[i].theta < prev)) {
        seq.applicable = false;
        seq.note = fmt("theta not strictly decreasing at r = %.17g", pts[i].r);
        return seq;
      }
      prev = pts[i].theta;
    }
    if (!(traj.state_at(seq.r_end).theta < prev)) {
      seq.applicable = false;
      seq.note = fmt("theta not strictly decreasing at r = %.17g", seq.r_end);
      return seq;
    }
  }

  // Targets in decreasing order: theta_s + theta0 - 2n pi, theta_s + theta1 - 2n pi, n+1, ...
  int n = std::max(0, static_cast<int>(std::floor(theta0 / kTwoPi)) + 1);
  bool want_minus = true;
  const auto target = [&] {
    return seq.theta_start + (want_minus ? theta0 : theta1) - kTwoPi * n;
  };
  std::optional<double> pending_minus;
  std::size_t i = traj.lower_index(r_start);
  if (i > 0) --i;
  for (; i + 1 < pts.size() && pts[i].r <= seq.r_end; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    if (b.r < r_start) continue;
    while (true) {
      const double t = target();
      const EventSpec spec{"theta", [t](const TrajectoryPoint& p) { return p.theta - t; },
                           Crossing::Falling, false};
      const auto hit = refine_crossing(spec, a, b);
      if (!hit || hit->r < r_start) break;
      if (hit->r > seq.r_end) break;
      if (want_minus) {
        pending_minus = hit->r;
        want_minus = false;
      } else {
        seq.n.push_back(n);
        seq.r_minus.push_back(*pending_minus);
        seq.r_plus.push_back(hit->r);
        pending_minus.reset();
        want_minus = true;
        ++n;
      }
    }
  }

  auto& ck = seq.checks;
  ck.rate_hypothesis = seq.eta_rate > 0.0;
  const double span = theta0 - theta1;
  ck.gap_lower = gap_lower_bound(ring) * span / (std::numbers::pi / 2.0);
  ck.gap_upper = ck.rate_hypothesis ? span / seq.eta_rate : std::numeric_limits<double>::infinity();
  if (seq.n.empty()) {
    seq.note = "no crossing pairs recorded";
    return seq;
  }
  ck.ordered = ck.gaps_ok = ck.linear_ok = ck.upper_ok = ck.divergence_ok = true;
  ck.min_gap = std::numeric_limits<double>::infinity();
  ck.max_gap = 0.0;
  ck.max_upper_excess = -std::numeric_limits<double>::infinity();
  double t_sum = 0.0, s_sum = 0.0;
  for (std::size_t k = 0; k < seq.n.size(); ++k) {
    const double gap = seq.r_plus[k] - seq.r_minus[k];
    ck.min_gap = std::min(ck.min_gap, gap);
    ck.max_gap = std::max(ck.max_gap, gap);
    if (!(seq.r_minus[k] < seq.r_plus[k])) ck.ordered = false;
    if (k + 1 < seq.n.size() && !(seq.r_plus[k] < seq.r_minus[k + 1])) ck.ordered = false;
    if (gap < ck.gap_lower - tol || gap > ck.gap_upper + tol) ck.gaps_ok = false;
    const double linear =
        seq.r_minus[0] + static_cast<double>(seq.n[k] - seq.n[0]) * ck.gap_lower;
    if (seq.r_plus[k] < linear - tol) ck.linear_ok = false;
    if (ck.rate_hypothesis) {
      const double bound = (kTwoPi * seq.n[k] - theta1) / seq.eta_rate + r_start;
      ck.max_upper_excess = std::max(ck.max_upper_excess, seq.r_plus[k] - bound);
      if (seq.r_plus[k] > bound + tol) ck.upper_ok = false;
      const double t_term = gap / (4.0 * seq.r_plus[k]);
      const double s_term = ck.gap_lower / (4.0 * bound);
      if (t_term < s_term - tol / (4.0 * seq.r_plus[k])) ck.divergence_ok = false;
      t_sum += t_term;
      s_sum += s_term;
      ck.witness_partial.push_back(t_sum);
      ck.comparison_partial.push_back(s_sum);
    }
  }
  if (!ck.rate_hypothesis) ck.upper_ok = ck.divergence_ok = false;
  return seq;
}

std::optional<RegionEntry> e_region_entry(const Trajectory& traj) {
  const auto& pts = traj.points;
  if (pts.empty() || !(pts.front().E > 0.0)) {
    throw PreconditionError("e_region_entry: trajectory must start with E > 0");
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto hit = refine_crossing(energy_zero_event(), pts[i], pts[i + 1]);
    if (!hit) continue;
    RegionEntry e;
    e.r_cross = hit->r;
    e.state = *hit;
    e.energy_rate = hit->r > 0.0 ? energy_rate({hit->psi, hit->beta}, hit->r) : 0.0;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[j].r > hit->r) {
        e.E_after = pts[j].E;
        break;
      }
    }
    e.transversal = pts[i].E > 0.0 && e.energy_rate < 0.0 && (!e.E_after || *e.E_after < 0.0);
    return e;
  }
  return std::nullopt;
}

double vertical_axis_dbeta(const VorticityModel& model, double beta, double r) {
  if (!(r > 0.0)) throw DomainError("vertical_axis_dbeta: r must be positive");
  return -beta / r - model.f(0.0);
}

TransversalityReport transversality_check(const VorticityModel& model, const Trajectory& traj) {
  TransversalityReport rep;
  rep.min_abs_beta = std::numeric_limits<double>::infinity();
  for (const auto& ev : traj.find_crossings(psi_zero_event())) {
    const auto& s = ev.state;
    if (!(s.r > 0.0) || !(s.E > 0.0)) continue;
    ++rep.crossings;
    rep.min_abs_beta = std::min(rep.min_abs_beta, std::abs(s.beta));
    const double db = vertical_axis_dbeta(model, s.beta, s.r);
    rep.max_residual = std::max(rep.max_residual, std::abs(db + s.beta / s.r));
  }
  if (rep.crossings == 0) {
    throw PreconditionError("transversality_check: no psi = 0 crossing with E > 0");
  }
  rep.passed = rep.min_abs_beta > 1e-8 && rep.max_residual < 1e-8;
  return rep;
}

const char* to_string(ShotOutcome o) {
  switch (o) {
    case ShotOutcome::EntersLeft: return "EntersLeft";
    case ShotOutcome::EntersRight: return "EntersRight";
    case ShotOutcome::OriginHit: return "OriginHit";
    case ShotOutcome::NoEntry: return "NoEntry";
  }
  return "?";
}

IntegrationConfig shooting_config() {
  IntegrationConfig cfg;
  cfg.r_max = 1e5;
  cfg.record_points = false;
  return cfg;
}

ShotRecord classify_shot(const VorticityModel& model, double a, const IntegrationConfig& base) {
  IntegrationConfig cfg = base;
  cfg.events = {energy_zero_event(Crossing::Falling, true)};
  const Trajectory tr = integrate(model, a, cfg);
  ShotRecord rec;
  rec.a = a;
  rec.min_R = tr.min_R;
  rec.r_end = tr.points.back().r;
  if (tr.termination == Termination::OriginReached) {
    rec.outcome = ShotOutcome::OriginHit;
  } else if (!tr.events.empty()) {
    rec.outcome = tr.events.front().state.psi < 0.0 ? ShotOutcome::EntersLeft
                                                    : ShotOutcome::EntersRight;
  }
  return rec;
}

std::vector<ShotRecord> classify_batch(const VorticityModel& model, const std::vector<double>& a,
                                       kernels::Exec exec, const IntegrationConfig& base) {
  std::vector<ShotRecord> out(a.size());
  kernels::for_each_index(
      a.size(), [&](std::size_t i) { out[i] = classify_shot(model, a[i], base); }, exec);
  return out;
}

std::vector<double> default_shooting_grid() {
  std::vector<double> grid;
  for (int a = 2; a <= 20; ++a) grid.push_back(a);
  for (int a = 30; a <= 200; a += 10) grid.push_back(a);
  return grid;
}

std::optional<std::pair<ShotRecord, ShotRecord>> first_change(const std::vector<ShotRecord>& scan) {
  for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
    if (scan[i].outcome != scan[i + 1].outcome) return std::make_pair(scan[i], scan[i + 1]);
  }
  return std::nullopt;
}

ShootingResult shoot_for_origin(const VorticityModel& model, double a_lo, double a_hi, double tol,
                                const IntegrationConfig& base) {
  if (!(a_lo < a_hi) || !(tol > 0.0)) {
    throw PreconditionError("shoot_for_origin: need a_lo < a_hi and tol > 0");
  }
  ShootingResult res;
  const auto trial = [&](double a) {
    ShotRecord rec = classify_shot(model, a, base);
    if (rec.outcome == ShotOutcome::NoEntry) {
      throw NumericalToleranceError(fmt("shoot_for_origin: no E <= 0 entry for a = %.17g", a));
    }
    res.history.push_back(rec);
    return rec;
  };
  ShotRecord lo = trial(a_lo);
  ShotRecord hi = trial(a_hi);
  for (const auto* end : {&lo, &hi}) {
    if (end->outcome == ShotOutcome::OriginHit) {
      res.a_star = end->a;
      res.origin_hit = true;
    }
  }
  if (!res.origin_hit && lo.outcome == hi.outcome) {
    throw NoBracketError(std::string("shoot_for_origin: both ends classify as ") +
                         to_string(lo.outcome));
  }
  while (!res.origin_hit && hi.a - lo.a >= tol) {
    const double mid = 0.5 * (lo.a + hi.a);
    if (mid <= lo.a || mid >= hi.a) break;
    const ShotRecord m = trial(mid);
    if (m.outcome == ShotOutcome::OriginHit) {
      res.a_star = mid;
      res.origin_hit = true;
    } else if (m.outcome == lo.outcome) {
      lo = m;
    } else {
      hi = m;
    }
  }
  res.a_lo = lo.a;
  res.a_hi = hi.a;
  if (!res.origin_hit) res.a_star = 0.5 * (lo.a + hi.a);
  res.min_R_achieved = std::numeric_limits<double>::infinity();
  for (const auto& h : res.history) res.min_R_achieved = std::min(res.min_R_achieved, h.min_R);
  return res;
}

AnalysisReport analyze(const VorticityModel& model, const Trajectory& traj,
                       const AnalysisOptions& options) {
  AnalysisReport rep;
  rep.model_id = traj.model_id;
  rep.a = traj.points.empty() ? 0.0 : traj.points.front().psi;
  rep.termination = to_string(traj.termination);
  rep.ring_spec = options.ring;
  if (traj.points.size() < 2) {
    rep.notes.push_back("trajectory has fewer than two points");
    return rep;
  }
  if (options.ring) {
    try {
      rep.ring = ring_entry(traj, *options.ring);
    } catch (const PreconditionError& e) {
      rep.notes.push_back(e.what());
    }
  }
  if (traj.points.front().E > 0.0) rep.region = e_region_entry(traj);
  try {
    rep.transversality = transversality_check(model, traj);
  } catch (const PreconditionError& e) {
    rep.notes.push_back(e.what());
  }
  if (options.ring) {
    // The rotation estimate lives outside both the inner disc R <= 1+eps and the lobes E <= 0.
    double r_end = traj.points.back().r;
    if (rep.region) r_end = std::min(r_end, rep.region->r_cross);
    if (const auto inner =
            first_crossing(traj, radius_event(1.0 + options.ring->epsilon, Crossing::Falling),
                           traj.points.front().r, traj.points.back().r)) {
      r_end = std::min(r_end, inner->r);
    }
    const auto r_minus = select_r_minus(traj, *options.ring);
    if (r_minus && *r_minus < r_end) {
      rep.crossings = crossing_sequence(traj, options.theta0, options.theta1, *r_minus,
                                        *options.ring, r_end);
    } else {
      rep.notes.push_back("crossing sequence: no admissible r_minus before the ring or lobe");
    }
  }
  if (options.dichotomy) {
    try {
      rep.dichotomy = equilibrium_dichotomy_certificate(model, traj);
    } catch (const DomainError& e) {
      rep.notes.push_back(e.what());
    }
  }
  return rep;
}

}  // namespace vortexflow
