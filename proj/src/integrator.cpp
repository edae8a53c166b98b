#include "vortexflow/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "vortexflow/errors.hpp"

namespace vortexflow {
namespace {

using State = std::array<double, 2>;  // (psi, beta)

State rhs(const VorticityModel& model, double r, const State& y) {
  return {y[1], -y[1] / r - model.f(y[0])};
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
  State y;
  State k_end;  // rhs at the new point
  State err;    // embedded error estimate
};

StepResult dp_step(const VorticityModel& model, double r, const State& y, const State& k1,
                   double hs, double r_new) {
  const auto stage = [&](double c, std::initializer_list<std::pair<double, const State*>> terms) {
    State yy = y;
    for (const auto& [coef, k] : terms) {
      yy[0] += hs * coef * (*k)[0];
      yy[1] += hs * coef * (*k)[1];
    }
    return rhs(model, r + c * hs, yy);
  };
  const State k2 = stage(c2, {{a21, &k1}});
  const State k3 = stage(c3, {{a31, &k1}, {a32, &k2}});
  const State k4 = stage(c4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
  const State k5 = stage(c5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
  const State k6 = stage(1.0, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
  StepResult out;
  for (int i = 0; i < 2; ++i) {
    out.y[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  }
  out.k_end = rhs(model, r_new, out.y);
  for (int i = 0; i < 2; ++i) {
    out.err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                       e7 * out.k_end[i]);
  }
  return out;
}

// Collects accepted states, fires events and tracks the smallest radius.
class Recorder {
 public:
  Recorder(const VorticityModel& model, const IntegrationConfig& cfg, Trajectory& traj)
      : model_(model), cfg_(cfg), traj_(traj) {}

  TrajectoryPoint make_point(double r, const State& y, double dbeta,
                             std::optional<double> prev_theta) const {
    TrajectoryPoint p;
    p.r = r;
    p.psi = y[0];
    p.beta = y[1];
    p.dbeta = dbeta;
    p.E = energy(model_, {y[0], y[1]});
    if (auto pol = to_polar({y[0], y[1]}, prev_theta)) {
      p.R = pol->R;
      p.theta = pol->theta;
    } else {
      p.R = 0.0;
      p.theta = prev_theta.value_or(0.0);
    }
    return p;
  }

  void start(const TrajectoryPoint& p) {
    last_ = p;
    first_ = p;
    has_last_ = true;
    traj_.min_R = p.R;
    if (cfg_.record_points) traj_.points.push_back(p);
  }

  // Returns true when a terminal event cut the cell short.
  bool push(const TrajectoryPoint& p, bool forward) {
    const TrajectoryPoint& a = forward ? last_ : p;
    const TrajectoryPoint& b = forward ? p : last_;
    for (double s : {0.25, 0.5, 0.75}) {
      traj_.min_R = std::min(traj_.min_R, hermite_state(a, b, a.r + s * (b.r - a.r)).R);
    }
    traj_.min_R = std::min(traj_.min_R, p.R);

    std::optional<TrajectoryPoint> stop;
    for (const auto& ev : cfg_.events) {
      auto hit = refine_crossing(ev, forward ? last_ : p, forward ? p : last_);
      if (!hit) continue;
      traj_.events.push_back({ev.name, *hit});
      if (ev.terminal && (!stop || (forward ? hit->r < stop->r : hit->r > stop->r))) stop = hit;
    }
    if (stop) {
      const State y{stop->psi, stop->beta};
      const auto d = rhs(model_, stop->r, y);
      TrajectoryPoint q = make_point(stop->r, y, d[1], last_.theta);
      // Drop events that lie beyond the terminal one.
      std::erase_if(traj_.events, [&](const EventRecord& e) {
        return forward ? e.state.r > q.r : e.state.r < q.r;
      });
      if (q.r != last_.r) append(q);
      return true;
    }
    append(p);
    return false;
  }

  void finish() {
    if (!cfg_.record_points && has_last_) {
      traj_.points.clear();
      traj_.points.push_back(first_);
      if (last_.r != first_.r) traj_.points.push_back(last_);
    }
  }

  const TrajectoryPoint& last() const { return last_; }

 private:
  void append(const TrajectoryPoint& p) {
    last_ = p;
    if (cfg_.record_points) traj_.points.push_back(p);
  }

  const VorticityModel& model_;
  const IntegrationConfig& cfg_;
  Trajectory& traj_;
  TrajectoryPoint first_, last_;
  bool has_last_ = false;
};

void step_loop(const VorticityModel& model, const IntegrationConfig& cfg, Trajectory& traj,
               Recorder& rec, double r, State y) {
  const double r_end = cfg.r_max;
  const double dir = r_end >= r ? 1.0 : -1.0;
  const bool forward = dir > 0.0;
  State k1 = rhs(model, r, y);
  double h = std::min(cfg.max_step, 1e-3 * std::max(1.0, std::abs(r)));
  double err_prev = 1e-4;
  std::size_t steps = 0;

  while (dir * (r_end - r) > 0.0) {
    if (steps++ >= cfg.max_steps) {
      traj.termination = Termination::StepFailure;
      return;
    }
    bool last_step = false;
    if (h >= std::abs(r_end - r)) {
      h = std::abs(r_end - r);
      last_step = true;
    }
    const double hs = dir * h;
    const double r_new = last_step ? r_end : r + hs;
    auto step = dp_step(model, r, y, k1, hs, r_new);
    const auto scale = [&](int i) {
      return cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(step.y[i]));
    };
    double err = 0.0;
    for (int i = 0; i < 2; ++i) err = std::max(err, std::abs(step.err[i]) / scale(i));
    // Near psi = 0 a kink in f defeats the embedded estimate; compare with two half steps.
    const bool near_kink = (y[0] > 0.0) != (step.y[0] > 0.0) ||
                           std::min(std::abs(y[0]), std::abs(step.y[0])) < std::abs(step.y[0] - y[0]);
    if (!model.smooth_at_zero() && std::isfinite(err) && near_kink) {
      const double r_mid = r + 0.5 * hs;
      const auto half = dp_step(model, r, y, k1, 0.5 * hs, r_mid);
      const auto two = dp_step(model, r_mid, half.y, half.k_end, r_new - r_mid, r_new);
      for (int i = 0; i < 2; ++i) err = std::max(err, std::abs(two.y[i] - step.y[i]) / scale(i));
      step = two;
    }
    const State& y_new = step.y;
    const State& k7 = step.k_end;
    bool ok = std::isfinite(err) && err <= 1.0;
    TrajectoryPoint p;
    if (ok) {
      p = rec.make_point(r_new, y_new, k7[1], rec.last().theta);
      // Keep the per-step rotation well below pi so theta unwrapping stays unambiguous.
      if (std::abs(p.theta - rec.last().theta) >= 0.5 * std::numbers::pi) ok = false;
    }
    if (!ok) {
      ++traj.steps_rejected;
      const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      h *= std::min(fac, 0.5);
      if (h < 1e-14 * std::max(1.0, std::abs(r))) {
        traj.termination = Termination::StepFailure;
        return;
      }
      continue;
    }

    ++traj.steps_accepted;
    if (rec.push(p, forward)) {
      traj.termination = Termination::TerminalEvent;
      return;
    }
    r = r_new;
    y = y_new;
    k1 = k7;
    if (p.R < cfg.origin_radius) {
      traj.termination = Termination::OriginReached;
      return;
    }
    double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
    fac = std::clamp(fac, 0.2, 5.0);
    err_prev = std::max(err, 1e-4);
    h = std::min(h * fac, cfg.max_step);
  }
  traj.termination = Termination::ReachedRMax;
}

}  // namespace

void IntegrationConfig::validate() const {
  if (!(r_handoff > 0.0 && r_handoff <= 1.0)) {
    throw ParameterDomainError("integration: r_handoff must lie in (0, 1]");
  }
  if (!(rel_tol > 0.0 && abs_tol > 0.0)) {
    throw ParameterDomainError("integration: tolerances must be positive");
  }
  if (!(max_step > 0.0)) throw ParameterDomainError("integration: max_step must be positive");
  if (picard_intervals < 64) throw ParameterDomainError("integration: picard_intervals < 64");
}

SeriesStart series_start(const VorticityModel& model, double a, double r_handoff,
                         std::size_t intervals) {
  const double tol = 1e-13 * std::max(1.0, std::abs(a));
  PicardResult local = picard_solve(model, a, r_handoff, intervals, tol, 200);
  const std::size_t n = local.psi.intervals();
  SeriesStart s{{local.psi[n], local.beta[n]}, r_handoff, std::move(local)};
  return s;
}

Trajectory integrate(const VorticityModel& model, double a, const IntegrationConfig& config) {
  config.validate();
  if (!(std::abs(a) >= 1.0)) throw DomainError("integrate: need |a| >= 1");
  if (!(config.r_max > config.r_handoff)) {
    throw ParameterDomainError("integrate: r_max must exceed r_handoff");
  }
  Trajectory traj;
  traj.model_id = model.id();
  Recorder rec(model, config, traj);

  const double fa = model.f(a);
  if (fa == 0.0) {
    // Equilibrium: the solution is constant.
    rec.start(rec.make_point(0.0, {a, 0.0}, 0.0, std::nullopt));
    rec.push(rec.make_point(config.r_max, {a, 0.0}, 0.0, rec.last().theta), true);
    rec.finish();
    traj.termination = Termination::ReachedRMax;
    return traj;
  }

  const SeriesStart start = series_start(model, a, config.r_handoff, config.picard_intervals);
  const auto& psi = start.local.psi;
  const auto& beta = start.local.beta;
  rec.start(rec.make_point(0.0, {a, 0.0}, -0.5 * fa, std::nullopt));
  for (std::size_t i = 1; i <= psi.intervals(); ++i) {
    const double r = psi.node(i);
    const State y{psi[i], beta[i]};
    if (rec.push(rec.make_point(r, y, rhs(model, r, y)[1], rec.last().theta), true)) {
      traj.termination = Termination::TerminalEvent;
      rec.finish();
      return traj;
    }
  }
  step_loop(model, config, traj, rec, config.r_handoff, {start.at_handoff.psi, start.at_handoff.beta});
  rec.finish();
  return traj;
}

Trajectory integrate_from(const VorticityModel& model, double r0, PhasePoint y0,
                          const IntegrationConfig& config) {
  config.validate();
  if (!(r0 > 0.0) || !(config.r_max > 0.0)) {
    throw DomainError("integrate_from: r must stay positive");
  }
  Trajectory traj;
  traj.model_id = model.id();
  Recorder rec(model, config, traj);
  const State y{y0.psi, y0.beta};
  rec.start(rec.make_point(r0, y, rhs(model, r0, y)[1], std::nullopt));
  step_loop(model, config, traj, rec, r0, y);
  rec.finish();
  if (config.r_max < r0) std::reverse(traj.points.begin(), traj.points.end());
  return traj;
}

Trajectory integrate_backward(const VorticityModel& model, double psi_T, double beta_T, double T,
                              double r_end, const IntegrationConfig& config) {
  if (!(T >= 6.0)) throw DomainError("integrate_backward: need T >= 6");
  const double left = std::sqrt(T * T - 1.0);
  if (!(r_end >= left * (1.0 - 1e-15) && r_end < T)) {
    throw DomainError("integrate_backward: r_end must lie in [sqrt(T^2 - 1), T)");
  }
  IntegrationConfig cfg = config;
  cfg.r_max = r_end;
  return integrate_from(model, T, {psi_T, beta_T}, cfg);
}

double dissipation_over_cell(const Trajectory& traj, std::size_t i) {
  static constexpr std::array<double, 5> kNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                                0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> kWeights{0.2369268850561891, 0.4786286704993665,
                                                  0.5688888888888889, 0.4786286704993665,
                                                  0.2369268850561891};
  const double lo = traj.points.at(i).r, hi = traj.points.at(i + 1).r;
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t j = 0; j < kNodes.size(); ++j) {
    const auto s = traj.interpolate(i, mid + half * kNodes[j]);
    sum += kWeights[j] * s.beta * s.beta / s.r;
  }
  return sum * half;
}

double radius_bound(const VorticityModel& model, double E) {
  const double u0 = find_positive_zero(model);
  const double F_min = model.potential(u0);
  if (E < F_min) return 0.0;
  double lo = u0, hi = 2.0 * std::max(1.0, u0);
  while (model.potential(hi) <= E) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (model.potential(mid) <= E ? lo : hi) = mid;
  }
  return std::sqrt(hi * hi + 2.0 * (E - F_min));
}

}  // namespace vortexflow
