#include "vortexflow/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vortexflow {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double hermite(double y0, double d0, double y1, double d1, double h, double s) {
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

double hermite_slope(double y0, double d0, double y1, double d1, double h, double s) {
  const double s2 = s * s;
  return ((6.0 * s2 - 6.0 * s) * y0 + (3.0 * s2 - 4.0 * s + 1.0) * h * d0 +
          (-6.0 * s2 + 6.0 * s) * y1 + (3.0 * s2 - 2.0 * s) * h * d1) /
         h;
}

double energy_slope(const TrajectoryPoint& p) { return p.r > 0.0 ? -p.beta * p.beta / p.r : 0.0; }

bool matches(Crossing dir, double g0, double g1) {
  const bool falling = g0 > 0.0 && g1 <= 0.0;
  const bool rising = g0 < 0.0 && g1 >= 0.0;
  switch (dir) {
    case Crossing::Falling: return falling;
    case Crossing::Rising: return rising;
    case Crossing::Either: return falling || rising;
  }
  return false;
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ReachedRMax: return "ReachedRMax";
    case Termination::OriginReached: return "OriginReached";
    case Termination::StepFailure: return "StepFailure";
    case Termination::TerminalEvent: return "TerminalEvent";
  }
  return "?";
}

TrajectoryPoint hermite_state(const TrajectoryPoint& a, const TrajectoryPoint& b, double r) {
  const double h = b.r - a.r;
  const double s = (r - a.r) / h;
  TrajectoryPoint p;
  p.r = r;
  p.psi = hermite(a.psi, a.beta, b.psi, b.beta, h, s);
  p.beta = hermite(a.beta, a.dbeta, b.beta, b.dbeta, h, s);
  p.dbeta = hermite_slope(a.beta, a.dbeta, b.beta, b.dbeta, h, s);
  p.E = hermite(a.E, energy_slope(a), b.E, energy_slope(b), h, s);
  p.R = std::hypot(p.psi, p.beta);
  const double principal = std::atan2(p.beta, p.psi);
  p.theta = principal + kTwoPi * std::round((a.theta - principal) / kTwoPi);
  return p;
}

std::size_t Trajectory::lower_index(double r) const {
  const auto it = std::lower_bound(points.begin(), points.end(), r,
                                   [](const TrajectoryPoint& p, double v) { return p.r < v; });
  return static_cast<std::size_t>(it - points.begin());
}

TrajectoryPoint Trajectory::interpolate(std::size_t i, double r) const {
  return hermite_state(points.at(i), points.at(i + 1), r);
}

TrajectoryPoint Trajectory::state_at(double r) const {
  if (points.empty()) throw std::out_of_range("state_at: empty trajectory");
  if (r < points.front().r || r > points.back().r) {
    throw std::out_of_range("state_at: r outside the trajectory");
  }
  const std::size_t j = lower_index(r);
  if (points[j].r == r) return points[j];
  return interpolate(j - 1, r);
}

std::optional<TrajectoryPoint> refine_crossing(const EventSpec& spec, const TrajectoryPoint& a,
                                               const TrajectoryPoint& b) {
  const double g0 = spec.fn(a);
  const double g1 = spec.fn(b);
  if (!matches(spec.direction, g0, g1)) return std::nullopt;
  if (g1 == 0.0) return b;
  double lo = a.r, hi = b.r;
  const bool lo_positive = g0 > 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = spec.fn(hermite_state(a, b, mid));
    if (gm == 0.0) {
      lo = hi = mid;
      break;
    }
    ((gm > 0.0) == lo_positive ? lo : hi) = mid;
  }
  return hermite_state(a, b, hi);
}

std::vector<EventRecord> Trajectory::find_crossings(const EventSpec& spec, double r_lo,
                                                    double r_hi) const {
  std::vector<EventRecord> out;
  if (points.size() < 2) return out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const auto& a = points[i];
    const auto& b = points[i + 1];
    if (b.r < r_lo || a.r > r_hi) continue;
    if (auto hit = refine_crossing(spec, a, b); hit && hit->r >= r_lo && hit->r <= r_hi) {
      out.push_back({spec.name, *hit});
    }
  }
  return out;
}

std::vector<EventRecord> Trajectory::find_crossings(const EventSpec& spec) const {
  if (points.empty()) return {};
  return find_crossings(spec, points.front().r, points.back().r);
}

EventSpec energy_zero_event(Crossing direction, bool terminal) {
  return {"energy_zero", [](const TrajectoryPoint& p) { return p.E; }, direction, terminal};
}

EventSpec radius_event(double radius, Crossing direction, bool terminal) {
  return {"radius", [radius](const TrajectoryPoint& p) { return p.R - radius; }, direction,
          terminal};
}

EventSpec psi_zero_event() {
  return {"psi_zero", [](const TrajectoryPoint& p) { return p.psi; }, Crossing::Either, false};
}

}  // namespace vortexflow
