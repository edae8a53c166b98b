#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vortexflow {

struct TrajectoryPoint {
  double r = 0.0;
  double psi = 0.0;
  double beta = 0.0;
  double R = 0.0;
  double theta = 0.0;  // unwrapped
  double E = 0.0;
  double dbeta = 0.0;  // beta'(r); beta'(0) = -f(a)/2 on the series start
};

enum class Termination { ReachedRMax, OriginReached, StepFailure, TerminalEvent };

const char* to_string(Termination t);

enum class Crossing { Falling, Rising, Either };

/// A scalar function of the dense state whose sign changes are located during
/// integration (or afterwards on a stored trajectory).
struct EventSpec {
  std::string name;
  std::function<double(const TrajectoryPoint&)> fn;
  Crossing direction = Crossing::Either;
  bool terminal = false;
};

struct EventRecord {
  std::string name;
  TrajectoryPoint state;  // dense state at the refined crossing
};

/// Sampled solution with cubic Hermite dense output between accepted points
/// (psi with psi' = beta, beta with beta', E with E' = -beta^2/r).
struct Trajectory {
  std::string model_id;
  std::vector<TrajectoryPoint> points;  // r strictly increasing
  Termination termination = Termination::ReachedRMax;
  std::vector<EventRecord> events;
  double min_R = 0.0;  // over accepted points and interior dense samples
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;

  /// Dense state at r in [points.front().r, points.back().r].
  TrajectoryPoint state_at(double r) const;

  /// Dense state inside the cell [points[i].r, points[i+1].r].
  TrajectoryPoint interpolate(std::size_t i, double r) const;

  /// All refined crossings of spec.fn in [r_lo, r_hi], in increasing r.
  std::vector<EventRecord> find_crossings(const EventSpec& spec, double r_lo, double r_hi) const;
  std::vector<EventRecord> find_crossings(const EventSpec& spec) const;

  /// First point index whose r is >= r (points.size() if none).
  std::size_t lower_index(double r) const;
};

/// Dense Hermite state between two accepted points a and b (a.r != b.r).
TrajectoryPoint hermite_state(const TrajectoryPoint& a, const TrajectoryPoint& b, double r);

/// Refines a sign change of spec.fn inside the cell [a, b] by bisection on the Hermite
/// interpolant (at most 60 halvings). Empty when there is no matching crossing.
std::optional<TrajectoryPoint> refine_crossing(const EventSpec& spec, const TrajectoryPoint& a,
                                               const TrajectoryPoint& b);

// Ready-made event functions.
EventSpec energy_zero_event(Crossing direction = Crossing::Falling, bool terminal = false);
EventSpec radius_event(double radius, Crossing direction = Crossing::Falling,
                       bool terminal = false);
EventSpec psi_zero_event();

}  // namespace vortexflow
