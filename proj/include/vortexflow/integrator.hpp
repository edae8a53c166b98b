#pragma once

#include <cstddef>
#include <vector>

#include "vortexflow/fixedpoint.hpp"
#include "vortexflow/phaseplane.hpp"
#include "vortexflow/trajectory.hpp"
#include "vortexflow/vorticity.hpp"

namespace vortexflow {

struct IntegrationConfig {
  double r_handoff = 1.0 / 16.0;  // end of the Picard start, in (0, 1]
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double r_max = 100.0;
  std::size_t max_steps = 20'000'000;
  double max_step = 0.25;
  double origin_radius = 1e-6;  // R below this ends the run with OriginReached
  std::size_t picard_intervals = 256;
  bool record_points = true;    // false keeps only the first and last points
  std::vector<EventSpec> events;

  void validate() const;
};

struct SeriesStart {
  PhasePoint at_handoff;
  double r_handoff = 0.0;
  PicardResult local;
};

/// Solution on [0, r_handoff] through the Picard map, started at (a, 0).
SeriesStart series_start(const VorticityModel& model, double a, double r_handoff,
                         std::size_t intervals = 256);

/// Solution from (a, 0) at r = 0 up to config.r_max: Picard start, then
/// Dormand-Prince 5(4) with PI step control.
Trajectory integrate(const VorticityModel& model, double a, const IntegrationConfig& config = {});

/// Steps the system from state y0 at r0 > 0 to config.r_max (which may lie below r0).
/// Points are returned in increasing r either way.
Trajectory integrate_from(const VorticityModel& model, double r0, PhasePoint y0,
                          const IntegrationConfig& config);

/// Backward solution from (psi_T, beta_T) at T >= 6 down to r_end in [sqrt(T^2-1), T).
Trajectory integrate_backward(const VorticityModel& model, double psi_T, double beta_T, double T,
                              double r_end, const IntegrationConfig& config = {});

/// int beta^2/r over one stored cell by 5-point Gauss-Legendre on the dense output.
double dissipation_over_cell(const Trajectory& traj, std::size_t i);

/// Largest R reachable with energy <= E: the largest |psi| with F(psi) <= E combined with
/// the kinetic bound beta^2 <= 2 (E - min F).
double radius_bound(const VorticityModel& model, double E);

}  // namespace vortexflow
