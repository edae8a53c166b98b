#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vortexflow/vorticity.hpp"

namespace vortexflow {

struct PhasePoint {
  double psi = 0.0;
  double beta = 0.0;
};

struct PolarPoint {
  double R = 0.0;
  double theta = 0.0;  // unwrapped
};

/// The closed curve E = 0 bounding the two lobes of E <= 0.
struct LevelSetGeometry {
  double psi_plus = 0.0;   // smooth peak (psi_plus, 0) of the right lobe
  double psi_minus = 0.0;  // left end of the left lobe on the psi-axis
  std::vector<PhasePoint> samples;  // quadrant-I branch, beta = sqrt(-2 F(psi))
  double peak_curvature = 0.0;
};

/// E(psi, beta) = beta^2/2 + F(psi).
double energy(const VorticityModel& model, PhasePoint p);

/// dE/dr = -beta^2 / r along solutions. Throws DomainError for r <= 0.
double energy_rate(PhasePoint p, double r);

/// E'' = -2 beta beta'/r + beta^2/r^2; defined at psi = 0 for every model.
double energy_second(const VorticityModel& model, PhasePoint p, double r);

/// Second and third r-derivatives of E along the flow.
///
/// E'' = -2 beta beta'/r + beta^2/r^2 and
/// E''' = -(2/r) beta'^2 + (2 beta/r)(-beta'' + 2 beta'/r - beta/r^2), with beta'' obtained
/// by differentiating the system (f' by central differences, step 1e-6 (1 + |psi|)).
/// Throws NotDifferentiable when the difference stencil reaches psi = 0 for a model
/// that is not smooth there.
std::pair<double, double> energy_second_third(const VorticityModel& model, PhasePoint p, double r);

/// Peak, left end and quadrant-I polyline (n_samples points) of E = 0.
/// Throws HypothesisViolation when F(u0) >= 0 or no root of F is found.
LevelSetGeometry level_set_geometry(const VorticityModel& model, std::size_t n_samples = 1000);

/// R and theta; theta is taken on the branch nearest prev_theta when given,
/// the principal value in (-pi, pi] otherwise. Empty at the origin.
std::optional<PolarPoint> to_polar(PhasePoint p, std::optional<double> prev_theta = std::nullopt);

/// theta' = -1 - sin(2 theta)/(2 r) + psi g(psi)/R^2 with psi = R cos(theta).
/// Empty at the origin (R = 0). Throws DomainError for r <= 0.
std::optional<double> theta_rhs(const VorticityModel& model, PolarPoint pp, double r);

/// Lower and upper bound on theta' while E > 0: (-1 - 1/(2r), -(1 - lambda_g) + 1/(2r)).
std::pair<double, double> theta_envelope(double lambda_g, double r);

/// Scale factor iota > 0 such that iota (psi, beta) lies on E = 0 (the first
/// crossing along the ray from the origin). Closed form (16/9)|psi|^3/R^4 for the
/// Constantin model; bisection otherwise. Empty when the ray misses the curve.
std::optional<double> iota(const VorticityModel& model, PhasePoint p);

}  // namespace vortexflow
