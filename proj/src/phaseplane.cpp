#include "vortexflow/phaseplane.hpp"

#include <cmath>
#include <numbers>

#include "vortexflow/errors.hpp"
#include "vortexflow/sampling.hpp"

namespace vortexflow {
namespace {

constexpr double kPi = std::numbers::pi;

// Bisection for an increasing-through-zero bracket [lo, hi] of fn (fn(lo) <= 0 < fn(hi)).
template <class Fn>
double bisect_up(const Fn& fn, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (fn(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Root of F on the far side of the lobe: scan from `from` towards `to` and
// return the last sign change (non-positive to positive).
double outer_root_of_potential(const VorticityModel& model, double from, double to) {
  constexpr std::size_t kProbes = 480;
  const auto nodes = linspace(from, to, kProbes);
  std::optional<std::size_t> last;
  double prev = model.potential(nodes[0]);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double cur = model.potential(nodes[i]);
    if (prev <= 0.0 && cur > 0.0) last = i;
    prev = cur;
  }
  if (!last) {
    throw HypothesisViolation("level set: F has no root between " + std::to_string(from) +
                              " and " + std::to_string(to));
  }
  const double a = nodes[*last - 1], b = nodes[*last];
  if (a < b) return bisect_up([&](double x) { return model.potential(x); }, a, b);
  return -bisect_up([&](double x) { return model.potential(-x); }, -a, -b);
}

}  // namespace

double energy(const VorticityModel& model, PhasePoint p) {
  return 0.5 * p.beta * p.beta + model.potential(p.psi);
}

double energy_rate(PhasePoint p, double r) {
  if (!(r > 0.0)) throw DomainError("energy_rate: r must be positive");
  return -p.beta * p.beta / r;
}

double energy_second(const VorticityModel& model, PhasePoint p, double r) {
  if (!(r > 0.0)) throw DomainError("energy_second: r must be positive");
  const double dbeta = -p.beta / r - model.f(p.psi);
  return -2.0 * p.beta * dbeta / r + p.beta * p.beta / (r * r);
}

std::pair<double, double> energy_second_third(const VorticityModel& model, PhasePoint p,
                                              double r) {
  if (!(r > 0.0)) throw DomainError("energy_second_third: r must be positive");
  const double beta = p.beta;
  const double dbeta = -beta / r - model.f(p.psi);
  const double e2 = energy_second(model, p, r);

  const double h = 1e-6 * (1.0 + std::abs(p.psi));
  if (!model.smooth_at_zero() && std::abs(p.psi) <= h) {
    throw NotDifferentiable("energy_second_third: f is not differentiable at psi = 0");
  }
  const double fprime = (model.f(p.psi + h) - model.f(p.psi - h)) / (2.0 * h);
  const double ddbeta = -dbeta / r + beta / (r * r) - fprime * beta;
  const double e3 = -(2.0 / r) * dbeta * dbeta +
                    (2.0 * beta / r) * (-ddbeta + 2.0 * dbeta / r - beta / (r * r));
  return {e2, e3};
}

LevelSetGeometry level_set_geometry(const VorticityModel& model, std::size_t n_samples) {
  const double u0 = find_positive_zero(model);
  if (!(model.potential(u0) < 0.0)) {
    throw HypothesisViolation("level set: F(u0) >= 0, no lobe of E <= 0");
  }
  LevelSetGeometry geo;
  geo.psi_plus = outer_root_of_potential(model, u0, 16.0);
  geo.psi_minus = outer_root_of_potential(model, -u0, -16.0);

  const auto psis = linspace(0.0, geo.psi_plus, n_samples > 1 ? n_samples - 1 : 1);
  geo.samples.reserve(psis.size());
  for (double psi : psis) {
    const double F = model.potential(psi);
    geo.samples.push_back({psi, F < 0.0 ? std::sqrt(-2.0 * F) : 0.0});
  }

  // Near the peak the curve is a graph psi(beta); 5-point differences in beta.
  const double h = 1e-2;
  const auto psi_of_beta = [&](double beta) {
    const double target = -0.5 * beta * beta;
    return bisect_up([&](double x) { return model.potential(x) - target; }, u0, geo.psi_plus);
  };
  double pts[5];
  for (int j = 0; j < 5; ++j) pts[j] = psi_of_beta((j - 2) * h);
  const double d1 = (pts[0] - 8.0 * pts[1] + 8.0 * pts[3] - pts[4]) / (12.0 * h);
  const double d2 = (-pts[0] + 16.0 * pts[1] - 30.0 * pts[2] + 16.0 * pts[3] - pts[4]) / (12.0 * h * h);
  geo.peak_curvature = std::abs(d2) / std::pow(1.0 + d1 * d1, 1.5);
  return geo;
}

std::optional<PolarPoint> to_polar(PhasePoint p, std::optional<double> prev_theta) {
  const double R = std::hypot(p.psi, p.beta);
  if (R == 0.0) return std::nullopt;
  double theta = std::atan2(p.beta, p.psi);
  if (prev_theta) {
    theta += 2.0 * kPi * std::round((*prev_theta - theta) / (2.0 * kPi));
  }
  return PolarPoint{R, theta};
}

std::optional<double> theta_rhs(const VorticityModel& model, PolarPoint pp, double r) {
  if (!(r > 0.0)) throw DomainError("theta_rhs: r must be positive");
  if (pp.R == 0.0) return std::nullopt;
  const double psi = pp.R * std::cos(pp.theta);
  return -1.0 - std::sin(2.0 * pp.theta) / (2.0 * r) + psi * model.g(psi) / (pp.R * pp.R);
}

std::pair<double, double> theta_envelope(double lambda_g, double r) {
  return {-1.0 - 1.0 / (2.0 * r), -(1.0 - lambda_g) + 1.0 / (2.0 * r)};
}

std::optional<double> iota(const VorticityModel& model, PhasePoint p) {
  const double R2 = p.psi * p.psi + p.beta * p.beta;
  if (R2 == 0.0 || p.psi == 0.0) return std::nullopt;
  if (model.id() == "constantin") {
    const double a = std::abs(p.psi);
    return (16.0 / 9.0) * a * a * a / (R2 * R2);
  }
  const auto e = [&](double s) { return energy(model, {s * p.psi, s * p.beta}); };
  double upper = 2.0 / std::abs(p.psi);
  try {
    upper = level_set_geometry(model, 2).psi_plus / std::abs(p.psi) + 1.0;
  } catch (const HypothesisViolation&) {
    return std::nullopt;
  }
  const auto probes = logspace(upper * 1e-12, upper, 600);
  std::optional<double> neg;
  for (double s : probes) {
    const double val = e(s);
    if (val < 0.0) {
      neg = s;
    } else if (neg) {
      return bisect_up(e, *neg, s);
    }
  }
  return std::nullopt;
}

}  // namespace vortexflow
