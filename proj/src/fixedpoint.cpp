#include "vortexflow/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vortexflow/errors.hpp"
#include "vortexflow/quadrature.hpp"

namespace vortexflow {

GridFunction::GridFunction(double lo, double hi, std::size_t n, double fill)
    : lo_(lo), hi_(hi), values_(n + 1, fill) {
  if (!(lo < hi)) throw DomainError("GridFunction: need lo < hi");
  if (n < 64) throw DomainError("GridFunction: need at least 64 intervals");
}

double GridFunction::node(std::size_t i) const {
  if (i == intervals()) return hi_;
  return lo_ + step() * static_cast<double>(i);
}

PicardResult picard_solve(const VorticityModel& model, double a, double interval_hi,
                          std::size_t n, double tol, std::size_t max_iter) {
  if (!(std::abs(a) >= 1.0)) throw DomainError("picard_solve: need |a| >= 1");
  if (!(interval_hi > 0.0 && interval_hi <= 1.0)) {
    throw DomainError("picard_solve: interval end must lie in (0, 1]");
  }
  PicardResult res{GridFunction(0.0, interval_hi, n, a), GridFunction(0.0, interval_hi, n), 0, 0.0,
                   0.0, {}};
  const double radius = model.ledger().eta * std::abs(a) / 4.0;
  const double h = res.psi.step();
  std::vector<double> integrand(n + 1), mean(n + 1), next(n + 1);

  for (std::size_t m = 1; m <= max_iter; ++m) {
    auto& psi = res.psi.values();
    for (std::size_t i = 0; i <= n; ++i) integrand[i] = res.psi.node(i) * model.f(psi[i]);
    const auto inner = quad::cumulative_integral(integrand, h);
    mean[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) mean[i] = inner[i] / res.psi.node(i);
    const auto outer = quad::cumulative_integral(mean, h);

    double update = 0.0, excursion = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      next[i] = a - outer[i];
      update = std::max(update, std::abs(next[i] - psi[i]));
      excursion = std::max(excursion, std::abs(next[i] - a));
    }
    res.max_ball_excursion = std::max(res.max_ball_excursion, excursion);
    if (excursion > radius * (1.0 + 1e-12)) {
      throw HypothesisViolation("picard_solve: iterate left the ball |psi - a| <= eta a / 4");
    }
    psi.swap(next);
    for (std::size_t i = 0; i <= n; ++i) res.beta[i] = -mean[i];
    res.iterations = m;
    res.last_update = update;
    res.updates.push_back(update);
    if (update < tol) return res;
  }
  throw FixedPointFailure("picard_solve: no convergence after " + std::to_string(max_iter) +
                          " iterations");
}

ContractionConstants select_contraction_constants(double T, double L) {
  if (!(T >= 6.0)) throw DomainError("select_contraction_constants: need T >= 6");
  if (!(L > 0.0 && L < 2.5)) throw DomainError("select_contraction_constants: need L in (0, 5/2)");

  // x -> 44 x / (15 x + 2) is increasing; find where it reaches L on (0, ln 3).
  const auto margin = [L](double x) { return 44.0 * x / (15.0 * x + 2.0) - L; };
  double lo = 0.0, hi = std::log(3.0);
  if (!(margin(hi) > 0.0)) throw InfeasibleConstants("no lambda in (1, 3) for this L");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (margin(mid) > 0.0 ? hi : lo) = mid;
  }
  ContractionConstants cc;
  cc.T = T;
  cc.L = L;
  cc.lambda_threshold = std::exp(hi);
  cc.lambda_m = 0.5 * (cc.lambda_threshold + 3.0);
  const double lnl = std::log(cc.lambda_m);
  const double s = std::sqrt(T * T - 1.0);
  cc.k_upper = (T + s) * lnl;
  cc.k_lower = std::max(cc.lambda_m * lnl, L * (1.25 * cc.lambda_m * lnl + 0.5));
  if (!(cc.k_upper > cc.k_lower)) {
    throw InfeasibleConstants("empty admissible interval for k");
  }
  cc.k = std::sqrt(cc.k_lower * cc.k_upper);
  cc.zeta = cc.k_lower / cc.k;
  return cc;
}

BanachResult banach_solve(const VorticityModel& model, double psi_T, double beta_T,
                          const ContractionConstants& constants, std::size_t n, double tol,
                          std::size_t max_iter) {
  const double T = constants.T;
  if (!(T >= 6.0)) throw DomainError("banach_solve: need T >= 6");
  const double eta = model.ledger().eta;
  const double a = std::abs(psi_T);
  if (std::abs(beta_T) > eta * a / 8.0) {
    throw PreconditionError("banach_solve: need |beta_T| <= eta |psi_T| / 8");
  }
  const double r0 = std::sqrt(T * T - 1.0);
  BanachResult res{GridFunction(r0, T, n, psi_T), GridFunction(r0, T, n, beta_T), 0.0, {}, 0};
  const double h = res.psi.step();
  const double k = constants.k;
  std::vector<double> weight(n + 1), sf(n + 1), psi_next(n + 1), beta_next(n + 1);
  // Weights normalised to 1 at the left end; ratios of distances are unaffected.
  for (std::size_t i = 0; i <= n; ++i) weight[i] = std::exp(-k * (res.psi.node(i) - r0));

  const double scale = std::max({1.0, std::abs(psi_T), std::abs(beta_T)});
  const double ratio_floor = 1e-11 * scale;
  int violations = 0;
  for (std::size_t m = 1; m <= max_iter; ++m) {
    auto& psi = res.psi.values();
    auto& beta = res.beta.values();
    for (std::size_t i = 0; i <= n; ++i) sf[i] = res.psi.node(i) * model.f(psi[i]);
    const auto int_beta = quad::cumulative_integral(beta, h);
    const auto int_sf = quad::cumulative_integral(sf, h);
    double dist = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double r = res.psi.node(i);
      psi_next[i] = psi_T - (int_beta[n] - int_beta[i]);
      beta_next[i] = beta_T * T / r + (int_sf[n] - int_sf[i]) / r;
      const double diff = std::max(std::abs(psi_next[i] - psi[i]), std::abs(beta_next[i] - beta[i]));
      dist = std::max(dist, diff * weight[i]);
    }
    psi.swap(psi_next);
    beta.swap(beta_next);
    res.iterations = m;
    if (!res.distances.empty() && res.distances.back() > ratio_floor) {
      const double ratio = dist / res.distances.back();
      res.empirical_factor = std::max(res.empirical_factor, ratio);
      violations = ratio > constants.zeta + 0.05 ? violations + 1 : 0;
      if (violations >= 3) {
        throw ContractionViolation("banach_solve: distance ratio persistently above zeta");
      }
    }
    res.distances.push_back(dist);
    if (dist < tol) {
      if (res.empirical_factor > constants.zeta + 0.05) {
        throw ContractionViolation("banach_solve: empirical factor exceeds zeta + 0.05");
      }
      return res;
    }
  }
  throw FixedPointFailure("banach_solve: no convergence after " + std::to_string(max_iter) +
                          " iterations");
}

std::vector<BanachResult> banach_chain(const VorticityModel& model, double psi_T, double beta_T,
                                       double T, double r_stop, std::size_t n) {
  std::vector<BanachResult> stages;
  const double stop = std::max(6.0, r_stop);
  while (T >= stop) {
    const auto cc = select_contraction_constants(T, model.ledger().L);
    stages.push_back(banach_solve(model, psi_T, beta_T, cc, n));
    const auto& last = stages.back();
    psi_T = last.psi[0];
    beta_T = last.beta[0];
    T = last.psi.lo();
  }
  return stages;
}

const char* to_string(EquilibriumVerdict v) {
  switch (v) {
    case EquilibriumVerdict::ReachedBefore6: return "ReachedBefore6";
    case EquilibriumVerdict::AsymptoticOnly: return "AsymptoticOnly";
    case EquilibriumVerdict::NotReached: return "NotReached";
    case EquilibriumVerdict::UniquenessContradiction: return "UniquenessContradiction";
  }
  return "?";
}

DichotomyCertificate equilibrium_dichotomy_certificate(const VorticityModel& model,
                                                       const Trajectory& trajectory) {
  if (trajectory.points.empty() || trajectory.points.back().r < 50.0) {
    throw DomainError("equilibrium certificate: trajectory must reach r >= 50");
  }
  const double u0 = find_positive_zero(model);
  const auto distance = [u0](const TrajectoryPoint& p) {
    return std::abs(p.psi - u0) + std::abs(p.beta);
  };
  constexpr double kHit = 1e-8;

  DichotomyCertificate cert;
  cert.min_distance_before_6 = INFINITY;
  double best_late = INFINITY;
  double best_late_r = 6.0;
  for (const auto& p : trajectory.points) {
    const double d = distance(p);
    if (p.r < 6.0) {
      cert.min_distance_before_6 = std::min(cert.min_distance_before_6, d);
    } else {
      if (!cert.late_hit && d < kHit) cert.late_hit = p.r;
      if (d < best_late) {
        best_late = d;
        best_late_r = p.r;
      }
    }
  }
  cert.distance_at_rmax = distance(trajectory.points.back());

  if (cert.min_distance_before_6 < kHit) {
    cert.verdict = EquilibriumVerdict::ReachedBefore6;
    return cert;
  }
  const auto probe = [&](double T0) {
    const auto cc = select_contraction_constants(std::max(6.0, T0), model.ledger().L);
    const auto sol = banach_solve(model, u0, 0.0, cc);
    double dev = 0.0;
    for (std::size_t i = 0; i < sol.psi.values().size(); ++i) {
      dev = std::max(dev, std::abs(sol.psi[i] - u0) + std::abs(sol.beta[i]));
    }
    return dev;
  };
  if (cert.late_hit) {
    cert.probe_deviation = probe(*cert.late_hit);
    cert.verdict = EquilibriumVerdict::UniquenessContradiction;
  } else if (cert.distance_at_rmax < 1e-3) {
    cert.probe_deviation = probe(best_late_r);
    cert.verdict = EquilibriumVerdict::AsymptoticOnly;
  } else {
    cert.verdict = EquilibriumVerdict::NotReached;
  }
  return cert;
}

double integral_equation_residual(const VorticityModel& model, double a, const GridFunction& psi) {
  static constexpr double kNodes[8] = {-0.9602898564975363, -0.7966664774136267,
                                       -0.5255324099163290, -0.1834346424956498,
                                       0.1834346424956498,  0.5255324099163290,
                                       0.7966664774136267,  0.9602898564975363};
  static constexpr double kWeights[8] = {0.1012285362903763, 0.2223810344533745,
                                         0.3137066458778873, 0.3626837833783620,
                                         0.3626837833783620, 0.3137066458778873,
                                         0.2223810344533745, 0.1012285362903763};
  const std::size_t n = psi.intervals();
  const double h = psi.step();
  const auto interp = [&](double r) {
    std::size_t j = static_cast<std::size_t>((r - psi.lo()) / h);
    j = std::min(j, n - 1);
    const std::size_t s = std::clamp<std::size_t>(j, 1, n - 2) - 1;  // stencil s..s+3
    double value = 0.0;
    for (std::size_t p = 0; p < 4; ++p) {
      double w = 1.0;
      for (std::size_t q = 0; q < 4; ++q) {
        if (q != p) w *= (r - psi.node(s + q)) / (psi.node(s + p) - psi.node(s + q));
      }
      value += w * psi[s + p];
    }
    return value;
  };
  const std::size_t stride = std::max<std::size_t>(1, n / 128);
  double worst = 0.0;
  for (std::size_t i = stride; i <= n; i += stride) {
    const double r = psi.node(i);
    double integral = 0.0;
    const auto integrand = [&](double tau) { return tau * model.f(interp(tau)) * std::log(r / tau); };
    // First cell through tau = h s^2, which smooths the tau ln tau endpoint.
    for (int g = 0; g < 8; ++g) {
      const double sg = 0.5 * (1.0 + kNodes[g]);
      integral += 0.5 * kWeights[g] * 2.0 * h * sg * integrand(h * sg * sg);
    }
    for (std::size_t c = 1; c < i; ++c) {
      const double mid = psi.node(c) + 0.5 * h;
      for (int g = 0; g < 8; ++g) integral += 0.5 * h * kWeights[g] * integrand(mid + 0.5 * h * kNodes[g]);
    }
    worst = std::max(worst, std::abs(psi[i] - a + integral));
  }
  return worst;
}

ContractionAudit audit_contraction_constants(const ContractionConstants& cc) {
  ContractionAudit au;
  const double lnl = std::log(cc.lambda_m);
  const double s = std::sqrt(cc.T * cc.T - 1.0);
  const double upper = (cc.T + s) * lnl;
  const double identity_rhs = lnl / (cc.T - s);
  au.identity_gap = std::abs(upper - identity_rhs) / upper;
  // T - s loses digits to cancellation, so the identity holds to a few hundred ulps only.
  au.identity = au.identity_gap <= 1e-12;
  au.lambda_in_range = cc.lambda_m > 1.0 && cc.lambda_m < 3.0;
  au.above_eleven = upper > 11.0 * lnl;
  au.k_below_upper = cc.k < upper;
  au.k_above_first = cc.k > cc.lambda_m * lnl;
  au.k_above_second = cc.k > cc.L * (1.25 * cc.lambda_m * lnl + 0.5);
  au.byproduct = 11.0 * lnl > cc.L * (3.75 * lnl + 0.5);
  au.zeta_below_one = cc.zeta < 1.0;
  return au;
}

}  // namespace vortexflow
