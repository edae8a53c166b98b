#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vortexflow/trajectory.hpp"
#include "vortexflow/vorticity.hpp"

namespace vortexflow {

/// Values on n+1 uniform nodes of [lo, hi] (n >= 64).
class GridFunction {
 public:
  GridFunction(double lo, double hi, std::size_t n, double fill = 0.0);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t intervals() const { return values_.size() - 1; }
  double step() const { return (hi_ - lo_) / static_cast<double>(intervals()); }
  double node(std::size_t i) const;

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

 private:
  double lo_, hi_;
  std::vector<double> values_;
};

struct PicardResult {
  GridFunction psi;
  GridFunction beta;  // -(1/r) int_0^r tau f(psi) dtau, 0 at r = 0
  std::size_t iterations = 0;
  double last_update = 0.0;   // sup |psi^{m+1} - psi^m| at exit
  double max_ball_excursion = 0.0;  // max over iterates of sup |psi^m - a|
  std::vector<double> updates;
};

/// Picard iteration psi <- a - int_0^r (1/xi) int_0^xi tau f(psi(tau)) dtau dxi on
/// [0, interval_hi], starting from psi = a. Throws FixedPointFailure after max_iter and
/// HypothesisViolation when an iterate leaves the ball |psi - a| <= eta |a| / 4.
PicardResult picard_solve(const VorticityModel& model, double a, double interval_hi,
                          std::size_t n = 1024, double tol = 1e-12, std::size_t max_iter = 200);

/// max over (up to 129) grid nodes of |psi(r) - a + int_0^r tau f(psi(tau)) ln(r / tau) dtau|,
/// the single-integral form of the Picard equation, by 8-point Gauss on each cell with a
/// 4-point Lagrange interpolant of the grid values.
double integral_equation_residual(const VorticityModel& model, double a, const GridFunction& psi);

/// Constants of the weighted-metric contraction on [sqrt(T^2-1), T].
struct ContractionConstants {
  double T = 6.0;
  double lambda_m = 0.0;  // metric parameter in (1, 3)
  double k = 0.0;         // exponential weight
  double zeta = 1.0;      // contraction factor
  double L = 0.0;
  double lambda_threshold = 0.0;  // where 44 ln x / (15 ln x + 2) = L
  double k_lower = 0.0;
  double k_upper = 0.0;
};

/// Chooses lambda_m, then k at the geometric midpoint of its admissible interval.
/// Throws DomainError for T < 6 or L outside (0, 5/2), InfeasibleConstants if empty.
ContractionConstants select_contraction_constants(double T, double L);

/// Each inequality of the constant chain, evaluated in floating point.
struct ContractionAudit {
  bool lambda_in_range = false;    // 1 < lambda_m < 3
  bool identity = false;           // (T + s) ln l == ln l / (T - s) to rounding, s = sqrt(T^2-1)
  bool above_eleven = false;       // (T + s) ln l > 11 ln l
  bool k_below_upper = false;      // k < (T + s) ln l
  bool k_above_first = false;      // k > l ln l
  bool k_above_second = false;     // k > L (5/4 l ln l + 1/2)
  bool byproduct = false;          // 11 ln l > L (15/4 ln l + 1/2)
  bool zeta_below_one = false;
  double identity_gap = 0.0;       // relative difference of the two identity sides
  bool all() const {
    return lambda_in_range && identity && above_eleven && k_below_upper && k_above_first &&
           k_above_second && byproduct && zeta_below_one;
  }
};
ContractionAudit audit_contraction_constants(const ContractionConstants& cc);

struct BanachResult {
  GridFunction psi;
  GridFunction beta;
  double empirical_factor = 0.0;  // largest observed ratio of successive weighted distances
  std::vector<double> distances;  // d(X^{m+1}, X^m)
  std::size_t iterations = 0;
};

/// Iterates the backward integral system on [sqrt(T^2-1), T] from the constant
/// (psi_T, beta_T) until the weighted distance drops below tol.
/// Throws ContractionViolation when successive ratios stay above zeta + 0.05,
/// FixedPointFailure after max_iter, PreconditionError when |beta_T| > eta |psi_T| / 8.
BanachResult banach_solve(const VorticityModel& model, double psi_T, double beta_T,
                          const ContractionConstants& constants, std::size_t n = 256,
                          double tol = 1e-13, std::size_t max_iter = 500);

/// Repeats banach_solve on [sqrt(T^2-1), T], [sqrt(T'^2-1), T'], ... while the left end
/// stays >= r_stop; each stage starts from the previous stage's left values.
std::vector<BanachResult> banach_chain(const VorticityModel& model, double psi_T, double beta_T,
                                       double T, double r_stop, std::size_t n = 256);

enum class EquilibriumVerdict { ReachedBefore6, AsymptoticOnly, NotReached, UniquenessContradiction };

const char* to_string(EquilibriumVerdict v);

struct DichotomyCertificate {
  EquilibriumVerdict verdict = EquilibriumVerdict::NotReached;
  double min_distance_before_6 = 0.0;
  double distance_at_rmax = 0.0;
  std::optional<double> late_hit;  // first r >= 6 with distance < 1e-8
  // Uniqueness probe: backward solve from (u0, 0) at the hit; deviation from the constant.
  std::optional<double> probe_deviation;
};

/// Distance of the trajectory to (u0, 0): |psi - u0| + |beta|.
/// Requires points up to r_max >= 50 (DomainError otherwise).
DichotomyCertificate equilibrium_dichotomy_certificate(const VorticityModel& model,
                                                       const Trajectory& trajectory);

}  // namespace vortexflow
