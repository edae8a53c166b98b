#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vortexflow/fixedpoint.hpp"
#include "vortexflow/integrator.hpp"
#include "vortexflow/kernels.hpp"
#include "vortexflow/trajectory.hpp"
#include "vortexflow/vorticity.hpp"

namespace vortexflow {

/// Annulus 1 + epsilon < R < 1 + delta together with the ring-bound constants (c, nu).
struct RingSpec {
  double epsilon = 0.05;
  double delta = 0.1;
  double c = 0.0;
  double nu = 0.5;
};

/// Throws ParameterDomainError unless delta > epsilon > (1+c)^(1/nu) - 1 >= 0.
RingSpec make_ring(double epsilon, double delta, double c, double nu);
RingSpec make_ring(double epsilon, double delta, const VorticityModel& model);

/// Angular rate -(-1 + 1/(2 r_minus) + (1+c)(1+epsilon)^(-nu)); positive once r_minus is large.
double angular_rate(const RingSpec& ring, double r_minus);

/// Lower gap bound pi / (3 - 2c/(1+epsilon)^nu).
double gap_lower_bound(const RingSpec& ring);

struct BoundChain {
  double two_eta_hat = 0.0;
  double middle = 0.0;  // (3 + c) / (1 + c)
  double right = 0.0;   // 3 - 2c / (1+epsilon)^nu
  bool holds = false;
};
/// 2 eta_hat < 2 < (3+c)/(1+c) <= 3 - 2c/(1+epsilon)^nu (the middle step is an equality at c = 0).
BoundChain ring_bound_chain(const RingSpec& ring, double r_minus);

struct RingEntry {
  double r_entry = 0.0;
  TrajectoryPoint state;
  double min_R_after = 0.0;  // over [r_entry, end of trajectory]
  double liminf_bound = 0.0;  // (1+c)^(1/nu)
};

/// First downward crossing of R = 1 + delta. Throws PreconditionError when a <= 8(1+delta).
std::optional<RingEntry> ring_entry(const Trajectory& traj, const RingSpec& ring);

/// First trajectory sample r >= r_floor where -1 + 1/(2r) + (1+c)(1+eps)^(-nu) <= -0.01.
std::optional<double> select_r_minus(const Trajectory& traj, const RingSpec& ring,
                                     double r_floor = 1.0);

struct CrossingChecks {
  bool rate_hypothesis = false;  // eta_rate > 0
  bool ordered = false;          // r_n^- < r_n^+ < r_{n+1}^-
  bool gaps_ok = false;
  bool linear_ok = false;
  bool upper_ok = false;
  bool divergence_ok = false;  // t_n >= s_n term by term
  double gap_lower = 0.0;
  double gap_upper = 0.0;
  double min_gap = 0.0;
  double max_gap = 0.0;
  double max_upper_excess = 0.0;  // max of r_n^+ - bound
  std::vector<double> witness_partial;     // partial sums of gap / (4 r_n^+)
  std::vector<double> comparison_partial;  // partial sums of the displayed comparison series
  bool all() const {
    return rate_hypothesis && ordered && gaps_ok && linear_ok && upper_ok && divergence_ok;
  }
};

struct CrossingSequence {
  std::vector<int> n;
  std::vector<double> r_minus;
  std::vector<double> r_plus;
  double eta_rate = 0.0;
  double r_start = 0.0;
  double r_end = 0.0;
  double theta_start = 0.0;
  std::pair<double, double> theta_offsets{3.0 * std::numbers::pi / 4.0, std::numbers::pi / 4.0};
  bool applicable = true;
  std::string note;  // reason when not applicable
  CrossingChecks checks;
};

/// Radii where theta = theta_i - 2 n pi + theta(r_start) on [r_start, r_end], with the gap,
/// linear and upper bounds evaluated at tolerance `tol`.
/// Throws PreconditionError unless theta0 > theta1 and theta0 - theta1 < 2 pi.
CrossingSequence crossing_sequence(const Trajectory& traj, double theta0, double theta1,
                                   double r_start, const RingSpec& ring,
                                   std::optional<double> r_end = std::nullopt,
                                   double tol = 1e-3);

struct RegionEntry {
  double r_cross = 0.0;
  TrajectoryPoint state;
  double energy_rate = 0.0;             // -beta^2 / r at the crossing
  std::optional<double> E_after;        // at the next recorded sample
  bool transversal = false;             // E strictly decreasing through the crossing
};

/// First E = 0 crossing. Throws PreconditionError when E(start) <= 0.
std::optional<RegionEntry> e_region_entry(const Trajectory& traj);

struct TransversalityReport {
  std::size_t crossings = 0;
  double min_abs_beta = 0.0;
  double max_residual = 0.0;  // max |beta' + beta / r|
  bool passed = false;
};

/// At every psi = 0 crossing with E > 0 and r > 0: |beta| > 1e-8 and |beta' + beta/r| < 1e-8,
/// with beta' evaluated from the model at (0, beta).
TransversalityReport transversality_check(const VorticityModel& model, const Trajectory& traj);

/// beta' from the system at psi = 0.
double vertical_axis_dbeta(const VorticityModel& model, double beta, double r);

enum class ShotOutcome { EntersLeft, EntersRight, OriginHit, NoEntry };
const char* to_string(ShotOutcome o);

struct ShotRecord {
  double a = 0.0;
  ShotOutcome outcome = ShotOutcome::NoEntry;
  double min_R = 0.0;
  double r_end = 0.0;
};

/// Integration settings for shooting trials: r_max = 1e5, points not recorded.
IntegrationConfig shooting_config();

/// Integrates from (a, 0) until the first E = 0 entry and classifies it by the sign of psi.
ShotRecord classify_shot(const VorticityModel& model, double a,
                         const IntegrationConfig& base = shooting_config());

/// Independent trials; Parallel and Serial give identical records.
std::vector<ShotRecord> classify_batch(const VorticityModel& model, const std::vector<double>& a,
                                       kernels::Exec exec = kernels::Exec::Parallel,
                                       const IntegrationConfig& base = shooting_config());

/// Default coarse scan: 2..20 in unit steps, then 30..200 in steps of 10.
std::vector<double> default_shooting_grid();

/// First adjacent pair with different outcomes, if any.
std::optional<std::pair<ShotRecord, ShotRecord>> first_change(const std::vector<ShotRecord>& scan);

struct ShootingResult {
  double a_star = 0.0;
  double a_lo = 0.0;
  double a_hi = 0.0;
  std::vector<ShotRecord> history;
  double min_R_achieved = 0.0;
  bool origin_hit = false;
};

/// Bisection on a. Throws NoBracketError when both ends classify alike, and
/// NumericalToleranceError when a trial never enters E <= 0.
ShootingResult shoot_for_origin(const VorticityModel& model, double a_lo, double a_hi, double tol,
                                const IntegrationConfig& base = shooting_config());

struct AnalysisOptions {
  std::optional<RingSpec> ring;
  double theta0 = 3.0 * std::numbers::pi / 4.0;
  double theta1 = std::numbers::pi / 4.0;
  bool dichotomy = true;
};

struct AnalysisReport {
  std::string model_id;
  double a = 0.0;
  std::string termination;
  std::optional<RingEntry> ring;
  std::optional<RingSpec> ring_spec;
  std::optional<RegionEntry> region;
  std::optional<CrossingSequence> crossings;
  std::optional<TransversalityReport> transversality;
  std::optional<DichotomyCertificate> dichotomy;
  std::optional<ShootingResult> shooting;
  std::vector<std::string> notes;  // analyses skipped and why
};

/// Every event analysis applicable to a stored forward trajectory; inapplicable ones are
/// skipped with a note rather than raising.
AnalysisReport analyze(const VorticityModel& model, const Trajectory& traj,
                       const AnalysisOptions& options = {});

}  // namespace vortexflow
