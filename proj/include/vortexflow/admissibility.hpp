#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vortexflow/kernels.hpp"
#include "vortexflow/vorticity.hpp"

namespace vortexflow {

enum class Verdict { Pass, Fail, NotApplicable };
const char* to_string(Verdict v);

/// Absolute slack allowed on every sampled inequality.
inline constexpr double kVerdictTolerance = 1e-10;

struct CheckRecord {
  std::string name;
  Verdict verdict = Verdict::Fail;
  std::vector<std::pair<std::string, double>> witnesses;  // insertion order is output order
  double tolerance = kVerdictTolerance;
  std::string note;

  // NotApplicable does not fail a report.
  bool passed() const { return verdict != Verdict::Fail; }
  double witness(const std::string& key) const;  // throws std::out_of_range
};

struct AdmissibilityReport {
  std::string model_id;
  std::vector<CheckRecord> checks;
  bool overall = false;
  const CheckRecord& find(const std::string& name) const;  // throws std::out_of_range
};

/// Sampling controls. Halton points start at index `seed` + 1.
struct SamplingOptions {
  std::uint64_t seed = 0;
  kernels::Exec exec = kernels::Exec::Parallel;
};

/// Growth interval [(1 - eta/4) a, (1 + eta/4) a] for the ledger's eta.
std::pair<double, double> growth_interval(const VorticityModel& model, double a);

/// max |f| over 10^4 evenly spaced points of the growth interval against eta * a,
/// together with eta in (3, 7/2].
CheckRecord check_growth(const VorticityModel& model, double a, const SamplingOptions& opt = {});

/// Largest difference quotient over 10^4 adjacent pairs of the growth interval against L,
/// together with L < 5/2 (and the c2 range for the perturbed model).
CheckRecord check_lipschitz(const VorticityModel& model, double a,
                            const SamplingOptions& opt = {});

/// G(psi) >= psi g(psi) / (2 lambda_g) and psi g(psi) >= 0 on 10^3 log-spaced |psi| in (0, 10^3].
CheckRecord check_lambda(const VorticityModel& model, const SamplingOptions& opt = {});

/// -c / R^nu <= psi g(psi) / R^2 <= (1 + c) / R^nu on 10^4 Halton pairs with |psi| <= R <= 10^3.
CheckRecord check_ring_bound(const VorticityModel& model, const SamplingOptions& opt = {});

/// Level-set sandwich between the E_{c1} and E_{c1 - c2} comparison energies on a 200 x 200
/// grid of [-4, 4]^2; NotApplicable for models other than the perturbed one.
CheckRecord check_level_set_sandwich(const VorticityModel& model,
                                     const SamplingOptions& opt = {});

/// The two comparison energies at (psi, beta): lower uses (1 + c1), upper (1 - (c2 - c1)).
std::pair<double, double> sandwich_bounds(const VorticityModel& model, double psi, double beta);

/// h(eta) = (3 eta / 4 - 1)^2 / (1 + eta / 4).
double growth_margin(double eta);

CheckRecord check_oddness(const VorticityModel& model, const SamplingOptions& opt = {});
CheckRecord check_decomposition(const VorticityModel& model, const SamplingOptions& opt = {});
CheckRecord check_zeros(const VorticityModel& model);
CheckRecord check_coercivity(const VorticityModel& model);
CheckRecord check_equilibrium_energy(const VorticityModel& model);
CheckRecord check_ledger_ranges(const VorticityModel& model);
/// Closed-form potential against the quadrature path at 50 points of [-50, 50].
CheckRecord check_potential_consistency(const VorticityModel& model);
/// Perturbed model only: 0 < c1 < c2 < bound, plus the documented 0.02 discrepancy witness.
CheckRecord check_parameter_domain(const VorticityModel& model);
/// Perturbed model only: h increasing on (3, 7/2] at 100 points and (1 + 3 c2 / 2)^2 <= h(10/3).
CheckRecord check_growth_constant(const VorticityModel& model);

/// Every hypothesis check; throws HypothesisViolation when f has no positive zero.
AdmissibilityReport full_report(const VorticityModel& model, const std::vector<double>& a_grid,
                                const SamplingOptions& opt = {});

}  // namespace vortexflow
