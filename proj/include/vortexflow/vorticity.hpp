#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

namespace vortexflow {

/// Hypothesis constants attached to a vorticity function.
///
/// Ranges required by the existence and rotation estimates:
/// eta in (3, 7/2], L in (0, 5/2), lambda_g in (1/2, 1), c in [0, 1), nu in (0, 1).
struct ConstantsLedger {
  double u0 = 1.0;        // positive zero of f
  double eta = 0.0;       // growth constant: |f| <= eta a near a
  double L = 0.0;         // Lipschitz constant on the local-existence interval
  double lambda_g = 0.0;  // integral of g >= psi g(psi) / (2 lambda_g)
  double c = 0.0;         // ring-bound offset
  double nu = 0.0;        // ring-bound exponent
  std::map<std::string, double> params;
};

/// Upper end of the admissible c2 range for the perturbed model, (3 - 2 sqrt 2) / (4 + 3 sqrt 2).
double example_c2_upper_bound();

/// A vorticity function f(u) = u - g(u) with its potential F(psi) = int_0^psi f.
///
/// Immutable after construction; every evaluator is a pure function, so a model can be
/// shared read-only between threads.
class VorticityModel {
 public:
  using Fn = std::function<double(double)>;

  /// `g_potential` is G(psi) = int_0^psi g, so that F(psi) = psi^2/2 - G(psi).
  VorticityModel(std::string id, Fn f, Fn g, Fn g_potential, ConstantsLedger ledger,
                 bool closed_form_potential, bool smooth_at_zero = false);

  /// Model known only through f; g = u - f(u) and F is computed by adaptive quadrature.
  static VorticityModel from_f(std::string id, Fn f, ConstantsLedger ledger,
                               bool smooth_at_zero = false);

  const std::string& id() const { return id_; }
  const ConstantsLedger& ledger() const { return ledger_; }
  bool closed_form_potential() const { return closed_form_; }
  // False when f is only C^1 away from the origin (all built-in models).
  bool smooth_at_zero() const { return smooth_at_zero_; }

  double f(double u) const { return f_(u); }
  double g(double u) const { return g_(u); }
  double g_potential(double psi) const;
  double potential(double psi) const;

  /// Copy with a replaced ledger; used to probe checks with forced constants.
  VorticityModel with_ledger(ConstantsLedger ledger) const;

 private:
  std::string id_;
  Fn f_;
  Fn g_;
  Fn g_potential_;
  ConstantsLedger ledger_;
  bool closed_form_;
  bool smooth_at_zero_;
};

enum class DomainCheck { Enforce, Skip };

/// f(u) = u - sign(u) sqrt|u|.
VorticityModel constantin_model();

/// f(u) = u - (1 + eps) sign(u) sqrt|u|; its E = 0 curve has its peak at (16/9)(1+eps)^2.
VorticityModel scaled_constantin_model(double eps);

/// f(u) = u - sign(u) sqrt|u| (1 + c1 - sin(c2 u^2 / (u^2 + 1))), c1 = sin(c2 / 2).
/// Throws ParameterDomainError unless 0 < c2 < example_c2_upper_bound() (or Skip).
VorticityModel example_model(double c2, DomainCheck check = DomainCheck::Enforce);

/// f(u) = u - sign(u) |u|^alpha, 0 < alpha < 1.
VorticityModel power_law_model(double alpha);

/// Selection by string id: "constantin", "example" (uses c2), "powerlaw" (uses alpha).
struct ModelSpec {
  std::string id = "constantin";
  double c2 = 0.02;
  double alpha = 0.5;
};
VorticityModel make_model(const ModelSpec& spec);

/// F(psi); closed form where the model provides one, quadrature otherwise.
double potential(const VorticityModel& model, double psi);

/// F(psi) by adaptive Simpson on f alone (relative tolerance 1e-10), ignoring any closed form.
double potential_by_quadrature(const VorticityModel& model, double psi);

/// The positive zero u0 of f: 200 probes on (0, 2] then bisection.
/// Throws HypothesisViolation when f does not change sign there.
double find_positive_zero(const VorticityModel& model);

}  // namespace vortexflow
