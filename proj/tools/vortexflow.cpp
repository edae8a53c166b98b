// vortexflow command-line front end.
//
//   vortexflow check    --model example --c2 0.02 --a 1,10,100
//   vortexflow simulate --model constantin --a 100 --rmax 10000 --ring 0.05:0.1
//   vortexflow portrait --a 5,10 --rmax 100
//   vortexflow shoot    --a 3,4 --tol 1e-6
//   vortexflow picard   --a 2
//   vortexflow banach   --psiT 1 --betaT 0 --T 6
//   vortexflow verify-paper
//
// Exit codes: 0 success, 1 a check or criterion failed, 2 usage or parameter error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vortexflow/acceptance.hpp"
#include "vortexflow/admissibility.hpp"
#include "vortexflow/analysis.hpp"
#include "vortexflow/errors.hpp"
#include "vortexflow/fixedpoint.hpp"
#include "vortexflow/integrator.hpp"
#include "vortexflow/phaseplane.hpp"
#include "vortexflow/report_io.hpp"

namespace vf = vortexflow;
namespace fs = std::filesystem;
using vf::io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct RunConfig {
  vf::ModelSpec model;
  std::vector<double> a;
  std::optional<double> r_max;
  std::string ring;  // "eps:delta"
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::string out = "vortexflow-out";
  std::uint64_t seed = 0;
  // command specific
  double shoot_tol = 1e-6;
  double picard_interval = 1.0;
  std::size_t picard_intervals = 1024;
  double psi_T = 1.0;
  double beta_T = 0.0;
  double T = 6.0;
};

std::string fmt(const char* pattern, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string a_tag(double a) { return fmt("%.10g", a); }

fs::path out_dir(const RunConfig& rc) {
  fs::path p(rc.out);
  fs::create_directories(p);
  return p;
}

void save(const fs::path& path, const std::string& text) { vf::io::write_file(path.string(), text); }

void save_json(const fs::path& path, const Json& doc) {
  std::ostringstream s;
  vf::io::write_json(s, doc);
  save(path, s.str());
}

Json model_json(const vf::VorticityModel& m) {
  return {{"id", m.id()}, {"ledger", vf::io::to_json(m.ledger())}};
}

std::optional<vf::RingSpec> parse_ring(const RunConfig& rc, const vf::VorticityModel& m) {
  if (rc.ring.empty()) return std::nullopt;
  const auto colon = rc.ring.find(':');
  if (colon == std::string::npos) throw vf::ParameterDomainError("--ring expects eps:delta");
  double eps = 0.0, delta = 0.0;
  try {
    eps = std::stod(rc.ring.substr(0, colon));
    delta = std::stod(rc.ring.substr(colon + 1));
  } catch (const std::exception&) {
    throw vf::ParameterDomainError("--ring expects two numbers, eps:delta");
  }
  return vf::make_ring(eps, delta, m);
}

vf::IntegrationConfig integration_config(const RunConfig& rc, double default_rmax) {
  vf::IntegrationConfig cfg;
  cfg.r_max = rc.r_max.value_or(default_rmax);
  if (rc.tol_rel) cfg.rel_tol = *rc.tol_rel;
  if (rc.tol_abs) cfg.abs_tol = *rc.tol_abs;
  cfg.validate();
  return cfg;
}

Json config_json(const vf::IntegrationConfig& cfg) {
  return {{"r_max", cfg.r_max},       {"rel_tol", cfg.rel_tol},
          {"abs_tol", cfg.abs_tol},   {"r_handoff", cfg.r_handoff},
          {"max_step", cfg.max_step}, {"origin_radius", cfg.origin_radius}};
}

int cmd_check(const RunConfig& rc) {
  const auto model = vf::make_model(rc.model);
  const std::vector<double> grid = rc.a.empty() ? std::vector<double>{1.0, 10.0, 100.0} : rc.a;
  const auto rep = vf::full_report(model, grid, {rc.seed, vf::kernels::Exec::Parallel});
  Json doc = vf::io::to_json(rep);
  doc["a_grid"] = grid;
  doc["seed"] = rc.seed;
  save_json(out_dir(rc) / "admissibility.json", doc);
  for (const auto& c : rep.checks) {
    std::printf("%-24s %s\n", c.name.c_str(), vf::to_string(c.verdict));
  }
  std::printf("overall: %s\n", rep.overall ? "pass" : "fail");
  return rep.overall ? kOk : kFailed;
}

int cmd_simulate(const RunConfig& rc) {
  const auto model = vf::make_model(rc.model);
  const auto ring = parse_ring(rc, model);
  auto cfg = integration_config(rc, 100.0);
  cfg.events.push_back(vf::energy_zero_event());
  if (ring) {
    cfg.events.push_back(vf::radius_event(1.0 + ring->delta));
    cfg.events.push_back(vf::radius_event(1.0 + ring->epsilon));
  }
  const std::vector<double> amps = rc.a.empty() ? std::vector<double>{10.0} : rc.a;
  const auto dir = out_dir(rc);
  int code = kOk;
  for (double a : amps) {
    const auto traj = vf::integrate(model, a, cfg);
    std::ostringstream csv;
    vf::io::write_trajectory_csv(csv, traj);
    save(dir / ("trajectory_a" + a_tag(a) + ".csv"), csv.str());

    vf::AnalysisOptions opts;
    opts.ring = ring;
    const auto rep = vf::analyze(model, traj, opts);
    Json doc = vf::io::document("simulation");
    doc["model"] = model_json(model);
    doc["a"] = a;
    doc["integration"] = config_json(cfg);
    doc["trajectory"] = vf::io::trajectory_summary(traj);
    doc["analysis"] = vf::io::to_json(rep);
    save_json(dir / ("simulation_a" + a_tag(a) + ".json"), doc);
    if (rep.crossings && !rep.crossings->n.empty()) {
      std::ostringstream cs;
      vf::io::write_crossings_csv(cs, *rep.crossings);
      save(dir / ("crossings_a" + a_tag(a) + ".csv"), cs.str());
    }

    const std::string r_entry = rep.ring ? fmt("%.12g", rep.ring->r_entry) : "none";
    const std::string r_cross = rep.region ? fmt("%.12g", rep.region->r_cross) : "none";
    std::printf("a=%s points=%zu r_entry=%s r_cross=%s termination=%s\n", a_tag(a).c_str(),
                traj.points.size(), r_entry.c_str(), r_cross.c_str(),
                vf::to_string(traj.termination));
    if (traj.termination == vf::Termination::StepFailure) code = kNumerical;
  }
  return code;
}

int cmd_portrait(const RunConfig& rc) {
  if (rc.a.empty()) throw vf::ParameterDomainError("portrait: --a must list at least one amplitude");
  const auto model = vf::make_model(rc.model);
  const auto cfg = integration_config(rc, 100.0);
  std::vector<vf::Trajectory> trajs;
  trajs.reserve(rc.a.size());
  for (double a : rc.a) {
    trajs.push_back(vf::integrate(model, a, cfg));
    if (trajs.back().termination == vf::Termination::StepFailure) {
      throw vf::NumericalToleranceError("portrait: integration failed for a = " + a_tag(a));
    }
  }
  vf::io::PortraitInput in;
  in.model = &model;
  for (const auto& t : trajs) in.trajectories.push_back(&t);
  in.level_set = vf::level_set_geometry(model);
  in.ring = parse_ring(rc, model);
  const auto dir = out_dir(rc);
  save(dir / "portrait.svg", vf::io::render_portrait_svg(in));
  std::ostringstream ls;
  vf::io::write_level_set_csv(ls, in.level_set);
  save(dir / "level_set.csv", ls.str());
  std::printf("portrait: %zu trajectories, psi_plus=%.12g -> %s\n", trajs.size(),
              in.level_set.psi_plus, (dir / "portrait.svg").string().c_str());
  return kOk;
}

int cmd_shoot(const RunConfig& rc) {
  const auto model = vf::make_model(rc.model);
  auto base = vf::shooting_config();
  if (rc.r_max) base.r_max = *rc.r_max;
  if (rc.tol_rel) base.rel_tol = *rc.tol_rel;
  if (rc.tol_abs) base.abs_tol = *rc.tol_abs;
  base.validate();
  Json doc = vf::io::document("shooting");
  doc["model"] = model_json(model);
  double lo = 0.0, hi = 0.0;
  if (rc.a.size() == 2) {
    lo = rc.a[0];
    hi = rc.a[1];
  } else if (rc.a.empty()) {
    const auto grid = vf::default_shooting_grid();
    const auto scan = vf::classify_batch(model, grid, vf::kernels::Exec::Parallel, base);
    Json js = Json::array();
    for (const auto& s : scan) js.push_back({{"a", s.a}, {"outcome", vf::to_string(s.outcome)}});
    doc["scan"] = js;
    const auto change = vf::first_change(scan);
    if (!change) throw vf::NoBracketError("shoot: no classification change on the scan grid");
    lo = change->first.a;
    hi = change->second.a;
  } else {
    throw vf::ParameterDomainError("shoot: --a takes a bracket a_lo,a_hi (or nothing to scan)");
  }
  const auto res = vf::shoot_for_origin(model, lo, hi, rc.shoot_tol, base);
  doc["tol"] = rc.shoot_tol;
  doc["result"] = vf::io::to_json(res);
  save_json(out_dir(rc) / "shooting.json", doc);
  std::printf("a_star=%.12g bracket=[%.12g, %.12g] trials=%zu min_R=%.6g origin_hit=%s\n",
              res.a_star, res.a_lo, res.a_hi, res.history.size(), res.min_R_achieved,
              res.origin_hit ? "yes" : "no");
  return kOk;
}

int cmd_picard(const RunConfig& rc) {
  const auto model = vf::make_model(rc.model);
  const std::vector<double> amps = rc.a.empty() ? std::vector<double>{2.0} : rc.a;
  const auto dir = out_dir(rc);
  for (double a : amps) {
    const auto res = vf::picard_solve(model, a, rc.picard_interval, rc.picard_intervals);
    const double residual = vf::integral_equation_residual(model, a, res.psi);
    Json doc = vf::io::document("picard");
    doc["model"] = model_json(model);
    doc["a"] = a;
    doc["interval"] = {0.0, rc.picard_interval};
    doc["grid_intervals"] = res.psi.intervals();
    doc["iterations"] = res.iterations;
    doc["last_update"] = res.last_update;
    doc["max_ball_excursion"] = res.max_ball_excursion;
    doc["ball_radius"] = model.ledger().eta * std::abs(a) / 4.0;
    doc["psi_end"] = res.psi.values().back();
    doc["beta_end"] = res.beta.values().back();
    doc["residual"] = residual;
    doc["updates"] = res.updates;
    save_json(dir / ("picard_a" + a_tag(a) + ".json"), doc);
    std::ostringstream csv;
    csv << "r,psi,beta\n";
    for (std::size_t i = 0; i <= res.psi.intervals(); ++i) {
      csv << vf::io::num(res.psi.node(i)) << ',' << vf::io::num(res.psi[i]) << ','
          << vf::io::num(res.beta[i]) << '\n';
    }
    save(dir / ("picard_a" + a_tag(a) + ".csv"), csv.str());
    std::printf("a=%s iterations=%zu residual=%.3e psi_end=%.12g\n", a_tag(a).c_str(),
                res.iterations, residual, res.psi.values().back());
  }
  return kOk;
}

int cmd_banach(const RunConfig& rc) {
  const auto model = vf::make_model(rc.model);
  const auto cc = vf::select_contraction_constants(rc.T, model.ledger().L);
  const auto audit = vf::audit_contraction_constants(cc);
  const auto res = vf::banach_solve(model, rc.psi_T, rc.beta_T, cc);
  double dev = 0.0;
  for (std::size_t i = 0; i <= res.psi.intervals(); ++i) {
    dev = std::max({dev, std::abs(res.psi[i] - rc.psi_T), std::abs(res.beta[i] - rc.beta_T)});
  }
  Json doc = vf::io::document("banach");
  doc["model"] = model_json(model);
  doc["psi_T"] = rc.psi_T;
  doc["beta_T"] = rc.beta_T;
  doc["constants"] = vf::io::to_json(cc);
  doc["constants_valid"] = audit.all();
  doc["iterations"] = res.iterations;
  doc["empirical_factor"] = res.empirical_factor;
  doc["distances"] = res.distances;
  doc["deviation_from_constant"] = dev;
  doc["psi_left"] = res.psi[0];
  doc["beta_left"] = res.beta[0];
  const auto dir = out_dir(rc);
  save_json(dir / "banach.json", doc);
  std::ostringstream csv;
  csv << "r,psi,beta\n";
  for (std::size_t i = 0; i <= res.psi.intervals(); ++i) {
    csv << vf::io::num(res.psi.node(i)) << ',' << vf::io::num(res.psi[i]) << ','
        << vf::io::num(res.beta[i]) << '\n';
  }
  save(dir / "banach.csv", csv.str());
  std::printf("zeta=%.6g empirical_factor=%.6g iterations=%zu deviation_from_constant=%.3e\n",
              cc.zeta, res.empirical_factor, res.iterations, dev);
  return kOk;
}

int cmd_verify(const RunConfig& rc) {
  vf::AcceptanceOptions opt;
  if (rc.model.id == "example") {
    vf::make_model(rc.model);  // domain check on c2
    opt.example_c2 = rc.model.c2;
  } else {
    vf::make_model(rc.model);
  }
  const auto results = vf::run_acceptance(opt);
  save_json(out_dir(rc) / "acceptance.json", vf::acceptance_json(results));
  std::fputs(vf::acceptance_matrix(results).c_str(), stdout);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  std::printf("overall: %s\n", all ? "PASS" : "FAIL");
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-plane toolkit for the vortex background-flow system psi' = beta, "
               "beta' = -beta/r - f(psi)"};
  app.set_config("--config", "", "key=value configuration file (# comments); flags override it");
  app.require_subcommand(1);

  RunConfig rc;
  app.add_option("--model", rc.model.id, "constantin | example | powerlaw")->capture_default_str();
  app.add_option("--c2", rc.model.c2, "c2 of the perturbed model")->capture_default_str();
  app.add_option("--alpha", rc.model.alpha, "exponent of the power-law model")->capture_default_str();
  app.add_option("--a", rc.a, "amplitude list, comma separated")->delimiter(',');
  app.add_option("--rmax", rc.r_max, "integration end radius");
  app.add_option("--ring", rc.ring, "ring eps:delta");
  app.add_option("--tol-rel", rc.tol_rel, "relative step tolerance");
  app.add_option("--tol-abs", rc.tol_abs, "absolute step tolerance");
  app.add_option("--out", rc.out, "output directory")->capture_default_str();
  app.add_option("--seed", rc.seed, "offset of the sampling sequences")->capture_default_str();

  auto* check = app.add_subcommand("check", "admissibility report");
  auto* simulate = app.add_subcommand("simulate", "integrate and analyse trajectories");
  auto* portrait = app.add_subcommand("portrait", "SVG phase portrait");
  auto* shoot = app.add_subcommand("shoot", "bisection for an origin-reaching amplitude");
  shoot->add_option("--tol", rc.shoot_tol, "bracket width")->capture_default_str();
  auto* picard = app.add_subcommand("picard", "local solution near r = 0");
  picard->add_option("--interval", rc.picard_interval, "right end of [0, r]")->capture_default_str();
  picard->add_option("--grid", rc.picard_intervals, "grid intervals")->capture_default_str();
  auto* banach = app.add_subcommand("banach", "backward contraction on [sqrt(T^2-1), T]");
  banach->add_option("--psiT", rc.psi_T)->capture_default_str();
  banach->add_option("--betaT", rc.beta_T)->capture_default_str();
  banach->add_option("--T", rc.T)->capture_default_str();
  auto* verify = app.add_subcommand("verify-paper", "acceptance suite with a pass/fail matrix");
  for (auto* sub : {check, simulate, portrait, shoot, picard, banach, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(rc);
    if (*simulate) return cmd_simulate(rc);
    if (*portrait) return cmd_portrait(rc);
    if (*shoot) return cmd_shoot(rc);
    if (*picard) return cmd_picard(rc);
    if (*banach) return cmd_banach(rc);
    if (*verify) return cmd_verify(rc);
  } catch (const vf::ParameterDomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const vf::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const vf::PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  }
  return kUsage;
}
