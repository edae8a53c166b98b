#include "vortexflow/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vortexflow::io {
namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << kTrajectoryHeader << '\n';
  for (const auto& p : traj.points) {
    out << num(p.r) << ',' << num(p.psi) << ',' << num(p.beta) << ',' << num(p.R) << ','
        << num(p.theta) << ',' << num(p.E) << '\n';
  }
}

void write_crossings_csv(std::ostream& out, const CrossingSequence& seq) {
  out << "n,r_minus,r_plus,gap\n";
  for (std::size_t k = 0; k < seq.n.size(); ++k) {
    out << seq.n[k] << ',' << num(seq.r_minus[k]) << ',' << num(seq.r_plus[k]) << ','
        << num(seq.r_plus[k] - seq.r_minus[k]) << '\n';
  }
}

void write_level_set_csv(std::ostream& out, const LevelSetGeometry& geom) {
  out << "psi,beta\n";
  for (const auto& p : geom.samples) out << num(p.psi) << ',' << num(p.beta) << '\n';
}

Json to_json(const CheckRecord& rec) {
  Json w = Json::object();
  for (const auto& [k, v] : rec.witnesses) w[k] = v;
  Json j{{"name", rec.name},
         {"pass", rec.passed()},
         {"verdict", to_string(rec.verdict)},
         {"witnesses", w},
         {"tolerance", rec.tolerance}};
  if (!rec.note.empty()) j["note"] = rec.note;
  return j;
}

Json to_json(const AdmissibilityReport& rep) {
  Json doc = document("admissibility");
  doc["model"] = rep.model_id;
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(to_json(c));
  doc["checks"] = checks;
  doc["overall"] = rep.overall;
  return doc;
}

Json to_json(const ConstantsLedger& l) {
  Json params = Json::object();
  for (const auto& [k, v] : l.params) params[k] = v;
  return {{"u0", l.u0},     {"eta", l.eta}, {"L", l.L},   {"lambda_g", l.lambda_g},
          {"c", l.c},       {"nu", l.nu},   {"params", params}};
}

Json to_json(const TrajectoryPoint& p) {
  return {{"r", p.r}, {"psi", p.psi}, {"beta", p.beta}, {"R", p.R}, {"theta", p.theta}, {"E", p.E}};
}

Json to_json(const RingSpec& ring) {
  return {{"epsilon", ring.epsilon}, {"delta", ring.delta}, {"c", ring.c}, {"nu", ring.nu}};
}

Json to_json(const CrossingSequence& seq) {
  const auto& ck = seq.checks;
  Json j{{"applicable", seq.applicable},
         {"theta0", seq.theta_offsets.first},
         {"theta1", seq.theta_offsets.second},
         {"r_start", seq.r_start},
         {"r_end", seq.r_end},
         {"theta_start", seq.theta_start},
         {"eta_rate", seq.eta_rate},
         {"pairs", seq.n.size()},
         {"checks",
          {{"rate_hypothesis", ck.rate_hypothesis},
           {"ordered", ck.ordered},
           {"gaps", ck.gaps_ok},
           {"linear", ck.linear_ok},
           {"upper", ck.upper_ok},
           {"divergence_witness", ck.divergence_ok},
           {"gap_lower", ck.gap_lower},
           {"gap_upper", ck.gap_upper},
           {"min_gap", ck.min_gap},
           {"max_gap", ck.max_gap},
           {"max_upper_excess", ck.max_upper_excess},
           {"witness_sum", ck.witness_partial.empty() ? 0.0 : ck.witness_partial.back()},
           {"comparison_sum",
            ck.comparison_partial.empty() ? 0.0 : ck.comparison_partial.back()}}}};
  if (!seq.note.empty()) j["note"] = seq.note;
  return j;
}

Json to_json(const ShootingResult& res) {
  Json hist = Json::array();
  for (const auto& h : res.history) {
    hist.push_back({{"a", h.a}, {"outcome", to_string(h.outcome)}, {"min_R", h.min_R},
                    {"r_end", h.r_end}});
  }
  return {{"a_star", res.a_star},
          {"a_lo", res.a_lo},
          {"a_hi", res.a_hi},
          {"origin_hit", res.origin_hit},
          {"min_R_achieved", res.min_R_achieved},
          {"history", hist}};
}

Json to_json(const DichotomyCertificate& cert) {
  return {{"verdict", to_string(cert.verdict)},
          {"min_distance_before_6", cert.min_distance_before_6},
          {"distance_at_rmax", cert.distance_at_rmax},
          {"late_hit", optional_number(cert.late_hit)},
          {"probe_deviation", optional_number(cert.probe_deviation)}};
}

Json to_json(const ContractionConstants& cc) {
  return {{"T", cc.T},
          {"L", cc.L},
          {"lambda_m", cc.lambda_m},
          {"lambda_threshold", cc.lambda_threshold},
          {"k", cc.k},
          {"k_lower", cc.k_lower},
          {"k_upper", cc.k_upper},
          {"zeta", cc.zeta}};
}

Json to_json(const AnalysisReport& rep) {
  Json j{{"model", rep.model_id}, {"a", rep.a}, {"termination", rep.termination}};
  j["ring_spec"] = rep.ring_spec ? to_json(*rep.ring_spec) : Json(nullptr);
  if (rep.ring) {
    j["ring_entry"] = {{"r_entry", rep.ring->r_entry},
                       {"state", to_json(rep.ring->state)},
                       {"min_R_after", rep.ring->min_R_after},
                       {"liminf_bound", rep.ring->liminf_bound}};
  } else {
    j["ring_entry"] = nullptr;
  }
  if (rep.region) {
    j["e_region_entry"] = {{"r_cross", rep.region->r_cross},
                           {"state", to_json(rep.region->state)},
                           {"energy_rate", rep.region->energy_rate},
                           {"E_after", optional_number(rep.region->E_after)},
                           {"transversal", rep.region->transversal}};
  } else {
    j["e_region_entry"] = nullptr;
  }
  if (rep.transversality) {
    const auto& t = *rep.transversality;
    j["transversality"] = {{"crossings", t.crossings},
                           {"min_abs_beta", t.min_abs_beta},
                           {"max_residual", t.max_residual},
                           {"pass", t.passed}};
  } else {
    j["transversality"] = nullptr;
  }
  j["crossing_sequence"] = rep.crossings ? to_json(*rep.crossings) : Json(nullptr);
  j["equilibrium"] = rep.dichotomy ? to_json(*rep.dichotomy) : Json(nullptr);
  j["shooting"] = rep.shooting ? to_json(*rep.shooting) : Json(nullptr);
  j["notes"] = rep.notes;
  return j;
}

Json trajectory_summary(const Trajectory& traj) {
  Json events = Json::array();
  for (const auto& e : traj.events) {
    Json ev = to_json(e.state);
    ev["name"] = e.name;
    events.push_back(ev);
  }
  Json j{{"model", traj.model_id},
         {"termination", to_string(traj.termination)},
         {"points", traj.points.size()},
         {"steps_accepted", traj.steps_accepted},
         {"steps_rejected", traj.steps_rejected},
         {"min_R", traj.min_R}};
  j["first"] = traj.points.empty() ? Json(nullptr) : to_json(traj.points.front());
  j["last"] = traj.points.empty() ? Json(nullptr) : to_json(traj.points.back());
  j["events"] = events;
  return j;
}

Json document(const std::string& kind) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = kind;
  return doc;
}

void write_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::string render_portrait_svg(const PortraitInput& in) {
  double extent = std::max(in.level_set.psi_plus, 1.0);
  if (in.ring) extent = std::max(extent, 1.0 + in.ring->delta);
  for (const auto* t : in.trajectories) {
    for (const auto& p : t->points) extent = std::max(extent, std::max(std::abs(p.psi), std::abs(p.beta)));
  }
  extent *= 1.05;
  const double W = in.width;
  const double half = 0.5 * W;
  const double scale = half / extent;
  const auto X = [&](double psi) { return fixed2(half + psi * scale); };
  const auto Y = [&](double beta) { return fixed2(half - beta * scale); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << in.width << "\" height=\""
    << in.width << "\" viewBox=\"0 0 " << in.width << ' ' << in.width << "\">\n";
  s << "<style>.axis{stroke:#999;stroke-width:1}.lobe{fill:#dde8f5;stroke:#3465a4;stroke-width:1.5}"
       ".sandwich{fill:none;stroke:#c17d11;stroke-width:1;stroke-dasharray:4 3}"
       ".ring{fill:none;stroke:#4e9a06;stroke-width:1}.trajectory{fill:none;stroke:#a40000;"
       "stroke-width:0.8}.peak{fill:#204a87}text{font:12px sans-serif}</style>\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line class=\"axis\" x1=\"0\" y1=\"" << fixed2(half) << "\" x2=\"" << in.width
    << "\" y2=\"" << fixed2(half) << "\"/>\n";
  s << "<line class=\"axis\" x1=\"" << fixed2(half) << "\" y1=\"0\" x2=\"" << fixed2(half)
    << "\" y2=\"" << in.width << "\"/>\n";

  // Lobes: quadrant-I branch, mirrored into the other three quadrants.
  const auto& smp = in.level_set.samples;
  for (double side : {1.0, -1.0}) {
    if (smp.empty()) break;
    s << "<path class=\"lobe\" d=\"M " << X(side * smp.front().psi) << ' ' << Y(smp.front().beta);
    for (std::size_t i = 1; i < smp.size(); ++i) s << " L " << X(side * smp[i].psi) << ' ' << Y(smp[i].beta);
    for (std::size_t i = smp.size(); i-- > 0;) s << " L " << X(side * smp[i].psi) << ' ' << Y(-smp[i].beta);
    s << " Z\"/>\n";
  }

  if (in.model && in.model->id() == "example" && in.model->ledger().params.count("c2")) {
    const double c1 = in.model->ledger().params.at("c1");
    const double c2 = in.model->ledger().params.at("c2");
    for (double k : {1.0 + c1, 1.0 - (c2 - c1)}) {
      const double end = (4.0 * k / 3.0) * (4.0 * k / 3.0);  // zero of k (4/3) psi^{3/2} - psi^2
      for (double side : {1.0, -1.0}) {
        s << "<path class=\"sandwich\" d=\"";
        constexpr int kN = 200;
        for (int pass = 0; pass < 2; ++pass) {
          for (int i = 0; i <= kN; ++i) {
            const int idx = pass == 0 ? i : kN - i;
            const double psi = end * idx / kN;
            const double b2 = k * (4.0 / 3.0) * std::pow(psi, 1.5) - psi * psi;
            const double beta = (pass == 0 ? 1.0 : -1.0) * std::sqrt(std::max(0.0, b2));
            s << (pass == 0 && i == 0 ? "M " : " L ") << X(side * psi) << ' ' << Y(beta);
          }
        }
        s << " Z\"/>\n";
      }
    }
  }

  if (in.ring) {
    for (double rad : {1.0 + in.ring->epsilon, 1.0 + in.ring->delta}) {
      s << "<circle class=\"ring\" cx=\"" << fixed2(half) << "\" cy=\"" << fixed2(half)
        << "\" r=\"" << fixed2(rad * scale) << "\"/>\n";
    }
  }

  for (const auto* t : in.trajectories) {
    const auto& pts = t->points;
    if (pts.empty()) continue;
    const std::size_t stride =
        std::max<std::size_t>(1, (pts.size() + in.max_path_points - 1) / in.max_path_points);
    s << "<path class=\"trajectory\" data-a=\"" << num(pts.front().psi) << "\" d=\"M "
      << X(pts.front().psi) << ' ' << Y(pts.front().beta);
    for (std::size_t i = stride; i < pts.size(); i += stride) s << " L " << X(pts[i].psi) << ' ' << Y(pts[i].beta);
    if ((pts.size() - 1) % stride != 0) s << " L " << X(pts.back().psi) << ' ' << Y(pts.back().beta);
    s << "\"/>\n";
  }

  const double pp = in.level_set.psi_plus;
  s << "<circle class=\"peak\" data-psi=\"" << num(pp) << "\" cx=\"" << X(pp) << "\" cy=\""
    << Y(0.0) << "\" r=\"3\"/>\n";
  char label[64];
  std::snprintf(label, sizeof label, "psi+ = %.6g", pp);
  s << "<text x=\"" << X(pp) << "\" y=\"" << fixed2(half - 8.0) << "\">" << label << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace vortexflow::io
