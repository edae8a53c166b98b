#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortexflow/admissibility.hpp"
#include "vortexflow/analysis.hpp"
#include "vortexflow/fixedpoint.hpp"
#include "vortexflow/phaseplane.hpp"
#include "vortexflow/trajectory.hpp"

namespace vortexflow::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kTrajectoryHeader = "r,psi,beta,R,theta,E";

/// "%.17g" formatting; round-trips every double.
std::string num(double v);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_crossings_csv(std::ostream& out, const CrossingSequence& seq);
void write_level_set_csv(std::ostream& out, const LevelSetGeometry& geom);

Json to_json(const CheckRecord& rec);
Json to_json(const AdmissibilityReport& rep);
Json to_json(const ConstantsLedger& ledger);
Json to_json(const TrajectoryPoint& p);
Json to_json(const RingSpec& ring);
Json to_json(const CrossingSequence& seq);
Json to_json(const ShootingResult& res);
Json to_json(const DichotomyCertificate& cert);
Json to_json(const AnalysisReport& rep);
Json to_json(const ContractionConstants& cc);

/// Summary of a trajectory: endpoints, termination, step counts and events (no samples).
Json trajectory_summary(const Trajectory& traj);

/// Every document written to disk carries schema_version first.
Json document(const std::string& kind);

/// Pretty JSON with a trailing newline.
void write_json(std::ostream& out, const Json& doc);

/// Writes `text` to `path`, throwing std::runtime_error on failure.
void write_file(const std::string& path, const std::string& text);

struct PortraitInput {
  const VorticityModel* model = nullptr;
  std::vector<const Trajectory*> trajectories;
  LevelSetGeometry level_set;
  std::optional<RingSpec> ring;
  int width = 800;
  std::size_t max_path_points = 4000;  // per trajectory, by uniform decimation
};

/// Phase portrait in the (psi, beta) plane: one <path class="trajectory"> per trajectory,
/// the E = 0 lobes, a peak marker at (psi_plus, 0), ring circles and, for the perturbed
/// model, the two sandwich curves. Byte-identical for identical input.
std::string render_portrait_svg(const PortraitInput& input);

}  // namespace vortexflow::io
