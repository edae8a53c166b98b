#include <cstdlib>
#include <sstream>
#include <string>

#include <doctest.h>

#include "vortexflow/integrator.hpp"
#include "vortexflow/report_io.hpp"

using namespace vortexflow;

namespace {
std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}
}  // namespace

TEST_CASE("numbers round-trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 16.0 / 9.0}) {
    CHECK(std::strtod(io::num(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("trajectory csv") {
  IntegrationConfig cfg;
  cfg.r_max = 5.0;
  const auto t = integrate(constantin_model(), 3.0, cfg);
  std::ostringstream s;
  io::write_trajectory_csv(s, t);
  const auto text = s.str();
  CHECK(text.rfind(std::string(io::kTrajectoryHeader) + "\n", 0) == 0);
  CHECK(count(text, "\n") == t.points.size() + 1);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(std::strtod(line.c_str(), nullptr) == t.points.front().r);
}

TEST_CASE("documents start with the schema version") {
  const auto doc = io::document("test");
  CHECK(doc.begin().key() == "schema_version");
  CHECK(doc["schema_version"] == io::kSchemaVersion);
  CHECK(doc["kind"] == "test");
  std::ostringstream s;
  io::write_json(s, doc);
  CHECK(s.str().back() == '\n');
}

TEST_CASE("admissibility json carries every check") {
  const auto rep = full_report(constantin_model(), {1.0});
  const auto j = io::to_json(rep);
  CHECK(j["checks"].size() == rep.checks.size());
  CHECK(j["overall"] == true);
  for (const auto& c : j["checks"]) CHECK(c.contains("witnesses"));
}

TEST_CASE("portrait svg") {
  const auto m = constantin_model();
  IntegrationConfig cfg;
  cfg.r_max = 60.0;
  const auto t1 = integrate(m, 5.0, cfg);
  const auto t2 = integrate(m, 10.0, cfg);
  io::PortraitInput in;
  in.model = &m;
  in.trajectories = {&t1, &t2};
  in.level_set = level_set_geometry(m);
  in.ring = RingSpec{};
  const auto svg = io::render_portrait_svg(in);
  CHECK(svg.rfind("<svg", 0) != std::string::npos);
  CHECK(count(svg, "class=\"trajectory\"") == 2);
  CHECK(count(svg, "class=\"lobe\"") >= 1);
  CHECK(count(svg, "class=\"ring\"") == 2);
  CHECK(count(svg, "class=\"sandwich\"") == 0);
  CHECK(svg.find("psi+ = 1.7777") != std::string::npos);
  CHECK(svg == io::render_portrait_svg(in));

  const auto e = example_model(0.02);
  io::PortraitInput ex;
  ex.model = &e;
  ex.level_set = level_set_geometry(e);
  // two comparison curves on each side
  CHECK(count(io::render_portrait_svg(ex), "class=\"sandwich\"") == 4);
}
